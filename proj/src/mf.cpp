#include "gblocks/mf.hpp"

#include <fstream>
#include <sstream>

namespace gb {

// ---- labelings ----

void validate_labeling(const GCategoryData& cat, const GluingGraph& p, const Labels& W) {
  if (W.size() != p.free.size())
    throw MfError("labeling-size", std::to_string(W.size()) + " labels for " + std::to_string(p.free.size()) +
                                       " free boundaries");
  const auto& G = cat.group;
  for (std::size_t a = 0; a < W.size(); ++a) {
    if (W[a] < 0 || W[a] >= static_cast<int>(cat.labels.size()))
      throw MfError("unknown-label", "boundary " + std::to_string(a));
    const Slot s = p.free[a];
    const int m = monodromy(G, p.blocks[s.block], s.index);
    if (cat.deg[W[a]] != G.inv(m))
      throw MfError("labeling-grading", "boundary " + std::to_string(a) + ": deg " + cat.labels[W[a]] + " = " +
                                            G.name(cat.deg[W[a]]) + ", monodromy^{-1} = " + G.name(G.inv(m)));
  }
}

Labels labeling_from_json(const GCategoryData& cat, const GluingGraph& p, const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("boundary_labels") || !j["boundary_labels"].is_object())
    throw MfError("schema", "labeling needs a \"boundary_labels\" object");
  Labels W(p.free.size(), -1);
  for (auto& [k, v] : j["boundary_labels"].items()) {
    std::size_t a = 0;
    try {
      a = std::stoul(k);
    } catch (const std::exception&) {
      throw MfError("schema", "boundary index " + k);
    }
    if (a >= W.size()) throw MfError("labeling-size", "boundary index " + k + " out of range");
    if (!v.is_string()) throw MfError("schema", "labels are names");
    try {
      W[a] = cat.label(v.get<std::string>());
    } catch (const CategoryError& e) {
      throw MfError("unknown-label", e.what());
    }
  }
  for (std::size_t a = 0; a < W.size(); ++a)
    if (W[a] < 0) throw MfError("labeling-size", "boundary " + std::to_string(a) + " unlabeled");
  validate_labeling(cat, p, W);
  return W;
}

Labels load_labeling(const GCategoryData& cat, const GluingGraph& p, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open " + path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw MfError("schema", path + ": " + e.what());
  }
  return labeling_from_json(cat, p, j);
}

std::vector<Labels> labelings(const GCategoryData& cat, const GluingGraph& p) {
  const auto& G = cat.group;
  std::vector<Labels> choices;
  for (auto& s : p.free) {
    const int want = G.inv(monodromy(G, p.blocks[s.block], s.index));
    Labels c;
    for (int a = 0; a < static_cast<int>(cat.labels.size()); ++a)
      if (cat.deg[a] == want) c.push_back(a);
    choices.push_back(c);
  }
  std::vector<Labels> out{{}};
  for (auto& c : choices) {
    std::vector<Labels> next;
    for (auto& w : out)
      for (int a : c) {
        next.push_back(w);
        next.back().push_back(a);
      }
    out = std::move(next);
  }
  return out;
}

// ---- spaces ----

std::vector<Labels> slot_labels(const GCategoryData& cat, const GluingGraph& p, const Labels& W, const Labels& v) {
  const auto& G = cat.group;
  std::vector<Labels> labs;
  for (auto& b : p.blocks) labs.emplace_back(b.size(), -1);
  auto twist = [&](Slot s, int a) { return cat.action[G.inv(p.blocks[s.block].h[s.index])][a]; };
  for (std::size_t a = 0; a < p.free.size(); ++a) labs[p.free[a].block][p.free[a].index] = twist(p.free[a], W[a]);
  for (std::size_t c = 0; c < p.cuts.size(); ++c) {
    const Cut& cut = p.cuts[c];
    labs[cut.from.block][cut.from.index] = twist(cut.from, cat.dual[v[c]]);
    labs[cut.to.block][cut.to.index] = twist(cut.to, v[c]);
  }
  return labs;
}

int TauSpace::assignment(const Labels& v) const {
  auto it = std::lower_bound(assignments.begin(), assignments.end(), v);
  return it != assignments.end() && *it == v ? static_cast<int>(it - assignments.begin()) : -1;
}

std::size_t TauSpace::index(int a, const std::vector<int>& trees) const {
  std::size_t i = 0;
  for (std::size_t b = 0; b < trees.size(); ++b) i = i * spaces[a][b]->dim() + trees[b];
  return offset[a] + i;
}

std::pair<int, std::vector<int>> TauSpace::decode(std::size_t i) const {
  int a = static_cast<int>(std::upper_bound(offset.begin(), offset.end(), i) - offset.begin()) - 1;
  std::size_t r = i - offset[a];
  std::vector<int> trees(spaces[a].size());
  for (std::size_t b = trees.size(); b-- > 0;) {
    trees[b] = static_cast<int>(r % spaces[a][b]->dim());
    r /= spaces[a][b]->dim();
  }
  return {a, trees};
}

TauSpace Mf::compute_tau_space(const GluingGraph& p, const Labels& W) const {
  validate_labeling(cat_, p, W);
  TauSpace t;
  t.graph = p;
  t.W = W;
  const int L = static_cast<int>(cat_.labels.size());
  const std::size_t nc = p.cuts.size();
  const auto& G = cat_.group;
  auto twist = [&](Slot s, int a) { return cat_.action[G.inv(p.blocks[s.block].h[s.index])][a]; };
  // free slots are fixed; only the cut ends change between assignments
  auto labs = slot_labels(cat_, p, W, Labels(nc, 0));
  Labels v(nc, 0);
  std::vector<const BlockSpace*> sp(labs.size());
  while (true) {
    for (std::size_t c = 0; c < nc; ++c) {
      const Cut& cut = p.cuts[c];
      labs[cut.from.block][cut.from.index] = twist(cut.from, cat_.dual[v[c]]);
      labs[cut.to.block][cut.to.index] = twist(cut.to, v[c]);
    }
    std::size_t d = 1;
    for (std::size_t b = 0; b < labs.size() && d; ++b) {
      sp[b] = &ms_.space(labs[b]);
      d *= sp[b]->dim();
    }
    if (d > 0) {
      t.assignments.push_back(v);
      t.slot_labels.push_back(labs);
      t.spaces.push_back(sp);
      t.offset.push_back(t.total);
      t.total += d;
    }
    std::size_t c = nc;
    while (c > 0 && ++v[c - 1] == L) v[--c] = 0;
    if (c == 0) break;
  }
  return t;
}

const TauSpace& Mf::tau_space(const GluingGraph& p, const Labels& W) const {
  thread_local Labels key;
  key.clear();
  for (auto& b : p.blocks) {
    key.push_back(static_cast<int>(b.size()));
    key.insert(key.end(), b.g.begin(), b.g.end());
    key.insert(key.end(), b.h.begin(), b.h.end());
  }
  key.push_back(-1);
  for (auto& c : p.cuts) key.insert(key.end(), {c.from.block, c.from.index, c.to.block, c.to.index});
  key.push_back(-1);
  for (auto& s : p.free) key.insert(key.end(), {s.block, s.index});
  key.push_back(-1);
  key.insert(key.end(), W.begin(), W.end());
  {
    std::shared_lock lock(mu_);
    auto it = spaces_.find(key);
    if (it != spaces_.end()) return *it->second;
  }
  auto t = std::make_unique<TauSpace>(compute_tau_space(p, W));
  std::unique_lock lock(mu_);
  auto& slot = spaces_[key];
  if (!slot) slot = std::move(t);
  return *slot;
}

// ---- move maps ----

namespace {

[[noreturn]] void mismatch(const std::string& what) { throw std::logic_error("tau map: " + what); }

// Calls f(j, trees) for every basis vector of assignment a.
template <class F>
void each_vector(const TauSpace& S, int a, F&& f) {
  const std::size_t end = a + 1 < static_cast<int>(S.offset.size()) ? S.offset[a + 1] : S.total;
  for (std::size_t j = S.offset[a]; j < end; ++j) f(j, S.decode(j).second);
}

// Acts by bm on block b of every vector of assignment a, landing in assignment ta of T.
void act_on_block(const TauSpace& S, const TauSpace& T, int a, int ta, int b, const BlockMap& bm, Matrix& M) {
  if (ta < 0) mismatch("target assignment vanishes");
  if (bm.source != S.slot_labels[a][b] || bm.target != T.slot_labels[ta][b]) mismatch("block labels disagree");
  each_vector(S, a, [&](std::size_t j, std::vector<int> trees) {
    const int col = trees[b];
    for (std::size_t r = 0; r < bm.m.rows(); ++r) {
      if (bm.m(r, col).is_zero()) continue;
      trees[b] = static_cast<int>(r);
      M(T.index(ta, trees), j) += bm.m(r, col);
    }
  });
}

}  // namespace

MoveResult Mf::move_map(const GluingGraph& p, const Labels& W, const Move& m) const {
  const auto& G = group();
  GluingGraph q = apply_move(G, p, m);
  const TauSpace &S = tau_space(p, W), &T = tau_space(q, W);
  Matrix M(T.dim(), S.dim());
  for (int a = 0; a < static_cast<int>(S.assignments.size()); ++a) {
    const Labels& v = S.assignments[a];
    switch (m.kind) {
      case MoveKind::Z:
        act_on_block(S, T, a, T.assignment(v), m.block, ms_.rotation(S.slot_labels[a][m.block]), M);
        break;
      case MoveKind::B:
        act_on_block(S, T, a, T.assignment(v), m.block, ms_.braiding(S.slot_labels[a][m.block]), M);
        break;
      case MoveKind::P:
        act_on_block(S, T, a, T.assignment(v), m.block, ms_.phi(S.slot_labels[a][m.block], m.x), M);
        break;
      case MoveKind::T: {
        // The cut object moves with its marked point: v -> (z y^{-1})·v leaves every slot label fixed.
        const int y = *cut_label(p, m.cut);
        Labels nv = v;
        nv[m.cut] = cat_.action[G.mul(m.x, G.inv(y))][v[m.cut]];
        const int ta = T.assignment(nv);
        if (ta < 0 || T.slot_labels[ta] != S.slot_labels[a]) mismatch("T changes slot labels");
        each_vector(S, a, [&](std::size_t j, const std::vector<int>& trees) { M(T.index(ta, trees), j) = 1; });
        break;
      }
      case MoveKind::F: {
        const auto sides = *fusion_sides(detail::sizes_of(p), p.cuts[m.cut]);
        const int bi = sides.first.block, bj = sides.second.block;
        const int keep = std::min(bi, bj), drop = std::max(bi, bj);
        const Labels& li = S.slot_labels[a][bi];
        const Labels& lj = S.slot_labels[a][bj];
        const int V = lj.front();
        if (li.back() != cat_.dual[V]) mismatch("cut ends are not dual");
        // Gluing along a reversed cut uses the symmetry of the cut object, a factor ζ(V*).
        const Cyclotomic scale = sides.direct ? Cyclotomic(1) : ms_.zeta(li.back());
        const GlueMap& gm = ms_.gluing(Labels(li.begin(), li.end() - 1), Labels(lj.begin() + 1, lj.end()));
        Labels nv = v;
        nv.erase(nv.begin() + m.cut);
        const int ta = T.assignment(nv);
        if (ta < 0 || gm.target != T.slot_labels[ta][keep]) mismatch("F target labels");
        each_vector(S, a, [&](std::size_t j, const std::vector<int>& trees) {
          const int col = gm.column({V, S.spaces[a][bi]->basis[trees[bi]], S.spaces[a][bj]->basis[trees[bj]]});
          if (col < 0) mismatch("gluing column");
          std::vector<int> nt = trees;
          nt.erase(nt.begin() + drop);
          for (std::size_t r = 0; r < gm.m.rows(); ++r) {
            if (gm.m(r, col).is_zero()) continue;
            nt[keep] = static_cast<int>(r);
            M(T.index(ta, nt), j) += scale * gm.m(r, col);
          }
        });
        break;
      }
    }
  }
  return {std::move(q), std::move(M)};
}

MoveResult Mf::path_map(const GluingGraph& p, const Labels& W, const std::vector<Move>& path) const {
  MoveResult r{p, Matrix::identity(tau_dim(p, W))};
  for (const Move& m : path) {
    auto step = move_map(r.target, W, m);
    r.m = step.m * r.m;
    r.target = std::move(step.target);
  }
  return r;
}

MoveResult Mf::canonical_map(const GluingGraph& p, const Labels& W) const {
  return canonical_map(p, W, canonical_form(p));
}

MoveResult Mf::canonical_map(const GluingGraph& p, const Labels& W, const Canonical& c) const {
  const TauSpace &S = tau_space(p, W), &T = tau_space(c.graph, W);
  Matrix M(T.dim(), S.dim());
  for (int a = 0; a < static_cast<int>(S.assignments.size()); ++a) {
    Labels nv;
    for (int old : c.cut_perm) nv.push_back(S.assignments[a][old]);
    const int ta = T.assignment(nv);
    if (ta < 0) mismatch("canonical assignment");
    each_vector(S, a, [&](std::size_t j, const std::vector<int>& trees) {
      std::vector<int> nt;
      for (int old : c.block_perm) nt.push_back(trees[old]);
      M(T.index(ta, nt), j) = 1;
    });
  }
  return {c.graph, std::move(M)};
}

MoveResult Mf::braid2_map(const GluingGraph& p, const Labels& W, int block) const {
  GluingGraph q = move_braid2(GroupOps{&group()}, p, block);
  const TauSpace &S = tau_space(p, W), &T = tau_space(q, W);
  Matrix M(T.dim(), S.dim());
  for (int a = 0; a < static_cast<int>(S.assignments.size()); ++a)
    act_on_block(S, T, a, T.assignment(S.assignments[a]), block,
                 ms_.generalized_commutativity(S.slot_labels[a][block], 0), M);
  return {std::move(q), std::move(M)};
}

Mf::Shift Mf::t_action(const GluingGraph& p, const Labels& W, const std::vector<int>& x) const {
  const auto& G = group();
  if (x.size() != p.free.size()) throw MfError("labeling-size", "one group element per free boundary");
  Shift s{p, W, {}};
  for (std::size_t a = 0; a < x.size(); ++a) {
    const Slot f = p.free[a];
    auto& h = s.target.blocks[f.block].h[f.index];
    h = G.mul(x[a], h);
    s.W[a] = cat_.action[x[a]][W[a]];
  }
  // X = h^{-1}·W is unchanged, so the action is the identification of equal block spaces.
  const TauSpace &S = tau_space(p, W), &T = tau_space(s.target, s.W);
  s.m = Matrix(T.dim(), S.dim());
  for (int a = 0; a < static_cast<int>(S.assignments.size()); ++a) {
    const int ta = T.assignment(S.assignments[a]);
    if (ta < 0 || T.slot_labels[ta] != S.slot_labels[a]) mismatch("shift changes slot labels");
    each_vector(S, a, [&](std::size_t j, const std::vector<int>& trees) { s.m(T.index(ta, trees), j) = 1; });
  }
  return s;
}

// ---- tracker ----

Tracker::Tracker(const Mf& mf, GluingGraph p, Labels W)
    : mf_(&mf), g_(std::move(p)), u_(universal_initial(g_)), W_(std::move(W)),
      m_(Matrix::identity(mf.tau_dim(g_, W_))) {}

void Tracker::move(const Move& m) {
  auto r = mf_->move_map(g_, W_, m);
  u_ = universal_apply(u_, m);
  g_ = std::move(r.target);
  canonical_ = false;
  m_ = r.m * m_;
  trail_.push_back({Step::move, m, 0});
}

void Tracker::braid2(int block) {
  auto r = mf_->braid2_map(g_, W_, block);
  u_ = move_braid2(WordOps{}, u_, block);
  g_ = std::move(r.target);
  canonical_ = false;
  m_ = r.m * m_;
  trail_.push_back({Step::braid2, Move::Z(block), 0});
}

void Tracker::split(int block, int k) {
  GluingGraph ng = move_split(GroupOps{&mf_->group()}, g_, block, k);
  auto r = mf_->move_map(ng, W_, Move::F(static_cast<int>(ng.cuts.size()) - 1));
  if (!(r.target == g_)) throw std::logic_error("split is not inverse to F");
  u_ = move_split(WordOps{}, u_, block, k);
  g_ = std::move(ng);
  canonical_ = false;
  m_ = r.m.inverse() * m_;
  trail_.push_back({Step::split, Move::Z(block), k});
}

void Tracker::canonicalize() {
  Canonical c = canonical_form(g_);
  auto r = mf_->canonical_map(g_, W_, c);
  u_ = universal_permute(u_, c);
  g_ = std::move(c.graph);
  m_ = r.m * m_;
  canonical_ = true;
}

std::vector<std::string> Tracker::trail() const {
  std::vector<std::string> out;
  for (auto& s : trail_) {
    if (s.kind == Step::move) out.push_back(move_str(mf_->group(), s.m));
    else if (s.kind == Step::braid2) out.push_back("B2(" + std::to_string(s.m.block) + ")");
    else out.push_back("F^-1(" + std::to_string(s.m.block) + "," + std::to_string(s.k) + ")");
  }
  return out;
}

std::vector<int> Tracker::key() const {
  auto k = graph_key(canonical_ ? g_ : canonical_form(g_).graph);
  k.push_back(-1);
  auto inv = universal_invariants(u_);
  k.insert(k.end(), inv.begin(), inv.end());
  return k;
}

// ---- path independence ----

namespace {

std::vector<int> node_key(const GluingGraph& canon, const UniversalGraph& u) {
  auto k = graph_key(canon);
  k.push_back(-1);
  auto inv = universal_invariants(u);
  k.insert(k.end(), inv.begin(), inv.end());
  return k;
}

}  // namespace

PathResult check_path_independence(const Mf& mf, const GluingGraph& p1, const Labels& W,
                                   const std::vector<Move>& target_path, PathOptions opt) {
  const auto& G = mf.group();
  PathResult res;
  res.report.title = "path independence (depth " + std::to_string(opt.depth) + ")";
  res.report.notes.push_back("nodes are parameterizations up to block order, told apart by deck-invariant "
                             "boundary data of the free-group cover");

  Tracker target(mf, p1, W);
  for (auto& m : target_path) target.move(m);
  target.canonicalize();
  const auto target_key = target.key();

  struct Node {
    GluingGraph g;
    UniversalGraph u;
    Matrix m;
    int parent;
    std::string move;
  };
  Tracker start(mf, p1, W);
  start.canonicalize();
  std::vector<Node> nodes{{start.graph(), start.universal(), start.map(), -1, ""}};
  std::map<std::vector<int>, int> seen{{start.key(), 0}};
  auto path_to = [&](int n) {
    std::vector<std::string> moves;
    for (; nodes[n].parent >= 0; n = nodes[n].parent) moves.push_back(nodes[n].move);
    std::string s;
    for (auto it = moves.rbegin(); it != moves.rend(); ++it) s += (s.empty() ? "" : " ") + *it;
    return s.empty() ? std::string("[]") : "[" + s + "]";
  };

  CheckResult& edges = res.report.add("edge consistency");
  struct Edge {
    int from;
    Move move;
  };
  struct Child {
    GluingGraph g;
    UniversalGraph u;
    Matrix m;
    std::vector<int> key;
  };
  std::size_t layer_begin = 0;
  for (int depth = 0; depth < opt.depth; ++depth) {
    const std::size_t layer_end = nodes.size();
    std::vector<Edge> frontier;
    for (std::size_t n = layer_begin; n < layer_end; ++n)
      for (auto& m : enumerate_moves(G, nodes[n].g)) frontier.push_back({static_cast<int>(n), m});
    auto children = map_instances<Child>(frontier.size(), opt.exec, [&](std::size_t i) {
      const Node& from = nodes[frontier[i].from];
      auto r = mf.move_map(from.g, W, frontier[i].move);
      Canonical c = canonical_form(r.target);
      auto perm = mf.canonical_map(r.target, W);
      UniversalGraph u = universal_permute(universal_apply(from.u, frontier[i].move), c);
      Matrix m = perm.m * (r.m * from.m);
      auto key = node_key(c.graph, u);
      return Child{std::move(c.graph), std::move(u), std::move(m), std::move(key)};
    });
    for (std::size_t i = 0; i < frontier.size(); ++i) {
      Child& ch = children[i];
      const std::string mv = move_str(G, frontier[i].move);
      auto it = seen.find(ch.key);
      if (it == seen.end()) {
        seen.emplace(ch.key, static_cast<int>(nodes.size()));
        nodes.push_back({std::move(ch.g), std::move(ch.u), std::move(ch.m), frontier[i].from, mv});
        continue;
      }
      ++edges.instances;
      const Node& old = nodes[it->second];
      if (old.m != ch.m) {
        edges.fail(Failure{"paths " + path_to(it->second) + " and " + path_to(frontier[i].from) + "+" + mv +
                               " to " + graph_str(G, old.g) + " disagree",
                           {{"first", old.m}, {"second", ch.m}}});
      }
    }
    layer_begin = layer_end;
    if (layer_begin == nodes.size()) break;
  }
  res.nodes = nodes.size();
  res.report.notes.push_back(std::to_string(nodes.size()) + " parameterizations explored");

  CheckResult& reach = res.report.add("target path agrees");
  reach.instances = 1;
  auto it = seen.find(target_key);
  if (it == seen.end()) {
    reach.fail("target " + graph_str(G, target.graph()) + " not reached within depth");
  } else {
    res.target_map = nodes[it->second].m;
    if (*res.target_map != target.map())
      reach.fail(Failure{"target path " + path_to(it->second) + " disagrees with the given path",
                         {{"explored", *res.target_map}, {"given", target.map()}}});
  }
  return res;
}

PathResult check_path_independence(const Mf& mf, const GluingGraph& p1, const Labels& W, const GluingGraph& p2,
                                   PathOptions opt) {
  auto path = find_path(mf.group(), p1, p2, opt.depth);
  if (!path) {
    PathResult res;
    res.report.title = "path independence (depth " + std::to_string(opt.depth) + ")";
    CheckResult& reach = res.report.add("target path agrees");
    reach.instances = 1;
    reach.fail("no move sequence of length <= " + std::to_string(opt.depth) + " reaches the target");
    return res;
  }
  return check_path_independence(mf, p1, W, *path, opt);
}

// ---- non-degeneracy ----

Report check_nondegeneracy(const GCategoryData& cat) {
  Report rep;
  rep.title = "non-degeneracy";
  CheckResult& r = rep.add("pairing exists");
  for (int x = 0; x < static_cast<int>(cat.labels.size()); ++x) {
    ++r.instances;
    bool found = false;
    for (int v = 0; v < static_cast<int>(cat.labels.size()) && !found; ++v) found = fusion_dim(cat, {x, v}) != 0;
    if (!found) r.fail("no V with <" + cat.labels[x] + ", V> != 0");
  }
  return rep;
}

}  // namespace gb
