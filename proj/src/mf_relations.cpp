#include "gblocks/mf.hpp"

#include <functional>

namespace gb {

namespace {

struct Instance {
  GluingGraph p;
  Labels W;
};

using Task = std::function<Outcome()>;

// g-tuples of length n with g_1...g_n = e.
std::vector<std::vector<int>> g_tuples(const FiniteGroup& G, int n) {
  std::vector<std::vector<int>> out;
  if (n == 0) return {{}};
  std::vector<int> t(n - 1, 0);
  while (true) {
    int prod = G.identity();
    for (int x : t) prod = G.mul(prod, x);
    auto g = t;
    g.push_back(G.inv(prod));
    out.push_back(g);
    int i = n - 1;
    while (i > 0 && ++t[i - 1] == G.order()) t[--i] = 0;
    if (i == 0) break;
  }
  return out;
}

// h-tuples with h_1 = e: every block is P-isomorphic to one of these.
std::vector<std::vector<int>> h_tuples(const FiniteGroup& G, int n) {
  std::vector<std::vector<int>> out;
  if (n == 0) return {{}};
  for (auto& t : g_tuples(G, n)) {
    std::vector<int> h(t.begin(), t.begin() + n - 1);
    h.insert(h.begin(), G.identity());
    out.push_back(h);
  }
  return out;
}

GluingGraph single(const std::vector<int>& g, const std::vector<int>& h) {
  GluingGraph p;
  p.blocks.push_back({g, h});
  for (int i = 0; i < static_cast<int>(g.size()); ++i) p.free.push_back({0, i});
  return p;
}

// Blocks of the given sizes with h = e, block i's last slot glued to block i+1's first.
std::vector<GluingGraph> chains(const FiniteGroup& G, const std::vector<int>& sizes) {
  std::vector<GluingGraph> out{GluingGraph{}};
  for (std::size_t b = 0; b < sizes.size(); ++b) {
    std::vector<GluingGraph> next;
    for (auto& p : out)
      for (auto& g : g_tuples(G, sizes[b])) {
        if (b > 0 && g.front() != G.inv(p.blocks.back().g.back())) continue;
        GluingGraph q = p;
        q.blocks.push_back({g, std::vector<int>(g.size(), G.identity())});
        next.push_back(std::move(q));
      }
    out = std::move(next);
  }
  for (auto& p : out) {
    const int nb = static_cast<int>(p.blocks.size());
    for (int b = 0; b < nb; ++b)
      for (int i = 0; i < p.blocks[b].size(); ++i) {
        const bool cut_end = (b + 1 < nb && i == p.blocks[b].size() - 1) || (b > 0 && i == 0);
        if (!cut_end) p.free.push_back({b, i});
      }
    for (int b = 0; b + 1 < nb; ++b) p.cuts.push_back({{b, p.blocks[b].size() - 1}, {b + 1, 0}});
  }
  return out;
}

std::vector<Instance> labeled(const Mf& mf, const std::vector<GluingGraph>& graphs) {
  std::vector<Instance> out;
  for (auto& p : graphs)
    for (auto& W : labelings(mf.cat(), p))
      if (mf.tau_dim(p, W) > 0) out.push_back({p, W});
  return out;
}

std::vector<Instance> singles(const Mf& mf, int n, bool all_h) {
  const auto& G = mf.group();
  std::vector<GluingGraph> graphs;
  for (auto& g : g_tuples(G, n)) {
    if (all_h) {
      for (auto& h : h_tuples(G, n)) graphs.push_back(single(g, h));
    } else {
      graphs.push_back(single(g, std::vector<int>(n, G.identity())));
    }
  }
  return labeled(mf, graphs);
}

std::string describe(const Mf& mf, const Instance& in) {
  return graph_str(mf.group(), in.p) + " " + label_list(mf.cat(), in.W);
}

std::string trail(const Tracker& t) {
  std::string s;
  for (auto& m : t.trail()) s += (s.empty() ? "" : " ") + m;
  return "[" + s + "]";
}

// Both sides must reach the same parameterization (up to block order and mapping class)
// with equal maps.
Outcome compare(const Mf& mf, const Instance& in, Tracker l, Tracker r) {
  l.canonicalize();
  r.canonicalize();
  auto w = [&] { return describe(mf, in) + ": " + trail(l) + " vs " + trail(r); };
  if (l.key() != r.key()) return Outcome::bad(Failure{w() + " end at different parameterizations", {}});
  if (l.map() != r.map()) return Outcome::bad(Failure{w(), {{"left", l.map()}, {"right", r.map()}}});
  return Outcome::ok();
}

// Runs side(t, ...) for both sides of a relation on one instance.
Outcome relation(const Mf& mf, const Instance& in, const std::function<void(Tracker&)>& left,
                 const std::function<void(Tracker&)>& right) {
  Tracker l(mf, in.p, in.W), r(mf, in.p, in.W);
  left(l);
  right(r);
  return compare(mf, in, std::move(l), std::move(r));
}

void run_tasks(CheckResult& r, const std::vector<Task>& tasks, Exec exec) {
  run_instances(r, tasks.size(), exec, [&](std::size_t i) {
    try {
      return tasks[i]();
    } catch (const std::exception& e) {
      return Outcome::bad(Failure{std::string("exception: ") + e.what(), {}});
    }
  });
}

// Generalized commutativity on block b by moves: isolate the pair (pos, pos+1) on a
// 3-holed block, braid it, glue back.
void gen_comm(Tracker& t, int b, int pos) {
  const int n = t.graph().blocks[b].size();
  const int r = ((n - (pos + 2)) % n + n) % n;
  for (int i = 0; i < r; ++i) t.move(Move::Z(b));
  t.split(b, n - 2);
  const int nb = static_cast<int>(t.graph().blocks.size()) - 1;
  t.move(Move::B(nb));
  t.move(Move::F(static_cast<int>(t.graph().cuts.size()) - 1));
  for (int i = 0; i < (n - r) % n; ++i) t.move(Move::Z(b));
}

// Matrix of the basis identification ⊕_v tau(U, W + [v*, v]) -> tau(p, W) where U is p with
// cut c opened into two new free boundaries (from end, then to end).
struct Opened {
  GluingGraph U;
  std::vector<int> vs;
  std::vector<Labels> Ws;
  std::vector<std::size_t> offset;
  Matrix glue;
};

Opened open_cut(const Mf& mf, const GluingGraph& p, const Labels& W, int c) {
  const auto& cat = mf.cat();
  Opened o;
  o.U = p;
  o.U.cuts.erase(o.U.cuts.begin() + c);
  o.U.free.push_back(p.cuts[c].from);
  o.U.free.push_back(p.cuts[c].to);
  const TauSpace& T = mf.tau_space(p, W);
  std::vector<std::tuple<std::size_t, std::size_t>> entries;
  std::size_t total = 0;
  for (int v = 0; v < static_cast<int>(cat.labels.size()); ++v) {
    Labels Wv = W;
    Wv.push_back(cat.dual[v]);
    Wv.push_back(v);
    try {
      validate_labeling(cat, o.U, Wv);
    } catch (const MfError&) {
      continue;
    }
    const TauSpace& S = mf.tau_space(o.U, Wv);
    o.vs.push_back(v);
    o.Ws.push_back(Wv);
    o.offset.push_back(total);
    for (std::size_t j = 0; j < S.dim(); ++j) {
      auto [a, trees] = S.decode(j);
      Labels full = S.assignments[a];
      full.insert(full.begin() + c, v);
      const int ta = T.assignment(full);
      if (ta < 0) throw std::logic_error("opened cut: missing assignment");
      entries.push_back({T.index(ta, trees), total + j});
    }
    total += S.dim();
  }
  o.offset.push_back(total);
  o.glue = Matrix(T.dim(), total);
  for (auto [r, col] : entries) o.glue(r, col) = 1;
  return o;
}

}  // namespace

Report check_relations(const GCategoryData& cat, RelationOptions opt) {
  const Mf mf(cat);
  const auto& G = cat.group;
  Report rep;
  rep.title = "modular functor relations (blocks of size <= " + std::to_string(opt.max_block) + ")";
  rep.notes.push_back("single-block instances run over all g and all h with h_1 = e; glued instances have h = e");
  rep.notes.push_back("P_x P_y = P_{yx} reads as: apply P_x, then P_y");

  std::vector<std::vector<Instance>> by_size(opt.max_block + 1);
  for (int n = 1; n <= opt.max_block; ++n) by_size[n] = singles(mf, n, true);
  std::vector<Instance> pairs;
  for (int n0 = 2; n0 <= opt.max_block; ++n0)
    for (int n1 = 2; n1 <= opt.max_block; ++n1) {
      auto l = labeled(mf, chains(G, {n0, n1}));
      pairs.insert(pairs.end(), l.begin(), l.end());
    }

  {
    std::vector<Task> tasks;
    for (int n = 1; n <= opt.max_block; ++n)
      for (auto& in : by_size[n])
        for (int x = 0; x < G.order(); ++x)
          tasks.push_back([&, x] {
            return relation(mf, in, [&](Tracker& t) { t.move(Move::P(0, x)), t.move(Move::Z(0)); },
                            [&](Tracker& t) { t.move(Move::Z(0)), t.move(Move::P(0, x)); });
          });
    run_tasks(rep.add("P_x Z = Z P_x"), tasks, opt.exec);
  }
  if (opt.max_block >= 3) {
    std::vector<Task> tasks;
    for (auto& in : by_size[3])
      for (int x = 0; x < G.order(); ++x)
        tasks.push_back([&, x] {
          return relation(mf, in, [&](Tracker& t) { t.move(Move::P(0, x)), t.move(Move::B(0)); },
                          [&](Tracker& t) { t.move(Move::B(0)), t.move(Move::P(0, x)); });
        });
    run_tasks(rep.add("P_x B = B P_x"), tasks, opt.exec);
  }
  {
    std::vector<Task> tasks;
    for (auto& in : pairs)
      for (int x = 0; x < G.order(); ++x)
        tasks.push_back([&, x] {
          return relation(mf, in, [&](Tracker& t) { t.move(Move::F(0)), t.move(Move::P(0, x)); },
                          [&](Tracker& t) {
                            t.move(Move::P(0, x));
                            t.move(Move::P(1, x));
                            t.move(Move::F(0));
                          });
        });
    run_tasks(rep.add("P_x F = F (P_x + P_x)"), tasks, opt.exec);
  }
  {
    std::vector<Task> tasks;
    for (int n = 1; n <= opt.max_block; ++n)
      for (auto& in : by_size[n])
        for (int x = 0; x < G.order(); ++x)
          for (int y = 0; y < G.order(); ++y)
            tasks.push_back([&, x, y] {
              return relation(mf, in, [&](Tracker& t) { t.move(Move::P(0, x)), t.move(Move::P(0, y)); },
                              [&](Tracker& t) { t.move(Move::P(0, G.mul(y, x))); });
            });
    run_tasks(rep.add("P_x P_y = P_yx"), tasks, opt.exec);
  }
  {
    std::vector<Task> tasks;
    for (int n = 1; n <= opt.max_block; ++n)
      for (auto& in : by_size[n])
        tasks.push_back([&, n] {
          return relation(mf, in, [&](Tracker& t) {
            for (int i = 0; i < n; ++i) t.move(Move::Z(0));
          }, [](Tracker&) {});
        });
    run_tasks(rep.add("Z^n = id"), tasks, opt.exec);
  }
  {
    std::vector<Task> tt, ft;
    for (auto& in : pairs)
      for (int z = 0; z < G.order(); ++z) {
        for (int y = 0; y < G.order(); ++y)
          tt.push_back([&, y, z] {
            return relation(mf, in, [&](Tracker& t) { t.move(Move::T(0, y)), t.move(Move::T(0, z)); },
                            [&](Tracker& t) { t.move(Move::T(0, z)); });
          });
        ft.push_back([&, z] {
          return relation(mf, in, [&](Tracker& t) { t.move(Move::T(0, z)), t.move(Move::F(0)); },
                          [&](Tracker& t) { t.move(Move::F(0)); });
        });
      }
    run_tasks(rep.add("T_z T_y = T_z"), tt, opt.exec);
    run_tasks(rep.add("F T = F"), ft, opt.exec);
  }
  {
    std::vector<Task> tasks;
    for (auto& in : pairs) {
      std::vector<Move> m0{Move::Z(0)}, m1{Move::Z(1)};
      if (in.p.blocks[0].size() == 3) m0.push_back(Move::B(0));
      if (in.p.blocks[1].size() == 3) m1.push_back(Move::B(1));
      for (auto& a : m0)
        for (auto& b : m1)
          tasks.push_back([&, a, b] {
            return relation(mf, in, [&](Tracker& t) { t.move(a), t.move(b); },
                            [&](Tracker& t) { t.move(b), t.move(a); });
          });
    }
    run_tasks(rep.add("moves on different blocks commute"), tasks, opt.exec);
  }
  {
    // Merging along the reversed cut: rotate the cut to the first slot of block 0 and the
    // last of block 1, fuse, rotate back.
    std::vector<Task> tasks;
    for (auto& in : pairs)
      tasks.push_back([&] {
        const int n0 = in.p.blocks[0].size(), n1 = in.p.blocks[1].size();
        return relation(mf, in, [&](Tracker& t) { t.move(Move::F(0)); },
                        [&](Tracker& t) {
                          t.move(Move::Z(0));
                          for (int i = 0; i < n1 - 1; ++i) t.move(Move::Z(1));
                          t.move(Move::F(0));
                          for (int i = 0; i < n0 - 1; ++i) t.move(Move::Z(0));
                        });
      });
    run_tasks(rep.add("symmetry of F"), tasks, opt.exec);
  }
  {
    std::vector<Task> tasks;
    std::vector<Instance> triples;
    for (int n0 = 2; n0 <= opt.max_block; ++n0)
      for (int n2 = 2; n2 <= opt.max_block; ++n2) {
        auto l = labeled(mf, chains(G, {n0, opt.max_block, n2}));
        triples.insert(triples.end(), l.begin(), l.end());
      }
    for (auto& in : triples)
      tasks.push_back([&] {
        return relation(mf, in, [&](Tracker& t) { t.move(Move::F(0)), t.move(Move::F(0)); },
                        [&](Tracker& t) { t.move(Move::F(1)), t.move(Move::F(0)); });
      });
    run_tasks(rep.add("associativity of cuts"), tasks, opt.exec);
  }
  {
    // Gluing a cylinder S_2(x^{-1}, x) onto a boundary is the identity on trees.
    std::vector<Task> tasks;
    std::vector<GluingGraph> graphs;
    for (int n = 1; n <= opt.max_block; ++n)
      for (auto& g : g_tuples(G, n)) {
        GluingGraph p = single(g, std::vector<int>(n, G.identity()));
        p.free.pop_back();
        p.blocks.push_back({{G.inv(g.back()), g.back()}, {G.identity(), G.identity()}});
        p.cuts.push_back({{0, n - 1}, {1, 0}});
        p.free.push_back({1, 1});
        graphs.push_back(p);
      }
    const auto cyl = labeled(mf, graphs);
    for (auto& in : cyl)
      tasks.push_back([&] {
        auto r = mf.move_map(in.p, in.W, Move::F(0));
        const TauSpace &S = mf.tau_space(in.p, in.W), &T = mf.tau_space(r.target, in.W);
        Matrix id(T.dim(), S.dim());
        for (std::size_t j = 0; j < S.dim(); ++j) id(T.index(0, {S.decode(j).second[0]}), j) = 1;
        if (r.m != id) return Outcome::bad(Failure{describe(mf, in), {{"F", r.m}, {"expected", id}}});
        return Outcome::ok();
      });
    run_tasks(rep.add("cylinder"), tasks, opt.exec);
  }
  {
    // σ_{A,BC} against σ_{A,C} σ_{A,B} on a 4-holed block.
    std::vector<Task> tasks;
    const auto quads = singles(mf, 4, false);
    for (auto& in : quads)
      tasks.push_back([&] {
        return relation(mf, in,
                        [&](Tracker& t) {
                          gen_comm(t, 0, 1);
                          gen_comm(t, 0, 2);
                        },
                        [&](Tracker& t) {
                          t.split(0, 2);
                          t.move(Move::B(0));
                          const auto& g = t.graph();
                          t.move(Move::P(1, G.mul(G.inv(g.blocks[0].h[1]), g.blocks[1].h[0])));
                          t.move(Move::Z(0));
                          t.move(Move::F(0));
                          for (int i = 0; i < 3; ++i) t.move(Move::Z(0));
                        });
      });
    run_tasks(rep.add("braiding"), tasks, opt.exec);
  }
  {
    // On S_2(p, p^{-1}): braiding then rotation equals rotation, braiding, then P_p.
    std::vector<Task> tasks;
    const auto twos = opt.max_block >= 2 ? by_size[2] : singles(mf, 2, true);
    for (auto& in : twos)
      tasks.push_back([&] {
        const int p = in.p.blocks[0].g[0];
        return relation(mf, in, [&](Tracker& t) { t.braid2(0), t.move(Move::Z(0)); },
                        [&](Tracker& t) {
                          t.move(Move::Z(0));
                          t.braid2(0);
                          t.move(Move::P(0, p));
                        });
      });
    run_tasks(rep.add("dehn twist"), tasks, opt.exec);
  }
  {
    // Reordering the components of a disjoint union is the tensor flip.
    std::vector<Task> tasks;
    std::vector<GluingGraph> graphs;
    for (int n0 = 1; n0 <= std::min(opt.max_block, 2); ++n0)
      for (int n1 = 1; n1 <= opt.max_block; ++n1)
        for (auto& g0 : g_tuples(G, n0))
          for (auto& g1 : g_tuples(G, n1)) {
            GluingGraph p = single(g0, std::vector<int>(n0, G.identity()));
            p.blocks.push_back({g1, std::vector<int>(n1, G.identity())});
            for (int i = 0; i < n1; ++i) p.free.push_back({1, i});
            graphs.push_back(p);
          }
    const auto dis = labeled(mf, graphs);
    for (auto& in : dis)
      tasks.push_back([&] {
        GluingGraph q;
        q.blocks = {in.p.blocks[1], in.p.blocks[0]};
        for (auto s : in.p.free) q.free.push_back({1 - s.block, s.index});
        const TauSpace &S = mf.tau_space(in.p, in.W), &T = mf.tau_space(q, in.W);
        Matrix flip(T.dim(), S.dim()), back(S.dim(), T.dim());
        for (std::size_t j = 0; j < S.dim(); ++j) {
          auto t = S.decode(j).second;
          const std::size_t i = T.index(0, {t[1], t[0]});
          flip(i, j) = 1;
          back(j, i) = 1;
        }
        auto cp = mf.canonical_map(in.p, in.W), cq = mf.canonical_map(q, in.W);
        if (!(cp.target == cq.target) || cq.m * flip != cp.m || !(back * flip).is_identity())
          return Outcome::bad(Failure{describe(mf, in), {{"flip", flip}}});
        return Outcome::ok();
      });
    run_tasks(rep.add("disjoint union commutativity"), tasks, opt.exec);
  }
  {
    // T on a cut equals opening the cut, shifting both new boundaries by x, and regluing.
    std::vector<Task> tasks;
    for (auto& in : pairs)
      for (int x = 0; x < G.order(); ++x)
        tasks.push_back([&, x] {
          const int y = *cut_label(in.p, 0);
          auto lhs = mf.move_map(in.p, in.W, Move::T(0, G.mul(x, y)));
          Opened o = open_cut(mf, in.p, in.W, 0);
          std::vector<int> xs(o.U.free.size(), G.identity());
          xs[xs.size() - 2] = xs[xs.size() - 1] = x;
          GluingGraph shifted;
          std::vector<Mf::Shift> parts;
          for (std::size_t k = 0; k < o.vs.size(); ++k) {
            parts.push_back(mf.t_action(o.U, o.Ws[k], xs));
            shifted = parts.back().target;
          }
          GluingGraph reglued = shifted;
          reglued.free.resize(reglued.free.size() - 2);
          reglued.cuts.insert(reglued.cuts.begin(), in.p.cuts[0]);
          Opened o2 = open_cut(mf, reglued, in.W, 0);
          // parts[k] lands in the summand of o2 whose new labels are x·(v*, v).
          Matrix shift(o2.glue.cols(), o.glue.cols());
          for (std::size_t k = 0; k < o.vs.size(); ++k) {
            const int v2 = mf.cat().action[x][o.vs[k]];
            const auto pos = std::find(o2.vs.begin(), o2.vs.end(), v2) - o2.vs.begin();
            if (pos == static_cast<long>(o2.vs.size()) || o2.Ws[pos] != parts[k].W)
              return Outcome::bad(Failure{describe(mf, in) + ": shifted labels do not match a summand", {}});
            const Matrix& m = parts[k].m;
            for (std::size_t r = 0; r < m.rows(); ++r)
              for (std::size_t c = 0; c < m.cols(); ++c) shift(o2.offset[pos] + r, o.offset[k] + c) = m(r, c);
          }
          const Matrix rhs = o2.glue * shift * o.glue.inverse();
          const std::string w = describe(mf, in) + " x=" + G.name(x);
          if (!(reglued == lhs.target)) return Outcome::bad(Failure{w + ": regluing lands elsewhere", {}});
          if (rhs != lhs.m) return Outcome::bad(Failure{w, {{"T", lhs.m}, {"glue T_x unglue", rhs}}});
          return Outcome::ok();
        });
    run_tasks(rep.add("T-gluing compatibility"), tasks, opt.exec);
  }
  return rep;
}

}  // namespace gb
