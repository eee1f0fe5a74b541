#include "gblocks/covers.hpp"

#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

namespace gb {

namespace detail {
void inapplicable(const std::string& what) { throw CoverError("inapplicable move", what); }
}  // namespace detail

int monodromy(const FiniteGroup& grp, const StandardBlock& b, int i) {
  if (i < 0 || i >= b.size()) throw std::out_of_range("boundary index " + std::to_string(i));
  return grp.mul(grp.mul(b.h[i], grp.inv(b.g[i])), grp.inv(b.h[i]));
}

bool can_glue(const FiniteGroup& grp, const StandardBlock& b1, int i, const StandardBlock& b2, int j) {
  return grp.mul(monodromy(grp, b1, i), monodromy(grp, b2, j)) == grp.identity();
}

std::optional<int> block_iso(const FiniteGroup& grp, const StandardBlock& b1, const StandardBlock& b2) {
  if (b1.size() != b2.size()) return std::nullopt;
  std::vector<int> cands;
  if (b1.size() > 0) {
    cands.push_back(grp.mul(grp.inv(b2.h[0]), b1.h[0]));  // h' = h x^{-1}
  } else {
    cands.push_back(grp.identity());
  }
  for (int x : cands) {
    const int xi = grp.inv(x);
    bool ok = true;
    for (int i = 0; i < b1.size() && ok; ++i)
      ok = grp.conj(x, b1.g[i]) == b2.g[i] && grp.mul(b1.h[i], xi) == b2.h[i];
    if (ok) return x;
  }
  return std::nullopt;
}

std::optional<int> cut_label(const GluingGraph& p, int c) {
  const Cut& cut = p.cuts.at(c);
  const int a = p.blocks[cut.from.block].h[cut.from.index];
  const int b = p.blocks[cut.to.block].h[cut.to.index];
  if (a != b) return std::nullopt;
  return a;
}

std::optional<FusionSides> fusion_sides(const std::vector<int>& sizes, const Cut& c) {
  if (c.from.block == c.to.block) return std::nullopt;
  auto last = [&](Slot s) { return s.index == sizes[s.block] - 1; };
  if (last(c.from) && c.to.index == 0) return FusionSides{c.from, c.to, true};
  if (last(c.to) && c.from.index == 0) return FusionSides{c.to, c.from, false};
  return std::nullopt;
}

void validate_graph(const FiniteGroup& grp, const GluingGraph& p) {
  const int nb = static_cast<int>(p.blocks.size());
  std::vector<std::vector<int>> used(nb);
  for (int b = 0; b < nb; ++b) {
    const auto& blk = p.blocks[b];
    if (blk.g.size() != blk.h.size()) throw CoverError("schema", "block " + std::to_string(b) + ": |g| != |h|");
    int prod = grp.identity();
    for (int i = 0; i < blk.size(); ++i) {
      if (!grp.valid(blk.g[i]) || !grp.valid(blk.h[i]))
        throw CoverError("schema", "block " + std::to_string(b) + ": bad group element");
      prod = grp.mul(prod, blk.g[i]);
    }
    if (prod != grp.identity()) throw CoverError("block-product", "block " + std::to_string(b) + ": g_1...g_n != e");
    used[b].assign(blk.size(), 0);
  }
  auto mark = [&](Slot s) {
    if (s.block < 0 || s.block >= nb || s.index < 0 || s.index >= p.blocks[s.block].size())
      throw CoverError("slot-range", "(" + std::to_string(s.block) + "," + std::to_string(s.index) + ")");
    if (used[s.block][s.index]++)
      throw CoverError("slot-coverage", "slot (" + std::to_string(s.block) + "," + std::to_string(s.index) +
                                            ") used twice");
  };
  for (auto& c : p.cuts) {
    mark(c.from);
    mark(c.to);
  }
  for (auto& s : p.free) mark(s);
  for (int b = 0; b < nb; ++b)
    for (int i = 0; i < p.blocks[b].size(); ++i)
      if (!used[b][i])
        throw CoverError("slot-coverage", "slot (" + std::to_string(b) + "," + std::to_string(i) +
                                              ") is neither cut nor free");
  std::vector<int> parent(nb);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t c = 0; c < p.cuts.size(); ++c) {
    const Cut& cut = p.cuts[c];
    if (!can_glue(grp, p.blocks[cut.from.block], cut.from.index, p.blocks[cut.to.block], cut.to.index))
      throw CoverError("cut-admissibility", "cut " + std::to_string(c) + ": m_a m_b != e");
    const int a = find(cut.from.block), b = find(cut.to.block);
    if (a == b) throw CoverError("genus-zero", "cut " + std::to_string(c) + " closes a cycle");
    parent[a] = b;
  }
}

GluingGraph apply_move(const FiniteGroup& grp, const GluingGraph& p, const Move& m) {
  const GroupOps ops{&grp};
  switch (m.kind) {
    case MoveKind::Z: return move_rotate(p, m.block);
    case MoveKind::B: return move_braid(ops, p, m.block);
    case MoveKind::P:
      if (!grp.valid(m.x)) detail::inapplicable("P needs a group element");
      return move_conjugate(ops, p, m.block, m.x);
    case MoveKind::T:
      if (!grp.valid(m.x)) detail::inapplicable("T needs a group element");
      return move_relabel(p, m.cut, m.x);
    case MoveKind::F: return move_fuse(p, m.cut);
  }
  detail::inapplicable("unknown move");
}

GluingGraph apply_moves(const FiniteGroup& grp, GluingGraph p, const std::vector<Move>& path) {
  for (auto& m : path) p = apply_move(grp, p, m);
  return p;
}

bool applicable(const GluingGraph& p, const Move& m) {
  const int nb = static_cast<int>(p.blocks.size()), nc = static_cast<int>(p.cuts.size());
  switch (m.kind) {
    case MoveKind::Z: return m.block >= 0 && m.block < nb && p.blocks[m.block].size() > 0;
    case MoveKind::B: return m.block >= 0 && m.block < nb && p.blocks[m.block].size() == 3;
    case MoveKind::P: return m.block >= 0 && m.block < nb;
    case MoveKind::T: return m.cut >= 0 && m.cut < nc && cut_label(p, m.cut).has_value();
    case MoveKind::F:
      return m.cut >= 0 && m.cut < nc && cut_label(p, m.cut).has_value() &&
             fusion_sides(detail::sizes_of(p), p.cuts[m.cut]).has_value();
  }
  return false;
}

std::vector<Move> enumerate_moves(const FiniteGroup& grp, const GluingGraph& p) {
  std::vector<Move> out;
  for (int b = 0; b < static_cast<int>(p.blocks.size()); ++b) {
    if (p.blocks[b].size() > 0) out.push_back(Move::Z(b));
    if (p.blocks[b].size() == 3) out.push_back(Move::B(b));
    for (int x = 0; x < grp.order(); ++x) out.push_back(Move::P(b, x));
  }
  for (int c = 0; c < static_cast<int>(p.cuts.size()); ++c) {
    if (applicable(p, Move::F(c))) out.push_back(Move::F(c));
    if (cut_label(p, c))
      for (int z = 0; z < grp.order(); ++z) out.push_back(Move::T(c, z));
  }
  return out;
}

std::vector<int> graph_key(const GluingGraph& p) {
  std::vector<int> k{static_cast<int>(p.blocks.size())};
  for (auto& b : p.blocks) {
    k.push_back(b.size());
    k.insert(k.end(), b.g.begin(), b.g.end());
    k.insert(k.end(), b.h.begin(), b.h.end());
  }
  k.push_back(static_cast<int>(p.cuts.size()));
  for (auto& c : p.cuts) k.insert(k.end(), {c.from.block, c.from.index, c.to.block, c.to.index});
  k.push_back(static_cast<int>(p.free.size()));
  for (auto& s : p.free) k.insert(k.end(), {s.block, s.index});
  return k;
}

Canonical canonical_form(const GluingGraph& p) {
  const int nb = static_cast<int>(p.blocks.size());
  std::vector<int> perm(nb);
  std::iota(perm.begin(), perm.end(), 0);
  std::optional<Canonical> best;
  std::vector<int> best_key;
  do {
    std::vector<int> inv(nb);
    for (int n = 0; n < nb; ++n) inv[perm[n]] = n;
    auto re = [&](Slot s) { return Slot{inv[s.block], s.index}; };
    Canonical c;
    c.block_perm = perm;
    for (int n = 0; n < nb; ++n) c.graph.blocks.push_back(p.blocks[perm[n]]);
    std::vector<std::pair<Cut, int>> cuts;
    for (std::size_t i = 0; i < p.cuts.size(); ++i)
      cuts.push_back({Cut{re(p.cuts[i].from), re(p.cuts[i].to)}, static_cast<int>(i)});
    std::sort(cuts.begin(), cuts.end());
    for (auto& [cut, old] : cuts) {
      c.graph.cuts.push_back(cut);
      c.cut_perm.push_back(old);
    }
    for (auto& s : p.free) c.graph.free.push_back(re(s));
    auto key = graph_key(c.graph);
    if (!best || key < best_key) {
      best_key = std::move(key);
      best = std::move(c);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::move(*best);
}

bool equivalent(const GluingGraph& a, const GluingGraph& b) {
  return canonical_form(a).graph == canonical_form(b).graph;
}

std::optional<std::vector<Move>> find_path(const FiniteGroup& grp, const GluingGraph& p1,
                                           const GluingGraph& p2, int max_depth) {
  if (p1.free.size() != p2.free.size()) return std::nullopt;
  const auto target = graph_key(canonical_form(p2).graph);
  struct Node {
    GluingGraph graph;
    int parent;
    Move move;
  };
  std::vector<Node> nodes{{p1, -1, {}}};
  std::map<std::vector<int>, int> seen{{graph_key(canonical_form(p1).graph), 0}};
  auto path_to = [&](int n) {
    std::vector<Move> path;
    for (; nodes[n].parent >= 0; n = nodes[n].parent) path.push_back(nodes[n].move);
    std::reverse(path.begin(), path.end());
    return path;
  };
  if (seen.begin()->first == target) return std::vector<Move>{};
  std::size_t layer_begin = 0;
  for (int depth = 0; depth < max_depth; ++depth) {
    const std::size_t layer_end = nodes.size();
    for (std::size_t n = layer_begin; n < layer_end; ++n) {
      for (const Move& m : enumerate_moves(grp, nodes[n].graph)) {
        GluingGraph next = apply_move(grp, nodes[n].graph, m);
        auto key = graph_key(canonical_form(next).graph);
        if (seen.count(key)) continue;
        seen.emplace(key, static_cast<int>(nodes.size()));
        nodes.push_back({std::move(next), static_cast<int>(n), m});
        if (key == target) return path_to(static_cast<int>(nodes.size()) - 1);
      }
    }
    layer_begin = layer_end;
    if (layer_begin == nodes.size()) break;
  }
  return std::nullopt;
}

// ---- JSON ----

namespace {

int element(const FiniteGroup& grp, const nlohmann::json& v, const std::string& where) {
  try {
    if (v.is_string()) return grp.index(v.get<std::string>());
    if (v.is_number_integer()) {
      const int x = v.get<int>();
      if (grp.valid(x)) return x;
    }
  } catch (const GroupError&) {
  }
  throw CoverError("schema", where + ": bad group element " + v.dump());
}

Slot slot_of(const nlohmann::json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number_integer() || !v[1].is_number_integer())
    throw CoverError("schema", where + ": slots are [block, boundary]");
  return {v[0].get<int>(), v[1].get<int>()};
}

nlohmann::json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw CoverError("schema", path + ": " + e.what());
  }
}

}  // namespace

GluingGraph cover_from_json(const FiniteGroup& grp, const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("blocks") || !j["blocks"].is_array())
    throw CoverError("schema", "cover needs a \"blocks\" array");
  GluingGraph p;
  for (std::size_t b = 0; b < j["blocks"].size(); ++b) {
    const auto& jb = j["blocks"][b];
    const std::string where = "block " + std::to_string(b);
    if (!jb.is_object() || !jb.contains("g") || !jb["g"].is_array()) throw CoverError("schema", where + ": needs \"g\"");
    StandardBlock blk;
    for (auto& v : jb["g"]) blk.g.push_back(element(grp, v, where));
    if (jb.contains("h")) {
      for (auto& v : jb["h"]) blk.h.push_back(element(grp, v, where));
    } else {
      blk.h.assign(blk.g.size(), grp.identity());
    }
    p.blocks.push_back(std::move(blk));
  }
  std::vector<std::optional<int>> labels;
  for (auto& jc : j.value("cuts", nlohmann::json::array())) {
    if (!jc.is_object() || !jc.contains("from") || !jc.contains("to"))
      throw CoverError("schema", "cuts need \"from\" and \"to\"");
    p.cuts.push_back({slot_of(jc["from"], "cut"), slot_of(jc["to"], "cut")});
    labels.push_back(jc.contains("label") ? std::optional<int>(element(grp, jc["label"], "cut")) : std::nullopt);
  }
  for (auto& js : j.value("free", nlohmann::json::array())) p.free.push_back(slot_of(js, "free"));
  validate_graph(grp, p);
  for (std::size_t c = 0; c < labels.size(); ++c)
    if (labels[c] && cut_label(p, static_cast<int>(c)) != labels[c])
      throw CoverError("cut-lift", "cut " + std::to_string(c) + ": label differs from the h at its ends");
  return p;
}

GluingGraph load_cover(const FiniteGroup& grp, const std::string& path) {
  return cover_from_json(grp, read_json(path));
}

nlohmann::json cover_to_json(const FiniteGroup& grp, const GluingGraph& p) {
  nlohmann::json j;
  j["blocks"] = nlohmann::json::array();
  for (auto& b : p.blocks) {
    nlohmann::json jb{{"g", nlohmann::json::array()}, {"h", nlohmann::json::array()}};
    for (int x : b.g) jb["g"].push_back(grp.name(x));
    for (int x : b.h) jb["h"].push_back(grp.name(x));
    j["blocks"].push_back(jb);
  }
  j["cuts"] = nlohmann::json::array();
  for (int c = 0; c < static_cast<int>(p.cuts.size()); ++c) {
    nlohmann::json jc{{"from", {p.cuts[c].from.block, p.cuts[c].from.index}},
                      {"to", {p.cuts[c].to.block, p.cuts[c].to.index}}};
    if (auto y = cut_label(p, c)) jc["label"] = grp.name(*y);
    j["cuts"].push_back(jc);
  }
  j["free"] = nlohmann::json::array();
  for (auto& s : p.free) j["free"].push_back({s.block, s.index});
  return j;
}

Move move_from_json(const FiniteGroup& grp, const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw CoverError("schema", "moves need a \"kind\"");
  const std::string k = j["kind"].get<std::string>();
  auto num = [&](const char* f) {
    if (!j.contains(f) || !j[f].is_number_integer())
      throw CoverError("schema", "move " + k + " needs integer \"" + f + "\"");
    return j[f].get<int>();
  };
  if (k == "Z") return Move::Z(num("block"));
  if (k == "B") return Move::B(num("block"));
  if (k == "F") return Move::F(num("cut"));
  if (k == "P") {
    if (!j.contains("x")) throw CoverError("schema", "move P needs \"x\"");
    return Move::P(num("block"), element(grp, j["x"], "move P"));
  }
  if (k == "T") {
    if (!j.contains("z")) throw CoverError("schema", "move T needs \"z\"");
    return Move::T(num("cut"), element(grp, j["z"], "move T"));
  }
  throw CoverError("schema", "unknown move kind " + k);
}

nlohmann::json move_to_json(const FiniteGroup& grp, const Move& m) {
  switch (m.kind) {
    case MoveKind::Z: return {{"kind", "Z"}, {"block", m.block}};
    case MoveKind::B: return {{"kind", "B"}, {"block", m.block}};
    case MoveKind::F: return {{"kind", "F"}, {"cut", m.cut}};
    case MoveKind::P: return {{"kind", "P"}, {"block", m.block}, {"x", grp.name(m.x)}};
    case MoveKind::T: return {{"kind", "T"}, {"cut", m.cut}, {"z", grp.name(m.x)}};
  }
  return {};
}

std::vector<Move> load_moves(const FiniteGroup& grp, const std::string& path) {
  auto j = read_json(path);
  if (j.is_object() && j.contains("moves")) j = j["moves"];
  if (!j.is_array()) throw CoverError("schema", "a move script is an array of moves");
  std::vector<Move> out;
  for (auto& m : j) out.push_back(move_from_json(grp, m));
  return out;
}

std::string move_str(const FiniteGroup& grp, const Move& m) {
  switch (m.kind) {
    case MoveKind::Z: return "Z(" + std::to_string(m.block) + ")";
    case MoveKind::B: return "B(" + std::to_string(m.block) + ")";
    case MoveKind::F: return "F(" + std::to_string(m.cut) + ")";
    case MoveKind::P: return "P(" + std::to_string(m.block) + "," + grp.name(m.x) + ")";
    case MoveKind::T: return "T(" + std::to_string(m.cut) + "," + grp.name(m.x) + ")";
  }
  return "?";
}

std::string graph_str(const FiniteGroup& grp, const GluingGraph& p) {
  std::ostringstream os;
  for (std::size_t b = 0; b < p.blocks.size(); ++b) {
    if (b) os << " + ";
    os << "S" << p.blocks[b].size() << "(";
    for (int i = 0; i < p.blocks[b].size(); ++i) os << (i ? "," : "") << grp.name(p.blocks[b].g[i]);
    os << ";";
    for (int i = 0; i < p.blocks[b].size(); ++i) os << (i ? "," : "") << grp.name(p.blocks[b].h[i]);
    os << ")";
  }
  if (p.blocks.empty()) os << "S0";
  for (auto& c : p.cuts)
    os << " [" << c.from.block << "." << c.from.index << "-" << c.to.block << "." << c.to.index << "]";
  return os.str();
}

}  // namespace gb
