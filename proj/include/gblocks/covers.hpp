#pragma once

#include "gblocks/group.hpp"

#include "json.hpp"

#include <algorithm>
#include <compare>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace gb {

struct CoverError : std::runtime_error {
  std::string invariant;
  CoverError(std::string inv, const std::string& detail)
      : std::runtime_error(inv + ": " + detail), invariant(std::move(inv)) {}
};

// S_n(g; h): cut-and-reglue data g (g_1...g_n = e) and marked-point lifts h.
template <class T>
struct Block {
  std::vector<T> g, h;
  int size() const { return static_cast<int>(g.size()); }
  friend bool operator==(const Block&, const Block&) = default;
};
using StandardBlock = Block<int>;

struct Slot {
  int block = 0, index = 0;
  friend auto operator<=>(const Slot&, const Slot&) = default;
};

// The from end carries V* and the to end carries V of the cut object.
struct Cut {
  Slot from, to;
  friend auto operator<=>(const Cut&, const Cut&) = default;
};

template <class T>
struct Graph {
  std::vector<Block<T>> blocks;
  std::vector<Cut> cuts;
  std::vector<Slot> free;  // ordered boundary circles of the cover
  friend bool operator==(const Graph&, const Graph&) = default;
};
using GluingGraph = Graph<int>;

enum class MoveKind { Z, B, F, P, T };

// Z/B/P act on `block`; F/T act on `cut`; x is the P element or the new T label.
struct Move {
  MoveKind kind = MoveKind::Z;
  int block = -1, cut = -1, x = -1;
  friend bool operator==(const Move&, const Move&) = default;

  static Move Z(int b) { return {MoveKind::Z, b, -1, -1}; }
  static Move B(int b) { return {MoveKind::B, b, -1, -1}; }
  static Move P(int b, int x) { return {MoveKind::P, b, -1, x}; }
  static Move F(int c) { return {MoveKind::F, -1, c, -1}; }
  static Move T(int c, int z) { return {MoveKind::T, -1, c, z}; }
};

// Group operations on element indices; Words provide the same interface.
struct GroupOps {
  const FiniteGroup* grp;
  int e() const { return grp->identity(); }
  int mul(int a, int b) const { return grp->mul(a, b); }
  int inv(int a) const { return grp->inv(a); }
};

// m_i = h_i g_i^{-1} h_i^{-1}; i is 0-based.
int monodromy(const FiniteGroup& grp, const StandardBlock& b, int i);
bool can_glue(const FiniteGroup& grp, const StandardBlock& b1, int i, const StandardBlock& b2, int j);
// Unique x with x g_i x^{-1} = g'_i and h_i x^{-1} = h'_i.
std::optional<int> block_iso(const FiniteGroup& grp, const StandardBlock& b1, const StandardBlock& b2);

// Throws CoverError naming the violated invariant.
void validate_graph(const FiniteGroup& grp, const GluingGraph& p);
// Common h at both ends of a cut (its marked-point lift), if they agree.
std::optional<int> cut_label(const GluingGraph& p, int c);

// For an F-applicable cut: the end that is the last slot of its block comes first.
struct FusionSides {
  Slot first, second;
  bool direct;  // first is the from end
};
std::optional<FusionSides> fusion_sides(const std::vector<int>& sizes, const Cut& c);

namespace detail {

[[noreturn]] void inapplicable(const std::string& what);

template <class T>
std::vector<int> sizes_of(const Graph<T>& p) {
  std::vector<int> s;
  for (auto& b : p.blocks) s.push_back(b.size());
  return s;
}

template <class T, class F>
void remap_slots(Graph<T>& p, F&& f) {
  for (auto& c : p.cuts) {
    c.from = f(c.from);
    c.to = f(c.to);
  }
  for (auto& s : p.free) s = f(s);
}

template <class T>
void check_block(const Graph<T>& p, int b) {
  if (b < 0 || b >= static_cast<int>(p.blocks.size())) inapplicable("block " + std::to_string(b) + " out of range");
}

template <class T>
void check_cut(const Graph<T>& p, int c) {
  if (c < 0 || c >= static_cast<int>(p.cuts.size())) inapplicable("cut " + std::to_string(c) + " out of range");
}

}  // namespace detail

// Z: S_n(g_n, g_1..g_{n-1}; h_n, h_1..h_{n-1}).
template <class T>
Graph<T> move_rotate(Graph<T> p, int b) {
  detail::check_block(p, b);
  auto& blk = p.blocks[b];
  const int n = blk.size();
  if (n == 0) detail::inapplicable("Z on an empty block");
  std::rotate(blk.g.rbegin(), blk.g.rbegin() + 1, blk.g.rend());
  std::rotate(blk.h.rbegin(), blk.h.rbegin() + 1, blk.h.rend());
  detail::remap_slots(p, [&](Slot s) { return s.block == b ? Slot{b, (s.index + 1) % n} : s; });
  return p;
}

// B: S_3(g_1, g_2 g_3 g_2^{-1}, g_2; h_1, h_3 g_2^{-1}, h_2).
template <class T, class Ops>
Graph<T> move_braid(const Ops& ops, Graph<T> p, int b) {
  detail::check_block(p, b);
  auto& blk = p.blocks[b];
  if (blk.size() != 3) detail::inapplicable("B needs a 3-holed block");
  auto g = blk.g;
  auto h = blk.h;
  blk.g = {g[0], ops.mul(ops.mul(g[1], g[2]), ops.inv(g[1])), g[1]};
  blk.h = {h[0], ops.mul(h[2], ops.inv(g[1])), h[1]};
  detail::remap_slots(p, [&](Slot s) {
    if (s.block == b && s.index > 0) s.index = 3 - s.index;
    return s;
  });
  return p;
}

// Two-holed braiding S_2(g_1 g_2 g_1^{-1}, g_1; h_2 g_1^{-1}, h_1); used by the Dehn relation only.
template <class T, class Ops>
Graph<T> move_braid2(const Ops& ops, Graph<T> p, int b) {
  detail::check_block(p, b);
  auto& blk = p.blocks[b];
  if (blk.size() != 2) detail::inapplicable("two-holed braiding needs a 2-holed block");
  auto g = blk.g;
  auto h = blk.h;
  blk.g = {ops.mul(ops.mul(g[0], g[1]), ops.inv(g[0])), g[0]};
  blk.h = {ops.mul(h[1], ops.inv(g[0])), h[0]};
  detail::remap_slots(p, [&](Slot s) {
    if (s.block == b) s.index = 1 - s.index;
    return s;
  });
  return p;
}

// P_x: g -> x g x^{-1}, h -> h x^{-1}.
template <class T, class Ops>
Graph<T> move_conjugate(const Ops& ops, Graph<T> p, int b, const T& x) {
  detail::check_block(p, b);
  auto& blk = p.blocks[b];
  const T xi = ops.inv(x);
  for (auto& g : blk.g) g = ops.mul(ops.mul(x, g), xi);
  for (auto& h : blk.h) h = ops.mul(h, xi);
  return p;
}

// T: moves the marked point of a cut whose ends share the lift y to z.
template <class T>
Graph<T> move_relabel(Graph<T> p, int c, const T& z) {
  detail::check_cut(p, c);
  auto& cut = p.cuts[c];
  auto& hf = p.blocks[cut.from.block].h[cut.from.index];
  auto& ht = p.blocks[cut.to.block].h[cut.to.index];
  if (!(hf == ht)) detail::inapplicable("T needs equal lifts at both cut ends");
  hf = z;
  ht = z;
  return p;
}

// F: merges S_{k+1} glued at its last slot to the first slot of S_{l+1} into S_{k+l};
// the merged block takes the smaller of the two block positions.
template <class T>
Graph<T> move_fuse(Graph<T> p, int c) {
  detail::check_cut(p, c);
  const Cut cut = p.cuts[c];
  if (cut.from.block == cut.to.block) detail::inapplicable("F on a self-gluing");
  if (!(p.blocks[cut.from.block].h[cut.from.index] == p.blocks[cut.to.block].h[cut.to.index]))
    detail::inapplicable("F needs equal lifts at both cut ends");
  auto sides = fusion_sides(detail::sizes_of(p), cut);
  if (!sides) detail::inapplicable("F needs the cut at the last slot of one block and the first of the other");
  const int bi = sides->first.block, bj = sides->second.block;
  const int k = p.blocks[bi].size() - 1;
  Block<T> merged;
  merged.g.assign(p.blocks[bi].g.begin(), p.blocks[bi].g.end() - 1);
  merged.h.assign(p.blocks[bi].h.begin(), p.blocks[bi].h.end() - 1);
  merged.g.insert(merged.g.end(), p.blocks[bj].g.begin() + 1, p.blocks[bj].g.end());
  merged.h.insert(merged.h.end(), p.blocks[bj].h.begin() + 1, p.blocks[bj].h.end());
  const int keep = std::min(bi, bj), drop = std::max(bi, bj);
  p.cuts.erase(p.cuts.begin() + c);
  detail::remap_slots(p, [&](Slot s) {
    Slot r = s;
    if (s.block == bi) r = {keep, s.index};
    else if (s.block == bj) r = {keep, k + s.index - 1};
    if (r.block > drop) --r.block;
    return r;
  });
  p.blocks[keep] = std::move(merged);
  p.blocks.erase(p.blocks.begin() + drop);
  return p;
}

// Inverse of F: block b becomes S(g[:k], y; h[:k], e) and a new last block S(y^{-1}, g[k:]; e, h[k:])
// with y = (g_1..g_k)^{-1}, joined by a new last cut; F on that cut gives p back.
template <class T, class Ops>
Graph<T> move_split(const Ops& ops, Graph<T> p, int b, int k) {
  detail::check_block(p, b);
  const int n = p.blocks[b].size();
  if (k < 1 || k >= n) detail::inapplicable("split position out of range");
  const Block<T> old = p.blocks[b];
  T y = ops.e();
  for (int i = 0; i < k; ++i) y = ops.mul(y, old.g[i]);
  y = ops.inv(y);
  Block<T> left, right;
  left.g.assign(old.g.begin(), old.g.begin() + k);
  left.h.assign(old.h.begin(), old.h.begin() + k);
  left.g.push_back(y);
  left.h.push_back(ops.e());
  right.g.push_back(ops.inv(y));
  right.h.push_back(ops.e());
  right.g.insert(right.g.end(), old.g.begin() + k, old.g.end());
  right.h.insert(right.h.end(), old.h.begin() + k, old.h.end());
  const int nb = static_cast<int>(p.blocks.size());
  p.blocks[b] = std::move(left);
  p.blocks.push_back(std::move(right));
  detail::remap_slots(p, [&](Slot s) { return s.block == b && s.index >= k ? Slot{nb, s.index - k + 1} : s; });
  p.cuts.push_back({{b, k}, {nb, 0}});
  return p;
}

// Applies a simple move; throws CoverError("inapplicable move") when it does not apply.
GluingGraph apply_move(const FiniteGroup& grp, const GluingGraph& p, const Move& m);
GluingGraph apply_moves(const FiniteGroup& grp, GluingGraph p, const std::vector<Move>& path);
bool applicable(const GluingGraph& p, const Move& m);

// Per block: Z, B (3-holed), P_x for x in G; per cut: F, T_z for z in G.
std::vector<Move> enumerate_moves(const FiniteGroup& grp, const GluingGraph& p);

// Blocks reordered to the lexicographically least encoding; cuts sorted.
struct Canonical {
  GluingGraph graph;
  std::vector<int> block_perm;  // new block index -> old block index
  std::vector<int> cut_perm;    // new cut index -> old cut index
};
Canonical canonical_form(const GluingGraph& p);
std::vector<int> graph_key(const GluingGraph& p);
bool equivalent(const GluingGraph& a, const GluingGraph& b);

// Breadth-first shortest move sequence from p1 to a graph equivalent to p2.
std::optional<std::vector<Move>> find_path(const FiniteGroup& grp, const GluingGraph& p1,
                                           const GluingGraph& p2, int max_depth);

GluingGraph cover_from_json(const FiniteGroup& grp, const nlohmann::json& j);
GluingGraph load_cover(const FiniteGroup& grp, const std::string& path);
nlohmann::json cover_to_json(const FiniteGroup& grp, const GluingGraph& p);

Move move_from_json(const FiniteGroup& grp, const nlohmann::json& j);
nlohmann::json move_to_json(const FiniteGroup& grp, const Move& m);
std::vector<Move> load_moves(const FiniteGroup& grp, const std::string& path);
std::string move_str(const FiniteGroup& grp, const Move& m);
std::string graph_str(const FiniteGroup& grp, const GluingGraph& p);

}  // namespace gb
