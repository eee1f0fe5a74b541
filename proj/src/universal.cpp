#include "gblocks/universal.hpp"

#include <functional>
#include <map>
#include <optional>

namespace gb {

Word WordOps::mul(const Word& a, const Word& b) const {
  Word r = a;
  for (int x : b) {
    if (!r.empty() && r.back() == -x) r.pop_back();
    else r.push_back(x);
  }
  return r;
}

Word WordOps::inv(const Word& a) const {
  Word r(a.rbegin(), a.rend());
  for (int& x : r) x = -x;
  return r;
}

namespace {

std::vector<int> components(const GluingGraph& p) {
  const int nb = static_cast<int>(p.blocks.size());
  std::vector<int> comp(nb, -1);
  std::vector<std::vector<int>> adj(nb);
  for (auto& c : p.cuts) {
    adj[c.from.block].push_back(c.to.block);
    adj[c.to.block].push_back(c.from.block);
  }
  int n = 0;
  for (int b = 0; b < nb; ++b) {
    if (comp[b] >= 0) continue;
    std::vector<int> stack{b};
    comp[b] = n;
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (int y : adj[x])
        if (comp[y] < 0) {
          comp[y] = n;
          stack.push_back(y);
        }
    }
    ++n;
  }
  return comp;
}

}  // namespace

UniversalGraph universal_initial(const GluingGraph& p) {
  const WordOps W;
  UniversalGraph u;
  u.cuts = p.cuts;
  u.free = p.free;
  for (auto& b : p.blocks) u.blocks.push_back({std::vector<Word>(b.size()), std::vector<Word>(b.size())});
  std::map<Slot, std::pair<bool, Slot>> where;  // true: free (index in .block), false: cut partner
  for (int a = 0; a < static_cast<int>(p.free.size()); ++a) where[p.free[a]] = {true, Slot{a, 0}};
  for (auto& c : p.cuts) {
    where[c.from] = {false, c.to};
    where[c.to] = {false, c.from};
  }
  const auto comp = components(p);
  std::map<int, int> root;  // component -> free index of its determined boundary
  for (int a = 0; a < static_cast<int>(p.free.size()); ++a) root[comp[p.free[a].block]] = a;

  std::function<void(int, int)> fill = [&](int b, int entry) {
    auto& g = u.blocks[b].g;
    const int n = static_cast<int>(g.size());
    for (int i = 0; i < n; ++i) {
      if (i == entry) continue;
      auto [is_free, o] = where.at(Slot{b, i});
      if (is_free) {
        g[i] = Word{o.block + 1};
      } else {
        fill(o.block, o.index);
        g[i] = W.inv(u.blocks[o.block].g[o.index]);
      }
    }
    Word prod;
    for (int k = 1; k < n; ++k) prod = W.mul(prod, g[(entry + k) % n]);
    g[entry] = W.inv(prod);
  };
  for (auto [c, a] : root) fill(p.free[a].block, p.free[a].index);
  return u;
}

UniversalGraph universal_apply(const UniversalGraph& u, const Move& m) {
  const WordOps W;
  switch (m.kind) {
    case MoveKind::Z: return move_rotate(u, m.block);
    case MoveKind::B: return move_braid(W, u, m.block);
    case MoveKind::P:
    case MoveKind::T: return u;
    case MoveKind::F: {
      detail::check_cut(u, m.cut);
      auto sides = fusion_sides(detail::sizes_of(u), u.cuts[m.cut]);
      if (!sides) detail::inapplicable("F needs the cut at the last slot of one block and the first of the other");
      const Word& hf = u.blocks[sides->first.block].h[sides->first.index];
      const Word& hs = u.blocks[sides->second.block].h[sides->second.index];
      auto aligned = move_conjugate(W, u, sides->second.block, W.mul(W.inv(hf), hs));
      return move_fuse(aligned, m.cut);
    }
  }
  return u;
}

UniversalGraph universal_permute(const UniversalGraph& u, const Canonical& c) {
  UniversalGraph r;
  r.cuts = c.graph.cuts;
  r.free = c.graph.free;
  for (int old : c.block_perm) r.blocks.push_back(u.blocks[old]);
  return r;
}

std::vector<int> universal_invariants(const UniversalGraph& u) {
  const WordOps W;
  std::vector<int> key;
  auto put = [&](const Word& w) {
    key.push_back(static_cast<int>(w.size()));
    key.insert(key.end(), w.begin(), w.end());
  };
  for (auto& s : u.free) {
    const Word& g = u.blocks[s.block].g[s.index];
    const Word& h = u.blocks[s.block].h[s.index];
    put(W.mul(W.mul(h, W.inv(g)), W.inv(h)));
  }
  // pref[b]: product of lifts along the arc from the component's first free boundary to block b.
  const int nb = static_cast<int>(u.blocks.size());
  std::vector<std::vector<std::pair<int, Slot>>> adj(nb);
  for (auto& c : u.cuts) {
    adj[c.from.block].push_back({c.from.index, c.to});
    adj[c.to.block].push_back({c.to.index, c.from});
  }
  std::vector<std::optional<Word>> pref(nb);
  for (auto& s0 : u.free) {
    if (pref[s0.block]) continue;
    pref[s0.block] = u.blocks[s0.block].h[s0.index];
    std::vector<int> stack{s0.block};
    while (!stack.empty()) {
      const int b = stack.back();
      stack.pop_back();
      for (auto& [i, o] : adj[b]) {
        if (pref[o.block]) continue;
        pref[o.block] = W.mul(W.mul(*pref[b], W.inv(u.blocks[b].h[i])), u.blocks[o.block].h[o.index]);
        stack.push_back(o.block);
      }
    }
  }
  for (auto& s : u.free) put(W.mul(*pref[s.block], W.inv(u.blocks[s.block].h[s.index])));
  return key;
}

}  // namespace gb
