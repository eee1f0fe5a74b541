#include "gblocks/msdata.hpp"

#include <algorithm>

namespace gb {

int BlockSpace::index(const Labels& tree) const {
  auto it = std::lower_bound(basis.begin(), basis.end(), tree);
  return it != basis.end() && *it == tree ? static_cast<int>(it - basis.begin()) : -1;
}

int GlueMap::column(const GlueVector& v) const {
  auto it = columns.find(v);
  return it == columns.end() ? -1 : it->second;
}

BlockSpace block_space(const GCategoryData& cat, const Labels& labels) {
  for (int a : labels)
    if (a < 0 || a >= cat.size()) throw std::out_of_range("unknown label index " + std::to_string(a));
  BlockSpace sp;
  sp.labels = labels;
  if (labels.empty()) {
    sp.basis.push_back({});
    return sp;
  }
  Labels cur{labels[0]};
  // depth-first in increasing label order gives lexicographic order
  auto rec = [&](auto&& self) -> void {
    const std::size_t k = cur.size();
    if (k == labels.size()) {
      if (cur.back() == cat.unit) sp.basis.push_back(cur);
      return;
    }
    for (int u : cat.products(cur.back(), labels[k])) {
      cur.push_back(u);
      self(self);
      cur.pop_back();
    }
  };
  rec(rec);
  return sp;
}

const BlockSpace& Ms::space(const Labels& labels) const {
  {
    std::shared_lock lock(mu_);
    auto it = spaces_.find(labels);
    if (it != spaces_.end()) return *it->second;
  }
  auto sp = std::make_unique<BlockSpace>(block_space(cat_, labels));
  std::unique_lock lock(mu_);
  auto& slot = spaces_[labels];
  if (!slot) slot = std::move(sp);
  return *slot;
}

Cyclotomic Ms::zeta(int v) const { return cat_.theta[v] * cat_.R(cat_.dual[v], v, cat_.unit); }

// Re-expresses x ⊗ (tree on `leaves` with intermediates `inter`) → d in the left-combed
// basis of (x, leaves...), recursively through inverse F-moves.
std::map<Labels, Cyclotomic> Ms::combine(int x, const Labels& leaves, const Labels& inter, int d) const {
  const std::size_t k = leaves.size();
  std::map<Labels, Cyclotomic> out;
  if (k == 0) {
    if (x == d) out[{x}] = Cyclotomic(1);
    return out;
  }
  if (k == 1) {
    out[{x, d}] = Cyclotomic(1);
    return out;
  }
  const int w = inter[k - 1], ak = leaves[k - 1], prev = inter[k - 2];
  const Labels lv(leaves.begin(), leaves.end() - 1), in(inter.begin(), inter.end() - 1);
  for (int e : cat_.fblock(x, prev, ak, d).rows) {
    Cyclotomic co = cat_.Finv(x, prev, ak, d, w, e);
    if (co.is_zero()) continue;
    for (auto& [t, v] : combine(x, lv, in, e)) {
      Labels nt = t;
      nt.push_back(d);
      out[nt] += co * v;
    }
  }
  return out;
}

BlockMap Ms::compute_rotation(const Labels& labels) const {
  const std::size_t n = labels.size();
  BlockMap bm;
  bm.source = labels;
  if (n) {
    bm.target.push_back(labels.back());
    bm.target.insert(bm.target.end(), labels.begin(), labels.end() - 1);
  }
  const BlockSpace& src = space(bm.source);
  const BlockSpace& tgt = space(bm.target);
  bm.m = Matrix(tgt.dim(), src.dim());
  const Labels leaves(labels.begin(), labels.end() - (n ? 1 : 0));
  for (std::size_t j = 0; j < src.dim(); ++j) {
    const Labels& u = src.basis[j];
    if (n <= 1) {
      bm.m(tgt.index(u), j) = Cyclotomic(1);
      continue;
    }
    const Cyclotomic z = zeta(labels.back());
    const Labels inter(u.begin(), u.end() - 1);
    for (auto& [t, v] : combine(labels.back(), leaves, inter, cat_.unit)) bm.m(tgt.index(t), j) += z * v;
  }
  return bm;
}

const BlockMap& Ms::rotation(const Labels& labels) const {
  {
    std::shared_lock lock(mu_);
    auto it = rotations_.find(labels);
    if (it != rotations_.end()) return *it->second;
  }
  auto bm = std::make_unique<BlockMap>(compute_rotation(labels));
  std::unique_lock lock(mu_);
  auto& slot = rotations_[labels];
  if (!slot) slot = std::move(bm);
  return *slot;
}

BlockMap Ms::rotation_pow(const Labels& labels, int m) const {
  const int n = static_cast<int>(labels.size());
  BlockMap out;
  out.source = out.target = labels;
  out.m = Matrix::identity(space(labels).dim());
  if (n == 0) return out;
  m = ((m % n) + n) % n;
  for (int i = 0; i < m; ++i) {
    const BlockMap& z = rotation(out.target);
    out.m = z.m * out.m;
    out.target = z.target;
  }
  return out;
}

BlockMap Ms::braiding(const Labels& labels) const {
  if (labels.size() != 3) throw std::invalid_argument("braiding needs exactly three labels");
  const int X = labels[0], A = labels[1], B = labels[2], one = cat_.unit;
  const int pB = cat_.act(cat_.deg[A], B);
  BlockMap bm;
  bm.source = labels;
  bm.target = {X, pB, A};
  const BlockSpace& src = space(bm.source);
  const BlockSpace& tgt = space(bm.target);
  bm.m = Matrix(tgt.dim(), src.dim());
  for (std::size_t j = 0; j < src.dim(); ++j) {
    const int u1 = src.basis[j][1];
    for (int f : cat_.fblock(X, A, B, one).cols) {
      Cyclotomic co = cat_.F(X, A, B, one, u1, f) * cat_.R(A, B, f);
      if (co.is_zero()) continue;
      for (int v : cat_.fblock(X, pB, A, one).rows) bm.m(tgt.index({X, v, one}), j) += co * cat_.Finv(X, pB, A, one, f, v);
    }
  }
  return bm;
}

const BlockMap& Ms::phi(const Labels& labels, int g) const {
  Labels key = labels;
  key.push_back(g);
  {
    std::shared_lock lock(mu_);
    auto it = phis_.find(key);
    if (it != phis_.end()) return *it->second;
  }
  auto bm = std::make_unique<BlockMap>(compute_phi(labels, g));
  std::unique_lock lock(mu_);
  auto& slot = phis_[key];
  if (!slot) slot = std::move(bm);
  return *slot;
}

BlockMap Ms::compute_phi(const Labels& labels, int g) const {
  BlockMap bm;
  bm.source = labels;
  for (int a : labels) bm.target.push_back(cat_.act(g, a));
  const BlockSpace& src = space(bm.source);
  const BlockSpace& tgt = space(bm.target);
  bm.m = Matrix(tgt.dim(), src.dim());
  for (std::size_t j = 0; j < src.dim(); ++j) {
    const Labels& u = src.basis[j];
    Cyclotomic co(1);
    Labels gu;
    for (std::size_t k = 0; k < u.size(); ++k) {
      if (k) co *= cat_.U(g, u[k - 1], labels[k], u[k]);
      gu.push_back(cat_.act(g, u[k]));
    }
    bm.m(tgt.index(gu), j) = co;
  }
  return bm;
}

GlueMap Ms::compute_gluing(const Labels& A, const Labels& B, const Labels& C) const {
  GlueMap gm;
  gm.A = A;
  gm.B = B;
  gm.C = C;
  gm.target = A;
  gm.target.insert(gm.target.end(), B.begin(), B.end());
  gm.target.insert(gm.target.end(), C.begin(), C.end());
  auto left_of = [&](int V) {
    Labels l = A;
    l.push_back(cat_.dual[V]);
    l.insert(l.end(), C.begin(), C.end());
    return l;
  };
  auto right_of = [&](int V) {
    Labels r{V};
    r.insert(r.end(), B.begin(), B.end());
    return r;
  };
  for (int V = 0; V < cat_.size(); ++V)
    for (const auto& x : space(left_of(V)).basis)
      for (const auto& y : space(right_of(V)).basis) {
        gm.columns[GlueVector{V, x, y}] = static_cast<int>(gm.source.size());
        gm.source.push_back(GlueVector{V, x, y});
      }
  const BlockSpace& tgt = space(gm.target);
  gm.m = Matrix(tgt.dim(), gm.source.size());

  const int m = static_cast<int>(C.size());
  Labels mid = C;  // C + A + B
  mid.insert(mid.end(), A.begin(), A.end());
  mid.insert(mid.end(), B.begin(), B.end());
  const BlockSpace& midsp = space(mid);
  const BlockMap back = rotation_pow(mid, static_cast<int>(mid.size()) - m);  // Z^{-m}
  const std::size_t k = C.size() + A.size();
  for (int V = 0; V < cat_.size(); ++V) {
    const Labels left = left_of(V);
    const BlockSpace& lb = space(left);
    const BlockSpace& rb = space(right_of(V));
    if (!lb.dim() || !rb.dim()) continue;
    const BlockMap fwd = rotation_pow(left, m);  // onto C + A + V*
    const BlockSpace& rl = space(fwd.target);
    for (std::size_t i = 0; i < lb.dim(); ++i)
      for (const auto& y : rb.basis) {
        const int col = gm.column({V, lb.basis[i], y});
        std::vector<Cyclotomic> vec(midsp.dim());
        for (std::size_t r = 0; r < rl.dim(); ++r) {
          const Cyclotomic& co = fwd.m(r, i);
          if (co.is_zero()) continue;
          Labels t(rl.basis[r].begin(), rl.basis[r].begin() + k);
          t.insert(t.end(), y.begin() + 1, y.end());
          vec[midsp.index(t)] += co;
        }
        for (std::size_t row = 0; row < tgt.dim(); ++row) {
          Cyclotomic s;
          for (std::size_t q = 0; q < vec.size(); ++q)
            if (!vec[q].is_zero()) s += back.m(row, q) * vec[q];
          gm.m(row, col) = s;
        }
      }
  }
  if (gm.m.is_square()) {
    try {
      gm.inv = gm.m.inverse();
    } catch (const std::domain_error&) {
    }
  }
  return gm;
}

const GlueMap& Ms::generalized_gluing(const Labels& A, const Labels& B, const Labels& C) const {
  thread_local Labels key;
  key.assign(A.begin(), A.end());
  key.push_back(-1);
  key.insert(key.end(), B.begin(), B.end());
  key.push_back(-1);
  key.insert(key.end(), C.begin(), C.end());
  {
    std::shared_lock lock(mu_);
    auto it = gluings_.find(key);
    if (it != gluings_.end()) return *it->second;
  }
  auto gm = std::make_unique<GlueMap>(compute_gluing(A, B, C));
  std::unique_lock lock(mu_);
  auto& slot = gluings_[key];
  if (!slot) slot = std::move(gm);
  return *slot;
}

BlockMap Ms::generalized_commutativity(const Labels& labels, int pos) const {
  if (pos < 0 || pos + 1 >= static_cast<int>(labels.size()))
    throw std::invalid_argument("commutativity: position out of range");
  const Labels A(labels.begin(), labels.begin() + pos), B(labels.begin() + pos + 2, labels.end());
  const int X = labels[pos], Y = labels[pos + 1], pY = cat_.act(cat_.deg[X], Y);
  const GlueMap& g1 = generalized_gluing(A, {X, Y}, B);
  const GlueMap& g2 = generalized_gluing(A, {pY, X}, B);
  if (g1.m.rows() && g1.inv.rows() != g1.m.rows()) throw std::domain_error("gluing map not invertible");
  Matrix mid(g2.source.size(), g1.source.size());
  for (std::size_t j = 0; j < g1.source.size(); ++j) {
    const auto& [V, x, y] = g1.source[j];
    const BlockMap s = braiding({V, X, Y});
    const BlockSpace& sb = space(s.source);
    const BlockSpace& tb = space(s.target);
    const int yi = sb.index(y);
    for (std::size_t i2 = 0; i2 < tb.dim(); ++i2) {
      const Cyclotomic& co = s.m(i2, yi);
      if (!co.is_zero()) mid(g2.column({V, x, tb.basis[i2]}), j) += co;
    }
  }
  BlockMap bm;
  bm.source = labels;
  bm.target = g2.target;
  bm.m = g1.m.rows() ? g2.m * mid * g1.inv : Matrix(0, 0);
  return bm;
}

BlockMap Ms::inverse_commutativity(const Labels& labels, int pos) const {
  if (pos < 0 || pos + 1 >= static_cast<int>(labels.size()))
    throw std::invalid_argument("commutativity: position out of range");
  const int Y = labels[pos], A = labels[pos + 1];
  const int ri = cat_.group.inv(cat_.deg[A]);
  Labels src = labels;
  src[pos] = A;
  src[pos + 1] = cat_.act(ri, Y);
  BlockMap s = generalized_commutativity(src, pos);
  BlockMap bm;
  bm.source = labels;
  bm.target = src;
  bm.m = s.m.rows() ? s.m.inverse() : s.m;
  return bm;
}

}  // namespace gb
