#include "gblocks/msdata.hpp"

namespace gb {

namespace {

// All label tuples of length len, lexicographic.
std::vector<Labels> tuples(int nlabels, int len) {
  std::vector<Labels> out;
  Labels t(len, 0);
  while (true) {
    out.push_back(t);
    int k = len;
    while (k > 0 && ++t[k - 1] == nlabels) t[--k] = 0;
    if (k == 0) return out;
  }
}

Labels cat_labels(std::initializer_list<const Labels*> parts) {
  Labels out;
  for (const Labels* p : parts) out.insert(out.end(), p->begin(), p->end());
  return out;
}

// Splits of every tuple of total length ≤ bound into `parts` consecutive pieces.
std::vector<std::vector<Labels>> splits(int nlabels, int bound, int parts, int min_first = 0) {
  std::vector<std::vector<Labels>> out;
  for (int len = 0; len <= bound; ++len)
    for (const auto& t : tuples(nlabels, len)) {
      std::vector<int> cut(parts + 1, 0);
      cut[parts] = len;
      auto rec = [&](auto&& self, int i) -> void {
        if (i == parts) {
          if (cut[1] - cut[0] < min_first) return;
          std::vector<Labels> s;
          for (int k = 0; k < parts; ++k) s.emplace_back(t.begin() + cut[k], t.begin() + cut[k + 1]);
          out.push_back(std::move(s));
          return;
        }
        for (int c = cut[i - 1]; c <= len; ++c) {
          cut[i] = c;
          self(self, i + 1);
        }
      };
      if (parts == 1)
        out.push_back({t});
      else
        rec(rec, 1);
    }
  return out;
}

Outcome compare(std::string witness, const Matrix& lhs, const Matrix& rhs) {
  if (lhs == rhs) return Outcome::ok();
  return Outcome::bad(Failure{std::move(witness), {{"lhs", lhs}, {"rhs", rhs}}});
}

std::string parts_str(const GCategoryData& cat, const std::vector<Labels>& p) {
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "|" : "") + label_list(cat, p[i]);
  return s;
}

// G2 · (f ⊗ g) · G1^{-1}: applies f to the left and g to the right factor of each source vector of G1.
template <class LeftF, class RightF>
Matrix through_gluing(const Ms& ms, const GlueMap& g1, const GlueMap& g2, LeftF left, RightF right, bool invert = true) {
  Matrix mid(g2.source.size(), g1.source.size());
  for (std::size_t j = 0; j < g1.source.size(); ++j) {
    const auto& [V, x, y] = g1.source[j];
    auto [Vl, lmap] = left(V);
    auto [Vr, rmap] = right(V);
    (void)Vr;
    const BlockSpace& ls = ms.space(lmap.source);
    const BlockSpace& lt = ms.space(lmap.target);
    const BlockSpace& rs = ms.space(rmap.source);
    const BlockSpace& rt = ms.space(rmap.target);
    const int xi = ls.index(x), yi = rs.index(y);
    for (std::size_t a = 0; a < lt.dim(); ++a) {
      const Cyclotomic& ca = lmap.m(a, xi);
      if (ca.is_zero()) continue;
      for (std::size_t b = 0; b < rt.dim(); ++b) {
        const Cyclotomic& cb = rmap.m(b, yi);
        if (cb.is_zero()) continue;
        mid(g2.column({Vl, lt.basis[a], rt.basis[b]}), j) += ca * cb;
      }
    }
  }
  return invert ? g2.m * mid * g1.inv : g2.m * mid;
}

}  // namespace

Report check_ms_axioms(const GCategoryData& cat, MsOptions opt) {
  Ms ms(cat);
  const FiniteGroup& G = cat.group;
  const int n = cat.size(), ng = G.order(), bound = opt.bound;
  const Exec exec = opt.exec;
  Report rep;
  rep.title = "MS axioms (bound " + std::to_string(bound) + ")";
  rep.notes.push_back(
      "dehn twist: the unlabeled map in the Dehn-twist square is taken to be phi_p, p = deg A "
      "(the G-invariance isomorphism)");

  // Normalization: the empty conformal block is k and every structure map on it is [1].
  auto& norm = rep.add("normalization");
  norm.instances = 1;
  {
    const Matrix one = Matrix::identity(1);
    if (ms.space({}).dim() != 1 || ms.rotation({}).m != one) norm.fail("<> is not k with Z = [1]");
    for (int g = 0; g < ng; ++g)
      if (ms.phi({}, g).m != one) norm.fail("phi_" + G.name(g) + " on <> is not [1]");
    for (int v = 0; v < n; ++v)
      if (static_cast<long long>(ms.space({v}).dim()) != (v == cat.unit ? 1 : 0))
        norm.fail("dim <" + cat.labels[v] + "> != delta_{" + cat.labels[v] + ",1}");
  }

  auto& nondeg = rep.add("non-degeneracy");
  run_instances(nondeg, n, exec, [&](std::size_t i) {
    const int x = static_cast<int>(i);
    for (int v = 0; v < n; ++v)
      if (ms.space({x, v}).dim()) return Outcome::ok();
    return Outcome::bad(Failure{"no V with <" + cat.labels[x] + ",V> != 0", {}});
  });

  std::vector<Labels> all;
  for (int len = 1; len <= bound; ++len)
    for (auto& t : tuples(n, len))
      if (fusion_dim(cat, t)) all.push_back(std::move(t));

  auto& rot = rep.add("rotation Z^n = id");
  run_instances(rot, all.size(), exec, [&](std::size_t i) {
    const Labels& t = all[i];
    Matrix m = Matrix::identity(ms.space(t).dim());
    Labels cur = t;
    for (std::size_t k = 0; k < t.size(); ++k) {
      const BlockMap& z = ms.rotation(cur);
      m = z.m * m;
      cur = z.target;
    }
    if (cur != t || !m.is_identity()) return Outcome::bad(Failure{label_list(cat, t), {{"Z^n", m}}});
    return Outcome::ok();
  });

  // Gluing instances (A | B) with |A| + |B| ≤ bound.
  auto ab = splits(n, bound, 2);
  std::erase_if(ab, [&](const auto& p) { return fusion_dim(cat, cat_labels({&p[0], &p[1]})) == 0; });

  auto& ginv = rep.add("gluing is an isomorphism");
  run_instances(ginv, ab.size(), exec, [&](std::size_t i) {
    const GlueMap& g = ms.gluing(ab[i][0], ab[i][1]);
    if (!g.m.is_square() || g.inv.rows() != g.m.rows())
      return Outcome::bad(Failure{parts_str(cat, ab[i]), {{"G", g.m}}});
    return Outcome::ok();
  });

  // Z^l 𝒢_V(x ⊗ y) = ζ(V) 𝒢_{V*}(Z^{-1} y ⊗ Z x), l = |B|.
  auto& sym = rep.add("symmetry of gluing");
  run_instances(sym, ab.size(), exec, [&](std::size_t i) {
    const Labels &A = ab[i][0], &B = ab[i][1];
    const GlueMap& g = ms.gluing(A, B);
    const GlueMap& g2 = ms.gluing(B, A);
    const BlockMap zl = ms.rotation_pow(g.target, static_cast<int>(B.size()));
    Matrix lhs = zl.m * g.m;
    Matrix rhs(lhs.rows(), lhs.cols());
    for (std::size_t j = 0; j < g.source.size(); ++j) {
      const auto& [V, x, y] = g.source[j];
      const int Vs = cat.dual[V];
      Labels left = A, right{V};
      left.push_back(Vs);
      right.insert(right.end(), B.begin(), B.end());
      const BlockMap zx = ms.rotation_pow(left, 1);
      const BlockMap zy = ms.rotation_pow(right, static_cast<int>(right.size()) - 1);
      const int xi = ms.space(left).index(x), yi = ms.space(right).index(y);
      const BlockSpace& zlb = ms.space(zx.target);
      const BlockSpace& zrb = ms.space(zy.target);
      const Cyclotomic z = ms.zeta(V);
      for (std::size_t a = 0; a < zrb.dim(); ++a) {
        if (zy.m(a, yi).is_zero()) continue;
        for (std::size_t b = 0; b < zlb.dim(); ++b) {
          if (zx.m(b, xi).is_zero()) continue;
          const Cyclotomic co = z * zy.m(a, yi) * zx.m(b, xi);
          const int col = g2.column({Vs, zrb.basis[a], zlb.basis[b]});
          for (std::size_t r = 0; r < rhs.rows(); ++r) rhs(r, j).add_product(co, g2.m(r, col));
        }
      }
    }
    return compare(parts_str(cat, ab[i]), lhs, rhs);
  });

  // 𝒢_W(𝒢_V(x ⊗ y) ⊗ z) = 𝒢_V(x ⊗ 𝒢_W(y ⊗ z)) with x ∈ ⟨A,V*⟩, y ∈ ⟨V,B,W*⟩, z ∈ ⟨W,C⟩.
  auto abc = splits(n, bound, 3);
  std::erase_if(abc, [&](const auto& p) { return fusion_dim(cat, cat_labels({&p[0], &p[1], &p[2]})) == 0; });
  auto& assoc = rep.add("associativity of gluing");
  run_instances(assoc, abc.size(), exec, [&](std::size_t i) {
    const Labels &A = abc[i][0], &B = abc[i][1], &C = abc[i][2];
    const Labels AB = cat_labels({&A, &B}), BC = cat_labels({&B, &C});
    const GlueMap& g2 = ms.gluing(AB, C);
    const GlueMap& h2 = ms.gluing(A, BC);
    std::vector<std::vector<Cyclotomic>> lcols, rcols;
    // V with ⟨A,V*⟩ ≠ 0 and W with ⟨W,C⟩ ≠ 0
    std::vector<int> vs, ws;
    Labels xs = A, zs{0};
    xs.push_back(0);
    zs.insert(zs.end(), C.begin(), C.end());
    for (int V = 0; V < n; ++V) {
      xs.back() = cat.dual[V];
      zs.front() = V;
      if (ms.space(xs).dim()) vs.push_back(V);
      if (ms.space(zs).dim()) ws.push_back(V);
    }
    Labels ys{0};
    ys.insert(ys.end(), B.begin(), B.end());
    ys.push_back(0);
    for (int V : vs)
      for (int W : ws) {
        xs.back() = cat.dual[V];
        ys.front() = V;
        ys.back() = cat.dual[W];
        zs.front() = W;
        const BlockSpace &X = ms.space(xs), &Y = ms.space(ys), &Z = ms.space(zs);
        if (!Y.dim()) continue;
        Labels BW = B;
        BW.push_back(cat.dual[W]);
        Labels VB{V};
        VB.insert(VB.end(), B.begin(), B.end());
        const GlueMap& g1 = ms.gluing(A, BW);
        const GlueMap& h1 = ms.gluing(VB, C);
        const BlockSpace& mid1 = ms.space(g1.target);
        const BlockSpace& mid2 = ms.space(h1.target);
        for (const auto& x : X.basis)
          for (const auto& y : Y.basis)
            for (const auto& z : Z.basis) {
              std::vector<Cyclotomic> l(g2.m.rows()), r(h2.m.rows());
              const int c1 = g1.column({V, x, y});
              for (std::size_t t = 0; t < mid1.dim(); ++t) {
                if (g1.m(t, c1).is_zero()) continue;
                const int c2 = g2.column({W, mid1.basis[t], z});
                for (std::size_t q = 0; q < l.size(); ++q) l[q].add_product(g1.m(t, c1), g2.m(q, c2));
              }
              const int d1 = h1.column({W, y, z});
              for (std::size_t t = 0; t < mid2.dim(); ++t) {
                if (h1.m(t, d1).is_zero()) continue;
                const int d2 = h2.column({V, x, mid2.basis[t]});
                for (std::size_t q = 0; q < r.size(); ++q) r[q].add_product(h1.m(t, d1), h2.m(q, d2));
              }
              lcols.push_back(std::move(l));
              rcols.push_back(std::move(r));
            }
      }
    Matrix lhs(g2.m.rows(), lcols.size()), rhs(h2.m.rows(), rcols.size());
    for (std::size_t c = 0; c < lcols.size(); ++c)
      for (std::size_t q = 0; q < lhs.rows(); ++q) {
        lhs(q, c) = lcols[c][q];
        rhs(q, c) = rcols[c][q];
      }
    return compare(parts_str(cat, abc[i]), lhs, rhs);
  });

  // φ laws on every nonzero block.
  std::vector<Labels> all0 = all;
  all0.insert(all0.begin(), Labels{});
  auto& pid = rep.add("phi_e = id");
  run_instances(pid, all0.size(), exec, [&](std::size_t i) {
    BlockMap p = ms.phi(all0[i], G.identity());
    if (p.target != all0[i] || !p.m.is_identity()) return Outcome::bad(Failure{label_list(cat, all0[i]), {{"phi_e", p.m}}});
    return Outcome::ok();
  });

  auto& pcomp = rep.add("phi composition");
  run_instances(pcomp, all0.size(), exec, [&](std::size_t i) {
    const Labels& t = all0[i];
    for (int g = 0; g < ng; ++g)
      for (int h = 0; h < ng; ++h) {
        BlockMap ph = ms.phi(t, h);
        BlockMap pg = ms.phi(ph.target, g);
        BlockMap pgh = ms.phi(t, G.mul(g, h));
        if (pg.target != pgh.target || pg.m * ph.m != pgh.m)
          return compare(label_list(cat, t) + " g=" + G.name(g) + " h=" + G.name(h), pg.m * ph.m, pgh.m);
      }
    return Outcome::ok();
  });

  auto& prot = rep.add("phi compatible with rotation");
  run_instances(prot, all.size(), exec, [&](std::size_t i) {
    const Labels& t = all[i];
    const BlockMap& z = ms.rotation(t);
    for (int g = 0; g < ng; ++g) {
      BlockMap p = ms.phi(t, g);
      const BlockMap& zp = ms.rotation(p.target);
      BlockMap p2 = ms.phi(z.target, g);
      Matrix lhs = p2.m * z.m, rhs = zp.m * p.m;
      if (lhs != rhs) return compare(label_list(cat, t) + " g=" + G.name(g), lhs, rhs);
    }
    return Outcome::ok();
  });

  auto& pglue = rep.add("phi compatible with gluing");
  run_instances(pglue, ab.size(), exec, [&](std::size_t i) {
    const Labels &A = ab[i][0], &B = ab[i][1];
    const GlueMap& g1 = ms.gluing(A, B);
    for (int g = 0; g < ng; ++g) {
      Labels gA, gB;
      for (int a : A) gA.push_back(cat.act(g, a));
      for (int b : B) gB.push_back(cat.act(g, b));
      const GlueMap& g2 = ms.gluing(gA, gB);
      Matrix rhs = through_gluing(
          ms, g1, g2,
          [&](int V) {
            Labels l = A;
            l.push_back(cat.dual[V]);
            return std::pair{cat.act(g, V), ms.phi(l, g)};
          },
          [&](int V) {
            Labels r{V};
            r.insert(r.end(), B.begin(), B.end());
            return std::pair{cat.act(g, V), ms.phi(r, g)};
          },
          false);
      Matrix lhs = ms.phi(g1.target, g).m * g1.m;
      if (lhs != rhs) return compare(parts_str(cat, ab[i]) + " g=" + G.name(g), lhs, rhs);
    }
    return Outcome::ok();
  });

  std::vector<Labels> three;
  for (const auto& t : all)
    if (t.size() == 3) three.push_back(t);
  auto& psig = rep.add("phi compatible with commutativity");
  run_instances(psig, three.size(), exec, [&](std::size_t i) {
    const Labels& t = three[i];
    BlockMap s = ms.braiding(t);
    for (int g = 0; g < ng; ++g) {
      BlockMap p = ms.phi(t, g);
      BlockMap sp = ms.braiding(p.target);
      BlockMap p2 = ms.phi(s.target, g);
      Matrix lhs = p2.m * s.m, rhs = sp.m * p.m;
      if (p2.target != sp.target || lhs != rhs) return compare(label_list(cat, t) + " g=" + G.name(g), lhs, rhs);
    }
    return Outcome::ok();
  });

  // Hexagons on (P, A, B, C): the pair moved across (B, C) in one step via gluing versus two
  // generalized commutativity steps; and the mirror version with σ⁻¹.
  std::vector<std::pair<Labels, int>> hex;  // labels, |P|
  for (const auto& t : all)
    if (t.size() >= 3) hex.emplace_back(t, static_cast<int>(t.size()) - 3);

  auto& hx = rep.add("hexagon");
  run_instances(hx, hex.size(), exec, [&](std::size_t i) {
    const auto& [t, q] = hex[i];
    const Labels P(t.begin(), t.begin() + q);
    const int A = t[q], B = t[q + 1], C = t[q + 2], p = cat.deg[A];
    const int pB = cat.act(p, B), pC = cat.act(p, C);
    BlockMap s1 = ms.generalized_commutativity(t, q);
    BlockMap s2 = ms.generalized_commutativity(s1.target, q + 1);
    Labels PA = P;
    PA.push_back(A);
    const GlueMap& g1 = ms.generalized_gluing(PA, {B, C}, {});
    const GlueMap& g2 = ms.generalized_gluing(P, {pB, pC}, {A});
    Matrix rhs = through_gluing(
        ms, g1, g2,
        [&](int V) {
          Labels l = PA;
          l.push_back(cat.dual[V]);
          return std::pair{cat.act(p, V), ms.generalized_commutativity(l, q)};
        },
        [&](int V) { return std::pair{cat.act(p, V), ms.phi({V, B, C}, p)}; });
    return compare(label_list(cat, t) + " |P|=" + std::to_string(q), s2.m * s1.m, rhs);
  });

  auto& hxi = rep.add("hexagon (inverse)");
  run_instances(hxi, hex.size(), exec, [&](std::size_t i) {
    const auto& [t, q] = hex[i];
    const Labels P(t.begin(), t.begin() + q);
    const int A = t[q], B = t[q + 1], C = t[q + 2], ri = G.inv(cat.deg[C]);
    const int rA = cat.act(ri, A), rB = cat.act(ri, B);
    BlockMap s1 = ms.inverse_commutativity(t, q + 1);
    BlockMap s2 = ms.inverse_commutativity(s1.target, q);
    Labels PC = P;
    PC.push_back(C);
    const GlueMap& g1 = ms.generalized_gluing(P, {A, B}, {C});
    const GlueMap& g2 = ms.generalized_gluing(PC, {rA, rB}, {});
    Matrix rhs = through_gluing(
        ms, g1, g2,
        [&](int V) {
          Labels l = P;
          l.push_back(cat.dual[V]);
          l.push_back(C);
          return std::pair{cat.act(ri, V), ms.inverse_commutativity(l, q)};
        },
        [&](int V) { return std::pair{cat.act(ri, V), ms.phi({V, A, B}, ri)}; });
    return compare(label_list(cat, t) + " |P|=" + std::to_string(q), s2.m * s1.m, rhs);
  });

  // Dehn twist on ⟨A, B⟩: Z ∘ σ = φ_p ∘ σ ∘ Z, p = deg A.
  std::vector<Labels> two;
  for (const auto& t : all)
    if (t.size() == 2) two.push_back(t);
  auto& dehn = rep.add("dehn twist");
  run_instances(dehn, two.size(), exec, [&](std::size_t i) {
    const Labels& t = two[i];
    const int p = cat.deg[t[0]];
    BlockMap s = ms.generalized_commutativity(t, 0);
    const BlockMap& z = ms.rotation(s.target);
    const BlockMap& z2 = ms.rotation(t);
    BlockMap s2 = ms.generalized_commutativity(z2.target, 0);
    BlockMap ph = ms.phi(s2.target, p);
    if (ph.target != z.target) return Outcome::bad(Failure{label_list(cat, t) + ": targets differ", {}});
    return compare(label_list(cat, t), z.m * s.m, ph.m * s2.m * z2.m);
  });

  return rep;
}

}  // namespace gb
