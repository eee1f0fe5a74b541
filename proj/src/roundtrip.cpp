#include "gblocks/roundtrip.hpp"

namespace gb {

ReconstructedFusion reconstruct_fusion(const Ms& ms) {
  const GCategoryData& cat = ms.cat();
  const int n = cat.size();
  ReconstructedFusion r;
  r.labels = cat.labels;

  std::vector<int> units;
  for (int u = 0; u < n; ++u)
    if (ms.space({u}).dim()) units.push_back(u);
  if (units.size() != 1)
    throw RoundtripError("unit-not-unique", std::to_string(units.size()) + " labels u with <u> != 0");
  r.unit = units[0];

  r.dual.assign(n, -1);
  for (int a = 0; a < n; ++a) {
    std::vector<int> found;
    for (int b = 0; b < n; ++b)
      if (ms.space({a, b}).dim()) found.push_back(b);
    if (found.size() != 1)
      throw RoundtripError("dual-not-unique", std::to_string(found.size()) + " labels b with <" + cat.labels[a] +
                                                  ",b> != 0");
    r.dual[a] = found[0];
  }

  r.fusion.assign(static_cast<std::size_t>(n) * n * n, 0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        r.fusion[(a * n + b) * n + c] = static_cast<long long>(ms.space({r.dual[c], a, b}).dim());
  return r;
}

std::vector<Cyclotomic> reconstruct_twist(const Ms& ms) {
  const GCategoryData& cat = ms.cat();
  const int n = cat.size();
  std::vector<Cyclotomic> theta(n);
  for (int v = 0; v < n; ++v) {
    // ⟨V, V*⟩ --σ⁻¹--> ⟨V*, g·V⟩ --Z--> ⟨g·V, V*⟩, g = deg V
    BlockMap s = ms.inverse_commutativity({v, cat.dual[v]}, 0);
    const BlockMap& z = ms.rotation(s.target);
    Matrix m = z.m * s.m;
    if (m.rows() != 1 || m.cols() != 1 || z.target != Labels{v, cat.dual[v]})
      throw RoundtripError("twist-not-scalar", "Z o sigma^-1 on <" + cat.labels[v] + "," +
                                                   cat.labels[cat.dual[v]] + "> is " + m.str());
    theta[v] = m(0, 0);
  }
  return theta;
}

ReconstructedFusion reconstruct(const GCategoryData& cat) {
  Ms ms(cat);
  auto r = reconstruct_fusion(ms);
  r.theta = reconstruct_twist(ms);
  return r;
}

GCategoryData with_reconstruction(const GCategoryData& cat, const ReconstructedFusion& r) {
  GCategoryData c = cat;
  const int n = c.size();
  c.unit = r.unit;
  c.dual = r.dual;
  c.theta = r.theta;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int d = 0; d < n; ++d) c.set_N(a, b, d, static_cast<int>(r.N(a, b, d)));
  c.finalize();
  return c;
}

Report roundtrip_check(const GCategoryData& cat, Exec exec) {
  Report rep;
  rep.title = "roundtrip";
  rep.notes.push_back("F and R are not re-extracted; only the gauge-independent N, duals, unit and twists are compared");
  const int n = cat.size();
  const auto& L = cat.labels;

  ReconstructedFusion r;
  try {
    r = reconstruct_fusion(Ms(cat));
  } catch (const RoundtripError& e) {
    rep.add("fusion reconstruction").fail(e.what());
    return rep;
  }

  auto& unit = rep.add("unit' = unit");
  unit.instances = 1;
  if (r.unit != cat.unit) unit.fail("unit' = " + L[r.unit] + ", unit = " + L[cat.unit]);

  auto& dual = rep.add("dual' = dual");
  for (int a = 0; a < n; ++a) {
    ++dual.instances;
    if (r.dual[a] != cat.dual[a]) dual.fail("dual'(" + L[a] + ") = " + L[r.dual[a]] + ", dual = " + L[cat.dual[a]]);
  }

  auto& fusion = rep.add("N' = N");
  run_instances(fusion, static_cast<std::size_t>(n) * n * n, exec, [&](std::size_t i) {
    const int a = static_cast<int>(i / (n * n)), b = static_cast<int>(i / n % n), c = static_cast<int>(i % n);
    if (r.N(a, b, c) == cat.N(a, b, c)) return Outcome::ok();
    return Outcome::bad(Failure{"N'_{" + L[a] + "," + L[b] + "}^" + L[c] + " = " + std::to_string(r.N(a, b, c)) +
                                    ", N = " + std::to_string(cat.N(a, b, c)),
                                {}});
  });

  // Σ_c N′_{ab}^c N_{cd}^e = Σ_f N_{bd}^f N′_{af}^e
  auto& assoc = rep.add("fusion associativity");
  run_instances(assoc, static_cast<std::size_t>(n) * n * n * n, exec, [&](std::size_t i) {
    const int a = static_cast<int>(i / (n * n * n)), b = static_cast<int>(i / (n * n) % n),
              d = static_cast<int>(i / n % n), e = static_cast<int>(i % n);
    long long lhs = 0, rhs = 0;
    for (int c = 0; c < n; ++c) lhs += r.N(a, b, c) * cat.N(c, d, e);
    for (int f = 0; f < n; ++f) rhs += cat.N(b, d, f) * r.N(a, f, e);
    if (lhs == rhs) return Outcome::ok();
    return Outcome::bad(Failure{"(" + L[a] + "," + L[b] + "," + L[d] + ";" + L[e] + "): " + std::to_string(lhs) +
                                    " != " + std::to_string(rhs),
                                {}});
  });

  auto& twist = rep.add("theta' = theta");
  try {
    auto theta = reconstruct_twist(Ms(cat));
    for (int v = 0; v < n; ++v) {
      ++twist.instances;
      if (theta[v] != cat.theta[v])
        twist.fail(Failure{"theta'_" + L[v] + " != theta_" + L[v],
                           {{"theta'", Matrix::scalar(theta[v])}, {"theta", Matrix::scalar(cat.theta[v])}}});
    }
  } catch (const RoundtripError& e) {
    twist.fail(e.what());
  }
  return rep;
}

}  // namespace gb
