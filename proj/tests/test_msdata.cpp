#include "doctest.h"

#include "gblocks/msdata.hpp"
#include "support.hpp"

using namespace gb;

TEST_CASE("block_space bases") {
  auto ising = test::load("ising_z2.json");
  const int one = ising.label("1"), s = ising.label("σ"), p = ising.label("ψ");
  auto b2 = block_space(ising, {s, s});
  REQUIRE(b2.dim() == 1);
  CHECK(b2.basis[0] == Labels{s, one});
  auto b4 = block_space(ising, {s, s, s, s});
  REQUIRE(b4.dim() == 2);
  CHECK(b4.basis[0] == Labels{s, one, s, one});
  CHECK(b4.basis[1] == Labels{s, p, s, one});
  CHECK(block_space(ising, {}).dim() == 1);

  auto vec = test::load("vec_s3.json");
  for (int a = 0; a < 6; ++a) CHECK(block_space(vec, {a, vec.dual[a]}).dim() == 1);
  CHECK_THROWS(block_space(vec, {9}));
}

TEST_CASE("rotation") {
  auto vec = test::load("vec_s3.json");
  Ms mv(vec);
  const auto& G = vec.group;
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) {
      int c = G.inv(G.mul(a, b));
      const BlockMap& z = mv.rotation({a, b, c});
      CHECK(z.m == Matrix::identity(1));
      CHECK(z.target == Labels{c, a, b});
    }

  auto fib = test::load("fibonacci.json");
  Ms mf(fib);
  const int t = fib.label("τ");
  const BlockMap& z = mf.rotation({t, t, t});
  REQUIRE(z.m.rows() == 1);
  const Cyclotomic s = z.m(0, 0);
  CHECK(s * s.conj() == Cyclotomic(1));
  CHECK(s.pow(3) == Cyclotomic(1));
  CHECK(mf.rotation_pow({t, t, t}, 3).m.is_identity());
  CHECK(mf.rotation_pow({t, t, t}, -1).m == mf.rotation_pow({t, t, t}, 2).m);
}

TEST_CASE("braiding reads off R-symbols") {
  auto ising = test::load("ising_z2.json");
  Ms ms(ising);
  const int one = ising.label("1"), s = ising.label("σ"), p = ising.label("ψ");
  CHECK(ms.braiding({one, s, s}).m == Matrix::scalar(ising.R(s, s, one)));
  CHECK(ms.braiding({p, s, s}).m == Matrix::scalar(ising.R(s, s, p)));
  CHECK(ms.braiding({one, s, s}).m == Matrix::scalar(Cyclotomic::zeta(16, -1)));
  CHECK_THROWS(ms.braiding({s, s}));

  auto vec = test::load("vec_s3.json");
  Ms mv(vec);
  const auto& G = vec.group;
  for (int x = 0; x < 6; ++x)
    for (int a = 0; a < 6; ++a) {
      int b = G.inv(G.mul(x, a));
      BlockMap m = mv.braiding({x, a, b});
      CHECK(m.m == Matrix::identity(1));
      CHECK(m.target == Labels{x, G.conj(a, b), a});
    }
}

TEST_CASE("gluing") {
  auto ising = test::load("ising_z2.json");
  Ms ms(ising);
  const int s = ising.label("σ");
  const GlueMap& g = ms.gluing({s, s}, {s, s});
  // oracle: Σ_V dim⟨σ,σ,V*⟩·dim⟨V,σ,σ⟩
  long long src = 0;
  for (int v = 0; v < ising.size(); ++v)
    src += fusion_dim(ising, {s, s, ising.dual[v]}) * fusion_dim(ising, {v, s, s});
  CHECK(src == 2);
  CHECK(g.source.size() == 2);
  CHECK(g.m.rows() == 2);
  CHECK(g.inv.rows() == 2);

  auto vec = test::load("vec_s3.json");
  Ms mv(vec);
  const int close = vec.group.inv(vec.group.mul(1, 2));
  const GlueMap& gv = mv.gluing({1, 2}, {close});
  REQUIRE(gv.m.rows() == 1);
  CHECK(gv.source.size() == 1);
  CHECK_FALSE(gv.m(0, 0).is_zero());

  const GlueMap& ge = ms.gluing({s, s}, {});
  REQUIRE(ge.source.size() == 1);
  CHECK(ge.source[0].V == ising.unit);
}

TEST_CASE("generalized gluing equals the stepwise composition") {
  auto ising = test::load("ising_z2.json");
  Ms ms(ising);
  const int s = ising.label("σ");
  for (auto [A, B, C] : {std::tuple{Labels{s}, Labels{s, s}, Labels{s}}, std::tuple{Labels{s, s}, Labels{s}, Labels{s}},
                         std::tuple{Labels{}, Labels{s, s}, Labels{s, s}}}) {
    const GlueMap& gen = ms.generalized_gluing(A, B, C);
    Labels CA = C;
    CA.insert(CA.end(), A.begin(), A.end());
    const GlueMap& plain = ms.gluing(CA, B);
    const int m = static_cast<int>(C.size());
    BlockMap back = ms.rotation_pow(plain.target, -m);
    REQUIRE(back.target == gen.target);
    Matrix step(gen.m.rows(), gen.source.size());
    for (std::size_t j = 0; j < gen.source.size(); ++j) {
      const auto& [V, x, y] = gen.source[j];
      Labels left = A;
      left.push_back(ising.dual[V]);
      left.insert(left.end(), C.begin(), C.end());
      BlockMap zm = ms.rotation_pow(left, m);
      const BlockSpace& ls = ms.space(left);
      const BlockSpace& rl = ms.space(zm.target);
      for (std::size_t r = 0; r < rl.dim(); ++r) {
        Cyclotomic co = zm.m(r, ls.index(x));
        if (co.is_zero()) continue;
        int col = plain.column({V, rl.basis[r], y});
        for (std::size_t q = 0; q < step.rows(); ++q)
          for (std::size_t k = 0; k < plain.m.rows(); ++k) step(q, j) += co * back.m(q, k) * plain.m(k, col);
      }
    }
    CHECK(step == gen.m);
  }
}

TEST_CASE("generalized commutativity") {
  auto ising = test::load("ising_z2.json");
  Ms ms(ising);
  const int s = ising.label("σ"), p = ising.label("ψ");
  for (int x = 0; x < 3; ++x)
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        if (fusion_dim(ising, {x, a, b})) CHECK(ms.generalized_commutativity({x, a, b}, 1).m == ms.braiding({x, a, b}).m);

  // oracle: F · R · F⁻¹ on the middle pair of ⟨σ,σ,σ,σ⟩
  BlockMap m = ms.generalized_commutativity({s, s, s, s}, 1);
  const int inter[2] = {ising.unit, p};
  Matrix oracle(2, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int f : {ising.unit, p})
        oracle(i, j) += ising.F(s, s, s, s, inter[j], f) * ising.R(s, s, f) * ising.Finv(s, s, s, s, f, inter[i]);
  CHECK(m.m == oracle);
  CHECK(m.target == Labels{s, s, s, s});

  BlockMap inv = ms.inverse_commutativity(m.target, 1);
  CHECK((inv.m * m.m).is_identity());

  auto vec = test::load("vec_s3.json");
  Ms mv(vec);
  const auto& G = vec.group;
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) {
      int c = G.inv(G.mul(a, b));
      BlockMap bm = mv.generalized_commutativity({a, b, c}, 0);
      CHECK(bm.m == Matrix::identity(1));
      CHECK(bm.target == Labels{G.conj(a, b), a, c});
    }
}

TEST_CASE("phi") {
  auto ising = test::load("ising_z2.json");
  Ms ms(ising);
  const int s = ising.label("σ");
  CHECK(ms.phi({s, s, s, s}, 0).m.is_identity());
  BlockMap p = ms.phi({s, s, s, s}, 1);
  CHECK(p.m.is_diagonal());
  const auto& b = ms.space({s, s, s, s}).basis;
  for (std::size_t i = 0; i < b.size(); ++i) {
    Cyclotomic u(1);
    for (int k = 1; k < 4; ++k) u *= ising.U(1, b[i][k - 1], s, b[i][k]);
    CHECK(p.m(i, i) == u);
  }

  auto vec = test::load("vec_s3.json");
  Ms mv(vec);
  for (int g = 0; g < 6; ++g) {
    BlockMap q = mv.phi({1, 1, 0}, g);
    CHECK(q.m == Matrix::identity(1));
    CHECK(q.target[0] == vec.group.conj(g, 1));
  }
}

TEST_CASE("MS axioms on shipped data") {
  for (const char* f : {"vec_s3.json", "ising_z2.json", "fibonacci.json"}) {
    auto c = test::load(f);
    auto r = check_ms_axioms(c, {4, Exec::parallel});
    INFO(f << "\n" << r.text());
    CHECK(r.pass());
    for (const auto& chk : r.checks) CHECK(chk.instances > 0);
  }
}

TEST_CASE("MS axioms detect mutations") {
  auto with = [](auto edit) {
    auto j = test::json_of("ising_z2.json");
    edit(j);
    return parse_category(j, LoadOptions{false});
  };
  auto theta = with([](nlohmann::json& j) { j["theta"]["σ"] = "z^2"; });
  auto rt = check_ms_axioms(theta, {4});
  CHECK_FALSE(rt.pass());
  CHECK_FALSE(rt.find("rotation Z^n = id")->pass());

  auto R = with([](nlohmann::json& j) { j["R"]["σ,ψ;σ"] = "z^4"; });
  CHECK_FALSE(check_ms_axioms(R, {4}).pass());

  auto F = with([](nlohmann::json& j) { j["F"]["σ,ψ,σ;ψ;σ,σ"] = 1; });
  CHECK_FALSE(check_ms_axioms(F, {4}).pass());
}

TEST_CASE("MS report is identical serial and parallel") {
  auto c = test::load("ising_z2.json");
  auto j = test::json_of("ising_z2.json");
  j["R"]["σ,σ;ψ"] = "z^11";
  auto bad = parse_category(j, LoadOptions{false});
  for (const auto* cat : {&c, &bad})
    CHECK(check_ms_axioms(*cat, {4, Exec::serial}).to_json() == check_ms_axioms(*cat, {4, Exec::parallel}).to_json());
}
