#include "doctest.h"

#include "gblocks/cyclotomic.hpp"
#include "gblocks/group.hpp"
#include "gblocks/matrix.hpp"

#include <array>
#include <random>

using namespace gb;

namespace {

void check_group_laws(const FiniteGroup& g) {
  const int n = g.order();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) REQUIRE(g.mul(g.mul(a, b), c) == g.mul(a, g.mul(b, c)));
  for (int a = 0; a < n; ++a) {
    CHECK(g.mul(a, g.identity()) == a);
    CHECK(g.mul(g.identity(), a) == a);
    CHECK(g.mul(a, g.inv(a)) == g.identity());
    CHECK(g.mul(g.inv(a), a) == g.identity());
  }
}

// Multiplies polynomials in x and reduces with x^4 = -1 (8th cyclotomic polynomial).
std::array<long, 4> mul_mod_phi8(const std::array<long, 8>& a, const std::array<long, 8>& b) {
  std::array<long, 16> p{};
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) p[i + j] += a[i] * b[j];
  std::array<long, 4> r{};
  for (int k = 0; k < 16; ++k) r[k % 4] += ((k / 4) % 2 ? -1 : 1) * p[k];
  return r;
}

Cyclotomic random_cyclo(std::mt19937& rng, int n) {
  std::uniform_int_distribution<int> d(-4, 4);
  Cyclotomic x;
  for (int k = 0; k < n; ++k) x += Cyclotomic(mpq_class(d(rng), 1 + (d(rng) + 4) % 3)) * Cyclotomic::zeta(n, k);
  return x;
}

}  // namespace

TEST_CASE("group presets satisfy the group laws") {
  check_group_laws(FiniteGroup::cyclic(2));
  check_group_laws(FiniteGroup::cyclic(5));
  check_group_laws(FiniteGroup::dihedral(3));
  check_group_laws(FiniteGroup::dihedral(4));
  check_group_laws(FiniteGroup::symmetric3());
}

TEST_CASE("group_parse presets and tables") {
  auto z2 = group_parse("cyclic 2");
  CHECK(z2.order() == 2);
  CHECK(z2.mul(1, 1) == z2.identity());

  auto s3 = group_parse("symmetric 3");
  CHECK(s3.order() == 6);
  // independent oracle: compose permutations directly
  std::array<std::array<int, 3>, 6> perms{{{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) {
      std::array<int, 3> c{perms[a][perms[b][0]], perms[a][perms[b][1]], perms[a][perms[b][2]]};
      CHECK(perms[s3.mul(a, b)] == c);
    }
  bool noncommuting = false;
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) noncommuting |= s3.mul(a, b) != s3.mul(b, a);
  CHECK(noncommuting);
  CHECK_FALSE(s3.is_abelian());

  auto j = nlohmann::json::parse(R"({"preset": "cyclic", "n": 3})");
  CHECK(group_parse(j).order() == 3);

  auto broken = nlohmann::json::parse(R"({"table": [[0, 1], [1, 1]]})");
  CHECK_THROWS_AS(group_parse(broken), GroupError);
  CHECK_THROWS(group_parse("cyclic"));
  CHECK_THROWS(group_parse("quaternion 8"));
}

TEST_CASE("group_conj") {
  auto z4 = FiniteGroup::cyclic(4);
  for (int x = 0; x < 4; ++x)
    for (int g = 0; g < 4; ++g) CHECK(group_conj(z4, x, g) == g);

  auto s3 = FiniteGroup::symmetric3();
  int x = s3.index("(12)"), g = s3.index("(123)");
  int c = group_conj(s3, x, g);
  CHECK(s3.element_order(c) == 3);
  CHECK(c == s3.mul(s3.mul(x, g), s3.inv(x)));
  CHECK(group_conj(s3, s3.identity(), g) == g);
  CHECK_THROWS_AS(group_conj(s3, 6, 0), std::out_of_range);
}

TEST_CASE("cyclotomic arithmetic") {
  auto i = Cyclotomic::zeta(4);
  CHECK(i * i == Cyclotomic(-1));

  auto s = Cyclotomic::zeta(8) + Cyclotomic::zeta(8, 7);
  CHECK(s * s == Cyclotomic(2));
  std::array<long, 8> p{0, 1, 0, 0, 0, 0, 0, 1};
  auto oracle = mul_mod_phi8(p, p);
  CHECK(oracle == std::array<long, 4>{2, 0, 0, 0});

  auto w = Cyclotomic(1) + Cyclotomic::zeta(3);
  CHECK(w * w.inverse() == Cyclotomic(1));
  CHECK(w / w == Cyclotomic(1));
  CHECK_THROWS_AS(Cyclotomic().inverse(), std::domain_error);

  CHECK(Cyclotomic::zeta(16, 16) == Cyclotomic(1));
  CHECK(Cyclotomic::zeta(16, -1) == Cyclotomic::zeta(16, 15));
  CHECK(Cyclotomic::zeta(4) == Cyclotomic::zeta(16, 4));
  CHECK(Cyclotomic::parse("1/2*z^2 + 1/2*z^14", 16) * Cyclotomic::parse("z^2+z^14", 16) == Cyclotomic(1));
  CHECK(Cyclotomic::parse("z^-1", 16) == Cyclotomic::zeta(16, 15));
  CHECK(Cyclotomic::parse("-1", 16) == Cyclotomic(-1));
}

TEST_CASE("cyclotomic field axioms on random triples") {
  std::mt19937 rng(7);
  for (int n : {3, 5, 8, 12, 16}) {
    for (int t = 0; t < 20; ++t) {
      auto a = random_cyclo(rng, n), b = random_cyclo(rng, n), c = random_cyclo(rng, n);
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(a * b == b * a);
      CHECK(a + b == b + a);
      CHECK(a.conj().conj() == a);
      CHECK((a * b).conj() == a.conj() * b.conj());
      CHECK((a + b).conj() == a.conj() + b.conj());
      if (!a.is_zero()) CHECK(a * a.inverse() == Cyclotomic(1));
      auto z = a.to_complex() * b.to_complex();
      CHECK(std::abs((a * b).to_complex() - z) < 1e-9);
    }
    CHECK(Cyclotomic(mpq_class(3, 7)).embed(n).conj() == Cyclotomic(mpq_class(3, 7)));
  }
}

TEST_CASE("conductor limit") {
  int old = conductor_limit();
  set_conductor_limit(16);
  CHECK_THROWS_AS(Cyclotomic::zeta(5) * Cyclotomic::zeta(7), ConductorError);
  set_conductor_limit(old);
  CHECK(Cyclotomic::zeta(5) * Cyclotomic::zeta(7) == Cyclotomic::zeta(35, 12));
}

TEST_CASE("matrix inverse") {
  auto r = Cyclotomic::parse("1/2*z^2 + 1/2*z^14", 16);
  Matrix f(2, 2);
  f(0, 0) = r;
  f(0, 1) = r;
  f(1, 0) = r;
  f(1, 1) = -r;
  CHECK((f * f).is_identity());
  CHECK(f.inverse() == f);
  Matrix sing(2, 2);
  sing(0, 0) = 1;
  sing(0, 1) = 1;
  sing(1, 0) = 1;
  sing(1, 1) = 1;
  CHECK_THROWS_AS(sing.inverse(), std::domain_error);
}
