#include "doctest.h"

#include "gblocks/category.hpp"
#include "support.hpp"

#include <fstream>

using namespace gb;
using nlohmann::json;

namespace {

// Brute-force count of intermediate-label sequences u1=a1, u_k ∈ u_{k-1}⊗a_k, u_n = 1.
long long count_trees(const GCategoryData& c, const std::vector<int>& a) {
  if (a.empty()) return 1;
  long long total = 0;
  std::vector<int> u(a.size());
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == a.size()) {
      total += u.back() == c.unit;
      return;
    }
    for (int x = 0; x < c.size(); ++x)
      if (c.N(u[k - 1], a[k], x)) {
        u[k] = x;
        rec(k + 1);
      }
  };
  u[0] = a[0];
  rec(1);
  return total;
}

bool fails(const Report& r) { return !r.pass(); }

}  // namespace

TEST_CASE("load shipped categories") {
  auto vec = test::load("vec_s3.json");
  CHECK(vec.size() == 6);
  for (int a = 0; a < 6; ++a) CHECK(vec.deg[a] == vec.group.index(vec.labels[a].substr(std::string("δ_").size())));
  CHECK(vec.labels[vec.unit] == "δ_e");

  auto ising = test::load("ising_z2.json");
  CHECK(ising.deg[ising.label("1")] == 0);
  CHECK(ising.deg[ising.label("ψ")] == 0);
  CHECK(ising.deg[ising.label("σ")] == 1);
  CHECK(ising.labels[ising.unit] == "1");

  auto fib = test::load("fibonacci.json");
  CHECK(fib.group.order() == 1);
}

TEST_CASE("loader names the violated invariant") {
  auto j = test::json_of("vec_s3.json");
  // make deg(δ_(123)*) = (123): dual is δ_(132)
  for (auto& l : j["labels"])
    if (l["name"] == "δ_(132)") l["degree"] = "(123)";
  try {
    parse_category(j);
    FAIL("expected rejection");
  } catch (const CategoryError& e) {
    CHECK(e.invariant == "dual-grading");
  }

  auto k = test::json_of("ising_z2.json");
  k["F"]["σ,σ,σ;σ;1,1"] = 0.70710678;
  try {
    parse_category(k);
    FAIL("expected rejection");
  } catch (const CategoryError& e) {
    CHECK(e.invariant == "non-expressible scalar");
  }

  auto m = test::json_of("ising_z2.json");
  m["R"]["σ,σ;σ"] = 1;
  try {
    parse_category(m);
    FAIL("expected rejection");
  } catch (const CategoryError& e) {
    CHECK(e.invariant == "inadmissible symbol");
  }

  auto gr = test::json_of("ising_z2.json");
  gr["labels"][2]["degree"] = "1";
  try {
    parse_category(gr);
    FAIL("expected rejection");
  } catch (const CategoryError& e) {
    CHECK(e.invariant == "fusion-grading");
  }

  auto fu = test::json_of("ising_z2.json");
  fu["fusion"].push_back({"ψ", "ψ", "ψ"});
  try {
    parse_category(fu);
    FAIL("expected rejection");
  } catch (const CategoryError& e) {
    CHECK(e.invariant == "F-invertible");
  }

  auto q = test::json_of("ising_z2.json");
  q["F"].erase("*");
  try {
    parse_category(q);
    FAIL("expected rejection");
  } catch (const CategoryError& e) {
    CHECK(e.invariant == "missing symbol");
  }
}

TEST_CASE("fusion_dim") {
  auto vec = test::load("vec_s3.json");
  const auto& G = vec.group;
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b)
      for (int c = 0; c < 6; ++c) CHECK(fusion_dim(vec, {a, b, c}) == (G.mul(G.mul(a, b), c) == G.identity()));

  auto ising = test::load("ising_z2.json");
  int s = ising.label("σ");
  CHECK(fusion_dim(ising, {s, s, s, s}) == 2);
  CHECK(count_trees(ising, {s, s, s, s}) == 2);

  auto fib = test::load("fibonacci.json");
  int t = fib.label("τ");
  // power iteration of the fusion matrix N_τ on the (1, τ) basis
  std::vector<long long> v{0, 1};
  for (int k = 1; k < 5; ++k) v = {v[1], v[0] + v[1]};
  CHECK(fusion_dim(fib, std::vector<int>(5, t)) == v[0]);
  CHECK(v[0] == 3);
  CHECK(fusion_dim(fib, {}) == 1);
  CHECK_THROWS(fusion_dim(fib, {7}));
}

TEST_CASE("fusion_dim properties against the brute-force oracle") {
  for (const char* f : {"vec_s3.json", "ising_z2.json", "fibonacci.json"}) {
    auto c = test::load(f);
    const int n = c.size();
    for (int len = 0; len <= 4; ++len) {
      std::vector<int> t(len, 0);
      while (true) {
        long long d = fusion_dim(c, t);
        CHECK(d == count_trees(c, t));
        if (len) {
          std::vector<int> rot{t.back()};
          rot.insert(rot.end(), t.begin(), t.end() - 1);
          CHECK(fusion_dim(c, rot) == d);
        }
        for (int g = 0; g < c.group.order(); ++g) {
          std::vector<int> gt;
          for (int a : t) gt.push_back(c.act(g, a));
          CHECK(fusion_dim(c, gt) == d);
        }
        int k = len;
        while (k > 0 && ++t[k - 1] == n) t[--k] = 0;
        if (k == 0) break;
      }
    }
    for (int a = 0; a < n; ++a) {
      CHECK(fusion_dim(c, {a, c.dual[a]}) >= 1);
      CHECK(fusion_dim(c, {a}) == (a == c.unit));
    }
  }
}

TEST_CASE("category checks pass on shipped data") {
  for (const char* f : {"vec_s3.json", "ising_z2.json", "fibonacci.json"}) {
    auto c = test::load(f);
    auto r = check_category(c);
    INFO(f << "\n" << r.text());
    CHECK(r.pass());
    for (const auto& chk : r.checks) CHECK(chk.instances > 0);
  }
}

TEST_CASE("category checks catch single-symbol mutations") {
  auto with = [](auto edit) {
    auto j = test::json_of("ising_z2.json");
    edit(j);
    return parse_category(j);
  };
  auto negF = with([](json& j) { j["F"]["σ,ψ,σ;ψ;σ,σ"] = 1; });
  auto rp = check_pentagon(negF);
  CHECK(fails(rp));
  CHECK_FALSE(rp.checks[0].failures.empty());

  auto badR = with([](json& j) { j["R"]["σ,σ;1"] = 1; });
  CHECK(fails(check_hexagon(badR)));

  auto badU = with([](json& j) { j["U"]["1;σ,σ;ψ"] = -1; });
  CHECK(fails(check_g_coherence(badU)));

  // θ_ψ = 1 breaks the ribbon identity on σ⊗ψ→σ (the ψ⊗ψ→1 channel only sees θ_ψ²)
  auto badT = with([](json& j) { j["theta"]["ψ"] = 1; });
  auto rt = check_twist(badT);
  CHECK(fails(rt));
  INFO(rt.text());
  bool sigma_psi = false;
  for (const auto& f : rt.find("ribbon")->failures) sigma_psi |= f.witness.find("(σ,ψ,σ)") != std::string::npos;
  CHECK(sigma_psi);

  LoadOptions lax;
  lax.check_invariants = false;
  auto j = test::json_of("ising_z2.json");
  j["labels"][0]["action"] = {{"1", "ψ"}};
  j["labels"][2]["action"] = {{"1", "1"}};
  auto swapped = parse_category(j, lax);
  auto rg = check_g_coherence(swapped);
  CHECK(fails(rg));
  CHECK(rg.find("action structure")->failures[0].witness.find("unit") != std::string::npos);
  CHECK_THROWS_AS(parse_category(j), CategoryError);
}

TEST_CASE("serial and parallel reports agree") {
  auto c = test::load("ising_z2.json");
  auto j = test::json_of("ising_z2.json");
  j["F"]["σ,σ,σ;σ;ψ,ψ"] = "1/2*z^2 + 1/2*z^14";
  auto bad = parse_category(j, LoadOptions{false});
  for (const auto* cat : {&c, &bad})
    CHECK(check_category(*cat, Exec::serial).to_json() == check_category(*cat, Exec::parallel).to_json());
}
