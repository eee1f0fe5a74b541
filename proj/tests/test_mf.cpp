#include "doctest.h"

#include "gblocks/mf.hpp"
#include "support.hpp"

using namespace gb;

namespace {

struct Setup {
  GCategoryData cat;
  GluingGraph p;
  Labels W;
};

Setup setup(const std::string& cat, const std::string& cover, const std::string& labels) {
  Setup s{test::load(cat), {}, {}};
  s.p = load_cover(s.cat.group, test::data_path(cover));
  s.W = load_labeling(s.cat, s.p, test::data_path(labels));
  return s;
}

GCategoryData mutated(const std::string& file, const std::function<void(nlohmann::json&)>& edit) {
  auto j = test::json_of(file);
  edit(j);
  return parse_category(j, LoadOptions{false});
}

StandardBlock blk(const FiniteGroup& G, std::vector<int> g) {
  std::vector<int> h(g.size(), G.identity());
  return {std::move(g), std::move(h)};
}

GluingGraph single(const FiniteGroup& G, std::vector<int> g) {
  GluingGraph p;
  p.blocks.push_back(blk(G, g));
  for (int i = 0; i < static_cast<int>(g.size()); ++i) p.free.push_back({0, i});
  return p;
}

}  // namespace

TEST_CASE("tau dimensions") {
  auto ising = test::load("ising_z2.json");
  Mf mf(ising);
  CHECK(mf.tau_dim(GluingGraph{}, {}) == 1);

  auto s = setup("ising_z2.json", "covers/four_sigma.json", "labels/sigma4.json");
  Mf m4(s.cat);
  CHECK(m4.tau_dim(s.p, s.W) == 2);

  // factorization oracle: sum over the cut label of the product of block fusion dimensions
  const int sg = s.cat.label("σ");
  long long expect = 0;
  for (int v = 0; v < s.cat.size(); ++v)
    expect += fusion_dim(s.cat, {sg, sg, s.cat.dual[v]}) * fusion_dim(s.cat, {v, sg, sg});
  CHECK(static_cast<long long>(m4.tau_dim(s.p, s.W)) == expect);

  auto vec = test::load("vec_s3.json");
  Mf mv(vec);
  const auto& G = vec.group;
  const int a = 1, b = 2, c = G.inv(G.mul(a, b));
  auto p = single(G, {a, b, c});
  auto W = labelings(vec, p);
  REQUIRE(W.size() == 1);
  CHECK(mv.tau_dim(p, W[0]) == 1);
}

TEST_CASE("factorization matches fusion dimensions on all labelings") {
  for (auto [file, cover] : {std::pair{"ising_z2.json", "covers/four_sigma.json"},
                             std::pair{"fibonacci.json", "covers/fib_two_blocks.json"},
                             std::pair{"vec_s3.json", "covers/s3_two_blocks.json"}}) {
    auto cat = test::load(file);
    auto p = load_cover(cat.group, test::data_path(cover));
    Mf mf(cat);
    for (auto& W : labelings(cat, p)) {
      long long expect = 0;
      for (int v = 0; v < cat.size(); ++v) {
        auto sl = slot_labels(cat, p, W, Labels(1, v));
        long long prod = 1;
        for (auto& l : sl) prod *= fusion_dim(cat, l);
        expect += prod;
      }
      CHECK(static_cast<long long>(mf.tau_dim(p, W)) == expect);
    }
  }
}

TEST_CASE("labeling validation") {
  auto s = setup("ising_z2.json", "covers/four_sigma.json", "labels/sigma4.json");
  auto code = [&](const Labels& W) {
    try {
      validate_labeling(s.cat, s.p, W);
    } catch (const MfError& e) {
      return e.invariant;
    }
    return std::string("ok");
  };
  const int sg = s.cat.label("σ"), one = s.cat.unit;
  CHECK(code(s.W) == "ok");
  CHECK(code({sg, sg, sg}) == "labeling-size");
  CHECK(code({sg, sg, sg, 17}) == "unknown-label");
  CHECK(code({sg, sg, sg, one}) == "labeling-grading");
  CHECK_THROWS_AS(labeling_from_json(s.cat, s.p, nlohmann::json{{"boundary_labels", {{"0", "μ"}}}}), MfError);
}

TEST_CASE("move maps") {
  auto s = setup("ising_z2.json", "covers/four_sigma.json", "labels/sigma4.json");
  Mf mf(s.cat);
  auto pe = mf.move_map(s.p, s.W, Move::P(0, s.cat.group.identity()));
  CHECK(pe.m.is_identity());
  CHECK(graph_key(pe.target) == graph_key(s.p));

  auto f = mf.move_map(s.p, s.W, Move::F(0));
  CHECK(f.target.blocks.size() == 1);
  CHECK(f.m.rows() == 2);
  CHECK(f.m.cols() == 2);
  CHECK_NOTHROW(f.m.inverse());

  // Z^4 on the fused block is the identity
  auto z4 = mf.path_map(f.target, s.W, {Move::Z(0), Move::Z(0), Move::Z(0), Move::Z(0)});
  CHECK(z4.m.is_identity());
  CHECK(mf.path_map(s.p, s.W, {}).m.is_identity());

  // every move is invertible and preserves the dimension
  for (auto& m : enumerate_moves(s.cat.group, s.p)) {
    auto r = mf.move_map(s.p, s.W, m);
    CHECK(r.m.rows() == mf.tau_dim(r.target, s.W));
    CHECK(r.m.cols() == mf.tau_dim(s.p, s.W));
    CHECK_NOTHROW(r.m.inverse());
  }
}

TEST_CASE("Vec maps are trivial") {
  auto s = setup("vec_s3.json", "covers/s3_two_blocks.json", "labels/s3_four.json");
  Mf mf(s.cat);
  REQUIRE(mf.tau_dim(s.p, s.W) == 1);
  for (auto& m : enumerate_moves(s.cat.group, s.p)) CHECK(mf.move_map(s.p, s.W, m).m == Matrix::identity(1));
  auto fused = mf.move_map(s.p, s.W, Move::F(0)).target;
  for (auto& m : enumerate_moves(s.cat.group, fused)) CHECK(mf.move_map(fused, s.W, m).m == Matrix::identity(1));
}

TEST_CASE("P_x P_y = P_yx on maps") {
  auto s = setup("vec_s3.json", "covers/s3_two_blocks.json", "labels/s3_four.json");
  Mf mf(s.cat);
  const auto& G = s.cat.group;
  for (int x = 0; x < G.order(); ++x)
    for (int y = 0; y < G.order(); ++y) {
      auto two = mf.path_map(s.p, s.W, {Move::P(0, x), Move::P(0, y)});
      auto one = mf.move_map(s.p, s.W, Move::P(0, G.mul(y, x)));
      CHECK(graph_key(two.target) == graph_key(one.target));
      CHECK(two.m == one.m);
    }
}

TEST_CASE("t action") {
  auto s = setup("vec_s3.json", "covers/s3_two_blocks.json", "labels/s3_four.json");
  Mf mf(s.cat);
  const auto& G = s.cat.group;
  const std::vector<int> e(s.p.free.size(), G.identity());
  auto id = mf.t_action(s.p, s.W, e);
  CHECK(id.m.is_identity());
  CHECK(id.W == s.W);
  CHECK(graph_key(id.target) == graph_key(s.p));

  const std::vector<int> x{1, 2, 3, 4}, y{5, 4, 1, 2};
  auto a = mf.t_action(s.p, s.W, x);
  auto b = mf.t_action(a.target, a.W, y);
  std::vector<int> yx(4);
  for (int i = 0; i < 4; ++i) yx[i] = G.mul(y[i], x[i]);
  auto c = mf.t_action(s.p, s.W, yx);
  CHECK(graph_key(b.target) == graph_key(c.target));
  CHECK(b.W == c.W);
  CHECK(b.m * a.m == c.m);
}

TEST_CASE("path independence on the four-holed Ising cover") {
  auto s = setup("ising_z2.json", "covers/four_sigma.json", "labels/sigma4.json");
  Mf mf(s.cat);
  const std::vector<Move> target{Move::F(0), Move::Z(0)};
  auto r = check_path_independence(mf, s.p, s.W, target, {6});
  CHECK(r.report.pass());
  CHECK(r.nodes > 1000);
  REQUIRE(r.target_map);
  CHECK(*r.target_map == mf.path_map(s.p, s.W, target).m);

  // same target given as a graph
  auto p2 = apply_moves(s.cat.group, s.p, target);
  auto r2 = check_path_independence(mf, s.p, s.W, p2, {4});
  CHECK(r2.report.pass());
}

TEST_CASE("path independence detects a mutated F-symbol") {
  // F^{σψσ}_ψ negated; the mixed cover reaches it through B and F
  auto cat = mutated("ising_z2.json", [](nlohmann::json& j) { j["F"]["σ,ψ,σ;ψ;σ,σ"] = 1; });
  auto good = test::load("ising_z2.json");
  auto p = load_cover(cat.group, test::data_path("covers/sigma_psi.json"));
  const std::vector<Move> target{Move::F(0), Move::Z(0)};
  for (const auto* c : {&good, &cat}) {
    auto W = load_labeling(*c, p, test::data_path("labels/sigma_psi.json"));
    Mf mf(*c);
    auto r = check_path_independence(mf, p, W, target, {6});
    CHECK(r.report.pass() == (c == &good));
    if (c == &good) continue;
    const auto* edge = r.report.find("edge consistency");
    REQUIRE(edge);
    REQUIRE_FALSE(edge->failures.empty());
    CHECK(edge->failures[0].witness.find("disagree") != std::string::npos);
    CHECK(edge->failures[0].matrices.size() == 2);
  }
}

TEST_CASE("relations hold") {
  for (auto file : {"fibonacci.json", "ising_z2.json", "vec_s3.json"}) {
    CAPTURE(file);
    auto cat = test::load(file);
    auto r = check_relations(cat);
    CHECK(r.pass());
    for (auto& c : r.checks) {
      CAPTURE(c.name);
      CHECK(c.instances > 0);
    }
    CHECK(check_nondegeneracy(cat).pass());
  }
}

TEST_CASE("relations detect mutations") {
  auto F = mutated("ising_z2.json", [](nlohmann::json& j) { j["F"]["σ,ψ,σ;ψ;σ,σ"] = 1; });
  CHECK_FALSE(check_relations(F).pass());
  auto R = mutated("ising_z2.json", [](nlohmann::json& j) { j["R"]["σ,σ;ψ"] = "z^11"; });
  CHECK_FALSE(check_relations(R).pass());
  auto theta = mutated("ising_z2.json", [](nlohmann::json& j) { j["theta"]["σ"] = "z^2"; });
  CHECK_FALSE(check_relations(theta).pass());
}

TEST_CASE("relation and path reports are identical serial and parallel") {
  auto cat = test::load("ising_z2.json");
  auto bad = mutated("ising_z2.json", [](nlohmann::json& j) { j["R"]["σ,σ;ψ"] = "z^11"; });
  for (const auto* c : {&cat, &bad}) {
    CHECK(check_relations(*c, {3, Exec::serial}).to_json() == check_relations(*c, {3, Exec::parallel}).to_json());
    Mf mf(*c);
    auto p = load_cover(c->group, test::data_path("covers/four_sigma.json"));
    auto W = load_labeling(*c, p, test::data_path("labels/sigma4.json"));
    const std::vector<Move> t{Move::F(0)};
    auto a = check_path_independence(mf, p, W, t, {3, Exec::serial});
    auto b = check_path_independence(mf, p, W, t, {3, Exec::parallel});
    CHECK(a.report.to_json() == b.report.to_json());
    CHECK(a.nodes == b.nodes);
  }
}
