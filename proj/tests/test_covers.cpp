#include "doctest.h"

#include "gblocks/covers.hpp"
#include "support.hpp"

#include <set>

using namespace gb;

namespace {

StandardBlock blk(std::vector<int> g, std::vector<int> h = {}) {
  if (h.empty()) h.assign(g.size(), 0);
  return {std::move(g), std::move(h)};
}

// S3(a,b,x) glued at its last slot to S3(x^{-1},c,d).
GluingGraph two_blocks(const FiniteGroup& G, int a, int b, int c) {
  const int x = G.inv(G.mul(a, b));
  const int d = G.inv(G.mul(G.inv(x), c));
  GluingGraph p;
  p.blocks = {blk({a, b, x}), blk({G.inv(x), c, d})};
  p.cuts = {{{0, 2}, {1, 0}}};
  p.free = {{0, 0}, {0, 1}, {1, 1}, {1, 2}};
  return p;
}

}  // namespace

TEST_CASE("monodromy and gluing condition") {
  auto S = FiniteGroup::symmetric3();
  const int e = S.index("e"), t12 = S.index("(12)"), c123 = S.index("(123)");
  CHECK(monodromy(S, blk({t12, t12}), 0) == t12);
  auto b = blk({t12, t12}, {c123, e});
  CHECK(monodromy(S, b, 0) == S.mul(S.mul(c123, t12), S.inv(c123)));
  CHECK(monodromy(S, blk({e, e}, {c123, t12}), 1) == e);
  CHECK_THROWS_AS(monodromy(S, b, 2), std::out_of_range);

  auto Z3 = FiniteGroup::cyclic(3);
  CHECK(can_glue(Z3, blk({1, 2}), 0, blk({2, 1}), 0));
  CHECK_FALSE(can_glue(Z3, blk({1, 2}), 0, blk({1, 2}), 0));
  CHECK(can_glue(Z3, blk({0, 0}), 0, blk({0, 0}), 1));
  for (int x = 0; x < 6; ++x)
    for (int y = 0; y < 6; ++y) {
      auto b1 = blk({x, S.inv(x)}, {y, x});
      auto b2 = blk({y, S.inv(y)}, {x, e});
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) CHECK(can_glue(S, b1, i, b2, j) == can_glue(S, b2, j, b1, i));
    }
}

TEST_CASE("block isomorphisms") {
  auto S = FiniteGroup::symmetric3();
  auto b = blk({1, 3, S.inv(S.mul(1, 3))}, {1, 4, 2});
  REQUIRE(S.mul(S.mul(b.g[0], b.g[1]), b.g[2]) == S.identity());
  CHECK(block_iso(S, b, b) == S.identity());
  GluingGraph p{{b}, {}, {{0, 0}, {0, 1}, {0, 2}}};
  for (int x = 0; x < 6; ++x) {
    auto q = apply_move(S, p, Move::P(0, x));
    CHECK(block_iso(S, b, q.blocks[0]) == x);
    for (int i = 0; i < 3; ++i) CHECK(monodromy(S, q.blocks[0], i) == monodromy(S, b, i));
  }
  auto c = b;
  c.g[0] = S.index("(13)");
  CHECK_FALSE(block_iso(S, b, c).has_value());
}

TEST_CASE("moves on graphs") {
  auto S = FiniteGroup::symmetric3();
  const int a = 1, b = 3, c = 2;
  GluingGraph one{{blk({a, b, S.inv(S.mul(a, b))})}, {}, {{0, 0}, {0, 1}, {0, 2}}};
  auto z = apply_move(S, one, Move::Z(0));
  CHECK(z.blocks[0].g == std::vector<int>{S.inv(S.mul(a, b)), a, b});
  CHECK(z.free == std::vector<Slot>{{0, 1}, {0, 2}, {0, 0}});
  CHECK(apply_moves(S, one, {Move::Z(0), Move::Z(0), Move::Z(0)}) == one);
  CHECK(apply_move(S, one, Move::P(0, S.identity())) == one);
  for (int x = 0; x < 6; ++x)
    for (int y = 0; y < 6; ++y)
      CHECK(apply_moves(S, one, {Move::P(0, x), Move::P(0, y)}) == apply_move(S, one, Move::P(0, S.mul(y, x))));
  CHECK_THROWS_AS(apply_move(S, one, Move::F(0)), CoverError);
  CHECK_THROWS_AS(apply_move(S, one, Move::Z(3)), CoverError);

  auto two = two_blocks(S, a, b, c);
  validate_graph(S, two);
  auto f = apply_move(S, two, Move::F(0));
  REQUIRE(f.blocks.size() == 1);
  const int x = S.inv(S.mul(a, b));
  const int d = S.inv(S.mul(S.inv(x), c));
  CHECK(f.blocks[0].g == std::vector<int>{a, b, c, d});
  CHECK(S.mul(S.mul(a, b), S.mul(c, d)) == S.identity());
  CHECK(f.cuts.empty());
  CHECK(f.free == std::vector<Slot>{{0, 0}, {0, 1}, {0, 2}, {0, 3}});

  // B keeps the product condition and every move keeps free monodromies.
  for (auto& m : enumerate_moves(S, two)) {
    auto q = apply_move(S, two, m);
    validate_graph(S, q);
    REQUIRE(q.free.size() == two.free.size());
    for (std::size_t i = 0; i < q.free.size(); ++i)
      CHECK(monodromy(S, q.blocks[q.free[i].block], q.free[i].index) ==
            monodromy(S, two.blocks[two.free[i].block], two.free[i].index));
  }

  auto t = apply_move(S, two, Move::T(0, 4));
  CHECK(cut_label(t, 0) == 4);
  CHECK_THROWS_AS(apply_move(S, apply_move(S, two, Move::P(1, 2)), Move::F(0)), CoverError);
}

TEST_CASE("enumerate_moves") {
  auto Z2 = FiniteGroup::cyclic(2);
  GluingGraph s2{{blk({1, 1})}, {}, {{0, 0}, {0, 1}}};
  auto ms = enumerate_moves(Z2, s2);
  CHECK(ms == std::vector<Move>{Move::Z(0), Move::P(0, 0), Move::P(0, 1)});
  CHECK(enumerate_moves(Z2, GluingGraph{}).empty());

  GluingGraph two{{blk({1, 1, 0}), blk({0, 1, 1})}, {{{0, 2}, {1, 0}}}, {{0, 0}, {0, 1}, {1, 1}, {1, 2}}};
  int nf = 0, nt = 0;
  for (auto& m : enumerate_moves(Z2, two)) {
    nf += m.kind == MoveKind::F;
    nt += m.kind == MoveKind::T;
  }
  CHECK(nf == 1);
  CHECK(nt == 2);
}

TEST_CASE("graph validation") {
  auto Z2 = FiniteGroup::cyclic(2);
  auto bad = [&](GluingGraph p, const std::string& inv) {
    try {
      validate_graph(Z2, p);
      FAIL("accepted ", inv);
    } catch (const CoverError& e) {
      CHECK(e.invariant == inv);
    }
  };
  bad({{blk({1, 0})}, {}, {{0, 0}, {0, 1}}}, "block-product");
  bad({{blk({1, 1})}, {}, {{0, 0}}}, "slot-coverage");
  bad({{blk({1, 1})}, {}, {{0, 0}, {0, 2}}}, "slot-range");
  bad({{blk({1, 1}), blk({0, 0})}, {{{0, 1}, {1, 0}}}, {{0, 0}, {1, 1}}}, "cut-admissibility");
  bad({{blk({1, 1}), blk({1, 1})}, {{{0, 0}, {1, 0}}, {{0, 1}, {1, 1}}}, {}}, "genus-zero");
}

TEST_CASE("canonical form and find_path") {
  auto S = FiniteGroup::symmetric3();
  auto two = two_blocks(S, 1, 3, 2);
  GluingGraph swapped;
  swapped.blocks = {two.blocks[1], two.blocks[0]};
  swapped.cuts = {{{1, 2}, {0, 0}}};
  swapped.free = {{1, 0}, {1, 1}, {0, 1}, {0, 2}};
  CHECK(equivalent(two, swapped));
  auto c = canonical_form(swapped);
  CHECK(c.graph == canonical_form(two).graph);
  CHECK(!equivalent(two, apply_move(S, two, Move::Z(0))));

  auto z = apply_move(S, two, Move::Z(1));
  auto path = find_path(S, two, z, 3);
  REQUIRE(path);
  CHECK(*path == std::vector<Move>{Move::Z(1)});

  auto pz = apply_moves(S, two, {Move::P(0, 4), Move::Z(0)});
  path = find_path(S, two, pz, 3);
  REQUIRE(path);
  CHECK(path->size() <= 2);
  CHECK(equivalent(apply_moves(S, two, *path), pz));

  GluingGraph other{{blk({1, 2, 3})}, {}, {{0, 0}, {0, 1}, {0, 2}}};
  CHECK_FALSE(find_path(S, two, other, 4).has_value());
  CHECK(find_path(S, two, two, 0) == std::vector<Move>{});
}

TEST_CASE("cover files") {
  auto ising = test::load("ising_z2.json");
  auto p = load_cover(ising.group, test::data_path("covers/four_sigma.json"));
  CHECK(p.blocks.size() == 2);
  CHECK(p.cuts.size() == 1);
  CHECK(cover_from_json(ising.group, cover_to_json(ising.group, p)) == p);
  auto moves = load_moves(ising.group, test::data_path("covers/f_then_z.json"));
  CHECK(moves == std::vector<Move>{Move::F(0), Move::Z(0)});
  auto j = cover_to_json(ising.group, p);
  j["cuts"][0]["label"] = "1";
  CHECK_THROWS_AS(cover_from_json(ising.group, j), CoverError);
  CHECK_THROWS_AS(load_cover(ising.group, test::data_path("covers/missing.json")), std::ios_base::failure);
}
