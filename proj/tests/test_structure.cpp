#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "heisenbrick/structure.hpp"
#include "oracles.hpp"

using namespace hb;

namespace {

Brick simple_brick(const FieldPtr& f, std::vector<uint32_t> x, std::vector<uint32_t> y,
                   std::vector<uint32_t> z) {
  return Brick::make(f, {ResidueSet::of(f, x)}, {ResidueSet::of(f, y)},
                     ResidueSet::of(f, z));
}

}  // namespace

TEST_CASE("popular shift worked examples") {
  auto f5 = make_field(5);
  const auto ps = choose_popular_shift(ResidueSet::of(f5, {1, 2}));
  CHECK(ps.shift == 3);
  CHECK(ps.tilde == ResidueSet::of(f5, {1, 2}));

  // singleton {c}: only a = 2c works
  const auto single = choose_popular_shift(ResidueSet::of(f5, {3}));
  CHECK(single.shift == 1);  // 2*3 mod 5
  CHECK(single.tilde == ResidueSet::of(f5, {3}));

  // full set: every shift ties, smallest wins
  const auto full = choose_popular_shift(ResidueSet::full(f5));
  CHECK(full.shift == 0);
  CHECK(full.tilde.is_full());

  // |tilde| >= ceil(|X|^2/p) on random sets
  Rng rng(3);
  auto f101 = make_field(101);
  for (int t = 0; t < 30; ++t) {
    const auto x = oracle::random_set(f101, 1 + rng.below(101), rng);
    const auto s = choose_popular_shift(x);
    const uint64_t c = x.cardinality();
    CHECK(s.tilde.cardinality() >= (c * c + 100) / 101);
  }
}

TEST_CASE("center coset counting") {
  auto f5 = make_field(5);
  // X = Y = {1}, Z = {0,1,2}: single fiber 2Z + {1} = F by Cauchy-Davenport
  const auto b = simple_brick(f5, {1}, {1}, {0, 1, 2});
  const auto rep = count_center_cosets(square_fibered(b), b);
  CHECK(rep.count == 1);
  CHECK(rep.threshold.num == 3);
  CHECK(rep.threshold.den == 5);
  CHECK(rep.meets_threshold);

  // |Z| > p/2: every cell is a coset
  const auto big = simple_brick(f5, {1, 2}, {1, 4}, {0, 1, 2});
  const auto P = square_fibered(big);
  const auto rep2 = count_center_cosets(P, big);
  CHECK(rep2.count == P.support_size());
  CHECK(rep2.meets_threshold);

  // prop2 witness brick: no full fiber at all
  auto f13 = make_field(13);
  const auto prop = prop2_construct(f13, 1);
  const auto rep3 = count_center_cosets(square_fibered(prop), prop);
  CHECK(rep3.count == 0);
}

TEST_CASE("th1 certificate on the worked instance p=11") {
  auto f11 = make_field(11);
  const auto b = Brick::make(f11, {ResidueSet::units(f11)}, {ResidueSet::units(f11)},
                             ResidueSet::of(f11, {0, 1, 2, 3, 4}));
  const auto cert = th1_certificate(b);
  CHECK(cert.condition_holds);
  CHECK(cert.fiber_full);
  CHECK(cert.sumprod_covers);

  const auto e = good_pair_set_E(b);
  CHECK(e.pair_count == 121);  // every pair of F x F qualifies
  CHECK(e.all_fibers_full);
  CHECK(!e.closed_form_applicable);  // prod|X||Y| = 100 < 11^3
  CHECK(e.heuristic_bound == doctest::Approx(97.2588).epsilon(1e-3));
  CHECK(e.meets_heuristic);

  const auto cosets = count_center_cosets(square_fibered(b), b);
  CHECK(cosets.count == 121);
  CHECK(cosets.threshold.num == 500);
  CHECK(cosets.threshold.den == 11);
  CHECK(cosets.meets_threshold);
}

TEST_CASE("th1 certificate absent when the condition fails") {
  auto f5 = make_field(5);
  const auto b = simple_brick(f5, {1, 2}, {1, 2}, {0});
  const auto cert = th1_certificate(b);
  CHECK(!cert.condition_holds);
}

TEST_CASE("good pairs: every member's coset is real, closed form when applicable") {
  // Dense brick at p = 7 where prod|X||Y| = 36 > 7^3 = 343? No: use p = 5:
  // prod |X||Y| = 16 vs 125. Closed form needs prod > p^{n+2}; use units at
  // p=7: 36 < 343. Take n = 1, p = 5, X = Y = F*: 16 < 125. The closed form
  // rarely applies at n = 1; force it with n = 2, p = 5, all units:
  // prod = 256 vs p^{n+2} = 625 — still short. n=3: 4096 > 5^5 = 3125.
  auto f5 = make_field(5);
  const auto u = ResidueSet::units(f5);
  const auto b = Brick::make(f5, {u, u, u}, {u, u, u}, ResidueSet::full(f5));
  const auto e = good_pair_set_E(b);
  CHECK(e.closed_form_applicable);
  CHECK(e.all_fibers_full);
  CHECK(e.meets_closed_form);
}

TEST_CASE("structured period: center from big Z, full group, trivial") {
  auto f5 = make_field(5);

  // |Z| > p/2 gives all-full fibers, but the support is a box: center only.
  const auto b1 = simple_brick(f5, {1, 2}, {1, 2}, {0, 1, 2});
  const auto rep1 = structured_period(square_fibered(b1));
  CHECK(rep1.center_invariant);
  CHECK(rep1.period.m == Span::full);
  CHECK(rep1.period.kx[0] == Span::zero);

  // full units brick with Z = F: the period is the whole group
  const auto b2 = Brick::make(f5, {ResidueSet::units(f5)}, {ResidueSet::units(f5)},
                              ResidueSet::full(f5));
  const auto rep2 = structured_period(square_fibered(b2));
  CHECK(rep2.period == CoordinateSubgroup::whole_group(1));

  // prop2 witness brick: nothing is invariant
  auto f13 = make_field(13);
  const auto prop = prop2_construct(f13, 1);
  const auto rep3 = structured_period(square_fibered(prop));
  CHECK(rep3.period == CoordinateSubgroup::trivial(1));
}

TEST_CASE("structured period with an invariant x-direction") {
  // B = [F*, {1}, F]: B*B = [F, {2}, F], invariant under x-translation and the
  // center but not under y (the v-support is a single point).
  auto f5 = make_field(5);
  const auto b = Brick::make(f5, {ResidueSet::units(f5)}, {ResidueSet::of(f5, {1})},
                             ResidueSet::full(f5));
  const auto P = square_fibered(b);
  const auto rep = structured_period(P);
  CHECK(rep.x_invariant[0]);
  CHECK(!rep.y_invariant[0]);
  CHECK(rep.center_invariant);
  CHECK(rep.period ==
        CoordinateSubgroup::make({Span::full}, {Span::zero}, Span::full));

  // and it is the whole right stabilizer here
  const auto stab = brute_stabilizer(P.to_element_set());
  CHECK(stab.size() == 25);
  CHECK(stab == coordinate_subgroup_elements(b.params(), rep.period));
}

TEST_CASE("structured period is contained in the brute-force stabilizer") {
  Rng rng(7);
  for (auto [p, n] : std::vector<std::pair<uint32_t, uint32_t>>{{5, 1}, {7, 1}, {3, 2}}) {
    auto f = make_field(p);
    for (int trial = 0; trial < 15; ++trial) {
      const auto b = random_brick(random_spec(p, n, rng), rng.next(), f);
      const auto P = square_fibered(b);
      const auto period = structured_period(P).period;
      const auto stab = brute_stabilizer(P.to_element_set());
      const auto mat = coordinate_subgroup_elements(b.params(), period);
      CHECK(check_subgroup(mat).ok);
      CHECK(check_subgroup(stab).ok);
      for (uint64_t r : mat.ranks()) CHECK(stab.contains_rank(r));
    }
  }
}

TEST_CASE("every coset witness is fully inside the brute-force product") {
  Rng rng(43);
  auto f5 = make_field(5);
  for (int trial = 0; trial < 15; ++trial) {
    const auto b = random_brick(random_spec(5, 1, rng), rng.next(), f5);
    const auto P = square_fibered(b);
    const auto rep = count_center_cosets(P, b);
    const auto direct = brick_elements(b);
    const auto bb = brute_product_set(direct, direct);
    std::vector<uint16_t> u, v;
    for (uint64_t g : rep.witness_grid) {
      P.decode(g, u, v);
      for (uint32_t z = 0; z < 5; ++z)
        CHECK(bb.contains(HeisElement{u, v, static_cast<uint16_t>(z)}));
    }
  }
}

TEST_CASE("brute stabilizer basics") {
  GroupParams gp{make_field(5), 1};
  ElementSet just_e(gp);
  just_e.insert(identity(gp));
  CHECK(brute_stabilizer(just_e).size() == 1);

  // a left coset g*G is right-stabilized by G
  const auto center = coordinate_subgroup_elements(gp, CoordinateSubgroup::center(1));
  ElementSet coset(gp);
  const HeisElement g{{2}, {3}, 1};
  for (const auto& h : center.elements()) coset.insert(mul(gp, g, h));
  const auto stab = brute_stabilizer(coset);
  for (uint64_t r : center.ranks()) CHECK(stab.contains_rank(r));
  CHECK(stab.size() == 5);
}

TEST_CASE("cyclic coset scan finds and refutes") {
  GroupParams gp{make_field(5), 1};
  // one center coset: contains itself as a coset of the center's order-5 cyclic
  ElementSet coset(gp);
  for (uint32_t z = 0; z < 5; ++z) coset.insert(HeisElement{{2}, {3}, static_cast<uint16_t>(z)});
  CHECK(find_cyclic_coset(coset).found);

  // a 4-element set cannot contain an order-5 coset
  ElementSet small(gp);
  for (uint32_t z = 0; z < 4; ++z) small.insert(HeisElement{{2}, {3}, static_cast<uint16_t>(z)});
  CHECK(!find_cyclic_coset(small).found);
}

TEST_CASE("th13 analysis on the k=2 worked instance at p=7") {
  auto f7 = make_field(7);
  const auto b = simple_brick(f7, {1, 2}, {1, 2}, {0});
  const auto an = th13_analysis(b);
  CHECK(an.k == 2);
  CHECK(an.ell == 0);
  CHECK(an.recipe == CoordinateSubgroup::trivial(1));
  CHECK(an.ratio.num == 15);
  CHECK(an.ratio.den == 4);
  CHECK(an.ratio_meets_sqrt2_k);
  CHECK(an.ratio_meets_bound);
  CHECK(an.recipe_stabilizes);
}

TEST_CASE("th13 on an all-singleton brick") {
  auto f7 = make_field(7);
  const auto b = simple_brick(f7, {3}, {2}, {1});
  const auto an = th13_analysis(b);
  CHECK(an.k == 0);
  CHECK(an.ell == 0);
  CHECK(an.ratio_meets_sqrt2_k);  // ratio >= 1 = sqrt2^0
  CHECK(an.ratio_meets_bound);
}

TEST_CASE("th13 with ell = 4 at p=5, n=2: recipe of order p^3") {
  auto f5 = make_field(5);
  const auto u = ResidueSet::units(f5);
  const auto b = Brick::make(f5, {u, u}, {u, u}, ResidueSet::of(f5, {0}));
  const auto an = th13_analysis(b);
  CHECK(an.ell == 4);
  CHECK(an.k == 0);
  CHECK(an.recipe.full_count() == 3);
  CHECK(an.pins.size() == 2);
  CHECK(an.pins[0].letter == 'x');
  CHECK(an.pinned_cosets_full);
  CHECK(an.recipe_stabilizes);
  CHECK(an.ratio_meets_bound);

  // exhaustive: B*B*recipe = B*B over |H_2| = 3125
  const auto bb = square_fibered(b).to_element_set();
  const auto recipe = coordinate_subgroup_elements(b.params(), an.recipe);
  CHECK(brute_product_set(bb, recipe) == bb);
}

TEST_CASE("th13 pins two y-components when the x side has only one large") {
  auto f5 = make_field(5);
  const auto u = ResidueSet::units(f5);
  const auto one = ResidueSet::of(f5, {1});
  // large components: x_1, y_1, y_2 -> ell = 3, pins must land on the y pair
  const auto b = Brick::make(f5, {u, one}, {u, u}, ResidueSet::of(f5, {0}));
  const auto an = th13_analysis(b);
  CHECK(an.ell == 3);
  REQUIRE(an.pins.size() == 2);
  CHECK(an.pins[0].letter == 'y');
  CHECK(an.pins[1].letter == 'y');
  CHECK(an.recipe.full_count() == 2);  // remaining large (x_1) + center
  CHECK(an.recipe.kx[0] == Span::full);
  CHECK(an.recipe.m == Span::full);
  CHECK(an.pinned_cosets_full);
  CHECK(an.ratio_meets_sqrt2_k);
  CHECK(an.ratio_meets_bound);
}

TEST_CASE("prop2 construction and verification at p=13, n=1") {
  auto f13 = make_field(13);
  const auto b = prop2_construct(f13, 1);
  CHECK(b.xs[0] == ResidueSet::of(f13, {0, 1, 2}));
  CHECK(b.z == ResidueSet::of(f13, {0, 1, 2, 3}));
  CHECK(brick_cardinality(b) == 36);
  CHECK(b.zero_relaxed);

  const auto rep = prop2_verify(f13, 1);
  CHECK(rep.size_bound_holds);  // 36 >= 169/8
  CHECK(rep.bound_num == "169");
  CHECK(rep.bound_den == "8");
  CHECK(rep.w_not_full);
  CHECK(rep.w_size == 11);  // W = {0..10}
  CHECK(rep.no_full_line);
  REQUIRE(rep.stabilizer_trivial);
  CHECK(*rep.stabilizer_trivial);
  REQUIRE(rep.no_cyclic_coset);
  CHECK(*rep.no_cyclic_coset);
  CHECK(rep.pass);
}

TEST_CASE("prop2 at n=2") {
  auto f13 = make_field(13);
  const auto rep = prop2_verify(f13, 2);
  CHECK(rep.r_size == 2);  // 4 r^2 < 12 gives {0, 1}
  CHECK(rep.cardinality == 64);
  CHECK(rep.size_bound_holds);  // 64 >= 13^3/64
  CHECK(rep.w_not_full);
  CHECK(rep.no_full_line);
  CHECK(rep.pass);
}

TEST_CASE("dense square at p=101: the whole group, found fiber by fiber") {
  auto f = make_field(101);
  const auto u = ResidueSet::units(f);
  const auto b = Brick::make(f, {u}, {u}, ResidueSet::interval(f, 0, 50));
  const auto P = square_fibered(b);
  CHECK(P.support_size() == 101ull * 101);
  CHECK(P.total_cardinality() == 101ull * 101 * 101);  // B*B = H_1
  const auto period = structured_period(P);
  CHECK(period.period == CoordinateSubgroup::whole_group(1));

  const auto an = th13_analysis(b);
  CHECK(an.ell == 2);
  CHECK(an.k == 0);
  CHECK(an.ratio_meets_bound);
  CHECK(an.ratio_meets_sqrt2_k);
}

TEST_CASE("small period example at p=29") {
  auto f29 = make_field(29);
  const auto rep = small_period_example(f29);
  CHECK(rep.x_size == 3);
  CHECK(rep.b_cardinality == 261);
  CHECK(rep.bb_cardinality == 725);
  CHECK(rep.growth_bound_holds);  // 725 < 1044
  CHECK(rep.period_is_center);
  REQUIRE(rep.period.full_stabilizer_order);
  CHECK(*rep.period.full_stabilizer_order == 29);
  CHECK(rep.pass);
}
