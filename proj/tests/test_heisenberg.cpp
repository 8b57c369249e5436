#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "heisenbrick/heisenberg.hpp"
#include "heisenbrick/random_brick.hpp"
#include "oracles.hpp"

using namespace hb;

namespace {

HeisElement elem(std::vector<uint16_t> x, std::vector<uint16_t> y, uint16_t z) {
  return HeisElement{std::move(x), std::move(y), z};
}

HeisElement random_element(const GroupParams& gp, Rng& rng) {
  HeisElement e;
  for (uint32_t i = 0; i < gp.n; ++i)
    e.x.push_back(static_cast<uint16_t>(rng.below(gp.p())));
  for (uint32_t i = 0; i < gp.n; ++i)
    e.y.push_back(static_cast<uint16_t>(rng.below(gp.p())));
  e.z = static_cast<uint16_t>(rng.below(gp.p()));
  return e;
}

}  // namespace

TEST_CASE("product rule worked example") {
  GroupParams gp{make_field(5), 1};
  // [1,2,3]*[2,1,4] = [3,3,<1,1>+3+4] = [3,3,3]
  CHECK(mul(gp, elem({1}, {2}, 3), elem({2}, {1}, 4)) == elem({3}, {3}, 3));

  Rng rng(2);
  const auto e = identity(gp);
  for (int t = 0; t < 50; ++t) {
    const auto a = random_element(gp, rng);
    CHECK(mul(gp, a, e) == a);
    CHECK(mul(gp, e, a) == a);
  }
  // [x,0,0][0,y,0] = [x,y,<x,y>]
  GroupParams gp2{make_field(7), 2};
  for (int t = 0; t < 50; ++t) {
    const auto a = random_element(gp2, rng);
    const auto left = elem(a.x, {0, 0}, 0);
    const auto right = elem({0, 0}, a.y, 0);
    uint32_t ip = 0;
    for (uint32_t i = 0; i < 2; ++i)
      ip = gp2.field->add(ip, gp2.field->mul(a.x[i], a.y[i]));
    CHECK(mul(gp2, left, right) == elem(a.x, a.y, static_cast<uint16_t>(ip)));
  }
}

TEST_CASE("inverse worked example and involution") {
  GroupParams gp{make_field(5), 1};
  CHECK(inv(gp, elem({1}, {2}, 3)) == elem({4}, {3}, 4));
  CHECK(inv(gp, identity(gp)) == identity(gp));

  Rng rng(4);
  GroupParams gp2{make_field(7), 2};
  for (int t = 0; t < 100; ++t) {
    const auto a = random_element(gp2, rng);
    CHECK(inv(gp2, inv(gp2, a)) == a);
    CHECK(mul(gp2, a, inv(gp2, a)) == identity(gp2));
    CHECK(mul(gp2, inv(gp2, a), a) == identity(gp2));
  }
}

TEST_CASE("commutators and two-step nilpotency") {
  GroupParams gp{make_field(5), 1};
  CHECK(commutator(gp, elem({1}, {0}, 0), elem({0}, {1}, 0)) == elem({0}, {0}, 1));

  Rng rng(6);
  for (int t = 0; t < 50; ++t)
    CHECK(commutator(gp, random_element(gp, rng), identity(gp)) == identity(gp));

  GroupParams gp2{make_field(7), 2};
  for (int t = 0; t < 1000; ++t) {
    const auto a = random_element(gp2, rng), b = random_element(gp2, rng),
               c = random_element(gp2, rng);
    CHECK(nilpotency_check(gp2, a, b, c));
  }
}

TEST_CASE("ranks are lexicographic and invertible") {
  GroupParams gp{make_field(3), 1};
  const auto order = group_order(gp);
  REQUIRE(order);
  CHECK(*order == 27);
  for (uint64_t r = 0; r < 27; ++r) CHECK(element_rank(gp, element_unrank(gp, r)) == r);

  GroupParams gp2{make_field(13), 2};
  Rng rng(8);
  for (int t = 0; t < 100; ++t) {
    const auto a = random_element(gp2, rng);
    CHECK(element_unrank(gp2, element_rank(gp2, a)) == a);
  }
}

TEST_CASE("exhaustive group axioms at p=3, n=1") {
  GroupParams gp{make_field(3), 1};
  const auto all = full_group(gp).elements();
  REQUIRE(all.size() == 27);
  for (const auto& a : all)
    for (const auto& b : all)
      for (const auto& c : all)
        CHECK(mul(gp, mul(gp, a, b), c) == mul(gp, a, mul(gp, b, c)));
}

TEST_CASE("associativity on random triples per (p, n)") {
  Rng rng(14);
  for (auto [p, n] : std::vector<std::pair<uint32_t, uint32_t>>{
           {5, 1}, {7, 2}, {13, 1}, {5, 3}}) {
    GroupParams gp{make_field(p), n};
    for (int t = 0; t < 1000; ++t) {
      const auto a = random_element(gp, rng), b = random_element(gp, rng),
                 c = random_element(gp, rng);
      CHECK(mul(gp, mul(gp, a, b), c) == mul(gp, a, mul(gp, b, c)));
    }
  }
}

TEST_CASE("element set caps") {
  CHECK_THROWS_AS(ElementSet(GroupParams{make_field(101), 1}), resource_error);
  CHECK_NOTHROW(ElementSet(GroupParams{make_field(101), 1}, 1030301));
  CHECK(full_group(GroupParams{make_field(5), 1}).order() == 125);
}

TEST_CASE("brute products and Lemma 1") {
  GroupParams gp{make_field(3), 1};
  const auto g = full_group(gp);
  CHECK(brute_product_set(g, g) == g);

  ElementSet single(gp);
  single.insert(identity(gp));
  Rng rng(10);
  ElementSet t(gp);
  for (int k = 0; k < 12; ++k) t.insert(random_element(gp, rng));
  CHECK(brute_product_set(single, t) == t);

  // |S| + |T| >= 28 > 27 forces S*T = H_1
  for (int trial = 0; trial < 20; ++trial) {
    ElementSet s(gp), u(gp);
    while (s.size() < 14) s.insert(random_element(gp, rng));
    while (u.size() < 14) u.insert(random_element(gp, rng));
    const auto res = lemma1_check(s, u);
    CHECK(res.hypothesis_holds);
    CHECK(res.product_is_full);
    CHECK(res.implication_holds);
  }
}

TEST_CASE("conjugation") {
  GroupParams gp{make_field(5), 1};
  Rng rng(12);
  ElementSet s(gp);
  for (int k = 0; k < 30; ++k) s.insert(random_element(gp, rng));

  CHECK(conjugate_set(s, identity(gp)) == s);
  for (int t = 0; t < 10; ++t) {
    const auto conj = conjugate_set(s, random_element(gp, rng));
    CHECK(conj.size() == s.size());
  }

  // The center coset [a,b,F] is normal: conjugation fixes it setwise.
  ElementSet coset(gp);
  for (uint32_t z = 0; z < 5; ++z) coset.insert(elem({2}, {3}, static_cast<uint16_t>(z)));
  for (int t = 0; t < 20; ++t)
    CHECK(conjugate_set(coset, random_element(gp, rng)) == coset);
}

TEST_CASE("coordinate subgroups: closure, materialization, orders") {
  GroupParams gp{make_field(5), 1};

  const auto center = coordinate_subgroup_elements(gp, CoordinateSubgroup::center(1));
  CHECK(center.size() == 5);
  CHECK(check_subgroup(center).ok);

  CHECK_THROWS_AS(CoordinateSubgroup::make({Span::full}, {Span::full}, Span::zero),
                  input_error);
  // The same box, materialized without the closure rule, is not closed.
  const auto bad = materialize_profile(gp, {Span::full}, {Span::full}, Span::zero);
  const auto chk = check_subgroup(bad);
  CHECK(!chk.ok);
  CHECK(chk.witness.has_value());

  const auto whole = coordinate_subgroup_elements(gp, CoordinateSubgroup::whole_group(1));
  CHECK(whole.size() == 125);
  CHECK(whole == full_group(gp));
}

TEST_CASE("every closed profile is a subgroup, every violating box is not (n=2, p=3)") {
  GroupParams gp{make_field(3), 2};
  for (uint32_t mask = 0; mask < 32; ++mask) {
    std::vector<Span> kx{mask & 1 ? Span::full : Span::zero,
                         mask & 2 ? Span::full : Span::zero};
    std::vector<Span> ky{mask & 4 ? Span::full : Span::zero,
                         mask & 8 ? Span::full : Span::zero};
    const Span m = mask & 16 ? Span::full : Span::zero;
    const auto box = materialize_profile(gp, kx, ky, m);
    const auto chk = check_subgroup(box);
    if (CoordinateSubgroup::closure_ok(kx, ky, m)) {
      CHECK(chk.ok);
      const auto g = CoordinateSubgroup::make(kx, ky, m);
      CHECK(*g.order(3) == box.size());
    } else {
      CHECK(!chk.ok);
      CHECK(chk.witness.has_value());
      // the witness really escapes
      const auto [a, b] = *chk.witness;
      CHECK(!box.contains(mul(gp, a, b)));
    }
  }
}

TEST_CASE("materialized center is exactly the commuting elements (p=3, n=1)") {
  GroupParams gp{make_field(3), 1};
  const auto all = full_group(gp).elements();
  ElementSet commuting(gp);
  for (const auto& g : all) {
    bool ok = true;
    for (const auto& h : all)
      if (mul(gp, g, h) != mul(gp, h, g)) {
        ok = false;
        break;
      }
    if (ok) commuting.insert(g);
  }
  CHECK(commuting == coordinate_subgroup_elements(gp, CoordinateSubgroup::center(1)));
}

TEST_CASE("parameter mismatches are input errors") {
  GroupParams gp{make_field(5), 1};
  CHECK_THROWS_AS(mul(gp, elem({1, 2}, {0, 0}, 0), elem({1}, {0}, 0)), input_error);
  CHECK_THROWS_AS(mul(gp, elem({7}, {0}, 0), elem({1}, {0}, 0)), input_error);
}
