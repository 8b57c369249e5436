#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <complex>

#include "heisenbrick/prime_field.hpp"
#include "heisenbrick/residue_set.hpp"
#include "heisenbrick/transform.hpp"
#include "oracles.hpp"

using namespace hb;

TEST_CASE("prime field construction and tables") {
  CHECK_THROWS_AS(make_field(4), input_error);
  CHECK_THROWS_AS(make_field(2), input_error);   // odd primes only
  CHECK_THROWS_AS(make_field(1), input_error);
  CHECK_THROWS_AS(make_field(10007), input_error);  // above the default cap
  CHECK_THROWS_AS(make_field(10007, 9973), input_error);
  CHECK_NOTHROW(make_field(10007, 10007));

  for (uint32_t p : {3u, 5u, 97u, 9973u}) {
    auto f = make_field(p);
    for (uint32_t a = 1; a < p; ++a) CHECK(f->mul(a, f->inv(a)) == 1);
    // dlog/exp tables invert each other
    for (uint32_t a = 1; a < p; ++a) CHECK(f->exp(f->dlog(a)) == a);
  }
  CHECK_THROWS_AS(make_field(5)->inv(0), input_error);
}

TEST_CASE("sumset worked examples") {
  auto f5 = make_field(5);
  // {1,2} + {2,3} = {0,3,4}: pairs 1+2=3, 1+3=4, 2+2=4, 2+3=0
  CHECK(sumset(ResidueSet::of(f5, {1, 2}), ResidueSet::of(f5, {2, 3})) ==
        ResidueSet::of(f5, {0, 3, 4}));
  CHECK(sumset(ResidueSet(f5), ResidueSet::of(f5, {1, 2})).empty());
  CHECK(sumset(ResidueSet::of(f5, {0}), ResidueSet::full(f5)) == ResidueSet::full(f5));
}

TEST_CASE("sumset equals the pairwise oracle across word boundaries") {
  Rng rng(11);
  for (uint32_t p : {5u, 63u, 64u, 65u, 127u, 128u, 131u, 977u}) {
    if (!is_prime(p)) continue;
    auto f = make_field(p);
    for (int trial = 0; trial < 30; ++trial) {
      const auto a = oracle::random_set(f, 1 + rng.below(p), rng);
      const auto b = oracle::random_set(f, 1 + rng.below(p), rng);
      const auto s = sumset(a, b);
      CHECK(s == oracle::naive_sumset(a, b));
      // Cauchy-Davenport
      CHECK(s.cardinality() >=
            std::min(p, a.cardinality() + b.cardinality() - 1));
    }
  }
}

TEST_CASE("dilate") {
  auto f5 = make_field(5);
  CHECK(dilate(ResidueSet::of(f5, {1, 3}), 2) == ResidueSet::of(f5, {1, 2}));
  CHECK_THROWS_AS(dilate(ResidueSet::of(f5, {1}), 0), input_error);

  Rng rng(3);
  auto f = make_field(101);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = oracle::random_set(f, 1 + rng.below(100), rng);
    const uint32_t lambda = 1 + rng.below(100);
    CHECK(dilate(a, 1) == a);
    CHECK(dilate(a, lambda).cardinality() == a.cardinality());
  }
  CHECK(dilate(ResidueSet::units(f), 7) == ResidueSet::units(f));
}

TEST_CASE("translate, reflect, difference_from") {
  Rng rng(9);
  auto f = make_field(67);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = oracle::random_set(f, 1 + rng.below(66), rng);
    const uint32_t t = rng.below(67);
    ResidueSet expect(f);
    for (uint16_t v : a.values()) expect.insert(f->add(v, t));
    CHECK(translate(a, t) == expect);
    ResidueSet diff(f);
    for (uint16_t v : a.values()) diff.insert(f->sub(t, v));
    CHECK(difference_from(t, a) == diff);
    CHECK(reflect(reflect(a)) == a);
  }
}

TEST_CASE("product_count_table worked examples") {
  auto f5 = make_field(5);
  const auto r = product_count_table(ResidueSet::of(f5, {1, 2}), ResidueSet::of(f5, {1, 3}));
  // products: 1*1=1, 1*3=3, 2*1=2, 2*3=1
  CHECK(r == std::vector<uint64_t>{0, 2, 1, 1, 0});

  const auto single = product_count_table(ResidueSet::of(f5, {1}), ResidueSet::of(f5, {1}));
  CHECK(single == std::vector<uint64_t>{0, 1, 0, 0, 0});

  const auto units = product_count_table(ResidueSet::units(f5), ResidueSet::of(f5, {1}));
  CHECK(units == std::vector<uint64_t>{0, 1, 1, 1, 1});

  CHECK_THROWS_AS(product_count_table(ResidueSet::of(f5, {0, 1}), ResidueSet::of(f5, {1})),
                  input_error);
}

TEST_CASE("product table row sums and product_set support agree") {
  Rng rng(17);
  for (uint32_t p : {7u, 61u, 101u}) {
    auto f = make_field(p);
    for (int trial = 0; trial < 20; ++trial) {
      const auto x = oracle::random_set(f, 1 + rng.below(p - 1), rng, true);
      const auto y = oracle::random_set(f, 1 + rng.below(p - 1), rng, true);
      const auto table = product_count_table(x, y);
      uint64_t total = 0;
      for (uint64_t c : table) total += c;
      CHECK(total == uint64_t{x.cardinality()} * y.cardinality());

      const auto ps = product_set(x, y);
      CHECK(ps == oracle::naive_product_set(x, y));
      for (uint32_t t = 0; t < p; ++t) CHECK((table[t] > 0) == ps.contains(t));
    }
  }
}

TEST_CASE("product_set handles zero members") {
  auto f7 = make_field(7);
  const auto with_zero = ResidueSet::of(f7, {0, 2});
  CHECK(product_set(with_zero, ResidueSet::of(f7, {3})) == ResidueSet::of(f7, {0, 6}));
  CHECK(product_set(ResidueSet::of(f7, {0}), ResidueSet::of(f7, {0})) ==
        ResidueSet::of(f7, {0}));
}

TEST_CASE("shift_intersection_counts matches the oracle") {
  Rng rng(23);
  for (uint32_t p : {5u, 64u + 3u, 127u}) {
    if (!is_prime(p)) continue;
    auto f = make_field(p);
    for (int trial = 0; trial < 15; ++trial) {
      const auto x = oracle::random_set(f, 1 + rng.below(p), rng);
      CHECK(shift_intersection_counts(x) == oracle::naive_shift_counts(x));
    }
  }
}

TEST_CASE("dft of indicators") {
  auto f5 = make_field(5);
  // delta at 0 has a flat spectrum
  const auto delta = dft_indicator(ResidueSet::of(f5, {0}));
  for (const auto& v : delta.values) {
    CHECK(v.real() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(v.imag() == doctest::Approx(0.0).epsilon(1e-12));
  }
  // full set: character orthogonality
  const auto full = dft_indicator(ResidueSet::full(f5));
  CHECK(full.values[0].real() == doctest::Approx(5.0));
  for (uint32_t r = 1; r < 5; ++r) CHECK(std::abs(full.values[r]) < 1e-9);

  const auto two = dft_indicator(ResidueSet::of(f5, {1, 2}));
  CHECK(two.values[0].real() == doctest::Approx(2.0));
  double energy = 0;
  for (const auto& v : two.values) energy += std::norm(v);
  CHECK(energy == doctest::Approx(10.0).epsilon(1e-9));
}

TEST_CASE("dft round-trips through the inverse transform") {
  Rng rng(31);
  auto f = make_field(101);
  for (int trial = 0; trial < 10; ++trial) {
    const auto a = oracle::random_set(f, 1 + rng.below(101), rng);
    const auto spec = dft_indicator(a);
    const auto back = inverse_dft(spec.values);
    for (uint32_t x = 0; x < 101; ++x) {
      CHECK(std::abs(back[x].real() - (a.contains(x) ? 1.0 : 0.0)) < 1e-9);
      CHECK(std::abs(back[x].imag()) < 1e-9);
    }
  }
}

TEST_CASE("cyclic convolution: identity, hand example, symmetry") {
  // delta_0 * g = g
  std::vector<uint64_t> delta{1, 0, 0, 0, 0}, g{3, 1, 4, 1, 5};
  CHECK(cyclic_convolve(delta, g) == g);

  // indicator{1,2} * indicator{2,3} over Z/5: 1 at 3, 2 at 4, 1 at 0
  std::vector<uint64_t> a{0, 1, 1, 0, 0}, b{0, 0, 1, 1, 0};
  CHECK(cyclic_convolve(a, b) == std::vector<uint64_t>{1, 0, 0, 1, 2});

  Rng rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const uint32_t p = trial % 2 ? 31 : 101;
    std::vector<uint64_t> f(p), h(p);
    for (auto& v : f) v = rng.below(1000);
    for (auto& v : h) v = rng.below(1000);
    const auto fh = cyclic_convolve(f, h);
    CHECK(fh == cyclic_convolve(h, f));
    CHECK(fh == oracle::naive_convolve(f, h));
  }
}

TEST_CASE("cyclic convolution agrees with dft-multiply-invert") {
  Rng rng(13);
  for (uint32_t p : {5u, 53u, 101u}) {
    std::vector<uint64_t> f(p), g(p);
    for (auto& v : f) v = rng.below(50);
    for (auto& v : g) v = rng.below(50);
    const auto exact = cyclic_convolve(f, g);

    std::vector<double> fd(f.begin(), f.end()), gd(g.begin(), g.end());
    const auto fh = dft(fd), gh = dft(gd);
    std::vector<std::complex<double>> prod(p);
    for (uint32_t r = 0; r < p; ++r) prod[r] = fh[r] * gh[r];
    const auto back = inverse_dft(prod);
    for (uint32_t u = 0; u < p; ++u)
      CHECK(std::abs(back[u].real() - static_cast<double>(exact[u])) < 1e-5);
  }
}

TEST_CASE("cyclic convolution refuses to overflow") {
  std::vector<uint64_t> f(97, ~uint64_t{0} / 4), g(97, 8);
  CHECK_THROWS_AS(cyclic_convolve(f, g), computation_error);
  std::vector<uint64_t> bad{1, 2, 3};
  CHECK_THROWS_AS(cyclic_convolve(bad, std::vector<uint64_t>{1, 2}), input_error);
}

TEST_CASE("large modulus smoke: kernels at full width (p = 9973)") {
  auto f = make_field(9973);

  // interval sumset without wrap: Cauchy-Davenport equality case
  const auto a = ResidueSet::interval(f, 1, 3000);
  const auto s = sumset(a, a);
  CHECK(s == ResidueSet::interval(f, 2, 5999));
  CHECK(s.cardinality() == 2 * a.cardinality() - 1);

  // |A| + |B| > p forces the full field (additive covering)
  const auto big = ResidueSet::interval(f, 0, 5000);
  CHECK(sumset(big, big).is_full());

  // popular-shift scan against the naive count at one shift
  const auto counts = shift_intersection_counts(a);
  const auto naive = oracle::naive_shift_counts(a);
  CHECK(counts == naive);

  Rng rng(71);
  const auto r1 = oracle::random_set(f, 4000, rng);
  const auto r2 = oracle::random_set(f, 300, rng);
  CHECK(sumset(r1, r2) == oracle::naive_sumset(r1, r2));
  CHECK(product_set(r2, r2) == oracle::naive_product_set(r2, r2));
}

TEST_CASE("field mismatch is rejected") {
  auto f5 = make_field(5), f7 = make_field(7);
  CHECK_THROWS_AS(sumset(ResidueSet::of(f5, {1}), ResidueSet::of(f7, {1})), input_error);
}
