#include "heisenbrick/structure.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "bigint.hpp"
#include "heisenbrick/sumprod.hpp"

namespace hb {

Rational Rational::reduced(uint64_t num, uint64_t den) {
  if (den == 0) throw input_error("rational with zero denominator");
  const uint64_t g = std::gcd(num, den);
  return Rational{num / (g ? g : 1), den / (g ? g : 1)};
}

PopularShift choose_popular_shift(const ResidueSet& x) {
  if (x.empty()) throw input_error("popular shift of an empty set");
  const auto counts = shift_intersection_counts(x);
  uint32_t best = 0;
  for (uint32_t a = 1; a < counts.size(); ++a)
    if (counts[a] > counts[best]) best = a;

  PopularShift ps{best, x & difference_from(best, x)};
  // sum_a |X ∩ (a-X)| = |X|^2 over p shifts, so the max is >= ceil(|X|^2 / p).
  const uint64_t card = x.cardinality();
  const uint64_t need = (card * card + x.p() - 1) / x.p();
  if (ps.tilde.cardinality() < need)
    throw computation_error("popular shift below the |X|^2/p bound");
  return ps;
}

CosetReport count_center_cosets(const FiberedProductSet& P, const Brick& b) {
  CosetReport r;
  const uint32_t p = P.p();
  std::vector<char> full(P.pool().size());
  for (std::size_t i = 0; i < P.pool().size(); ++i)
    full[i] = P.pool()[i].cardinality() == p;
  for (uint64_t g = 0; g < P.support_size(); ++g) {
    if (full[P.pool_index(g)]) {
      ++r.count;
      r.witness_grid.push_back(g);
    }
  }
  const uint64_t card = brick_cardinality(b);
  r.threshold = Rational::reduced(card, p);
  r.meets_threshold =
      static_cast<unsigned __int128>(r.count) * p >= static_cast<unsigned __int128>(card);
  return r;
}

Th1Certificate th1_certificate(const Brick& b) {
  if (b.zero_relaxed)
    throw input_error("th1_certificate needs a strict brick (X_i, Y_i in F*)");
  const uint32_t p = b.field->p();
  Th1Certificate cert;

  std::vector<ResidueSet> xt, yt;
  BigInt lhs = BigInt(b.z.cardinality()) * b.z.cardinality();
  for (uint32_t i = 0; i < b.n; ++i) {
    auto px = choose_popular_shift(b.xs[i]);
    auto py = choose_popular_shift(b.ys[i]);
    cert.a.push_back(static_cast<uint16_t>(px.shift));
    cert.b.push_back(static_cast<uint16_t>(py.shift));
    cert.xt_sizes.push_back(px.tilde.cardinality());
    cert.yt_sizes.push_back(py.tilde.cardinality());
    lhs *= px.tilde.cardinality();
    lhs *= py.tilde.cardinality();
    xt.push_back(std::move(px.tilde));
    yt.push_back(std::move(py.tilde));
  }
  const BigInt rhs = big_pow(p, b.n + 2);
  cert.lhs = lhs.str();
  cert.rhs = rhs.str();
  cert.condition_holds = lhs > rhs;
  if (!cert.condition_holds) return cert;

  cert.fiber_full = fiber_at(b, cert.a, cert.b).is_full();
  const auto inst = SumProdInstance::make(b.field, 2, xt, yt, b.z);
  cert.sumprod_covers = covers_field(inst).covers;
  if (cert.fiber_full != cert.sumprod_covers)
    throw computation_error(
        "th1 certificate: set-algebra fiber and convolution oracle disagree");
  return cert;
}

GoodPairReport good_pair_set_E(const Brick& b, uint64_t pair_cap) {
  const uint32_t p = b.field->p();
  const uint32_t n = b.n;

  unsigned __int128 total = 1;
  for (uint32_t i = 0; i < 2 * n; ++i) {
    total *= p;
    if (total > pair_cap)
      throw resource_error("good_pair_set_E: p^(2n) exceeds the pair cap " +
                           std::to_string(pair_cap));
  }

  std::vector<std::vector<uint32_t>> cx(n), cy(n);
  for (uint32_t i = 0; i < n; ++i) {
    cx[i] = shift_intersection_counts(b.xs[i]);
    cy[i] = shift_intersection_counts(b.ys[i]);
  }

  const BigInt rhs = big_pow(p, n + 2);
  const BigInt zsq = BigInt(b.z.cardinality()) * b.z.cardinality();

  GoodPairReport r;
  std::vector<uint16_t> a(n, 0), bb(n, 0);
  std::vector<uint32_t> digits(2 * n, 0);
  while (true) {
    for (uint32_t i = 0; i < n; ++i) {
      a[i] = static_cast<uint16_t>(digits[i]);
      bb[i] = static_cast<uint16_t>(digits[n + i]);
    }
    BigInt lhs = zsq;
    for (uint32_t i = 0; i < n; ++i) {
      lhs *= cx[i][a[i]];
      lhs *= cy[i][bb[i]];
      if (lhs == 0) break;
    }
    if (lhs > rhs) {
      ++r.pair_count;
      uint64_t code = 0;
      for (uint32_t i = 0; i < n; ++i) code = code * p + a[i];
      for (uint32_t i = 0; i < n; ++i) code = code * p + bb[i];
      r.members.push_back(code);
      if (!fiber_at(b, a, bb).is_full()) {
        r.all_fibers_full = false;
        if (!r.bad_pair) r.bad_pair = code;
      }
    }
    std::size_t k = 0;
    while (k < digits.size() && ++digits[k] == p) digits[k++] = 0;
    if (k == digits.size()) break;
  }

  BigInt prod = 1;
  for (uint32_t i = 0; i < n; ++i) {
    prod *= b.xs[i].cardinality();
    prod *= b.ys[i].cardinality();
  }
  const BigInt den = prod - rhs;
  r.closed_form_applicable = den > 0;
  if (r.closed_form_applicable) {
    const BigInt num = prod * prod - big_pow(p, 3 * n + 2);
    r.closed_form_num = num.str();
    r.closed_form_den = den.str();
    r.meets_closed_form = BigInt(r.pair_count) * den >= num;
  }
  const double pd = p;
  r.heuristic_bound = (1.0 - std::pow(pd, -1.5)) *
                      static_cast<double>(brick_cardinality(b)) /
                      static_cast<double>(b.z.cardinality());
  r.meets_heuristic = static_cast<double>(r.pair_count) >= r.heuristic_bound;
  return r;
}

PeriodReport structured_period(const FiberedProductSet& P) {
  const uint32_t n = P.n();
  const uint32_t p = P.p();
  PeriodReport rep;
  rep.x_invariant.assign(n, false);
  rep.y_invariant.assign(n, false);

  std::vector<char> full(P.pool().size());
  for (std::size_t i = 0; i < P.pool().size(); ++i)
    full[i] = P.pool()[i].cardinality() == p;

  // Center direction [0,0,1]: every fiber must be all of F.
  rep.center_invariant = true;
  for (uint64_t g = 0; g < P.support_size(); ++g) {
    if (!full[P.pool_index(g)]) {
      rep.center_invariant = false;
      break;
    }
  }

  // Strides of the canonical grid.
  std::vector<uint64_t> stride(2 * n), size(2 * n);
  for (uint32_t i = 0; i < n; ++i) {
    size[i] = P.u_support()[i].size();
    size[n + i] = P.v_support()[i].size();
  }
  {
    uint64_t s = 1;
    for (uint32_t i = 2 * n; i-- > 0;) {
      stride[i] = s;
      s *= size[i];
    }
  }

  // x_i direction [e_i,0,0]: support full along u_i and fibers constant on
  // each u_i line.
  for (uint32_t i = 0; i < n; ++i) {
    if (size[i] != p) continue;
    bool ok = true;
    for (uint64_t g = 0; g < P.support_size() && ok; ++g) {
      const uint64_t pos = (g / stride[i]) % size[i];
      if (pos == 0) continue;
      ok = P.pool_index(g) == P.pool_index(g - pos * stride[i]);
    }
    rep.x_invariant[i] = ok;
  }

  // y_i direction [0,e_i,0]: support full along v_i and
  // fiber(u, v + e_i) = fiber(u, v) + u_i, cyclically.
  std::vector<uint16_t> u, v;
  for (uint32_t i = 0; i < n; ++i) {
    if (size[n + i] != p) continue;
    bool ok = true;
    for (uint64_t g = 0; g < P.support_size() && ok; ++g) {
      const uint64_t pos = (g / stride[n + i]) % p;
      P.decode(g, u, v);
      // successor cell along v_i (wraps at p: support full means position ==
      // residue here)
      const uint64_t gnext = pos + 1 < p ? g + stride[n + i] : g - pos * stride[n + i];
      const ResidueSet& cur = P.pool()[P.pool_index(g)];
      const ResidueSet& nxt = P.pool()[P.pool_index(gnext)];
      ok = nxt == translate(cur, u[i]);
    }
    rep.y_invariant[i] = ok;
  }

  std::vector<Span> kx(n, Span::zero), ky(n, Span::zero);
  bool center_needed = rep.center_invariant;
  for (uint32_t i = 0; i < n; ++i) {
    if (rep.x_invariant[i]) kx[i] = Span::full;
    if (rep.y_invariant[i]) ky[i] = Span::full;
    if (rep.x_invariant[i] && rep.y_invariant[i]) {
      // Closure forces the center; the stabilizer is a group, so the center
      // test must have passed on its own.
      if (!rep.center_invariant)
        throw computation_error(
            "structured_period: x and y directions invariant but center is "
            "not (internal inconsistency)");
      center_needed = true;
    }
  }
  rep.period = CoordinateSubgroup::make(std::move(kx), std::move(ky),
                                        center_needed ? Span::full : Span::zero);
  return rep;
}

ElementSet brute_stabilizer(const ElementSet& s) {
  const auto& gp = s.params();
  if (s.size() == 0) return full_group(gp, s.order());

  const auto elems = s.elements();
  // Candidates: g with s0 * g in S, i.e. g in s0^{-1} S.
  const HeisElement s0inv = inv(gp, elems[0]);
  std::vector<HeisElement> cand;
  for (const auto& t : elems) cand.push_back(mul(gp, s0inv, t));

  for (std::size_t k = 1; k < elems.size() && cand.size() > 1; ++k) {
    std::vector<HeisElement> next;
    for (const auto& g : cand)
      if (s.contains(mul(gp, elems[k], g))) next.push_back(g);
    cand = std::move(next);
  }

  ElementSet out(gp, s.order());
  for (const auto& g : cand) out.insert(g);
  const auto check = check_subgroup(out);
  if (!check.ok)
    throw computation_error("brute_stabilizer: result is not a subgroup (" +
                            check.reason + ")");
  return out;
}

CyclicCosetScan find_cyclic_coset(const ElementSet& s) {
  CyclicCosetScan scan;
  const auto& gp = s.params();
  const uint32_t p = gp.p();
  const uint64_t order = s.order();
  if (s.size() == 0) return scan;

  const auto members = s.ranks();
  for (uint64_t gr = 1; gr < order; ++gr) {
    const HeisElement g = element_unrank(gp, gr);
    // Powers g, g^2, ..., g^{p-1}; every non-identity element of H_n has
    // order p for odd p. Only scan the generator of smallest rank in <g>.
    std::vector<uint64_t> pow_ranks;
    HeisElement cur = g;
    bool minimal = true;
    for (uint32_t k = 1; k < p; ++k) {
      const uint64_t r = element_rank(gp, cur);
      if (r < gr) {
        minimal = false;
        break;
      }
      pow_ranks.push_back(r);
      cur = mul(gp, cur, g);
    }
    if (!minimal) continue;

    for (uint64_t h : members) {
      const HeisElement he = element_unrank(gp, h);
      bool whole = true;
      for (uint64_t pr : pow_ranks) {
        if (!s.contains(mul(gp, he, element_unrank(gp, pr)))) {
          whole = false;
          break;
        }
      }
      if (whole) {
        scan.found = true;
        scan.witness = {h, gr};
        return scan;
      }
    }
  }
  return scan;
}

Th13Analysis th13_analysis(const Brick& b, uint64_t fiber_cap) {
  const uint32_t p = b.field->p();
  const uint32_t n = b.n;
  Th13Analysis an;

  struct Comp {
    char letter;
    uint32_t index;
    uint32_t size;
  };
  std::vector<Comp> large;
  auto classify = [&](char letter, uint32_t i, uint32_t size) {
    const uint64_t twice_sq = 2 * static_cast<uint64_t>(size) * size;
    const uint64_t psq = static_cast<uint64_t>(p) * p;
    if (twice_sq > psq)
      large.push_back({letter, i, size}), ++an.ell;
    else if (size > 1)
      ++an.k;
  };
  for (uint32_t i = 0; i < n; ++i) classify('x', i, b.xs[i].cardinality());
  for (uint32_t i = 0; i < n; ++i) classify('y', i, b.ys[i].cardinality());

  // Recipe subgroup: pin two large components of the same letter when
  // possible, otherwise one of each letter, handled the same way. Remaining
  // large components and the center go full.
  std::vector<Span> kx(n, Span::zero), ky(n, Span::zero);
  if (an.ell >= 3) {
    std::vector<Comp> xs_large, ys_large;
    for (const auto& c : large)
      (c.letter == 'x' ? xs_large : ys_large).push_back(c);
    Comp p1{'x', 0, 0}, p2{'x', 0, 0};
    if (xs_large.size() >= 2) {
      p1 = xs_large[0];
      p2 = xs_large[1];
    } else if (ys_large.size() >= 2) {
      p1 = ys_large[0];
      p2 = ys_large[1];
    } else {
      p1 = xs_large[0];
      p2 = ys_large[0];
    }
    for (const Comp& c : {p1, p2}) {
      const ResidueSet& comp = c.letter == 'x' ? b.xs[c.index] : b.ys[c.index];
      const auto ps = choose_popular_shift(comp);
      if (2 * static_cast<uint64_t>(ps.tilde.cardinality()) <= p)
        throw computation_error("th13: pinned intersection not above p/2");
      an.pins.push_back({c.letter, c.index, static_cast<uint16_t>(ps.shift)});
    }
    for (const auto& c : large) {
      const bool pinned =
          (c.letter == an.pins[0].letter && c.index == an.pins[0].index) ||
          (c.letter == an.pins[1].letter && c.index == an.pins[1].index);
      if (pinned) continue;
      (c.letter == 'x' ? kx : ky)[c.index] = Span::full;
    }
    an.recipe = CoordinateSubgroup::make(kx, ky, Span::full);
    if (an.recipe.full_count() != an.ell - 1)
      throw computation_error("th13: recipe order is not p^(ell-1)");
  } else {
    an.recipe = CoordinateSubgroup::trivial(n);
  }

  const auto P = square_fibered(b, fiber_cap);
  const auto period = structured_period(P);
  an.verified_period = period.period;

  const uint64_t bcard = brick_cardinality(b);
  an.ratio = Rational::reduced(P.total_cardinality(), bcard);

  const long double alpha = std::log(3.0L) / (2.0L * std::log(static_cast<long double>(p)));
  const long double gver = std::pow(static_cast<long double>(p),
                                    static_cast<long double>(an.verified_period.full_count()));
  an.ratio_lower_bound =
      0.25L * std::pow(static_cast<long double>(bcard) / gver, alpha);
  const long double ratio_ld =
      static_cast<long double>(P.total_cardinality()) / static_cast<long double>(bcard);
  an.ratio_meets_bound = ratio_ld >= an.ratio_lower_bound * (1.0L - 1e-9L);

  // Exact: (|BB| / |B|)^2 >= 2^k  <=>  |BB|^2 >= 2^k |B|^2.
  const BigInt bb = P.total_cardinality();
  an.ratio_meets_sqrt2_k = bb * bb >= (BigInt(bcard) * bcard) << an.k;

  an.recipe_stabilizes = an.recipe.contained_in(an.verified_period);

  if (an.ell >= 3) {
    std::vector<char> full(P.pool().size());
    for (std::size_t i = 0; i < P.pool().size(); ++i)
      full[i] = P.pool()[i].cardinality() == p;
    std::vector<uint16_t> u, v;
    for (uint64_t g = 0; g < P.support_size(); ++g) {
      P.decode(g, u, v);
      bool in_family = true;
      for (const auto& pin : an.pins) {
        const uint16_t have = pin.letter == 'x' ? u[pin.index] : v[pin.index];
        if (have != pin.w) {
          in_family = false;
          break;
        }
      }
      if (in_family && !full[P.pool_index(g)]) {
        an.pinned_cosets_full = false;
        an.pinned_coset_witness = {u, v};
        break;
      }
    }
  }
  return an;
}

Brick prop2_construct(FieldPtr field, uint32_t n) {
  if (n < 1) throw input_error("n must be >= 1");
  const uint32_t p = field->p();
  ResidueSet r(field), z(field);
  for (uint32_t t = 0; 2ull * n * t * t < p - 1; ++t) r.insert(t);
  for (uint32_t t = 0; 4ull * t < p; ++t) z.insert(t);
  std::vector<ResidueSet> xs(n, r), ys(n, r);
  return Brick::make(field, std::move(xs), std::move(ys), std::move(z),
                     /*zero_relaxed=*/true);
}

Prop2Report prop2_verify(FieldPtr field, uint32_t n, const Caps& caps) {
  const uint32_t p = field->p();
  const Brick b = prop2_construct(field, n);

  Prop2Report rep;
  rep.p = p;
  rep.n = n;
  rep.r_size = b.xs[0].cardinality();
  rep.z_size = b.z.cardinality();
  rep.cardinality = brick_cardinality(b);
  rep.relaxed_zero = b.xs[0].contains(0);

  // |B| >= p^{n+1} / (4 (2n)^n), exactly.
  const BigInt num = big_pow(p, n + 1);
  BigInt den = 4;
  for (uint32_t i = 0; i < n; ++i) den *= 2 * n;
  rep.bound_num = num.str();
  rep.bound_den = den.str();
  rep.size_bound_holds = BigInt(rep.cardinality) * den >= num;

  const auto P = square_fibered(b, caps.fibers);
  const auto proj = P.projections();
  rep.w_size = proj.w.cardinality();
  rep.w_not_full = !proj.w.is_full();

  // The support is a product grid, so U contains a line {x_1}x..xFx..x{x_n}
  // exactly when some per-coordinate support is all of F.
  rep.no_full_line = true;
  for (uint32_t i = 0; i < n; ++i) {
    if (P.u_support()[i].size() == p || P.v_support()[i].size() == p)
      rep.no_full_line = false;
  }

  const auto order = group_order(b.params());
  if (order && *order <= caps.brute_force) {
    const auto bb = P.to_element_set(caps.brute_force);
    if (bb.size() != P.total_cardinality())
      throw computation_error("prop2: fibered and materialized cardinalities differ");
    rep.stabilizer_trivial = brute_stabilizer(bb).size() == 1;
    const auto scan = find_cyclic_coset(bb);
    rep.no_cyclic_coset = !scan.found;
    rep.cyclic_witness = scan.witness;
  }

  rep.pass = rep.size_bound_holds && rep.w_not_full && rep.no_full_line &&
             rep.stabilizer_trivial.value_or(true) &&
             rep.no_cyclic_coset.value_or(true);
  return rep;
}

SmallPeriodReport small_period_example(FieldPtr field, const Caps& caps) {
  const uint32_t p = field->p();
  ResidueSet x(field);
  for (uint32_t t = 0; 4ull * t * t < p; ++t) x.insert(t);
  const Brick b = Brick::make(field, {x}, {x}, ResidueSet::full(field),
                              /*zero_relaxed=*/true);

  SmallPeriodReport rep;
  rep.p = p;
  rep.x_size = x.cardinality();
  rep.b_cardinality = brick_cardinality(b);

  const auto P = square_fibered(b, caps.fibers);
  rep.bb_cardinality = P.total_cardinality();
  rep.growth_bound_holds = rep.bb_cardinality < 4 * rep.b_cardinality;

  rep.period = structured_period(P);
  rep.period_is_center = rep.period.period == CoordinateSubgroup::center(1);

  const auto order = group_order(b.params());
  if (order && *order <= caps.brute_force) {
    const auto stab = brute_stabilizer(P.to_element_set(caps.brute_force));
    rep.period.full_stabilizer_order = stab.size();
  }

  rep.pass = rep.growth_bound_holds && rep.period_is_center;
  return rep;
}

}  // namespace hb
