#include "heisenbrick/runner.hpp"

#include <atomic>
#include <cstdlib>
#include <functional>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "heisenbrick/kernels.hpp"
#include "heisenbrick/sumprod.hpp"

namespace hb {

namespace {

Json make_claim(const std::string& name, const std::string& status,
                Json witnesses = Json::array(), Json numbers = Json::object()) {
  Json c;
  c["claim"] = name;
  c["status"] = status;
  c["witnesses"] = std::move(witnesses);
  c["numbers"] = std::move(numbers);
  return c;
}

Json pass_fail(const std::string& name, bool ok, Json witnesses = Json::array(),
               Json numbers = Json::object()) {
  return make_claim(name, ok ? "pass" : "fail", std::move(witnesses),
                    std::move(numbers));
}

std::string overall_status(const Json& claims) {
  bool any_pass = false;
  for (const auto& c : claims) {
    if (c["status"] == "fail") return "fail";
    if (c["status"] == "pass") any_pass = true;
  }
  return any_pass ? "pass" : "not-applicable";
}

unsigned thread_budget(uint32_t jobs) {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  if (const char* env = std::getenv("HEISENBRICK_THREADS")) {
    const long v = std::atol(env);
    if (v >= 1) hw = std::min<unsigned>(hw, static_cast<unsigned>(v));
  }
  return std::min<unsigned>(hw, jobs ? jobs : 1);
}

/// Runs fn(0..count) possibly in parallel; results land in index order, so
/// reports never depend on scheduling.
std::vector<Json> map_ordered(uint32_t count, const std::function<Json(uint32_t)>& fn) {
  std::vector<Json> out(count);
  const unsigned threads = thread_budget(count);
  if (threads <= 1) {
    for (uint32_t j = 0; j < count; ++j) out[j] = fn(j);
    return out;
  }
  kernels::active();  // settle dispatch before spawning
  std::atomic<uint32_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (;;) {
        const uint32_t j = next.fetch_add(1);
        if (j >= count) return;
        try {
          out[j] = fn(j);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
          next.store(count);
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
  return out;
}

Json rational_json(const Rational& r) {
  Json j;
  j["num"] = r.num;
  j["den"] = r.den;
  return j;
}

Json uv_json(const std::vector<uint16_t>& u, const std::vector<uint16_t>& v) {
  Json j;
  j["a"] = u;
  j["b"] = v;
  return j;
}

constexpr std::size_t kWitnessLimit = 200;

}  // namespace

bool report_passes(const Json& report) {
  if (report.is_object()) {
    if (report.contains("status") && report["status"] == "fail") return false;
    for (const auto& [key, value] : report.items()) {
      (void)key;
      if (!report_passes(value)) return false;
    }
  } else if (report.is_array()) {
    for (const auto& v : report)
      if (!report_passes(v)) return false;
  }
  return true;
}

Json product_report(const Brick& b, const Caps& caps, bool dump_fibers) {
  const auto P = square_fibered(b, caps.fibers);
  const auto proj = P.projections();

  Json numbers;
  numbers["p"] = b.field->p();
  numbers["n"] = b.n;
  numbers["brick_cardinality"] = brick_cardinality(b);
  numbers["product_cardinality"] = P.total_cardinality();
  numbers["support_size"] = P.support_size();
  numbers["unique_fibers"] = P.pool().size();
  numbers["ratio"] = rational_json(
      Rational::reduced(P.total_cardinality(), brick_cardinality(b)));
  Json us = Json::array(), vs = Json::array();
  for (uint32_t i = 0; i < b.n; ++i) {
    us.push_back(set_to_json(proj.u[i]));
    vs.push_back(set_to_json(proj.v[i]));
  }
  numbers["U"] = std::move(us);
  numbers["V"] = std::move(vs);
  numbers["W"] = set_to_json(proj.w);
  numbers["W_size"] = proj.w.cardinality();

  Json report;
  report["command"] = "product";
  report["numbers"] = std::move(numbers);
  if (dump_fibers) {
    Json fibers = Json::array();
    P.for_each([&](uint64_t, const std::vector<uint16_t>& u,
                   const std::vector<uint16_t>& v, const ResidueSet& w) {
      Json f;
      f["u"] = u;
      f["v"] = v;
      f["w"] = set_to_json(w);
      fibers.push_back(std::move(f));
    });
    report["fibers"] = std::move(fibers);
  }
  report["claims"] = Json::array();
  report["status"] = "pass";
  return report;
}

Json period_report(const Brick& b, const Caps& caps) {
  const auto P = square_fibered(b, caps.fibers);
  auto rep = structured_period(P);

  Json claims = Json::array();
  Json numbers;
  numbers["period"] = subgroup_to_json(rep.period);
  numbers["period_order_exponent"] = rep.period.full_count();
  Json xinv = Json::array(), yinv = Json::array();
  for (uint32_t i = 0; i < P.n(); ++i) {
    xinv.push_back(static_cast<bool>(rep.x_invariant[i]));
    yinv.push_back(static_cast<bool>(rep.y_invariant[i]));
  }
  numbers["x_invariant"] = std::move(xinv);
  numbers["y_invariant"] = std::move(yinv);
  numbers["center_invariant"] = rep.center_invariant;

  const auto order = group_order(b.params());
  if (order && *order <= caps.brute_force) {
    const auto bb = P.to_element_set(caps.brute_force);
    const auto stab = brute_stabilizer(bb);
    rep.full_stabilizer_order = stab.size();
    numbers["full_stabilizer_order"] = stab.size();
    // The structured period is a subgroup of the true right stabilizer.
    const auto mat = coordinate_subgroup_elements(b.params(), rep.period, caps.brute_force);
    bool contained = true;
    for (uint64_t r : mat.ranks())
      if (!stab.contains_rank(r)) {
        contained = false;
        break;
      }
    claims.push_back(pass_fail("period.contained-in-brute-stabilizer", contained));
  } else {
    claims.push_back(make_claim("period.contained-in-brute-stabilizer",
                                "not-applicable"));
  }

  Json report;
  report["command"] = "period";
  report["numbers"] = std::move(numbers);
  report["claims"] = claims;
  report["status"] = overall_status(claims);
  return report;
}

Json cosets_report(const Brick& b, const Caps& caps) {
  const auto P = square_fibered(b, caps.fibers);
  const auto rep = count_center_cosets(P, b);

  Json witnesses = Json::array();
  std::vector<uint16_t> u, v;
  for (std::size_t k = 0; k < rep.witness_grid.size() && k < kWitnessLimit; ++k) {
    P.decode(rep.witness_grid[k], u, v);
    witnesses.push_back(uv_json(u, v));
  }

  Json numbers;
  numbers["count"] = rep.count;
  numbers["threshold"] = rational_json(rep.threshold);
  numbers["witnesses_truncated"] = rep.witness_grid.size() > kWitnessLimit;

  if (!rep.meets_threshold) {
    // A checkable counterexample: some support cell whose fiber misses a residue.
    for (uint64_t g = 0; g < P.support_size(); ++g) {
      const ResidueSet& fib = P.pool()[P.pool_index(g)];
      if (!fib.is_full()) {
        P.decode(g, u, v);
        Json w = uv_json(u, v);
        w["missing_residue"] = fib.first_missing();
        witnesses.push_back(std::move(w));
        break;
      }
    }
  }

  Json claims = Json::array();
  claims.push_back(pass_fail("cosets.count-meets-threshold", rep.meets_threshold,
                             witnesses, numbers));

  Json report;
  report["command"] = "cosets";
  report["numbers"] = numbers;
  report["claims"] = claims;
  report["status"] = overall_status(claims);
  return report;
}

Json sumprod_report(const SumProdInstance& inst) {
  const auto margin = condition_one(inst);
  const auto profile = solution_profile(inst);
  const auto coverage = covers_field(inst);
  const long double chain = positivity_chain_lower_bound(inst);

  Json numbers;
  numbers["condition_lhs"] = margin.lhs;
  numbers["condition_rhs"] = margin.rhs;
  numbers["condition_margin"] = margin.margin;
  numbers["condition_holds"] = margin.holds;
  numbers["min_count"] = profile.min_count;
  numbers["argmin"] = profile.argmin;
  numbers["covers"] = coverage.covers;
  numbers["max_fourier_deviation"] = profile.max_fourier_deviation;
  numbers["positivity_chain_bound"] = static_cast<double>(chain);

  Json claims = Json::array();
  {
    Json w = Json::array();
    if (coverage.missing) w.push_back(*coverage.missing);
    if (margin.holds && inst.m >= 2)
      claims.push_back(pass_fail("sumprod.condition-implies-coverage", coverage.covers, w));
    else
      claims.push_back(make_claim("sumprod.condition-implies-coverage",
                                  "not-applicable", w));
  }
  claims.push_back(pass_fail("sumprod.fourier-identity", profile.fourier_consistent,
                             Json::array(),
                             Json{{"max_deviation", profile.max_fourier_deviation}}));
  if (chain > 0)
    claims.push_back(pass_fail("sumprod.positivity-chain", coverage.covers));
  else
    claims.push_back(make_claim("sumprod.positivity-chain", "not-applicable"));

  Json report;
  report["command"] = "sumprod";
  report["instance"] = sumprod_to_json(inst);
  report["numbers"] = std::move(numbers);
  report["claims"] = claims;
  report["status"] = overall_status(claims);
  return report;
}

namespace verify {

namespace {

// All nonempty subsets of F_p as ResidueSets, indexed by bitmask.
std::vector<ResidueSet> all_subsets(const FieldPtr& field) {
  const uint32_t p = field->p();
  std::vector<ResidueSet> sets;
  sets.reserve(1u << p);
  for (uint32_t mask = 0; mask < (1u << p); ++mask) {
    ResidueSet s(field);
    for (uint32_t r = 0; r < p; ++r)
      if (mask & (1u << r)) s.insert(r);
    sets.push_back(std::move(s));
  }
  return sets;
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

Json lemmas(const std::vector<uint32_t>& cd_primes, uint32_t nilpotency_trials,
            uint64_t seed) {
  Json claims = Json::array();

  for (uint32_t p : cd_primes) {
    // 4^p subset pairs; p = 13 is already ~67M sumsets.
    if (p > 13) throw input_error("exhaustive subset sweep is limited to p <= 13");
    auto field = make_field(p);
    const auto sets = all_subsets(field);
    uint64_t pairs = 0;
    bool cd_ok = true, lemma1_ok = true;
    Json cd_witness = Json::array(), l1_witness = Json::array();
    for (uint32_t ma = 1; ma < sets.size() && (cd_ok || lemma1_ok); ++ma) {
      for (uint32_t mb = 1; mb < sets.size(); ++mb) {
        ++pairs;
        const auto sum = sumset(sets[ma], sets[mb]);
        const uint32_t ca = sets[ma].cardinality(), cb = sets[mb].cardinality();
        if (sum.cardinality() < std::min(p, ca + cb - 1)) {
          cd_ok = false;
          cd_witness.push_back(Json{{"A", set_to_json(sets[ma])},
                                    {"B", set_to_json(sets[mb])}});
        }
        if (ca + cb > p && !sum.is_full()) {
          lemma1_ok = false;
          l1_witness.push_back(Json{{"A", set_to_json(sets[ma])},
                                    {"B", set_to_json(sets[mb])}});
        }
      }
    }
    const std::string suffix = ".exhaustive.p" + std::to_string(p);
    claims.push_back(pass_fail("cauchy-davenport" + suffix, cd_ok, cd_witness,
                               Json{{"pairs", pairs}}));
    claims.push_back(pass_fail("additive-lemma1" + suffix, lemma1_ok, l1_witness));
  }

  // Group law, exhaustively at p=3, n=1.
  {
    GroupParams gp{make_field(3), 1};
    const auto all = full_group(gp).elements();
    bool assoc = true, invs = true, idents = true;
    const auto e = identity(gp);
    for (const auto& a : all) {
      if (mul(gp, a, e) != a || mul(gp, e, a) != a) idents = false;
      if (mul(gp, a, inv(gp, a)) != e || mul(gp, inv(gp, a), a) != e) invs = false;
    }
    uint64_t triples = 0;
    for (const auto& a : all)
      for (const auto& b : all)
        for (const auto& c : all) {
          ++triples;
          if (mul(gp, mul(gp, a, b), c) != mul(gp, a, mul(gp, b, c))) assoc = false;
        }
    claims.push_back(pass_fail("group.axioms.exhaustive.p3n1", assoc && invs && idents,
                               Json::array(), Json{{"triples", triples}}));

    // Materialized center equals the commuting elements.
    const auto center = coordinate_subgroup_elements(gp, CoordinateSubgroup::center(1));
    ElementSet commuting(gp);
    for (const auto& g : all) {
      bool commutes = true;
      for (const auto& h : all)
        if (mul(gp, g, h) != mul(gp, h, g)) {
          commutes = false;
          break;
        }
      if (commutes) commuting.insert(g);
    }
    claims.push_back(pass_fail("group.center.exhaustive.p3n1", commuting == center));
  }

  // |H_n| = p^(2n+1) by enumeration at p=3 and p=5 (n=1).
  {
    bool ok = full_group(GroupParams{make_field(3), 1}).order() == 27 &&
              full_group(GroupParams{make_field(5), 1}).order() == 125;
    claims.push_back(pass_fail("group.order.enumerated", ok));
  }

  // Nilpotency identity on random triples.
  {
    Rng rng(seed);
    bool ok = true;
    Json witness = Json::array();
    uint64_t checked = 0;
    for (uint32_t p : {5u, 7u}) {
      for (uint32_t n : {1u, 2u}) {
        GroupParams gp{make_field(p), n};
        for (uint32_t t = 0; t < nilpotency_trials; ++t) {
          const auto a = random_element(gp, rng), b = random_element(gp, rng),
                     c = random_element(gp, rng);
          ++checked;
          if (!nilpotency_check(gp, a, b, c)) {
            ok = false;
            witness.push_back(Json{{"p", p},
                                   {"n", n},
                                   {"a", element_to_json(a)},
                                   {"b", element_to_json(b)},
                                   {"c", element_to_json(c)}});
          }
        }
      }
    }
    claims.push_back(pass_fail("group.nilpotency.random", ok, witness,
                               Json{{"triples", checked}}));
  }

  Json report;
  report["command"] = "verify";
  report["target"] = "lemmas";
  report["claims"] = claims;
  report["status"] = overall_status(claims);
  return report;
}

Json th1_brick(const Brick& b, const Caps& caps) {
  Json claims = Json::array();

  const auto cert = th1_certificate(b);
  {
    Json numbers;
    numbers["a"] = cert.a;
    numbers["b"] = cert.b;
    numbers["xt_sizes"] = cert.xt_sizes;
    numbers["yt_sizes"] = cert.yt_sizes;
    numbers["lhs"] = cert.lhs;
    numbers["rhs"] = cert.rhs;
    if (cert.condition_holds)
      claims.push_back(pass_fail("th1.certificate",
                                 cert.fiber_full && cert.sumprod_covers,
                                 Json::array({uv_json(cert.a, cert.b)}), numbers));
    else
      claims.push_back(
          make_claim("th1.certificate", "not-applicable", Json::array(), numbers));
  }

  const auto e = good_pair_set_E(b, caps.fibers);
  {
    Json numbers;
    numbers["E_size"] = e.pair_count;
    numbers["heuristic_bound"] = e.heuristic_bound;
    numbers["meets_heuristic"] = e.meets_heuristic;
    Json witnesses = Json::array();
    if (e.bad_pair) {
      // decode the base-p pair code back into (a, b)
      uint64_t code = *e.bad_pair;
      std::vector<uint16_t> a(b.n), bv(b.n);
      for (uint32_t i = b.n; i-- > 0;) {
        bv[i] = static_cast<uint16_t>(code % b.field->p());
        code /= b.field->p();
      }
      for (uint32_t i = b.n; i-- > 0;) {
        a[i] = static_cast<uint16_t>(code % b.field->p());
        code /= b.field->p();
      }
      witnesses.push_back(uv_json(a, bv));
    }
    claims.push_back(pass_fail("th1.good-pairs.full-fibers", e.all_fibers_full,
                               witnesses, numbers));
    if (e.closed_form_applicable) {
      Json nb;
      nb["E_size"] = e.pair_count;
      nb["bound_num"] = e.closed_form_num;
      nb["bound_den"] = e.closed_form_den;
      claims.push_back(pass_fail("th1.good-pairs.lower-bound", e.meets_closed_form,
                                 Json::array(), nb));
    } else {
      claims.push_back(make_claim("th1.good-pairs.lower-bound", "not-applicable"));
    }
  }

  {
    const auto P = square_fibered(b, caps.fibers);
    const auto cosets = count_center_cosets(P, b);
    Json numbers;
    numbers["coset_count"] = cosets.count;
    numbers["E_size"] = e.pair_count;
    numbers["threshold"] = rational_json(cosets.threshold);
    numbers["meets_threshold"] = cosets.meets_threshold;
    claims.push_back(pass_fail("th1.coset-count-covers-E", cosets.count >= e.pair_count,
                               Json::array(), numbers));
  }

  Json report;
  report["brick"] = brick_to_json(b);
  report["claims"] = claims;
  report["status"] = overall_status(claims);
  return report;
}

namespace {

Json sweep(const FieldPtr& field, uint32_t n, uint32_t instances, uint64_t seed,
           const std::string& target,
           const std::function<Json(const Brick&)>& analyze) {
  Rng master(seed);
  std::vector<std::pair<RandomBrickSpec, uint64_t>> gen;
  gen.reserve(instances);
  for (uint32_t j = 0; j < instances; ++j) {
    auto spec = random_spec(field->p(), n, master);
    gen.emplace_back(std::move(spec), master.next());
  }

  const auto results = map_ordered(instances, [&](uint32_t j) {
    const Brick b = random_brick(gen[j].first, gen[j].second, field);
    Json inst = analyze(b);
    inst["index"] = j;
    return inst;
  });

  // Aggregate claim verdicts across instances.
  std::map<std::string, std::pair<bool, bool>> agg;  // name -> (any_pass, any_fail)
  std::map<std::string, Json> fail_witness;
  for (const auto& inst : results) {
    for (const auto& c : inst["claims"]) {
      auto& a = agg[c["claim"]];
      if (c["status"] == "pass") a.first = true;
      if (c["status"] == "fail") {
        a.second = true;
        auto& w = fail_witness[c["claim"]];
        if (w.is_null()) w = Json::array();
        if (w.size() < kWitnessLimit) w.push_back(inst["index"]);
      }
    }
  }
  Json claims = Json::array();
  for (const auto& [name, verdict] : agg) {
    const std::string status =
        verdict.second ? "fail" : (verdict.first ? "pass" : "not-applicable");
    Json w = fail_witness.count(name) ? fail_witness[name] : Json::array();
    claims.push_back(make_claim(name, status, std::move(w),
                                Json{{"instances", instances}}));
  }

  Json report;
  report["command"] = "verify";
  report["target"] = target;
  report["config"] =
      Json{{"p", field->p()}, {"n", n}, {"instances", instances}, {"seed", seed}};
  report["instances"] = results;
  report["claims"] = claims;
  report["status"] = overall_status(claims);
  return report;
}

}  // namespace

Json th1_sweep(const FieldPtr& field, uint32_t n, uint32_t instances, uint64_t seed,
               const Caps& caps) {
  return sweep(field, n, instances, seed, "th1",
               [&](const Brick& b) { return th1_brick(b, caps); });
}

Json th13_brick(const Brick& b, const Caps& caps) {
  const auto an = th13_analysis(b, caps.fibers);

  Json numbers;
  numbers["k"] = an.k;
  numbers["ell"] = an.ell;
  numbers["ratio"] = rational_json(an.ratio);
  numbers["ratio_lower_bound"] = static_cast<double>(an.ratio_lower_bound);
  numbers["recipe"] = subgroup_to_json(an.recipe);
  numbers["verified_period"] = subgroup_to_json(an.verified_period);
  Json pins = Json::array();
  for (const auto& pin : an.pins)
    pins.push_back(Json{{"letter", std::string(1, pin.letter)},
                        {"index", pin.index},
                        {"w", pin.w}});
  numbers["pins"] = std::move(pins);

  Json claims = Json::array();
  claims.push_back(
      pass_fail("th13.ratio-geq-sqrt2-k", an.ratio_meets_sqrt2_k, Json::array(), numbers));
  claims.push_back(pass_fail("th13.ratio-lower-bound", an.ratio_meets_bound,
                             Json::array(), numbers));
  claims.push_back(pass_fail("th13.recipe-stabilizes", an.recipe_stabilizes));
  if (an.ell >= 3) {
    Json witnesses = Json::array();
    if (an.pinned_coset_witness)
      witnesses.push_back(
          uv_json(an.pinned_coset_witness->first, an.pinned_coset_witness->second));
    claims.push_back(
        pass_fail("th13.pinned-cosets-full", an.pinned_cosets_full, witnesses));
  } else {
    claims.push_back(make_claim("th13.pinned-cosets-full", "not-applicable"));
  }

  // Exhaustive recipe check when the whole group is materializable.
  const auto order = group_order(b.params());
  if (order && *order <= caps.brute_force) {
    const auto bb = square_fibered(b, caps.fibers).to_element_set(caps.brute_force);
    const auto recipe =
        coordinate_subgroup_elements(b.params(), an.recipe, caps.brute_force);
    const auto prod = brute_product_set(bb, recipe);
    claims.push_back(pass_fail("th13.recipe-period-exhaustive", prod == bb));
  } else {
    claims.push_back(make_claim("th13.recipe-period-exhaustive", "not-applicable"));
  }

  Json report;
  report["brick"] = brick_to_json(b);
  report["numbers"] = numbers;
  report["claims"] = claims;
  report["status"] = overall_status(claims);
  return report;
}

Json th13_sweep(const FieldPtr& field, uint32_t n, uint32_t instances, uint64_t seed,
                const Caps& caps) {
  return sweep(field, n, instances, seed, "th13",
               [&](const Brick& b) { return th13_brick(b, caps); });
}

Json prop2(const FieldPtr& field, uint32_t n, const Caps& caps) {
  const auto rep = prop2_verify(field, n, caps);

  Json numbers;
  numbers["p"] = rep.p;
  numbers["n"] = rep.n;
  numbers["R_size"] = rep.r_size;
  numbers["Z_size"] = rep.z_size;
  numbers["brick_cardinality"] = rep.cardinality;
  numbers["bound_num"] = rep.bound_num;
  numbers["bound_den"] = rep.bound_den;
  numbers["W_size"] = rep.w_size;
  numbers["zero_relaxed"] = rep.relaxed_zero;

  Json claims = Json::array();
  claims.push_back(pass_fail("prop2.size-bound", rep.size_bound_holds, Json::array(),
                             numbers));
  claims.push_back(pass_fail("prop2.w-not-full", rep.w_not_full));
  claims.push_back(pass_fail("prop2.no-full-line", rep.no_full_line));
  if (rep.stabilizer_trivial)
    claims.push_back(pass_fail("prop2.stabilizer-trivial", *rep.stabilizer_trivial));
  else
    claims.push_back(make_claim("prop2.stabilizer-trivial", "not-applicable"));
  if (rep.no_cyclic_coset) {
    Json w = Json::array();
    if (rep.cyclic_witness)
      w.push_back(Json{{"coset_rep_rank", rep.cyclic_witness->first},
                       {"generator_rank", rep.cyclic_witness->second}});
    claims.push_back(pass_fail("prop2.no-cyclic-coset", *rep.no_cyclic_coset, w));
  } else {
    claims.push_back(make_claim("prop2.no-cyclic-coset", "not-applicable"));
  }

  Json report;
  report["command"] = "verify";
  report["target"] = "prop2";
  report["numbers"] = numbers;
  report["claims"] = claims;
  report["status"] = overall_status(claims);
  return report;
}

Json small_period(const FieldPtr& field, const Caps& caps) {
  const auto rep = small_period_example(field, caps);

  Json numbers;
  numbers["p"] = rep.p;
  numbers["X_size"] = rep.x_size;
  numbers["brick_cardinality"] = rep.b_cardinality;
  numbers["product_cardinality"] = rep.bb_cardinality;
  numbers["period"] = subgroup_to_json(rep.period.period);
  if (rep.period.full_stabilizer_order)
    numbers["full_stabilizer_order"] = *rep.period.full_stabilizer_order;

  Json claims = Json::array();
  claims.push_back(pass_fail("small-period.growth", rep.growth_bound_holds,
                             Json::array(), numbers));
  claims.push_back(pass_fail("small-period.period-is-center", rep.period_is_center));

  Json report;
  report["command"] = "verify";
  report["target"] = "small-period";
  report["numbers"] = numbers;
  report["claims"] = claims;
  report["status"] = overall_status(claims);
  return report;
}

}  // namespace verify

namespace {

Brick load_brick(const RunConfig& config) {
  if (!config.instance_path)
    throw input_error("this command needs --instance FILE with a brick");
  return brick_from_json(parse_json_file(*config.instance_path), config.max_modulus);
}

FieldPtr field_from(const RunConfig& config, uint32_t fallback_p) {
  return make_field(config.p.value_or(fallback_p), config.max_modulus);
}

}  // namespace

RunResult run(const RunConfig& config) {
  Json report;
  switch (config.command) {
    case RunConfig::Command::product:
      report = product_report(load_brick(config), config.caps, config.dump_fibers);
      break;
    case RunConfig::Command::period:
      report = period_report(load_brick(config), config.caps);
      break;
    case RunConfig::Command::cosets:
      report = cosets_report(load_brick(config), config.caps);
      break;
    case RunConfig::Command::sumprod: {
      if (!config.instance_path)
        throw input_error("sumprod needs --instance FILE");
      report = sumprod_report(
          sumprod_from_json(parse_json_file(*config.instance_path), config.max_modulus));
      break;
    }
    case RunConfig::Command::verify: {
      if (!config.target) throw input_error("verify needs a target");
      switch (*config.target) {
        case RunConfig::Target::lemmas: {
          std::vector<uint32_t> primes = config.p ? std::vector<uint32_t>{*config.p}
                                                  : std::vector<uint32_t>{5, 7};
          report = verify::lemmas(primes, config.instances, config.seed);
          break;
        }
        case RunConfig::Target::th1: {
          if (config.instance_path) {
            report = verify::th1_brick(load_brick(config), config.caps);
            report["command"] = "verify";
            report["target"] = "th1";
          } else {
            report = verify::th1_sweep(field_from(config, 11), config.n.value_or(1),
                                       config.instances, config.seed, config.caps);
          }
          break;
        }
        case RunConfig::Target::th13: {
          if (config.instance_path) {
            report = verify::th13_brick(load_brick(config), config.caps);
            report["command"] = "verify";
            report["target"] = "th13";
          } else {
            report = verify::th13_sweep(field_from(config, 7), config.n.value_or(1),
                                        config.instances, config.seed, config.caps);
          }
          break;
        }
        case RunConfig::Target::prop2:
          report = verify::prop2(field_from(config, 13), config.n.value_or(1),
                                 config.caps);
          break;
        case RunConfig::Target::small_period:
          report = verify::small_period(field_from(config, 29), config.caps);
          break;
      }
      break;
    }
  }

  Json echo;
  echo["seed"] = config.seed;
  echo["brute_cap"] = config.caps.brute_force;
  echo["fiber_cap"] = config.caps.fibers;
  if (config.instance_path) echo["instance"] = *config.instance_path;
  report["run_config"] = std::move(echo);

  RunResult result;
  result.report = std::move(report);
  result.exit_code = report_passes(result.report) ? 0 : 1;
  return result;
}

std::string report_to_csv(const Json& report) {
  std::ostringstream out;
  out << "claim,key,value\n";
  std::function<void(const std::string&, const Json&)> emit =
      [&](const std::string& claim, const Json& numbers) {
        for (const auto& [key, value] : numbers.items()) {
          if (value.is_number() || value.is_boolean() || value.is_string()) {
            out << claim << "," << key << ",";
            if (value.is_string())
              out << value.get<std::string>();
            else
              out << value.dump();
            out << "\n";
          }
        }
      };
  if (report.contains("numbers")) emit("", report["numbers"]);
  if (report.contains("claims"))
    for (const auto& c : report["claims"])
      if (c.contains("numbers"))
        emit(c["claim"].get<std::string>(), c["numbers"]);
  return out.str();
}

}  // namespace hb
