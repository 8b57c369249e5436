#pragma once

#include <optional>
#include <string>

#include "heisenbrick/json_io.hpp"
#include "heisenbrick/random_brick.hpp"
#include "heisenbrick/structure.hpp"

namespace hb {

struct RunConfig {
  enum class Command { product, period, cosets, sumprod, verify };
  enum class Target { th1, th13, prop2, small_period, lemmas };

  Command command = Command::product;
  std::optional<Target> target;  // for verify
  std::optional<std::string> instance_path;
  std::optional<uint32_t> p, n;
  uint64_t seed = 1;
  uint32_t instances = 100;  // randomized suite size / nilpotency trials
  Caps caps;
  bool dump_fibers = false;
  std::optional<std::string> output_path;
  bool csv = false;
  uint32_t max_modulus = PrimeField::kDefaultMaxModulus;
};

struct RunResult {
  int exit_code = 0;  // 0 pass/not-applicable, 1 a verified claim failed
  Json report;
};

/// Executes a command and builds its report. Throws input_error (exit 2) and
/// resource_error (exit 3); a failed claim is a regular report with exit 1.
RunResult run(const RunConfig& config);

/// "claim,key,value" rows over the numeric report fields.
std::string report_to_csv(const Json& report);

// Report builders shared by the CLI and the acceptance suite. Every claim is
// {"claim", "status": "pass"|"fail"|"not-applicable", "witnesses", "numbers"}.
Json product_report(const Brick& b, const Caps& caps, bool dump_fibers);
Json period_report(const Brick& b, const Caps& caps);
Json cosets_report(const Brick& b, const Caps& caps);
Json sumprod_report(const SumProdInstance& inst);

namespace verify {

/// Exhaustive Cauchy-Davenport + additive Lemma 1 over the given primes,
/// plus the group-law suite (exhaustive at p=3, n=1; random nilpotency).
Json lemmas(const std::vector<uint32_t>& cd_primes, uint32_t nilpotency_trials,
            uint64_t seed);

Json th1_brick(const Brick& b, const Caps& caps);
Json th1_sweep(const FieldPtr& field, uint32_t n, uint32_t instances, uint64_t seed,
               const Caps& caps);

Json th13_brick(const Brick& b, const Caps& caps);
Json th13_sweep(const FieldPtr& field, uint32_t n, uint32_t instances, uint64_t seed,
                const Caps& caps);

Json prop2(const FieldPtr& field, uint32_t n, const Caps& caps);
Json small_period(const FieldPtr& field, const Caps& caps);

}  // namespace verify

/// True when no claim in the report (recursively) has status "fail".
bool report_passes(const Json& report);

}  // namespace hb
