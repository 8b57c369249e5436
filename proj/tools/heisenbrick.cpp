#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "heisenbrick/runner.hpp"

namespace {

void write_report(const hb::RunConfig& config, const hb::Json& report) {
  const std::string json_text = report.dump(2) + "\n";
  if (config.output_path) {
    std::ofstream out(*config.output_path);
    if (!out) throw hb::input_error("cannot write " + *config.output_path);
    out << json_text;
    if (config.csv) {
      std::ofstream csv(*config.output_path + ".csv");
      csv << hb::report_to_csv(report);
    }
  } else if (config.csv) {
    std::cout << hb::report_to_csv(report);
  } else {
    std::cout << json_text;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"heisenbrick: exact products, cosets and periods of bricks in H_n over F_p"};
  app.require_subcommand(1);

  hb::RunConfig config;
  std::string instance, out, target;
  uint32_t p = 0, n = 0;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--instance", instance, "instance JSON file");
    cmd->add_option("--p", p, "prime modulus");
    cmd->add_option("--n", n, "Heisenberg dimension parameter");
    cmd->add_option("--seed", config.seed, "seed for randomized suites");
    cmd->add_option("--instances", config.instances,
                    "instances per randomized suite (default 100)");
    cmd->add_option("--brute-cap", config.caps.brute_force,
                    "max group order for brute-force oracles");
    cmd->add_option("--fiber-cap", config.caps.fibers, "max fibers per product");
    cmd->add_option("--max-modulus", config.max_modulus, "largest accepted prime");
    cmd->add_flag("--dump-fibers", config.dump_fibers, "include every fiber in the report");
    cmd->add_option("--out", out, "report file (stdout otherwise)");
    cmd->add_flag("--csv", config.csv, "also emit a CSV projection of the numbers");
  };

  auto* cmd_product = app.add_subcommand("product", "compute B*B fiber by fiber");
  auto* cmd_period = app.add_subcommand("period", "structured period of B*B");
  auto* cmd_cosets = app.add_subcommand("cosets", "center cosets inside B*B");
  auto* cmd_sumprod = app.add_subcommand("sumprod", "solution profile of mZ + sum X_j Y_j");
  auto* cmd_verify = app.add_subcommand("verify", "run a verifier suite");
  cmd_verify->add_option("target", target, "one of: th1, th13, prop2, small-period, lemmas")
      ->required();
  for (auto* c : {cmd_product, cmd_period, cmd_cosets, cmd_sumprod, cmd_verify})
    add_common(c);

  CLI11_PARSE(app, argc, argv);

  if (!instance.empty()) config.instance_path = instance;
  if (!out.empty()) config.output_path = out;
  if (p) config.p = p;
  if (n) config.n = n;

  using Command = hb::RunConfig::Command;
  using Target = hb::RunConfig::Target;
  if (cmd_product->parsed()) config.command = Command::product;
  if (cmd_period->parsed()) config.command = Command::period;
  if (cmd_cosets->parsed()) config.command = Command::cosets;
  if (cmd_sumprod->parsed()) config.command = Command::sumprod;
  if (cmd_verify->parsed()) {
    config.command = Command::verify;
    if (target == "th1")
      config.target = Target::th1;
    else if (target == "th13")
      config.target = Target::th13;
    else if (target == "prop2")
      config.target = Target::prop2;
    else if (target == "small-period")
      config.target = Target::small_period;
    else if (target == "lemmas")
      config.target = Target::lemmas;
    else {
      std::cerr << "unknown verify target: " << target << "\n";
      return 2;
    }
  }

  try {
    const auto result = hb::run(config);
    write_report(config, result.report);
    return result.exit_code;
  } catch (const hb::input_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const hb::resource_error& e) {
    std::cerr << "resource cap exceeded: " << e.what() << "\n";
    return 3;
  } catch (const hb::computation_error& e) {
    std::cerr << "computation error: " << e.what() << "\n";
    return 1;
  }
}
