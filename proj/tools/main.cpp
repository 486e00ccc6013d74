// stabgap: spectral gaps, energy barriers and thermalization bounds for
// commuting Pauli Hamiltonians coupled to a thermal bath.

#include <CLI11.hpp>
#include <iostream>
#include <sstream>

#include "stabgap/commands.hpp"
#include "stabgap/parallel.hpp"

int main(int argc, char** argv) {
  CLI::App app{"thermalization analysis of commuting Pauli Hamiltonians"};
  app.require_subcommand(1);

  std::string model_path;
  stabgap::RunConfig cfg;
  cfg.threads = 0;  // resolved via STABGAP_THREADS / hardware at call sites
  std::string beta_text = "1";
  std::string order_text;

  auto add_common = [&](CLI::App* sub, bool wants_bath) {
    sub->add_option("model", model_path, "model file")->required();
    sub->add_option("--threads", cfg.threads, "worker threads (0 = STABGAP_THREADS or auto)");
    sub->add_flag("--force", cfg.force, "override exhaustive size gates");
    if (wants_bath) {
      sub->add_option("--bath", cfg.bath, "metropolis | glauber");
      sub->add_option("--beta", beta_text, "beta value, list a,b,c or range start:stop:step");
    }
  };
  auto add_family = [&](CLI::App* sub) {
    sub->add_option("--family", cfg.family, "fixed | css | explicit");
    sub->add_option("--paths", cfg.paths_file, "explicit path family file");
    sub->add_option("--order", order_text, "fixed-order site permutation, e.g. 2,0,1");
  };

  auto* check = app.add_subcommand("check", "validate a model file and print its structure");
  check->add_option("model", model_path, "model file")->required();

  auto* barrier = app.add_subcommand("barrier", "generalized energy barrier");
  add_common(barrier, false);
  add_family(barrier);
  barrier->add_flag("--exact", cfg.exact, "exhaustive bottleneck search over all targets");
  barrier->add_option("--targets", cfg.targets, "all | sample:COUNT");
  barrier->add_option("--seed", cfg.seed, "sampling seed");
  barrier->add_flag("--per-target", cfg.per_target, "emit per-target CSV rows");
  barrier->add_option("--out", cfg.out_path, "CSV output path");

  auto* gap = app.add_subcommand("gap", "spectral gap of the Davies generator");
  add_common(gap, true);
  gap->add_option("--method", cfg.gap_method, "coset | full");
  gap->add_option("--dump-blocks", cfg.dump_blocks_dir,
                  "write per-coset Dirichlet/variance matrices to a directory");

  auto* bound = app.add_subcommand("bound", "evaluate all analytic lower bounds");
  add_common(bound, true);
  add_family(bound);

  auto* verify = app.add_subcommand("verify", "assert bound <= exact gap over a beta grid");
  add_common(verify, true);
  add_family(verify);
  verify->add_option("--tolerance", cfg.tolerance, "violation tolerance");

  auto* sweep = app.add_subcommand("sweep", "CSV report over a beta grid");
  add_common(sweep, true);
  add_family(sweep);
  sweep->add_option("--seed", cfg.seed, "seed echoed into the header");
  sweep->add_option("--out", cfg.out_path, "CSV output path (default stdout)");

  auto* mixing = app.add_subcommand("mixing", "trace-norm mixing time bound");
  add_common(mixing, true);
  mixing->add_option("--epsilon", cfg.mixing_epsilon, "target trace-norm distance");

  CLI11_PARSE(app, argc, argv);

  try {
    cfg.betas = stabgap::parse_beta_grid(beta_text);
    if (!order_text.empty()) {
      cfg.site_order.clear();
      std::stringstream ss(order_text);
      std::string item;
      while (std::getline(ss, item, ',')) cfg.site_order.push_back(std::stoi(item));
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return stabgap::exit_input_error;
  }

  if (check->parsed()) return stabgap::cmd_check(model_path, std::cout, std::cerr);
  if (barrier->parsed()) return stabgap::cmd_barrier(model_path, cfg, std::cout, std::cerr);
  if (gap->parsed()) return stabgap::cmd_gap(model_path, cfg, std::cout, std::cerr);
  if (bound->parsed()) return stabgap::cmd_bound(model_path, cfg, std::cout, std::cerr);
  if (verify->parsed()) return stabgap::cmd_verify(model_path, cfg, std::cout, std::cerr);
  if (sweep->parsed()) return stabgap::cmd_sweep(model_path, cfg, std::cout, std::cerr);
  if (mixing->parsed()) return stabgap::cmd_mixing(model_path, cfg, std::cout, std::cerr);
  return stabgap::exit_input_error;
}
