#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "stabgap/bounds.hpp"
#include "stabgap/modelfile.hpp"

namespace stabgap {

/// Exit codes shared by every command.
enum ExitCode : int {
  exit_ok = 0,
  exit_verify_failed = 1,
  exit_input_error = 2,
  exit_size_limit = 3,
};

struct RunConfig {
  std::string bath = "metropolis";
  std::vector<double> betas{1.0};
  std::string family = "fixed";  // fixed | css
  std::string paths_file;        // explicit path family, one 'TARGET: S1 S2 ...' per line
  std::vector<int> site_order;   // fixed-order family permutation, empty = natural
  bool exact = false;
  std::string targets = "all";  // all | sample:COUNT
  std::uint64_t seed = 0;
  std::string out_path;  // CSV destination for sweep/barrier, empty = stdout
  bool per_target = false;
  bool force = false;
  double tolerance = 1e-9;
  double mixing_epsilon = 0.6065306597126334;  // e^{-1/2}
  int threads = 0;                             // 0 = STABGAP_THREADS or hardware
  std::string gap_method = "coset";
  std::string dump_blocks_dir;
};

/// Parses "a,b,c" or "start:stop:step" into a beta grid.
std::vector<double> parse_beta_grid(const std::string& text);

/// Floating point output used everywhere: 12 significant digits.
std::string fmt12(double v);

int cmd_check(const std::string& model_path, std::ostream& out, std::ostream& err);
int cmd_barrier(const std::string& model_path, const RunConfig& cfg, std::ostream& out,
                std::ostream& err);
int cmd_gap(const std::string& model_path, const RunConfig& cfg, std::ostream& out,
            std::ostream& err);
int cmd_bound(const std::string& model_path, const RunConfig& cfg, std::ostream& out,
              std::ostream& err);
int cmd_verify(const std::string& model_path, const RunConfig& cfg, std::ostream& out,
               std::ostream& err);
int cmd_sweep(const std::string& model_path, const RunConfig& cfg, std::ostream& out,
              std::ostream& err);
int cmd_mixing(const std::string& model_path, const RunConfig& cfg, std::ostream& out,
               std::ostream& err);

/// The sweep body as a string (comment header, CSV header, one row per beta);
/// exposed so determinism can be asserted byte for byte.
std::string sweep_csv(const ModelFile& mf, const RunConfig& cfg);

}  // namespace stabgap
