#pragma once

#include <optional>
#include <vector>

#include "stabgap/davies.hpp"

namespace stabgap {

/// Smallest realized transition rate: min over alpha in W1 and valid a of
/// h(omega^alpha(a)). For Metropolis this equals e^{-beta Delta}.
double h_star(const StabilizerModel& model, const Bath& bath);

/// h*/(4 eta*) e^{-2 beta eps_bar}. Valid with the exact barrier and its
/// witness path lengths, or with any family's upper bound and that family's
/// eta*; a looser eps only weakens the bound.
double gen_bound(double h_star_value, int eta_star, double beta, double epsilon_bar);

/// (h*/4) e^{-2 beta eps'}, independent of N. Only valid when eps' was
/// evaluated with a single-visit family; callers must refuse otherwise.
double special_bound(double h_star_value, double beta, double epsilon_bar_family);

/// Checked form: refuses (input_error) when the report's family is not
/// single-visit, e.g. the toric string family which crosses sites twice.
double special_bound(double h_star_value, double beta, const BarrierReport& report);

/// The infinite-temperature floor (3/4) h(0): 3/4 for Metropolis, 3/8 for
/// Glauber. The exact gap at beta = 0 must exceed it.
double beta_zero_floor(BathKind kind);

/// t = (1/2 ln|rho^{-1}| + ln(1/eps)) / lambda with |rho^{-1}| = Z e^{beta eps_max}.
double mixing_time_bound(const GibbsTable& gibbs_table, double lambda, double epsilon);

/// C(beta): max over (a, mu) of sum over mu's edges of
/// 2^{-N} sum_{paths through the edge} rho_{a + e(eta + xi)}, together with
/// the derived gap bound h*/(4 C(beta)) e^{-2 beta eps'}.
struct CBetaResult {
  double c_beta = 0.0;
  double derived_bound = 0.0;
  double epsilon_bar_family = 0.0;
};
CBetaResult c_beta(const StabilizerModel& model, const Bath& bath, const PathFamily& family,
                   const SupportBoundLimits& limits = {});

/// One evaluated row of the bound battery at a fixed beta.
struct BoundReport {
  double beta = 0.0;
  double epsilon_bar = 0.0;
  bool epsilon_exact = false;
  int eta_star = 0;
  bool single_visit = false;
  double h_star_value = 0.0;
  double delta_max = 0.0;
  double gen_bound_value = 0.0;
  std::optional<double> special_bound_value;  // present only for single-visit families
  std::optional<double> c_beta_value;
  std::optional<double> c_beta_derived_bound;
  double beta_zero_floor_value = 0.0;  // (3/4) h(0), the infinite-temperature floor
  /// Width-based chain bounds (h*/4) e^{-4 beta J* wd} and (h*/4) e^{-8 beta J* wd},
  /// present when every generator support is an interval of the site order.
  std::optional<std::pair<double, double>> one_d_bounds;
  std::optional<double> lambda_exact;
  std::optional<double> mixing_time;  // at the configured epsilon
  bool pass = true;
};

struct VerifyOptions {
  double tolerance = 1e-9;
  double mixing_epsilon = 0.6065306597126334;  // e^{-1/2}
  bool want_c_beta = true;      // evaluated when N is within the exhaustive gate
  bool want_exact_barrier = true;
  int threads = 0;
  BarrierLimits barrier_limits{};
  GapLimits gap_limits{};
  SupportBoundLimits path_sum_limits{};
};

struct VerifyResult {
  std::vector<BoundReport> rows;
  bool pass = true;
};

/// Computes lambda_exact (coset method), the barrier (exact when within the
/// gate, otherwise the family bound), every applicable analytic bound, and
/// checks lambda_exact >= bound - tolerance row by row.
VerifyResult verify(const StabilizerModel& model, BathKind bath_kind,
                    const PathFamily& family, const std::vector<double>& betas,
                    const VerifyOptions& options = {});

Bath make_bath(BathKind kind, double beta);
BathKind parse_bath_kind(const std::string& name);

}  // namespace stabgap
