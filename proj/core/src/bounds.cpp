#include "stabgap/bounds.hpp"

#include <algorithm>
#include <cmath>

namespace stabgap {

double h_star(const StabilizerModel& model, const Bath& bath) {
  double best = 0.0;
  bool first = true;
  const std::int64_t nv = model.num_valid_syndromes();
  for (const auto& alpha : model.w1()) {
    for (std::int64_t idx = 0; idx < nv; ++idx) {
      double h = bath.rate(model.bohr_frequency(alpha, model.syndrome_at(idx)));
      if (first || h < best) {
        best = h;
        first = false;
      }
    }
  }
  return best;
}

double gen_bound(double h_star_value, int eta_star, double beta, double epsilon_bar) {
  if (eta_star <= 0) throw input_error("gen_bound needs a positive eta*");
  return h_star_value / (4.0 * eta_star) * std::exp(-2.0 * beta * epsilon_bar);
}

double special_bound(double h_star_value, double beta, double epsilon_bar_family) {
  return h_star_value / 4.0 * std::exp(-2.0 * beta * epsilon_bar_family);
}

double special_bound(double h_star_value, double beta, const BarrierReport& report) {
  if (!report.single_visit)
    throw input_error("special bound requires a single-visit path family");
  return special_bound(h_star_value, beta, report.barrier.to_double());
}

double beta_zero_floor(BathKind kind) {
  switch (kind) {
    case BathKind::metropolis: return 0.75 * Bath::metropolis(0.0).rate(Rational(0));
    case BathKind::glauber: return 0.75 * Bath::glauber(0.0).rate(Rational(0));
    default: throw input_error("beta_zero_floor is defined for the builtin baths");
  }
}

double mixing_time_bound(const GibbsTable& gibbs_table, double lambda, double epsilon) {
  if (!(lambda > 0)) throw input_error("mixing time bound needs lambda > 0");
  if (!(epsilon > 0) || !(epsilon < 1)) throw input_error("epsilon must be in (0, 1)");
  return (0.5 * gibbs_table.log_inv_rho_min() + std::log(1.0 / epsilon)) / lambda;
}

CBetaResult c_beta(const StabilizerModel& model, const Bath& bath, const PathFamily& family,
                   const SupportBoundLimits& limits) {
  if (model.n() > limits.max_n && !limits.force)
    throw size_limit_error("C(beta) evaluation is gated at N <= " +
                           std::to_string(limits.max_n));
  GibbsTable gt = gibbs(model, bath.beta());
  FamilyPathIndex idx = build_family_path_index(model, family, limits.max_n, limits.force);
  const std::int64_t nv = model.num_valid_syndromes();
  const std::int64_t total = std::int64_t(1) << (2 * model.n());
  const double inv_two_n = std::ldexp(1.0, -model.n());

  std::vector<std::int32_t> code_sidx(total);
  for (std::int64_t code = 0; code < total; ++code)
    code_sidx[code] = (std::int32_t)model.syndrome_index(
        model.syndrome_of(PauliWord::from_code(model.n(), (std::uint64_t)code)));

  double c = 0.0;
  for (std::int64_t aidx = 0; aidx < nv; ++aidx) {
    for (std::int64_t mu = 0; mu < total; ++mu) {
      double sum = 0.0;
      for (const auto& [prefix, si] : idx.target_edges[mu]) {
        double inner = 0.0;
        const auto& through = idx.paths_through.at(idx.edge_key(prefix, si));
        const std::int32_t sx = code_sidx[prefix];
        for (std::uint32_t eta : through)
          inner += gt.weights[aidx ^ code_sidx[eta] ^ sx];
        sum += inv_two_n * inner;
      }
      c = std::max(c, sum);
    }
  }

  BarrierReport fam = heuristic_barrier(model, family, TargetSelection::all_targets());
  CBetaResult out;
  out.c_beta = c;
  out.epsilon_bar_family = fam.barrier.to_double();
  out.derived_bound =
      h_star(model, bath) / (4.0 * c) * std::exp(-2.0 * bath.beta() * out.epsilon_bar_family);
  return out;
}

Bath make_bath(BathKind kind, double beta) {
  switch (kind) {
    case BathKind::metropolis: return Bath::metropolis(beta);
    case BathKind::glauber: return Bath::glauber(beta);
    default: throw input_error("table baths need explicit rate tables");
  }
}

BathKind parse_bath_kind(const std::string& name) {
  if (name == "metropolis") return BathKind::metropolis;
  if (name == "glauber") return BathKind::glauber;
  throw input_error("unknown bath '" + name + "' (expected metropolis or glauber)");
}

VerifyResult verify(const StabilizerModel& model, BathKind bath_kind,
                    const PathFamily& family, const std::vector<double>& betas,
                    const VerifyOptions& options) {
  if (betas.empty()) throw input_error("empty beta grid");

  // Barrier data is temperature independent; compute it once.
  BarrierReport fam_report =
      heuristic_barrier(model, family, TargetSelection::all_targets(), false, options.threads);
  std::optional<BarrierReport> exact_report;
  if (options.want_exact_barrier && model.n() <= options.barrier_limits.max_n_exact_barrier)
    exact_report =
        generalized_barrier_exact(model, options.barrier_limits, false, options.threads);

  const double delta = model.max_bohr().to_double();

  // Chain data: width is defined only when the generator supports are
  // intervals of the natural order.
  std::optional<int> wd;
  try {
    wd = width(model, {});
  } catch (const input_error&) {
  }
  Rational j_star(0);
  for (const auto& j : model.generators().couplings)
    if (j_star < j.abs()) j_star = j.abs();

  VerifyResult result;
  for (double beta : betas) {
    Bath bath = make_bath(bath_kind, beta);
    BoundReport row;
    row.beta = beta;
    row.single_visit = fam_report.single_visit;
    row.h_star_value = h_star(model, bath);
    row.delta_max = delta;
    if (exact_report) {
      row.epsilon_bar = exact_report->barrier.to_double();
      row.epsilon_exact = true;
      row.eta_star = exact_report->eta_star;
    } else {
      row.epsilon_bar = fam_report.barrier.to_double();
      row.epsilon_exact = false;
      row.eta_star = fam_report.eta_star;
    }
    row.gen_bound_value = gen_bound(row.h_star_value, row.eta_star, beta, row.epsilon_bar);
    if (fam_report.single_visit)
      row.special_bound_value =
          special_bound(row.h_star_value, beta, fam_report.barrier.to_double());
    row.beta_zero_floor_value = beta_zero_floor(bath_kind);
    if (wd) {
      const double jw = j_star.to_double() * (*wd);
      row.one_d_bounds = std::make_pair(
          row.h_star_value / 4.0 * std::exp(-4.0 * beta * jw),
          row.h_star_value / 4.0 * std::exp(-8.0 * beta * jw));
    }

    if (options.want_c_beta && model.n() <= options.path_sum_limits.max_n) {
      CBetaResult cb = c_beta(model, bath, family, options.path_sum_limits);
      row.c_beta_value = cb.c_beta;
      row.c_beta_derived_bound = cb.derived_bound;
    }

    GapResult gap = spectral_gap(model, bath, GapMethod::coset, options.gap_limits,
                                 options.threads);
    row.lambda_exact = gap.gap;
    row.mixing_time = mixing_time_bound(gibbs(model, beta), gap.gap, options.mixing_epsilon);

    const double tol = options.tolerance;
    row.pass = gap.gap >= row.gen_bound_value - tol;
    if (row.special_bound_value) row.pass = row.pass && gap.gap >= *row.special_bound_value - tol;
    if (row.c_beta_derived_bound)
      row.pass = row.pass && gap.gap >= *row.c_beta_derived_bound - tol;
    // interval supports certify the open-chain width bound
    if (row.one_d_bounds) row.pass = row.pass && gap.gap >= row.one_d_bounds->first - tol;
    if (beta == 0.0) row.pass = row.pass && gap.gap >= row.beta_zero_floor_value - tol;
    result.pass = result.pass && row.pass;
    result.rows.push_back(row);
  }
  return result;
}

}  // namespace stabgap
