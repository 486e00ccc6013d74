// Acceptance suite: every release criterion evaluated end to end, one
// pass/fail line each. Exits nonzero when any criterion fails.

#include <chrono>
#include <cmath>
#include <complex>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

#include "stabgap/bounds.hpp"
#include "stabgap/commands.hpp"
#include "support/helpers.hpp"
#include "support/hilbert.hpp"

using namespace stabgap;
using testing_support::random_commuting_model;

namespace {

struct Criterion {
  int id = 0;
  std::string name;
  bool pass = true;
  std::string detail;
  double seconds = 0;
};

std::vector<Criterion> g_results;

class Runner {
 public:
  Runner(int id, std::string name) {
    c_.id = id;
    c_.name = std::move(name);
    start_ = std::chrono::steady_clock::now();
  }
  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }
  void require(bool ok, const std::string& what) {
    if (!ok) {
      c_.pass = false;
      if (!c_.detail.empty()) c_.detail += "; ";
      c_.detail += what;
    }
  }
  void note(const std::string& what) {
    if (!c_.detail.empty()) c_.detail += "; ";
    c_.detail += what;
  }
  ~Runner() {
    c_.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    g_results.push_back(c_);
  }

 private:
  Criterion c_;
  std::chrono::steady_clock::time_point start_;
};

StabilizerModel ising(int n, bool periodic = false) {
  return StabilizerModel::build(ising_chain(n, Rational(1), periodic));
}

Eigen::VectorXcd random_coset_coeffs(std::mt19937_64& rng, std::int64_t nv,
                                     std::int64_t e0) {
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::VectorXcd u = Eigen::VectorXcd::Zero(nv);
  for (std::int64_t a = 0; a < nv; ++a) {
    std::int64_t pa = a ^ e0;
    if (pa == a)
      u[a] = std::complex<double>(g(rng), 0.0);
    else if (a < pa) {
      std::complex<double> v(g(rng), g(rng));
      u[a] = v;
      u[pa] = std::conj(v);
    }
  }
  return u;
}

void criterion1_bound_validity() {
  Runner r(1, "bound validity sweep");
  const std::vector<double> betas = {0.0, 0.3, 1.0, 2.0};

  struct Case {
    std::string label;
    StabilizerModel model;
    PathFamily family;
  };
  std::vector<Case> cases;
  for (int n : {2, 3, 4})
    cases.push_back({"ising" + std::to_string(n), ising(n), PathFamily::fixed_order()});
  for (int n : {3, 4})
    cases.push_back({"cluster" + std::to_string(n),
                     StabilizerModel::build(cluster_chain(n, Rational(1))),
                     PathFamily::fixed_order()});
  cases.push_back({"toric22", StabilizerModel::build(toric_code(2, 2, Rational(1))),
                   PathFamily::css_string(toric_layout(2, 2))});
  for (int i = 0; i < 10; ++i) {
    int n = 2 + (i % 2);
    cases.push_back({"random" + std::to_string(i),
                     StabilizerModel::build(random_commuting_model(n, n, 9001 + i)),
                     PathFamily::fixed_order()});
  }

  double min_margin = 1e300;
  for (const auto& c : cases) {
    for (auto kind : {BathKind::metropolis, BathKind::glauber}) {
      VerifyOptions opt;
      opt.tolerance = 1e-9;
      VerifyResult res = verify(c.model, kind, c.family, betas, opt);
      r.require(res.pass, c.label + " violated a bound");
      for (const auto& row : res.rows) {
        if (!row.lambda_exact) continue;
        min_margin = std::min(min_margin, *row.lambda_exact - row.gen_bound_value);
        if (row.special_bound_value)
          min_margin = std::min(min_margin, *row.lambda_exact - *row.special_bound_value);
      }
    }
  }
  r.require(r.elapsed() < 300.0, "sweep exceeded the five-minute budget");
  r.note("min margin " + fmt12(min_margin));
}

void criterion2_infinite_temperature() {
  Runner r(2, "infinite-temperature closed form");
  std::vector<std::pair<std::string, StabilizerModel>> models;
  for (int n : {2, 3, 4}) models.emplace_back("ising" + std::to_string(n), ising(n));
  for (int n : {3, 4})
    models.emplace_back("ising" + std::to_string(n) + "p", ising(n, true));
  for (int n : {3, 4})
    models.emplace_back("cluster" + std::to_string(n),
                        StabilizerModel::build(cluster_chain(n, Rational(1))));
  double worst = 0;
  for (const auto& [label, m] : models) {
    double gm = spectral_gap(m, Bath::metropolis(0.0)).gap;
    double gg = spectral_gap(m, Bath::glauber(0.0)).gap;
    worst = std::max({worst, std::abs(gm - 4.0), std::abs(gg - 2.0)});
    r.require(std::abs(gm - 4.0) <= 1e-9, label + " metropolis gap " + fmt12(gm));
    r.require(std::abs(gg - 2.0) <= 1e-9, label + " glauber gap " + fmt12(gg));
    r.require(gm >= beta_zero_floor(BathKind::metropolis) - 1e-9,
              label + " under the 3/4 h* floor");
    r.require(gg >= beta_zero_floor(BathKind::glauber) - 1e-9,
              label + " under the 3/4 h* floor");
  }
  r.note("max |gap - 4h(0)| = " + fmt12(worst));
}

void criterion3_block_oracle() {
  Runner r(3, "block-decomposition oracle");
  std::vector<StabilizerModel> models;
  models.push_back(ising(2));
  models.push_back(ising(3));
  models.push_back(StabilizerModel::build(cluster_chain(3, Rational(1))));
  models.push_back(StabilizerModel::build(random_commuting_model(3, 3, 777)));
  std::mt19937_64 rng(2024);
  double worst_form = 0, worst_spec = 0;
  for (const auto& m : models) {
    const int dim = 1 << m.n();
    const double invdim = 1.0 / dim;
    for (double beta : {0.0, 1.0}) {
      Bath bath = Bath::metropolis(beta);
      auto ctx = DaviesContext::make(m, bath);
      auto cosets = coset_representatives(m);
      oracle::Cmat rho = oracle::gibbs_matrix(m, beta);
      std::vector<Eigen::MatrixXd> eb, vb;
      std::vector<std::int64_t> e0s;
      for (const auto& rep : cosets.representatives) {
        eb.push_back(dirichlet_block(ctx, rep));
        vb.push_back(variance_block(ctx, rep));
        e0s.push_back(m.syndrome_index(m.syndrome_of(rep)));
      }
      for (int trial = 0; trial < 20; ++trial) {
        oracle::Cmat f = oracle::Cmat::Zero(dim, dim);
        double eform = 0, vform = 0;
        for (std::size_t ci = 0; ci < cosets.representatives.size(); ++ci) {
          Eigen::VectorXcd u = random_coset_coeffs(rng, m.num_valid_syndromes(), e0s[ci]);
          for (std::int64_t a = 0; a < u.size(); ++a)
            f += u[a] * oracle::coset_basis_op(m, cosets.representatives[ci], a);
          eform += (u.adjoint() * eb[ci] * u)(0).real();
          vform += (u.adjoint() * vb[ci] * u)(0).real();
        }
        double ed = invdim * oracle::dirichlet_direct(m, bath, rho, f);
        double vd = invdim * oracle::variance_direct(rho, f);
        worst_form = std::max({worst_form, std::abs(eform - ed), std::abs(vform - vd)});
        r.require(std::abs(eform - ed) <= 1e-10 * std::max(1.0, std::abs(ed)),
                  "Dirichlet form mismatch " + fmt12(eform - ed));
        r.require(std::abs(vform - vd) <= 1e-10 * std::max(1.0, std::abs(vd)),
                  "variance form mismatch " + fmt12(vform - vd));
      }

      // full-spectrum multiset equality: per-coset pencils vs the
      // rho-symmetrized generator, after removing the one exact zero mode
      std::vector<double> pencil, full;
      for (std::size_t ci = 0; ci < cosets.representatives.size(); ++ci) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ev(vb[ci]);
        double cutoff = 1e-12 * ev.eigenvalues().maxCoeff();
        std::vector<int> keep;
        for (int i = 0; i < ev.eigenvalues().size(); ++i)
          if (ev.eigenvalues()[i] > cutoff) keep.push_back(i);
        Eigen::MatrixXd w(ev.eigenvectors().rows(), (int)keep.size());
        for (std::size_t k = 0; k < keep.size(); ++k)
          w.col(k) = ev.eigenvectors().col(keep[k]) / std::sqrt(ev.eigenvalues()[keep[k]]);
        Eigen::MatrixXd p = w.transpose() * eb[ci] * w;
        p = ((p + p.transpose()) * 0.5).eval();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ep(p);
        for (int i = 0; i < ep.eigenvalues().size(); ++i)
          pencil.push_back(ep.eigenvalues()[i]);
      }
      auto gen = full_generator(ctx);
      const auto& rho_w = ctx.gibbs_table.weights;
      for (const auto& block : gen.blocks) {
        Eigen::MatrixXd sym(block.rows(), block.cols());
        for (Eigen::Index a = 0; a < block.rows(); ++a)
          for (Eigen::Index b = 0; b < block.cols(); ++b)
            sym(a, b) = -std::sqrt(rho_w[a] / rho_w[b]) * block(a, b);
        sym = ((sym + sym.transpose()) * 0.5).eval();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym);
        for (int i = 0; i < es.eigenvalues().size(); ++i)
          full.push_back(es.eigenvalues()[i]);
      }
      std::sort(full.begin(), full.end());
      std::size_t zero_at = 0;
      for (std::size_t i = 1; i < full.size(); ++i)
        if (std::abs(full[i]) < std::abs(full[zero_at])) zero_at = i;
      r.require(std::abs(full[zero_at]) <= 1e-9, "no zero mode found");
      full.erase(full.begin() + (std::ptrdiff_t)zero_at);
      std::sort(pencil.begin(), pencil.end());
      r.require(pencil.size() == full.size(), "pencil eigenvalue count mismatch");
      for (std::size_t i = 0; i < std::min(pencil.size(), full.size()); ++i) {
        worst_spec = std::max(worst_spec, std::abs(pencil[i] - full[i]));
        r.require(std::abs(pencil[i] - full[i]) <= 1e-8,
                  "spectrum mismatch at position " + std::to_string(i));
      }
    }
  }
  r.note("max form residual " + fmt12(worst_form) + ", max spectrum deviation " +
         fmt12(worst_spec));
}

void criterion4_exact_barriers() {
  Runner r(4, "exact barrier values");
  for (int n : {2, 3, 4, 5}) {
    auto rep = generalized_barrier_exact(ising(n));
    r.require(rep.barrier == Rational(2), "ising" + std::to_string(n) + " barrier != 2J");
    auto scaled =
        generalized_barrier_exact(StabilizerModel::build(ising_chain(n, Rational(3, 2))));
    r.require(scaled.barrier == Rational(3),
              "ising" + std::to_string(n) + " J=3/2 barrier != 2J");
  }
  auto m4 = ising(4);
  r.require(width(m4, {}) == 1, "ising width != 1");
  auto hi = heuristic_barrier(m4, PathFamily::fixed_order());
  r.require(hi.barrier == Rational(2), "ising fixed-order barrier != 2J wd");
  auto cl = StabilizerModel::build(cluster_chain(4, Rational(1)));
  r.require(width(cl, {}) == 2, "cluster width != 2");
  auto hc = heuristic_barrier(cl, PathFamily::fixed_order());
  r.require(hc.barrier <= Rational(4), "cluster fixed-order barrier > 4J");
  r.require(hi.single_visit && hc.single_visit, "fixed-order family not single-visit");
}

void criterion5_toric_reproduction() {
  Runner r(5, "toric string-family values");
  auto model = StabilizerModel::build(toric_code(2, 2, Rational(1)));
  auto fam = PathFamily::css_string(toric_layout(2, 2));
  auto rep = heuristic_barrier(model, fam, TargetSelection::all_targets());
  r.require(rep.exhaustive, "css family did not cover all 4^8 targets");
  r.require(rep.eta_star <= 16, "eta* exceeds 2N");
  r.require(rep.barrier == Rational(2),
            "css barrier = " + fmt12(rep.barrier.to_double()) +
                " instead of the documented 2J; 2J undercounts closed loops: any "
                "zero-syndrome target violates two checks at its first weight-one "
                "step, so the exact barrier is 4J and no path family can do better "
                "(see README, Known discrepancies)");
  const double beta = 1.0;
  Bath bath = Bath::metropolis(beta);
  double h = h_star(model, bath);
  double gb = gen_bound(h, rep.eta_star, beta, rep.barrier.to_double());
  double documented = h / (8.0 * model.n()) * std::exp(-4.0 * beta);
  r.require(std::abs(gb - documented) <= 1e-12,
            "gen_bound " + fmt12(gb) + " != h*/(8N) e^{-4 beta J} = " + fmt12(documented));
  double recomposed =
      h / (4.0 * rep.eta_star) * std::exp(-2.0 * beta * rep.barrier.to_double());
  r.require(std::abs(gb - recomposed) <= 1e-15, "gen_bound composition broken");
  r.require(r.elapsed() < 60.0, "toric sweep exceeded the one-minute budget");
}

void criterion6_generator_battery() {
  Runner r(6, "generator correctness battery");
  std::vector<StabilizerModel> models;
  models.push_back(ising(2));
  models.push_back(ising(3));
  models.push_back(StabilizerModel::build(cluster_chain(3, Rational(1))));
  models.push_back(StabilizerModel::build(random_commuting_model(3, 3, 555)));
  double worst_db = 0, worst_fp = 0;
  std::mt19937_64 rng(99);
  for (const auto& m : models) {
    for (double beta : {0.0, 1.0}) {
      for (auto bath : {Bath::metropolis(beta), Bath::glauber(beta)}) {
        auto db = detailed_balance_check(m, bath, 20, 12345);
        worst_db = std::max(worst_db, db.residual);
        r.require(db.residual <= 1e-10, "detailed balance residual " + fmt12(db.residual));
        double fp = fixed_point_residual(m, bath);
        worst_fp = std::max(worst_fp, fp);
        r.require(fp <= 1e-10, "fixed point residual " + fmt12(fp));

        // KMS is one equation per +-omega pair; it is enforced bit-exactly in
        // the canonical direction h(-|w|) = e^{-beta |w|} h(|w|)
        auto ctx = DaviesContext::make(m, bath);
        for (std::size_t ai = 0; ai < m.w1().size(); ++ai) {
          for (std::int64_t a = 0; a < m.num_valid_syndromes(); ++a) {
            const Rational w = ctx.omega[ai][a].abs();
            r.require(bath.rate(-w) == std::exp(-beta * w.to_double()) * bath.rate(w),
                      "KMS not exact at omega " + w.to_string());
          }
        }

        auto cosets = coset_representatives(m);
        const auto& stab_gens = m.generators().generators;
        for (const auto& rep : cosets.representatives) {
          Eigen::MatrixXd e = dirichlet_block(ctx, rep);
          Eigen::MatrixXd v = variance_block(ctx, rep);
          r.require((e - e.transpose()).cwiseAbs().maxCoeff() <=
                        1e-12 * std::max(1.0, e.cwiseAbs().maxCoeff()),
                    "Dirichlet block not Hermitian");
          r.require((v - v.transpose()).cwiseAbs().maxCoeff() <=
                        1e-12 * std::max(1.0, v.cwiseAbs().maxCoeff()),
                    "variance block not Hermitian");
          Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ee(e), ev(v);
          r.require(ee.eigenvalues().minCoeff() >=
                        -1e-10 * std::max(1.0, e.cwiseAbs().maxCoeff()),
                    "Dirichlet block not PSD");
          r.require(ev.eigenvalues().minCoeff() >=
                        -1e-10 * std::max(1.0, v.cwiseAbs().maxCoeff()),
                    "variance block not PSD");
          PauliWord shifted = rep ^ stab_gens[rng() % stab_gens.size()];
          r.require((dirichlet_block(ctx, shifted) - e).cwiseAbs().maxCoeff() == 0.0,
                    "Dirichlet block depends on the representative");
          r.require((variance_block(ctx, shifted) - v).cwiseAbs().maxCoeff() == 0.0,
                    "variance block depends on the representative");
        }
      }
    }
  }
  r.note("max detailed-balance residual " + fmt12(worst_db) +
         ", max fixed-point residual " + fmt12(worst_fp));
}

void criterion7_canonical_paths() {
  Runner r(7, "canonical-paths machinery");
  auto fam = PathFamily::fixed_order();
  auto m2 = ising(2);
  for (double beta : {0.0, 1.0}) {
    Bath bath = Bath::metropolis(beta);
    double tau = support_bound_canonical(m2, bath, fam);
    double gap = spectral_gap(m2, bath).gap;
    r.require(tau >= 1.0 / gap - 1e-9,
              "tau bound " + fmt12(tau) + " < 1/lambda " + fmt12(1.0 / gap));
  }
  std::vector<StabilizerModel> models;
  models.push_back(ising(2));
  models.push_back(ising(3));
  models.push_back(StabilizerModel::build(cluster_chain(3, Rational(1))));
  models.push_back(StabilizerModel::build(random_commuting_model(3, 3, 321)));
  for (const auto& m : models) {
    auto fr = heuristic_barrier(m, fam);
    for (double beta : {0.0, 0.5, 1.0}) {
      auto cb = c_beta(m, Bath::metropolis(beta), fam);
      r.require(cb.c_beta > 0.0, "C(beta) not positive");
      r.require(cb.c_beta <= fr.eta_star + 1e-12, "C(beta) above eta*");
      if (beta == 0.0)
        r.require(cb.c_beta <= 1.0 / 3.0 + 1e-12, "C(0) = " + fmt12(cb.c_beta) + " > 1/3");
    }
  }
}

void criterion8_determinism() {
  Runner r(8, "sweep determinism across thread counts");
  ModelFile mf = ModelFile::parse_string(
      "name = ising3\nbuiltin = ising\nn = 3\ncoupling = 1\n", "mem");
  RunConfig cfg;
  cfg.betas = {0.0, 0.25, 0.5, 0.75, 1.0};
  cfg.seed = 4242;
  RunConfig one = cfg;
  one.threads = 1;
  RunConfig four = cfg;
  four.threads = 4;
  std::string a = sweep_csv(mf, one);
  std::string b = sweep_csv(mf, four);
  r.require(a == b, "CSV bodies differ between 1 and 4 worker threads");
  r.require(!a.empty() && a.find("beta,lambda_exact") != std::string::npos,
            "CSV schema missing");
}

}  // namespace

int main() {
  auto t0 = std::chrono::steady_clock::now();
  criterion1_bound_validity();
  criterion2_infinite_temperature();
  criterion3_block_oracle();
  criterion4_exact_barriers();
  criterion5_toric_reproduction();
  criterion6_generator_battery();
  criterion7_canonical_paths();
  criterion8_determinism();

  bool all = true;
  for (const auto& c : g_results) {
    std::cout << (c.pass ? "[PASS]" : "[FAIL]") << " criterion " << c.id << ": " << c.name
              << " (" << fmt12(c.seconds) << "s)";
    if (!c.detail.empty()) std::cout << " -- " << c.detail;
    std::cout << "\n";
    all = all && c.pass;
  }
  double total =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::cout << (all ? "acceptance: all criteria pass" : "acceptance: FAILURES present")
            << " (total " << fmt12(total) << "s)\n";
  return all ? 0 : 1;
}
