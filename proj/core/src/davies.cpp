#include "stabgap/davies.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>

#include "stabgap/parallel.hpp"

namespace stabgap {

Bath Bath::metropolis(double beta) {
  if (beta < 0) throw input_error("negative inverse temperature");
  Bath b;
  b.kind_ = BathKind::metropolis;
  b.beta_ = beta;
  return b;
}

Bath Bath::glauber(double beta) {
  if (beta < 0) throw input_error("negative inverse temperature");
  Bath b;
  b.kind_ = BathKind::glauber;
  b.beta_ = beta;
  return b;
}

Bath Bath::table(double beta, std::map<Rational, double> rates, bool enforce_kms) {
  if (beta < 0) throw input_error("negative inverse temperature");
  Bath b;
  b.kind_ = BathKind::table;
  b.beta_ = beta;
  b.table_ = std::move(rates);
  for (const auto& [w, h] : b.table_) {
    if (!(h > 0)) throw input_error("table bath has a non-positive rate");
    if (enforce_kms) {
      auto it = b.table_.find(-w);
      if (it == b.table_.end())
        throw input_error("table bath misses the mirror frequency of " + w.to_string());
      double lhs = it->second;
      double rhs = std::exp(-beta * w.to_double()) * h;
      if (std::abs(lhs - rhs) > 1e-12 * std::max(1.0, std::max(std::abs(lhs), std::abs(rhs))))
        throw input_error("table bath violates the KMS condition at frequency " +
                          w.to_string());
    }
  }
  return b;
}

const char* Bath::name() const {
  switch (kind_) {
    case BathKind::metropolis: return "metropolis";
    case BathKind::glauber: return "glauber";
    default: return "table";
  }
}

double Bath::rate(const Rational& omega) const {
  switch (kind_) {
    case BathKind::metropolis:
      if (omega.sign() >= 0) return 1.0;
      return std::exp(beta_ * omega.to_double());
    case BathKind::glauber: {
      if (omega.sign() > 0) return 1.0 / (1.0 + std::exp(-beta_ * omega.to_double()));
      if (omega.sign() == 0) return 0.5;
      // negative branch defined through KMS so the identity is bit-exact
      return std::exp(beta_ * omega.to_double()) * rate(-omega);
    }
    default: {
      auto it = table_.find(omega);
      if (it == table_.end())
        throw input_error("table bath has no rate at frequency " + omega.to_string());
      return it->second;
    }
  }
}

DaviesContext DaviesContext::make(const StabilizerModel& model, const Bath& bath) {
  DaviesContext ctx;
  ctx.model = &model;
  ctx.bath = bath;
  ctx.gibbs_table = gibbs(model, bath.beta());
  const auto& w1 = model.w1();
  const std::int64_t nv = model.num_valid_syndromes();
  ctx.omega.resize(w1.size());
  ctx.rate.resize(w1.size());
  ctx.alpha_sidx.resize(w1.size());
  for (std::size_t ai = 0; ai < w1.size(); ++ai) {
    ctx.alpha_sidx[ai] = model.syndrome_index(model.syndrome_of(w1[ai]));
    ctx.omega[ai].resize(nv);
    ctx.rate[ai].resize(nv);
    for (std::int64_t a = 0; a < nv; ++a) {
      ctx.omega[ai][a] = model.bohr_frequency(w1[ai], model.syndrome_at(a));
      ctx.rate[ai][a] = bath.rate(ctx.omega[ai][a]);
    }
  }
  return ctx;
}

CosetDecomposition coset_representatives(const StabilizerModel& model,
                                         const CosetLimits& limits) {
  const int free_bits = (int)model.coset_free_bits().size();
  if (free_bits > 62) throw size_limit_error("coset space too large to enumerate");
  const std::int64_t count = std::int64_t(1) << free_bits;
  if (count > limits.max_cosets && !limits.force)
    throw size_limit_error("coset enumeration of " + std::to_string(count) +
                           " representatives exceeds the configured limit");
  CosetDecomposition dec;
  dec.representatives.reserve(count);
  dec.rep_syndromes.reserve(count);
  const int n = model.n();
  for (std::int64_t mask = 0; mask < count; ++mask) {
    PauliWord w(n);
    for (int b = 0; b < free_bits; ++b) {
      if ((mask >> b) & 1) {
        int bit = model.coset_free_bits()[b];
        if (bit < n)
          w.set_site(bit, true, w.z_bit(bit));
        else
          w.set_site(bit - n, w.x_bit(bit - n), true);
      }
    }
    dec.rep_syndromes.push_back(model.syndrome_of(w));
    dec.representatives.push_back(std::move(w));
  }
  return dec;
}

std::pair<std::int64_t, std::int64_t> syndrome_sector_sign_counts(
    const StabilizerModel& model, const BitVec& b, const PauliWord& rep) {
  if (!model.syndrome_valid(b)) throw input_error("sector counts need a valid syndrome");
  const std::int64_t total = std::int64_t(1) << (2 * model.n() - model.rank());
  for (const auto& k : model.kernel_basis())
    if (symplectic_parity(k, rep)) return {total / 2, total / 2};
  PauliWord eta0 = model.preimage_at(model.syndrome_index(b));
  if (commutation_sign(eta0, rep) > 0) return {total, 0};
  return {0, total};
}

namespace {

// Symmetrizes in place; the pre-symmetrization asymmetry is a KMS self-check.
void symmetrize_checked(Eigen::MatrixXd& m, const char* what) {
  double norm = m.cwiseAbs().maxCoeff();
  double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
  if (norm > 0 && asym > 1e-12 * std::max(1.0, norm))
    throw internal_error(std::string(what) + " assembled with asymmetry " +
                         std::to_string(asym));
  m = ((m + m.transpose()) * 0.5).eval();
}

}  // namespace

Eigen::MatrixXd dirichlet_block(const DaviesContext& ctx, const PauliWord& rep) {
  const StabilizerModel& model = *ctx.model;
  const PauliWord canon = model.coset_rep(rep);
  const std::int64_t nv = model.num_valid_syndromes();
  const std::int64_t e0 = model.syndrome_index(model.syndrome_of(canon));
  const auto& w1 = model.w1();
  const auto& rho = ctx.gibbs_table.weights;

  Eigen::MatrixXd mat = Eigen::MatrixXd::Zero(nv, nv);
  for (std::size_t ai = 0; ai < w1.size(); ++ai) {
    const double theta = commutation_sign(w1[ai], canon);
    const std::int64_t ea = ctx.alpha_sidx[ai];
    for (std::int64_t a = 0; a < nv; ++a) {
      const double ha = ctx.rate[ai][a];
      mat(a, a) += 0.5 * (ha + ctx.rate[ai][a ^ e0]) * rho[a];
      if (ctx.omega[ai][a] == ctx.omega[ai][a ^ e0])
        mat(a, a ^ ea) -= ha * rho[a] * theta;
    }
  }
  symmetrize_checked(mat, "Dirichlet block");
  return mat;
}

Eigen::MatrixXd variance_block(const DaviesContext& ctx, const PauliWord& rep) {
  const StabilizerModel& model = *ctx.model;
  const PauliWord canon = model.coset_rep(rep);
  const std::int64_t nv = model.num_valid_syndromes();
  const auto& rho = ctx.gibbs_table.weights;
  const double sector = std::ldexp(1.0, model.n() - model.rank());  // (n+ + n-) 2^{-N}

  bool balanced = false;
  for (const auto& k : model.kernel_basis())
    if (symplectic_parity(k, canon)) { balanced = true; break; }

  Eigen::MatrixXd mat = Eigen::MatrixXd::Zero(nv, nv);
  for (std::int64_t b = 0; b < nv; ++b) {
    double sign = 0.0;
    if (!balanced)
      sign = (double)commutation_sign(model.preimage_at(b), canon);
    for (std::int64_t a = 0; a < nv; ++a) {
      const double w = sector * rho[a] * rho[a ^ b];
      mat(a, a) += w;
      if (sign != 0.0) mat(a, a ^ b) -= sign * w;
    }
  }
  symmetrize_checked(mat, "variance block");
  return mat;
}

namespace {

// Generator block over the coset of (canonical) rep in the sigma(rep) P(a)
// basis:
//   L(a, a + e(al)) += theta_{al,rep} h(w^al(a)) [w^al(a) == w^al(a + e0)]
//   L(a, a)         -= 1/2 (h(w^al(a)) + h(w^al(a + e0)))
Eigen::MatrixXd generator_block(const DaviesContext& ctx, const PauliWord& canon) {
  const StabilizerModel& model = *ctx.model;
  const std::int64_t nv = model.num_valid_syndromes();
  const std::int64_t e0 = model.syndrome_index(model.syndrome_of(canon));
  const auto& w1 = model.w1();
  Eigen::MatrixXd mat = Eigen::MatrixXd::Zero(nv, nv);
  for (std::size_t ai = 0; ai < w1.size(); ++ai) {
    const double theta = commutation_sign(w1[ai], canon);
    const std::int64_t ea = ctx.alpha_sidx[ai];
    for (std::int64_t a = 0; a < nv; ++a) {
      mat(a, a) -= 0.5 * (ctx.rate[ai][a] + ctx.rate[ai][a ^ e0]);
      if (ctx.omega[ai][a] == ctx.omega[ai][a ^ e0])
        mat(a, a ^ ea) += theta * ctx.rate[ai][a];
    }
  }
  return mat;
}

// Whitened per-coset matrix of -L (the rho-symmetrized generator restricted
// to the coset), assembled directly from exact frequencies so no Gibbs-weight
// ratio is ever formed:
//   W(a,a)        = sum_al 1/2 (h(w^al(a)) + h(w^al(a + e0)))
//   W(a, a+e(al)) -= theta h(w^al(a)) e^{-beta w^al(a)/2} [w equal]
Eigen::MatrixXd whitened_block(const DaviesContext& ctx, const PauliWord& canon) {
  const StabilizerModel& model = *ctx.model;
  const std::int64_t nv = model.num_valid_syndromes();
  const std::int64_t e0 = model.syndrome_index(model.syndrome_of(canon));
  const double beta = ctx.bath.beta();
  const auto& w1 = model.w1();
  Eigen::MatrixXd mat = Eigen::MatrixXd::Zero(nv, nv);
  for (std::size_t ai = 0; ai < w1.size(); ++ai) {
    const double theta = commutation_sign(w1[ai], canon);
    const std::int64_t ea = ctx.alpha_sidx[ai];
    for (std::int64_t a = 0; a < nv; ++a) {
      mat(a, a) += 0.5 * (ctx.rate[ai][a] + ctx.rate[ai][a ^ e0]);
      if (ctx.omega[ai][a] == ctx.omega[ai][a ^ e0])
        mat(a, a ^ ea) -=
            theta * ctx.rate[ai][a] * std::exp(-0.5 * beta * ctx.omega[ai][a].to_double());
    }
  }
  symmetrize_checked(mat, "whitened generator block");
  return mat;
}

// Unit vector spanning the deflated direction on the stabilizer coset.
Eigen::VectorXd stabilizer_kernel_vector(const DaviesContext& ctx) {
  const auto& rho = ctx.gibbs_table.weights;
  const double mult = std::ldexp(1.0, ctx.gibbs_table.multiplicity_log2);
  Eigen::VectorXd q(rho.size());
  for (std::size_t a = 0; a < rho.size(); ++a) q[a] = std::sqrt(rho[a] * mult);
  q.normalize();
  return q;
}

struct CosetEigenResult {
  double min_eig = 0.0;
  double residual = 0.0;
};

// Smallest eigenvalue of the whitened block; on the stabilizer coset the
// known kernel direction q is projected out first and its eigenpair skipped.
CosetEigenResult coset_min_eigen(const Eigen::MatrixXd& w, const Eigen::VectorXd* q) {
  Eigen::MatrixXd b = w;
  if (q) {
    Eigen::MatrixXd p = Eigen::MatrixXd::Identity(w.rows(), w.cols()) - (*q) * q->transpose();
    b = (p * w * p).eval();
    b = ((b + b.transpose()) * 0.5).eval();
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(b);
  const double norm = std::max(1.0, w.cwiseAbs().maxCoeff());
  int skip = -1;
  if (q) {
    double best_overlap = -1.0;
    for (int i = 0; i < es.eigenvalues().size(); ++i) {
      double ov = std::abs(q->dot(es.eigenvectors().col(i)));
      if (ov > best_overlap) {
        best_overlap = ov;
        skip = i;
      }
    }
  }
  CosetEigenResult out;
  bool first = true;
  int arg = -1;
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    if (i == skip) continue;
    if (first || es.eigenvalues()[i] < out.min_eig) {
      out.min_eig = es.eigenvalues()[i];
      arg = i;
      first = false;
    }
  }
  if (first) {  // 1x1 stabilizer block of a model with r = 0 cannot happen (M >= 1)
    out.min_eig = 0.0;
    return out;
  }
  if (out.min_eig < -1e-8 * norm)
    throw internal_error("non-positive pencil: coset eigenvalue " +
                         std::to_string(out.min_eig));
  out.residual = (b * es.eigenvectors().col(arg) -
                  es.eigenvalues()[arg] * es.eigenvectors().col(arg))
                     .norm();
  return out;
}

}  // namespace

Eigen::MatrixXd GeneratorBlocks::flatten() const {
  std::int64_t dim = 0;
  for (const auto& b : blocks) dim += b.rows();
  Eigen::MatrixXd full = Eigen::MatrixXd::Zero(dim, dim);
  std::int64_t off = 0;
  for (const auto& b : blocks) {
    full.block(off, off, b.rows(), b.cols()) = b;
    off += b.rows();
  }
  return full;
}

GeneratorBlocks full_generator(const DaviesContext& ctx, const OracleLimits& limits) {
  const StabilizerModel& model = *ctx.model;
  if (model.n() > limits.max_n && !limits.force)
    throw size_limit_error("full generator assembly is gated at N <= " +
                           std::to_string(limits.max_n));
  GeneratorBlocks out;
  out.cosets = coset_representatives(model);
  out.blocks.reserve(out.cosets.representatives.size());
  for (const auto& rep : out.cosets.representatives)
    out.blocks.push_back(generator_block(ctx, rep));
  return out;
}

GapResult spectral_gap(const StabilizerModel& model, const Bath& bath, GapMethod method,
                       const GapLimits& limits, int threads) {
  if (model.rank() > limits.max_rank && !limits.force)
    throw size_limit_error("coset blocks of dimension 2^" + std::to_string(model.rank()) +
                           " exceed the configured limit");
  DaviesContext ctx = DaviesContext::make(model, bath);
  CosetDecomposition cosets =
      coset_representatives(model, CosetLimits{limits.max_cosets, limits.force});
  const std::int64_t nc = (std::int64_t)cosets.representatives.size();
  Eigen::VectorXd q = stabilizer_kernel_vector(ctx);

  GapResult res;
  res.method = method;

  if (method == GapMethod::full && model.n() > limits.max_n_full && !limits.force)
    throw size_limit_error("full-method gap is gated at N <= " +
                           std::to_string(limits.max_n_full));

  std::vector<double> mins(nc);
  std::vector<double> residuals(nc);
  parallel_for(
      nc,
      [&](std::int64_t ci) {
        const PauliWord& rep = cosets.representatives[ci];
        const bool stab = rep.is_identity();
        Eigen::MatrixXd w;
        if (method == GapMethod::coset) {
          w = whitened_block(ctx, rep);
        } else {
          // rho-symmetrized generator: D^{1/2} (-L) D^{-1/2}, D = diag(rho_a)
          Eigen::MatrixXd l = generator_block(ctx, rep);
          const auto& rho = ctx.gibbs_table.weights;
          Eigen::MatrixXd sym(l.rows(), l.cols());
          for (Eigen::Index a = 0; a < l.rows(); ++a)
            for (Eigen::Index b = 0; b < l.cols(); ++b)
              sym(a, b) = -std::sqrt(rho[a] / rho[b]) * l(a, b);
          symmetrize_checked(sym, "symmetrized generator block");
          w = sym;
        }
        auto r = coset_min_eigen(w, stab ? &q : nullptr);
        mins[ci] = r.min_eig;
        residuals[ci] = r.residual;
      },
      threads);

  std::int64_t best = 0;
  for (std::int64_t ci = 1; ci < nc; ++ci) {
    if (mins[ci] < mins[best]) {
      best = ci;
    } else if (mins[ci] == mins[best] &&
               cosets.representatives[ci] < cosets.representatives[best]) {
      best = ci;
    }
  }
  res.gap = mins[best];
  res.achieving_rep = cosets.representatives[best];
  res.residual = residuals[best];
  return res;
}

DetailedBalanceResult detailed_balance_check(const StabilizerModel& model, const Bath& bath,
                                             int trials, std::uint64_t seed,
                                             const OracleLimits& limits) {
  DaviesContext ctx = DaviesContext::make(model, bath);
  GeneratorBlocks gen = full_generator(ctx, limits);
  const auto& rho = ctx.gibbs_table.weights;
  const std::int64_t nv = model.num_valid_syndromes();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  // Hermitian coefficient vector over the coset of rep: conj(u_a) = u_{a+e0}.
  auto random_hermitian = [&](std::int64_t e0) {
    Eigen::VectorXcd u = Eigen::VectorXcd::Zero(nv);
    for (std::int64_t a = 0; a < nv; ++a) {
      std::int64_t pa = a ^ e0;
      if (pa == a) {
        u[a] = std::complex<double>(gauss(rng), 0.0);
      } else if (a < pa) {
        std::complex<double> v(gauss(rng), gauss(rng));
        u[a] = v;
        u[pa] = std::conj(v);
      }
    }
    return u;
  };

  DetailedBalanceResult out;
  for (int t = 0; t < trials; ++t) {
    std::complex<double> fwd(0, 0), bwd(0, 0);
    for (std::size_t ci = 0; ci < gen.blocks.size(); ++ci) {
      std::int64_t e0 =
          model.syndrome_index(gen.cosets.rep_syndromes[ci]);
      Eigen::VectorXcd u = random_hermitian(e0);
      Eigen::VectorXcd v = random_hermitian(e0);
      Eigen::VectorXcd lu = gen.blocks[ci] * u;
      Eigen::VectorXcd lv = gen.blocks[ci] * v;
      for (std::int64_t a = 0; a < nv; ++a) {
        fwd += std::conj(u[a]) * rho[a] * lv[a];
        bwd += std::conj(lu[a]) * rho[a] * v[a];
      }
    }
    out.residual = std::max(out.residual, std::abs(fwd - bwd));
    out.scale = std::max({out.scale, std::abs(fwd), std::abs(bwd)});
  }
  return out;
}

double fixed_point_residual(const StabilizerModel& model, const Bath& bath,
                            const OracleLimits& limits) {
  DaviesContext ctx = DaviesContext::make(model, bath);
  // rho is supported on the stabilizer coset alone; L preserves cosets.
  Eigen::MatrixXd l = generator_block(ctx, PauliWord(model.n()));
  Eigen::VectorXd u(model.num_valid_syndromes());
  for (std::int64_t a = 0; a < u.size(); ++a) u[a] = ctx.gibbs_table.weights[a];
  u.normalize();
  (void)limits;
  return (l.transpose() * u).norm();
}

double support_bound_canonical(const StabilizerModel& model, const Bath& bath,
                               const PathFamily& family, const SupportBoundLimits& limits) {
  if (model.n() > limits.max_n && !limits.force)
    throw size_limit_error("support bound evaluation is gated at N <= " +
                           std::to_string(limits.max_n));
  DaviesContext ctx = DaviesContext::make(model, bath);
  FamilyPathIndex idx = build_family_path_index(model, family, limits.max_n, limits.force);
  const auto& rho = ctx.gibbs_table.weights;
  const std::int64_t nv = model.num_valid_syndromes();
  const std::int64_t total = std::int64_t(1) << (2 * model.n());
  const double two_n = std::ldexp(1.0, model.n());

  // syndrome index per word code
  std::vector<std::int32_t> code_sidx(total);
  for (std::int64_t code = 0; code < total; ++code)
    code_sidx[code] = (std::int32_t)model.syndrome_index(
        model.syndrome_of(PauliWord::from_code(model.n(), (std::uint64_t)code)));

  double tau = 0.0;
  for (std::int64_t aidx = 0; aidx < nv; ++aidx) {
    for (std::int64_t mu = 0; mu < total; ++mu) {
      double sum = 0.0;
      for (const auto& [prefix, si] : idx.target_edges[mu]) {
        const std::int64_t axidx = aidx ^ code_sidx[prefix];
        double inner = 0.0;
        const auto& through = idx.paths_through.at(idx.edge_key(prefix, si));
        for (std::uint32_t eta : through)
          inner += rho[aidx] * rho[aidx ^ code_sidx[eta]];
        sum += 4.0 / (two_n * ctx.rate[si][axidx] * rho[axidx]) * inner;
      }
      tau = std::max(tau, sum);
    }
  }
  return tau;
}

}  // namespace stabgap
