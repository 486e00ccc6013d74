#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <map>
#include <vector>

#include "stabgap/barrier.hpp"
#include "stabgap/model.hpp"

namespace stabgap {

enum class BathKind { metropolis, glauber, table };

/// Transition rates h(omega) of the thermal bath. Builtin kinds satisfy the
/// KMS identity h(-w) = e^{-beta w} h(w) bit-exactly by construction: the
/// negative-frequency branch is computed as e^{-beta|w|} times the positive
/// branch. Table baths are validated against KMS within 1e-12 unless the
/// unchecked constructor is used (negative tests only).
///
/// Rates are independent of which coupling operator realizes the frequency;
/// per-operator rate functions would generalize this type without touching
/// the block assembly.
class Bath {
 public:
  static Bath metropolis(double beta);
  static Bath glauber(double beta);
  static Bath table(double beta, std::map<Rational, double> rates, bool enforce_kms = true);

  BathKind kind() const { return kind_; }
  double beta() const { return beta_; }
  const char* name() const;

  /// metropolis: min(1, e^{beta w}); glauber: 1/(1 + e^{-beta w}); table: lookup.
  double rate(const Rational& omega) const;

 private:
  BathKind kind_ = BathKind::metropolis;
  double beta_ = 0.0;
  std::map<Rational, double> table_;
};

/// Immutable per-(model, bath) tables: exact Bohr frequencies and rates over
/// (weight-one index, syndrome index). Shared read-only by all block builders.
struct DaviesContext {
  const StabilizerModel* model = nullptr;
  Bath bath{Bath::metropolis(0.0)};
  GibbsTable gibbs_table;
  std::vector<std::vector<Rational>> omega;  // [3N][2^r]
  std::vector<std::vector<double>> rate;     // [3N][2^r]
  std::vector<std::int64_t> alpha_sidx;      // syndrome index of e(alpha)

  static DaviesContext make(const StabilizerModel& model, const Bath& bath);
};

/// One canonical representative per right coset of Im(G) in Z_2^{2N},
/// enumerated as all GF(2) combinations of the complement coordinates. The
/// stabilizer coset comes first with the identity word as representative.
struct CosetDecomposition {
  std::vector<PauliWord> representatives;
  std::vector<BitVec> rep_syndromes;
};

struct CosetLimits {
  std::int64_t max_cosets = std::int64_t(1) << 20;
  bool force = false;
};

CosetDecomposition coset_representatives(const StabilizerModel& model,
                                         const CosetLimits& limits = {});

/// Counts of words with syndrome b splitting by commutation sign with rep:
/// either exactly balanced or constant over the affine solution set.
std::pair<std::int64_t, std::int64_t> syndrome_sector_sign_counts(
    const StabilizerModel& model, const BitVec& b, const PauliWord& rep);

/// Dirichlet block E_hat over the coset of rep, indexed by valid syndromes:
///   (a,a)          += 1/2 (h(w^a(a)) + h(w^a(a + e0))) rho_a
///   (a, a + e(al)) -= h(w^al(a)) [w^al(a) == w^al(a + e0)] rho_a theta
/// summed over al in W1, with e0 the syndrome of the representative and the
/// frequency equality decided over exact rationals. The representative is
/// canonicalized first, so any two words of one coset give identical blocks.
Eigen::MatrixXd dirichlet_block(const DaviesContext& ctx, const PauliWord& rep);

/// Variance block V_hat over the coset of rep:
///   (a,a)     += 2^{N-r} rho_a rho_{a+b}           for every valid b
///   (a, a+b)  -= s(b) 2^{N-r} rho_a rho_{a+b}      s(b) in {-1, 0, +1}
/// where s(b) is the constant commutation sign of the syndrome-b sector with
/// rep (zero when the sector is balanced, which happens exactly off the
/// stabilizer coset).
Eigen::MatrixXd variance_block(const DaviesContext& ctx, const PauliWord& rep);

struct OracleLimits {
  int max_n = 4;
  bool force = false;
};

/// Exact matrix of the generator on the coset-adapted orthonormal basis
/// sigma(rep) P(a): block diagonal over cosets, one dense block per coset.
struct GeneratorBlocks {
  CosetDecomposition cosets;
  std::vector<Eigen::MatrixXd> blocks;
  Eigen::MatrixXd flatten() const;  // coset-major dense 4^N x 4^N matrix
};
GeneratorBlocks full_generator(const DaviesContext& ctx, const OracleLimits& limits = {});

enum class GapMethod { coset, full };

struct GapLimits {
  std::int64_t max_cosets = std::int64_t(1) << 20;
  int max_rank = 12;   // coset blocks are 2^r x 2^r
  int max_n_full = 4;  // full method assembles all 4^N / 2^r blocks of the generator
  bool force = false;
};

struct GapResult {
  double gap = 0.0;
  PauliWord achieving_rep;
  GapMethod method = GapMethod::coset;
  double residual = 0.0;       // |W v - lambda v| of the winning eigenpair
  double rank_cutoff = 1e-12;  // relative cutoff guarding the kernel deflation
};

/// Spectral gap of the Davies generator.
/// coset: per-coset symmetric eigenproblem with the variance-kernel direction
/// deflated analytically on the stabilizer coset; minimum over cosets, ties to
/// the lexicographically smallest representative.
/// full: eigenvalues of the rho-symmetrized full generator, smallest nonzero.
GapResult spectral_gap(const StabilizerModel& model, const Bath& bath,
                       GapMethod method = GapMethod::coset, const GapLimits& limits = {},
                       int threads = 0);

/// Max over random Hermitian f, g of |<f, L(g)>_rho - <L(f), g>_rho|.
struct DetailedBalanceResult {
  double residual = 0.0;
  double scale = 0.0;  // max magnitude of the pairings encountered
};
DetailedBalanceResult detailed_balance_check(const StabilizerModel& model, const Bath& bath,
                                             int trials, std::uint64_t seed,
                                             const OracleLimits& limits = {});

/// |L^dagger(rho)| over the normalized Gibbs vector; zero for any KMS bath.
double fixed_point_residual(const StabilizerModel& model, const Bath& bath,
                            const OracleLimits& limits = {});

struct SupportBoundLimits {
  int max_n = 3;
  bool force = false;
};

/// Canonical-paths upper bound on the support number tau = 1/lambda:
/// max over (a, mu) of
///   sum_{edges xi of mu's path} 4 / (2^N h(w^al(a^xi)) rho_{a^xi})
///       * sum_{paths through xi} rho_a rho_{a^eta}.
double support_bound_canonical(const StabilizerModel& model, const Bath& bath,
                               const PathFamily& family,
                               const SupportBoundLimits& limits = {});

}  // namespace stabgap
