#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "stabgap/gf2.hpp"
#include "stabgap/pauli.hpp"
#include "stabgap/rational.hpp"

namespace stabgap {

/// The code matrix G: an ordered list of mutually commuting generator words
/// with exact rational couplings. Dependent generators are allowed; identity
/// generators are not.
struct GeneratorSet {
  int n_qubits = 0;
  std::vector<PauliWord> generators;
  std::vector<Rational> couplings;
};

/// Edge-qubit layout of an Lx x Ly torus; kept alongside toric models so the
/// string-path family can address plaquettes and vertices.
struct ToricLayout {
  int lx = 0, ly = 0;
  int n() const { return 2 * lx * ly; }
  int h_qubit(int i, int j) const { return mod(j, ly) * lx + mod(i, lx); }
  int v_qubit(int i, int j) const { return lx * ly + mod(j, ly) * lx + mod(i, lx); }
  static int mod(int a, int m) { return ((a % m) + m) % m; }
};

/// Commuting Pauli Hamiltonian H = -sum_k J_k g_k with its parity-check
/// structure: syndromes, the valid-syndrome enumeration and the stabilizer
/// label space Im(G) used for coset decompositions.
class StabilizerModel {
 public:
  /// Validates commutation (reporting the offending pair), uniform length,
  /// non-identity generators, M >= 1, and assembles the GF(2) structure.
  static StabilizerModel build(GeneratorSet gens);

  int n() const { return gens_.n_qubits; }
  int m() const { return static_cast<int>(gens_.generators.size()); }
  int rank() const { return syndrome_basis_.rank(); }
  const GeneratorSet& generators() const { return gens_; }
  const std::vector<PauliWord>& w1() const { return w1_; }

  /// Parity-check rows E = (G_Z^T, G_X^T): row k is generator k with x/z
  /// halves swapped, so that e_k(w) is a plain bit inner product.
  const std::vector<PauliWord>& parity_check_rows() const { return swapped_rows_; }
  /// E.G = 0 over GF(2), checked entrywise.
  bool parity_check_annihilates_generators() const;

  /// M-bit syndrome e(w); bit k = symplectic_parity(g_k, w).
  BitVec syndrome_of(const PauliWord& w) const;

  std::int64_t num_valid_syndromes() const { return std::int64_t(1) << rank(); }
  bool syndrome_valid(const BitVec& s) const { return syndrome_basis_.in_span(s); }
  /// Index <-> syndrome; indices XOR like the syndromes they label.
  std::int64_t syndrome_index(const BitVec& s) const;
  BitVec syndrome_at(std::int64_t idx) const;
  /// Some Pauli word with the given valid syndrome.
  PauliWord preimage_at(std::int64_t idx) const;

  /// eps_a = -sum_k J_k (-1)^{a_k}; requires a valid syndrome.
  Rational energy(const BitVec& syndrome) const;
  /// omega^alpha(a) = -2 sum_k J_k e_k(alpha) (-1)^{a_k}
  ///               = energy(a) - energy(a xor e(alpha)).
  Rational bohr_frequency(const PauliWord& alpha, const BitVec& a) const;
  /// Delta: max |omega^alpha(a)| over alpha in W1 and valid a.
  Rational max_bohr() const;

  /// Canonical representative of the coset w + Im(G): reduce w by the
  /// stabilizer basis. rep(w) == rep(v) iff w and v differ by an element of
  /// Im(G); rep of a stabilizer word is the identity.
  PauliWord coset_rep(const PauliWord& w) const;
  bool in_stabilizer_span(const PauliWord& w) const;
  /// Complement coordinates outside Im(G); there are 2N - r of them.
  const std::vector<int>& coset_free_bits() const { return coset_free_bits_; }
  /// Basis of ker(E) = centralizer label space (dimension 2N - r).
  const std::vector<PauliWord>& kernel_basis() const { return kernel_basis_; }

 private:
  static BitVec word_bits(const PauliWord& w);
  static PauliWord bits_word(int n, const BitVec& b);

  GeneratorSet gens_;
  std::vector<PauliWord> swapped_rows_;
  std::vector<PauliWord> w1_;
  Gf2Basis<PauliWord> syndrome_basis_;    // basis of Im(E), tags are preimage words
  Gf2Basis<int> stabilizer_basis_;        // basis of Im(G) as 2N-bit vectors
  std::vector<int> coset_free_bits_;
  std::vector<PauliWord> kernel_basis_;
};

/// Valid syndromes with energies, Gibbs weights and the partition function at
/// inverse temperature beta. Energies are shifted by the ground energy before
/// exponentiation; the shift cancels in every downstream ratio.
struct GibbsTable {
  double beta = 0.0;
  int multiplicity_log2 = 0;               // N - r, trace of each projector
  std::vector<Rational> energies;          // by syndrome index
  std::vector<double> weights;             // rho_a, by syndrome index
  double z = 0.0;
  double log_z = 0.0;
  Rational energy_min, energy_max;

  /// log of the inverse smallest Gibbs eigenvalue, log Z + beta * eps_max.
  double log_inv_rho_min() const { return log_z + beta * energy_max.to_double(); }
};

GibbsTable gibbs(const StabilizerModel& model, double beta);

/// Builtin models.
GeneratorSet ising_chain(int n, const Rational& j, bool periodic = false);
GeneratorSet cluster_chain(int n, const Rational& j);
GeneratorSet toric_code(int lx, int ly, const Rational& j);
ToricLayout toric_layout(int lx, int ly);

}  // namespace stabgap
