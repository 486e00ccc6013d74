#pragma once

// Brute-force oracle on the full 2^N Hilbert space. Everything here is built
// from dense complex matrices and the textbook operator formulas, independent
// of the library's coset-block machinery, so agreement is meaningful.

#include <Eigen/Dense>
#include <complex>
#include <map>
#include <vector>

#include "stabgap/davies.hpp"
#include "stabgap/model.hpp"

namespace oracle {

using stabgap::Bath;
using stabgap::BitVec;
using stabgap::PauliWord;
using stabgap::Rational;
using stabgap::StabilizerModel;
using Cmat = Eigen::MatrixXcd;

inline Cmat pauli_matrix(const PauliWord& w) {
  const int n = w.n();
  const int dim = 1 << n;
  std::uint64_t x = 0, z = 0;
  int ys = 0;
  for (int i = 0; i < n; ++i) {
    if (w.x_bit(i)) x |= std::uint64_t(1) << i;
    if (w.z_bit(i)) z |= std::uint64_t(1) << i;
    if (w.x_bit(i) && w.z_bit(i)) ++ys;
  }
  static const std::complex<double> iphase[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  std::complex<double> phase = iphase[ys % 4];
  Cmat m = Cmat::Zero(dim, dim);
  for (int c = 0; c < dim; ++c) {
    int sign = __builtin_popcountll((std::uint64_t)c & z) & 1 ? -1 : 1;
    m(c ^ (int)x, c) = phase * (double)sign;
  }
  return m;
}

inline Cmat projector(const StabilizerModel& model, const BitVec& syndrome) {
  const int dim = 1 << model.n();
  Cmat p = Cmat::Identity(dim, dim);
  const auto& gens = model.generators().generators;
  for (int k = 0; k < model.m(); ++k) {
    double s = syndrome.get(k) ? -1.0 : 1.0;
    p = (0.5 * (Cmat::Identity(dim, dim) + s * pauli_matrix(gens[k])) * p).eval();
  }
  return p;
}

inline Cmat gibbs_matrix(const StabilizerModel& model, double beta) {
  const int dim = 1 << model.n();
  stabgap::GibbsTable t = stabgap::gibbs(model, beta);
  Cmat rho = Cmat::Zero(dim, dim);
  for (std::int64_t a = 0; a < model.num_valid_syndromes(); ++a)
    rho += t.weights[a] * projector(model, model.syndrome_at(a));
  return rho;
}

// L(f) = sum_{alpha in W1} sum_omega h(omega) (S^dag f S - 1/2 {S^dag S, f})
// with S_omega^alpha = sum_{a: omega^alpha(a) = omega} sigma(alpha) P(a).
inline Cmat davies_action(const StabilizerModel& model, const Bath& bath, const Cmat& f) {
  const int dim = 1 << model.n();
  Cmat out = Cmat::Zero(dim, dim);
  for (const auto& alpha : model.w1()) {
    Cmat sigma = pauli_matrix(alpha);
    // group valid syndromes by exact Bohr frequency
    std::map<Rational, std::vector<std::int64_t>> sectors;
    for (std::int64_t a = 0; a < model.num_valid_syndromes(); ++a) {
      BitVec sa = model.syndrome_at(a);
      Rational omega = model.energy(sa) - model.energy(sa ^ model.syndrome_of(alpha));
      sectors[omega].push_back(a);
    }
    for (const auto& [omega, as] : sectors) {
      Cmat s = Cmat::Zero(dim, dim);
      for (auto a : as) s += sigma * projector(model, model.syndrome_at(a));
      Cmat sd = s.adjoint();
      out += bath.rate(omega) *
             (sd * f * s - 0.5 * (sd * s * f + f * sd * s));
    }
  }
  return out;
}

inline double dirichlet_direct(const StabilizerModel& model, const Bath& bath,
                               const Cmat& rho, const Cmat& f) {
  return -((rho * f.adjoint() * davies_action(model, bath, f)).trace()).real();
}

inline double variance_direct(const Cmat& rho, const Cmat& f) {
  std::complex<double> mean = (rho * f).trace();
  return ((rho * f.adjoint() * f).trace()).real() - std::norm(mean);
}

// Coset basis operator sigma(rep) P(a) normalized to unit Hilbert-Schmidt
// norm in the 2^{-N} tr(f^dag g) convention.
inline Cmat coset_basis_op(const StabilizerModel& model, const PauliWord& rep,
                           std::int64_t a_idx) {
  double scale = std::sqrt(std::ldexp(1.0, model.rank()));
  return scale * pauli_matrix(rep) * projector(model, model.syndrome_at(a_idx));
}

}  // namespace oracle
