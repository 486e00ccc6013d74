#include "stabgap/model.hpp"

#include <cmath>

namespace stabgap {

BitVec StabilizerModel::word_bits(const PauliWord& w) {
  BitVec b(2 * w.n());
  for (int i = 0; i < w.n(); ++i) {
    if (w.x_bit(i)) b.set(i, true);
    if (w.z_bit(i)) b.set(w.n() + i, true);
  }
  return b;
}

PauliWord StabilizerModel::bits_word(int n, const BitVec& b) {
  PauliWord w(n);
  for (int i = 0; i < n; ++i) w.set_site(i, b.get(i), b.get(n + i));
  return w;
}

StabilizerModel StabilizerModel::build(GeneratorSet gens) {
  if (gens.generators.empty()) throw input_error("generator list is empty");
  if (gens.couplings.size() != gens.generators.size())
    throw input_error("generator/coupling count mismatch");
  const int n = gens.n_qubits;
  for (std::size_t k = 0; k < gens.generators.size(); ++k) {
    if (gens.generators[k].n() != n)
      throw input_error("generator " + std::to_string(k) + " has length " +
                        std::to_string(gens.generators[k].n()) + ", expected " +
                        std::to_string(n));
    if (gens.generators[k].is_identity())
      throw input_error("generator " + std::to_string(k) + " is the identity word");
  }
  for (std::size_t i = 0; i < gens.generators.size(); ++i)
    for (std::size_t j = i + 1; j < gens.generators.size(); ++j)
      if (symplectic_parity(gens.generators[i], gens.generators[j]))
        throw input_error("generators " + std::to_string(i) + " and " +
                          std::to_string(j) + " anticommute (" +
                          format_pauli(gens.generators[i]) + ", " +
                          format_pauli(gens.generators[j]) + ")");

  StabilizerModel model;
  model.gens_ = std::move(gens);
  model.w1_ = weight_one_set(n);

  for (const auto& g : model.gens_.generators) {
    PauliWord row(n, g.z_bits(), g.x_bits());  // (G_Z^T, G_X^T)
    model.swapped_rows_.push_back(row);
  }

  // Im(E): spanned by the syndromes of the unit words X_i, Z_i; the
  // elimination keeps a preimage word for every basis row.
  for (int site = 0; site < n; ++site) {
    for (char c : {'X', 'Z'}) {
      PauliWord u = PauliWord::single(n, site, c);
      model.syndrome_basis_.insert(model.syndrome_of(u), u);
    }
  }

  if (model.rank() > 26)
    throw size_limit_error("syndrome space rank " + std::to_string(model.rank()) +
                           " exceeds the exhaustive gate (26)");

  // Im(G) as 2N-bit row space, reduced; pivot complement labels the cosets.
  for (const auto& g : model.gens_.generators)
    model.stabilizer_basis_.insert(word_bits(g), 0);
  std::vector<bool> is_pivot(2 * n, false);
  for (int p : model.stabilizer_basis_.pivots) is_pivot[p] = true;
  for (int b = 0; b < 2 * n; ++b)
    if (!is_pivot[b]) model.coset_free_bits_.push_back(b);

  // ker(E): run the unit words through an elimination over their syndromes;
  // whenever a syndrome is dependent the tracked preimage combination has
  // e(w) = 0 and extends the kernel basis.
  {
    Gf2Basis<PauliWord> span;
    for (int site = 0; site < n; ++site) {
      for (char c : {'X', 'Z'}) {
        PauliWord u = PauliWord::single(n, site, c);
        BitVec s = model.syndrome_of(u);
        PauliWord w = u;
        BitVec r = s;
        for (std::size_t i = 0; i < span.rows.size(); ++i) {
          if (r.get(span.pivots[i])) {
            r ^= span.rows[i];
            w = w ^ span.tags[i];
          }
        }
        if (r.any()) {
          span.insert(s, u);
        } else {
          model.kernel_basis_.push_back(w);  // e(w) = 0
        }
      }
    }
  }

  // Sanity: EG = 0.
  if (!model.parity_check_annihilates_generators())
    throw internal_error("parity check does not annihilate the generators");
  return model;
}

bool StabilizerModel::parity_check_annihilates_generators() const {
  for (const auto& g : gens_.generators)
    if (syndrome_of(g).any()) return false;
  return true;
}

BitVec StabilizerModel::syndrome_of(const PauliWord& w) const {
  if (w.n() != n()) throw input_error("syndrome of a word with mismatched N");
  BitVec s(m());
  for (int k = 0; k < m(); ++k)
    if (symplectic_parity(gens_.generators[k], w)) s.set(k, true);
  return s;
}

std::int64_t StabilizerModel::syndrome_index(const BitVec& s) const {
  if (!syndrome_valid(s)) throw input_error("syndrome is not in the valid space Im(E)");
  return static_cast<std::int64_t>(syndrome_basis_.coords(s));
}

BitVec StabilizerModel::syndrome_at(std::int64_t idx) const {
  return syndrome_basis_.combine(static_cast<std::uint64_t>(idx));
}

PauliWord StabilizerModel::preimage_at(std::int64_t idx) const {
  return syndrome_basis_.combine_tags(static_cast<std::uint64_t>(idx), PauliWord(n()));
}

Rational StabilizerModel::energy(const BitVec& syndrome) const {
  if (!syndrome_valid(syndrome)) throw input_error("energy of an invalid syndrome");
  Rational e(0);
  for (int k = 0; k < m(); ++k) {
    if (syndrome.get(k))
      e += gens_.couplings[k];
    else
      e -= gens_.couplings[k];
  }
  return e;
}

Rational StabilizerModel::bohr_frequency(const PauliWord& alpha, const BitVec& a) const {
  if (!syndrome_valid(a)) throw input_error("Bohr frequency at an invalid syndrome");
  BitVec ea = syndrome_of(alpha);
  Rational w(0);
  for (int k = 0; k < m(); ++k) {
    if (!ea.get(k)) continue;
    Rational term = gens_.couplings[k] * Rational(2);
    if (a.get(k)) w += term; else w -= term;
  }
  return w;
}

Rational StabilizerModel::max_bohr() const {
  Rational best(0);
  const std::int64_t nv = num_valid_syndromes();
  for (const auto& alpha : w1_) {
    for (std::int64_t idx = 0; idx < nv; ++idx) {
      Rational w = bohr_frequency(alpha, syndrome_at(idx)).abs();
      if (best < w) best = w;
    }
  }
  return best;
}

PauliWord StabilizerModel::coset_rep(const PauliWord& w) const {
  return bits_word(n(), stabilizer_basis_.reduce(word_bits(w)));
}

bool StabilizerModel::in_stabilizer_span(const PauliWord& w) const {
  return stabilizer_basis_.in_span(word_bits(w));
}

GibbsTable gibbs(const StabilizerModel& model, double beta) {
  if (beta < 0) throw input_error("negative inverse temperature");
  GibbsTable t;
  t.beta = beta;
  t.multiplicity_log2 = model.n() - model.rank();
  const std::int64_t nv = model.num_valid_syndromes();
  t.energies.resize(nv);
  t.weights.resize(nv);
  for (std::int64_t i = 0; i < nv; ++i) t.energies[i] = model.energy(model.syndrome_at(i));
  t.energy_min = t.energies[0];
  t.energy_max = t.energies[0];
  for (const auto& e : t.energies) {
    if (e < t.energy_min) t.energy_min = e;
    if (t.energy_max < e) t.energy_max = e;
  }
  const double emin = t.energy_min.to_double();
  double zs = 0.0;  // shifted partition sum
  for (std::int64_t i = 0; i < nv; ++i)
    zs += std::exp(-beta * (t.energies[i].to_double() - emin));
  const double mult = std::ldexp(1.0, t.multiplicity_log2);
  for (std::int64_t i = 0; i < nv; ++i)
    t.weights[i] = std::exp(-beta * (t.energies[i].to_double() - emin)) / (zs * mult);
  t.log_z = std::log(zs * mult) - beta * emin;
  t.z = std::exp(t.log_z);
  return t;
}

GeneratorSet ising_chain(int n, const Rational& j, bool periodic) {
  if (n < 2) throw input_error("ising_chain needs N >= 2");
  GeneratorSet g;
  g.n_qubits = n;
  const int m = periodic ? n : n - 1;
  for (int i = 0; i < m; ++i) {
    PauliWord w(n);
    w.set_site(i, false, true);
    w.set_site((i + 1) % n, false, true);
    g.generators.push_back(w);
    g.couplings.push_back(j);
  }
  return g;
}

GeneratorSet cluster_chain(int n, const Rational& j) {
  if (n < 3) throw input_error("cluster_chain needs N >= 3");
  GeneratorSet g;
  g.n_qubits = n;
  for (int i = 1; i + 1 < n; ++i) {
    PauliWord w(n);
    w.set_site(i - 1, false, true);
    w.set_site(i, true, false);
    w.set_site(i + 1, false, true);
    g.generators.push_back(w);
    g.couplings.push_back(j);
  }
  return g;
}

GeneratorSet toric_code(int lx, int ly, const Rational& j) {
  if (lx < 2 || ly < 2) throw input_error("toric_code needs Lx, Ly >= 2");
  ToricLayout lat = toric_layout(lx, ly);
  GeneratorSet g;
  g.n_qubits = lat.n();
  // plaquette p(i,j): X on h(i,j), h(i,j+1), v(i,j), v(i+1,j)
  for (int jj = 0; jj < ly; ++jj) {
    for (int ii = 0; ii < lx; ++ii) {
      PauliWord w(lat.n());
      w.set_site(lat.h_qubit(ii, jj), true, false);
      w.set_site(lat.h_qubit(ii, jj + 1), true, false);
      w.set_site(lat.v_qubit(ii, jj), true, false);
      w.set_site(lat.v_qubit(ii + 1, jj), true, false);
      g.generators.push_back(w);
      g.couplings.push_back(j);
    }
  }
  // vertex w(i,j): Z on h(i-1,j), h(i,j), v(i,j-1), v(i,j)
  for (int jj = 0; jj < ly; ++jj) {
    for (int ii = 0; ii < lx; ++ii) {
      PauliWord w(lat.n());
      w.set_site(lat.h_qubit(ii - 1, jj), false, true);
      w.set_site(lat.h_qubit(ii, jj), false, true);
      w.set_site(lat.v_qubit(ii, jj - 1), false, true);
      w.set_site(lat.v_qubit(ii, jj), false, true);
      g.generators.push_back(w);
      g.couplings.push_back(j);
    }
  }
  return g;
}

ToricLayout toric_layout(int lx, int ly) {
  if (lx < 2 || ly < 2) throw input_error("toric layout needs Lx, Ly >= 2");
  ToricLayout lat;
  lat.lx = lx;
  lat.ly = ly;
  return lat;
}

}  // namespace stabgap
