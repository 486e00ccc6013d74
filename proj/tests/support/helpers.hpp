#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <set>
#include <stdexcept>
#include <vector>

#include "stabgap/barrier.hpp"
#include "stabgap/model.hpp"

namespace testing_support {

using stabgap::BitVec;
using stabgap::GeneratorSet;
using stabgap::PauliWord;
using stabgap::Rational;
using stabgap::StabilizerModel;

// Seeded random commuting generator sets; couplings drawn from a small
// rational pool including negative values.
inline GeneratorSet random_commuting_model(int n, int want_m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const Rational pool[] = {Rational(1),      Rational(-1), Rational(1, 2),
                           Rational(3, 2),   Rational(2),  Rational(-1, 2)};
  GeneratorSet g;
  g.n_qubits = n;
  int attempts = 0;
  while ((int)g.generators.size() < want_m && attempts < 4000) {
    ++attempts;
    PauliWord w(n);
    for (int s = 0; s < n; ++s) {
      auto bits = rng() & 3;
      w.set_site(s, bits & 1, (bits >> 1) & 1);
    }
    if (w.is_identity()) continue;
    bool ok = true;
    for (const auto& h : g.generators)
      if (stabgap::symplectic_parity(h, w)) { ok = false; break; }
    if (!ok) continue;
    g.generators.push_back(w);
    g.couplings.push_back(pool[rng() % 6]);
  }
  return g;
}

// Loop-free (node-simple) DFS over Pauli paths up to a length cap; the
// independent oracle for the bottleneck search.
inline Rational brute_force_energy_cost(const StabilizerModel& model,
                                        const PauliWord& target, int max_len) {
  const auto& w1 = model.w1();
  BitVec tmask = model.syndrome_of(target);
  std::vector<Rational> twoabs;
  for (const auto& j : model.generators().couplings)
    twoabs.push_back(j.abs() * Rational(2));
  auto node_cost = [&](const PauliWord& w) {
    BitVec s = model.syndrome_of(w);
    Rational c(0);
    for (int k = 0; k < model.m(); ++k)
      if (s.get(k) && !tmask.get(k)) c += twoabs[k];
    return c;
  };

  Rational best(0);
  bool found = false;
  std::set<PauliWord> on_path;
  PauliWord start(model.n());
  on_path.insert(start);

  // depth-first over simple paths, pruning branches that cannot improve
  std::function<void(const PauliWord&, const Rational&, int)> dfs =
      [&](const PauliWord& cur, const Rational& cur_max, int len) {
        if (cur == target) {
          if (!found || cur_max < best) {
            best = cur_max;
            found = true;
          }
          return;
        }
        if (len == max_len) return;
        for (const auto& step : w1) {
          PauliWord nxt = cur ^ step;
          if (on_path.count(nxt)) continue;
          Rational c = node_cost(nxt);
          Rational nmax = cur_max < c ? c : cur_max;
          if (found && !(nmax < best)) continue;
          on_path.insert(nxt);
          dfs(nxt, nmax, len + 1);
          on_path.erase(nxt);
        }
      };
  dfs(start, Rational(0), 0);
  if (!found) throw std::runtime_error("brute force did not reach the target");
  return best;
}

// Counts words with syndrome b by commutation sign with rep, the slow way.
inline std::pair<std::int64_t, std::int64_t> brute_force_sector_counts(
    const StabilizerModel& model, const BitVec& b, const PauliWord& rep) {
  std::int64_t plus = 0, minus = 0;
  const std::int64_t total = std::int64_t(1) << (2 * model.n());
  for (std::int64_t code = 0; code < total; ++code) {
    PauliWord w = PauliWord::from_code(model.n(), (std::uint64_t)code);
    if (model.syndrome_of(w) != b) continue;
    if (stabgap::commutation_sign(w, rep) > 0)
      ++plus;
    else
      ++minus;
  }
  return {plus, minus};
}

}  // namespace testing_support
