#include "stabgap/barrier.hpp"

#include <algorithm>
#include <array>
#include <queue>
#include <random>
#include <set>

#include "stabgap/parallel.hpp"

namespace stabgap {

void PauliPath::validate() const {
  PauliWord acc(target.n());
  std::set<PauliWord> seen;
  seen.insert(acc);
  for (const auto& s : steps) {
    if (s.weight() != 1) throw input_error("path step is not weight one");
    acc = acc ^ s;
    if (!seen.insert(acc).second) throw input_error("path revisits a prefix");
  }
  if (acc != target) throw input_error("path steps do not compose to the target");
}

PathFamily PathFamily::fixed_order(std::vector<int> site_order) {
  PathFamily f;
  f.kind_ = Kind::fixed_order;
  f.site_order_ = std::move(site_order);
  return f;
}

PathFamily PathFamily::css_string(const ToricLayout& layout) {
  PathFamily f;
  f.kind_ = Kind::css_string;
  f.layout_ = layout;
  return f;
}

PathFamily PathFamily::explicit_paths(std::map<PauliWord, PauliPath> paths) {
  PathFamily f;
  f.kind_ = Kind::explicit_map;
  f.explicit_ = std::move(paths);
  return f;
}

namespace {

// Decomposes an edge multiset into excitation trajectories: odd-degree nodes
// are paired off by virtual edges, Euler circuits are walked per component,
// and the circuits are split back at the virtual edges. Every emitted trail is
// edge-contiguous, so at any point during its construction the set of violated
// nodes is contained in {trail start, current end}.
std::vector<std::vector<int>> excitation_trails(int num_nodes,
                                                std::vector<std::array<int, 3>> edges) {
  std::vector<int> deg(num_nodes, 0);
  for (const auto& e : edges) {
    ++deg[e[0]];
    ++deg[e[1]];
  }
  std::vector<int> odd;
  for (int v = 0; v < num_nodes; ++v)
    if (deg[v] & 1) odd.push_back(v);
  for (std::size_t k = 0; k + 1 < odd.size(); k += 2)
    edges.push_back({odd[k], odd[k + 1], -1});

  std::vector<std::vector<std::pair<int, int>>> adj(num_nodes);  // (edge id, other)
  for (std::size_t id = 0; id < edges.size(); ++id) {
    adj[edges[id][0]].push_back({(int)id, edges[id][1]});
    adj[edges[id][1]].push_back({(int)id, edges[id][0]});
  }
  std::vector<bool> used(edges.size(), false);
  std::vector<std::size_t> cursor(num_nodes, 0);

  std::vector<std::vector<int>> trails;
  for (int s = 0; s < num_nodes; ++s) {
    while (cursor[s] < adj[s].size() && used[adj[s][cursor[s]].first]) ++cursor[s];
    if (cursor[s] >= adj[s].size()) continue;

    // Hierholzer: all degrees are even after the virtual pairing.
    std::vector<int> tour;
    std::vector<std::pair<int, int>> st;  // (node, incoming edge id)
    st.push_back({s, -1});
    while (!st.empty()) {
      auto [v, ein] = st.back();
      bool advanced = false;
      while (cursor[v] < adj[v].size()) {
        auto [eid, to] = adj[v][cursor[v]];
        if (used[eid]) { ++cursor[v]; continue; }
        used[eid] = true;
        ++cursor[v];
        st.push_back({to, eid});
        advanced = true;
        break;
      }
      if (!advanced) {
        st.pop_back();
        if (ein >= 0) tour.push_back(ein);
      }
    }
    std::reverse(tour.begin(), tour.end());

    // Split the circuit at virtual edges; each run then starts at an odd node.
    int first_virtual = -1;
    for (std::size_t i = 0; i < tour.size(); ++i)
      if (edges[tour[i]][2] < 0) { first_virtual = (int)i; break; }
    if (first_virtual < 0) {
      std::vector<int> qubits;
      for (int eid : tour) qubits.push_back(edges[eid][2]);
      if (!qubits.empty()) trails.push_back(std::move(qubits));
      continue;
    }
    std::vector<int> rotated;
    for (std::size_t i = 0; i < tour.size(); ++i)
      rotated.push_back(tour[(first_virtual + 1 + i) % tour.size()]);
    std::vector<int> run;
    for (int eid : rotated) {
      if (edges[eid][2] < 0) {
        if (!run.empty()) trails.push_back(std::move(run));
        run.clear();
      } else {
        run.push_back(edges[eid][2]);
      }
    }
    if (!run.empty()) trails.push_back(std::move(run));
  }
  return trails;
}

// Dual-lattice (plaquette) edges of the Z support and primal-lattice (vertex)
// edges of the X support.
void css_pass_edges(const ToricLayout& lat, const PauliWord& target, bool z_pass,
                    std::vector<std::array<int, 3>>& edges) {
  edges.clear();
  auto node = [&](int i, int j) {
    return ToricLayout::mod(j, lat.ly) * lat.lx + ToricLayout::mod(i, lat.lx);
  };
  for (int j = 0; j < lat.ly; ++j) {
    for (int i = 0; i < lat.lx; ++i) {
      int hq = lat.h_qubit(i, j);
      int vq = lat.v_qubit(i, j);
      if (z_pass) {
        if (target.z_bit(hq)) edges.push_back({node(i, j), node(i, j - 1), hq});
        if (target.z_bit(vq)) edges.push_back({node(i, j), node(i - 1, j), vq});
      } else {
        if (target.x_bit(hq)) edges.push_back({node(i, j), node(i + 1, j), hq});
        if (target.x_bit(vq)) edges.push_back({node(i, j), node(i, j + 1), vq});
      }
    }
  }
}

}  // namespace

PauliPath PathFamily::path_for(const StabilizerModel& model, const PauliWord& target) const {
  if (target.n() != model.n()) throw input_error("target length does not match the model");
  PauliPath path;
  path.target = target;
  switch (kind_) {
    case Kind::fixed_order: {
      std::vector<int> order = site_order_;
      if (order.empty()) {
        order.resize(model.n());
        for (int i = 0; i < model.n(); ++i) order[i] = i;
      }
      if ((int)order.size() != model.n())
        throw input_error("site ordering length does not match the model");
      for (int site : order) {
        char c = target.letter(site);
        if (c != 'I') path.steps.push_back(PauliWord::single(model.n(), site, c));
      }
      break;
    }
    case Kind::css_string: {
      if (!layout_ || layout_->n() != model.n())
        throw input_error("css_string family requires a toric-lattice model");
      std::vector<std::array<int, 3>> edges;
      for (bool z_pass : {true, false}) {
        css_pass_edges(*layout_, target, z_pass, edges);
        for (const auto& trail : excitation_trails(layout_->lx * layout_->ly, edges))
          for (int q : trail)
            path.steps.push_back(PauliWord::single(model.n(), q, z_pass ? 'Z' : 'X'));
      }
      break;
    }
    case Kind::explicit_map: {
      auto it = explicit_.find(target);
      if (it == explicit_.end())
        throw input_error("explicit path family has no path for target " +
                          format_pauli(target));
      path = it->second;
      break;
    }
  }
  path.validate();
  return path;
}

namespace {

// Per-syndrome-index counted cost against a target mask:
// sum_k 2|J_k| e_k(a) (1 - e_k(target)).
std::vector<Rational> counted_cost_table(const StabilizerModel& model,
                                         const BitVec& target_syndrome) {
  const std::int64_t nv = model.num_valid_syndromes();
  std::vector<Rational> cost(nv, Rational(0));
  std::vector<Rational> twoabs;
  for (const auto& j : model.generators().couplings) twoabs.push_back(j.abs() * Rational(2));
  for (std::int64_t idx = 0; idx < nv; ++idx) {
    BitVec s = model.syndrome_at(idx);
    Rational c(0);
    for (int k = 0; k < model.m(); ++k)
      if (s.get(k) && !target_syndrome.get(k)) c += twoabs[k];
    cost[idx] = c;
  }
  return cost;
}

// Syndrome index of every word code, built incrementally over set bits.
std::vector<std::int32_t> code_syndrome_table(const StabilizerModel& model) {
  const int n = model.n();
  const std::int64_t total = std::int64_t(1) << (2 * n);
  std::vector<std::int32_t> table(total);
  std::vector<std::int32_t> unit(2 * n);
  for (int b = 0; b < 2 * n; ++b) {
    PauliWord u = b < n ? PauliWord::single(n, b, 'X') : PauliWord::single(n, b - n, 'Z');
    unit[b] = (std::int32_t)model.syndrome_index(model.syndrome_of(u));
  }
  table[0] = 0;
  for (std::int64_t code = 1; code < total; ++code) {
    int b = __builtin_ctzll((unsigned long long)code);
    table[code] = table[code & (code - 1)] ^ unit[b];
  }
  return table;
}

struct DijkstraOut {
  Rational cost;
  int length = 0;
  std::vector<std::int32_t> parent;       // kept only when witness requested
  std::vector<std::int16_t> parent_step;
};

// Bottleneck variant of Dijkstra on word codes 0..4^N-1. Keys are
// (max node cost so far, path length); ties keep the first assignment, which
// with ascending pop order and ascending step index is deterministic.
DijkstraOut bottleneck_search(const StabilizerModel& model,
                              const std::vector<std::int32_t>& code_sidx,
                              const std::vector<Rational>& node_cost,
                              std::uint64_t target_code, bool want_witness) {
  const int n = model.n();
  const std::int64_t total = std::int64_t(1) << (2 * n);
  const auto& w1 = model.w1();
  std::vector<std::uint32_t> step_code(w1.size());
  for (std::size_t i = 0; i < w1.size(); ++i) step_code[i] = (std::uint32_t)w1[i].code();

  std::vector<Rational> dist(total);
  std::vector<std::int32_t> len(total, -1);
  std::vector<bool> done(total, false);
  DijkstraOut out;
  if (want_witness) {
    out.parent.assign(total, -1);
    out.parent_step.assign(total, -1);
  }

  struct Entry {
    Rational d;
    std::int32_t l;
    std::uint64_t code;
  };
  auto cmp = [](const Entry& a, const Entry& b) {
    if (a.d != b.d) return b.d < a.d;
    if (a.l != b.l) return b.l < a.l;
    return b.code < a.code;
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(cmp)> pq(cmp);
  dist[0] = Rational(0);
  len[0] = 0;
  pq.push({Rational(0), 0, 0});
  while (!pq.empty()) {
    Entry e = pq.top();
    pq.pop();
    if (done[e.code] || len[e.code] != e.l || dist[e.code] != e.d) continue;
    done[e.code] = true;
    if (e.code == target_code) break;
    for (std::size_t si = 0; si < step_code.size(); ++si) {
      std::uint64_t v = e.code ^ step_code[si];
      if (done[v]) continue;
      Rational nd = e.d;
      const Rational& cv = node_cost[code_sidx[v]];
      if (nd < cv) nd = cv;
      std::int32_t nl = e.l + 1;
      if (len[v] < 0 || nd < dist[v] || (nd == dist[v] && nl < len[v])) {
        dist[v] = nd;
        len[v] = nl;
        if (want_witness) {
          out.parent[v] = (std::int32_t)e.code;
          out.parent_step[v] = (std::int16_t)si;
        }
        pq.push({nd, nl, v});
      }
    }
  }
  out.cost = dist[target_code];
  out.length = len[target_code];
  return out;
}

void check_exact_gate(int n, int limit, bool force, const char* what) {
  if (n > limit && !force)
    throw size_limit_error(std::string(what) + " is gated at N <= " +
                           std::to_string(limit) + " (got N = " + std::to_string(n) +
                           "); use the force flag to override");
  if (n > 31) throw size_limit_error("exhaustive search needs N <= 31");
}

}  // namespace

Rational path_cost(const StabilizerModel& model, const PauliPath& path) {
  return path_cost(model, path, nullptr);
}

Rational path_cost(const StabilizerModel& model, const PauliPath& path,
                   PauliWord* bottleneck_prefix) {
  if (path.target.n() != model.n()) throw input_error("path target does not match the model");
  PauliWord acc(model.n());
  for (const auto& s : path.steps) acc ^= s;
  if (acc != path.target) throw input_error("path does not compose to its target");

  BitVec tmask = model.syndrome_of(path.target);
  std::vector<Rational> twoabs;
  for (const auto& j : model.generators().couplings) twoabs.push_back(j.abs() * Rational(2));

  Rational best(0);
  PauliWord best_prefix(model.n());
  PauliWord prefix(model.n());
  BitVec s(model.m());
  for (const auto& step : path.steps) {
    prefix ^= step;
    s ^= model.syndrome_of(step);
    Rational c(0);
    for (int k = 0; k < model.m(); ++k)
      if (s.get(k) && !tmask.get(k)) c += twoabs[k];
    if (best < c) {
      best = c;
      best_prefix = prefix;
    }
  }
  if (bottleneck_prefix) *bottleneck_prefix = best_prefix;
  return best;
}

ExactCostResult exact_energy_cost(const StabilizerModel& model, const PauliWord& target,
                                  const BarrierLimits& limits) {
  check_exact_gate(model.n(), limits.max_n_single_target, limits.force,
                   "exact_energy_cost");
  if (target.n() != model.n()) throw input_error("target length does not match the model");
  auto code_sidx = code_syndrome_table(model);
  auto node_cost = counted_cost_table(model, model.syndrome_of(target));
  auto dij = bottleneck_search(model, code_sidx, node_cost, target.code(), true);

  ExactCostResult res;
  res.cost = dij.cost;
  res.witness.target = target;
  std::vector<std::int16_t> steps;
  for (std::uint64_t c = target.code(); c != 0;) {
    steps.push_back(dij.parent_step[c]);
    c = (std::uint64_t)dij.parent[c];
  }
  std::reverse(steps.begin(), steps.end());
  const auto& w1 = model.w1();
  for (auto si : steps) res.witness.steps.push_back(w1[si]);
  res.witness.validate();
  path_cost(model, res.witness, &res.bottleneck_prefix);
  return res;
}

BarrierReport generalized_barrier_exact(const StabilizerModel& model,
                                        const BarrierLimits& limits, bool keep_per_target,
                                        int threads) {
  check_exact_gate(model.n(), limits.max_n_exact_barrier, limits.force,
                   "generalized_barrier_exact");
  const int n = model.n();
  const std::int64_t total = std::int64_t(1) << (2 * n);
  auto code_sidx = code_syndrome_table(model);

  std::vector<Rational> cost(total);
  std::vector<std::int32_t> lengths(total);
  std::vector<PauliWord> prefixes(keep_per_target ? total : 0);
  parallel_for(
      total,
      [&](std::int64_t code) {
        PauliWord target = PauliWord::from_code(n, (std::uint64_t)code);
        auto node_cost = counted_cost_table(model, model.syndrome_of(target));
        auto dij = bottleneck_search(model, code_sidx, node_cost, (std::uint64_t)code,
                                     keep_per_target);
        cost[code] = dij.cost;
        lengths[code] = dij.length;
        if (keep_per_target) {
          // earliest prefix along the witness that attains the bottleneck
          std::vector<std::uint64_t> nodes;
          for (std::uint64_t c = (std::uint64_t)code; c != 0;) {
            nodes.push_back(c);
            c = (std::uint64_t)dij.parent[c];
          }
          std::reverse(nodes.begin(), nodes.end());
          std::uint64_t at = 0;
          for (std::uint64_t c : nodes)
            if (node_cost[code_sidx[c]] == dij.cost) { at = c; break; }
          prefixes[code] = PauliWord::from_code(n, at);
        }
      },
      threads);

  // Deterministic max-reduction; ties resolved by the letter-rank word order.
  std::int64_t best = 0;
  PauliWord best_word = PauliWord::from_code(n, 0);
  bool single_visit = true;
  int eta_star = 0;
  for (std::int64_t code = 0; code < total; ++code) {
    PauliWord w = PauliWord::from_code(n, (std::uint64_t)code);
    if (lengths[code] != w.weight()) single_visit = false;
    eta_star = std::max(eta_star, (int)lengths[code]);
    if (cost[best] < cost[code]) {
      best = code;
      best_word = w;
    } else if (cost[code] == cost[best] && w < best_word) {
      best = code;
      best_word = w;
    }
  }

  auto witness = exact_energy_cost(model, best_word, limits);
  BarrierReport rep;
  rep.barrier = cost[best];
  rep.witness_target = best_word;
  rep.witness_prefix = witness.bottleneck_prefix;
  rep.exact = true;
  rep.exhaustive = true;
  rep.single_visit = single_visit;
  rep.eta_star = eta_star;
  if (keep_per_target) {
    rep.per_target.reserve(total);
    for (std::int64_t code = 0; code < total; ++code) {
      PerTargetCost ptc;
      ptc.target = PauliWord::from_code(n, (std::uint64_t)code);
      ptc.cost = cost[code];
      ptc.path_length = lengths[code];
      ptc.bottleneck_prefix = prefixes[code];
      rep.per_target.push_back(std::move(ptc));
    }
  }
  return rep;
}

BarrierReport heuristic_barrier(const StabilizerModel& model, const PathFamily& family,
                                const TargetSelection& targets, bool keep_per_target,
                                int threads) {
  const int n = model.n();
  std::vector<PauliWord> pool;
  if (targets.all) {
    if (2 * n > 26)
      throw size_limit_error("exhaustive target enumeration is gated at N <= 13");
    const std::int64_t total = std::int64_t(1) << (2 * n);
    pool.reserve(total);
    for (std::int64_t code = 0; code < total; ++code)
      pool.push_back(PauliWord::from_code(n, (std::uint64_t)code));
  } else {
    std::mt19937_64 rng(targets.seed);
    for (std::int64_t i = 0; i < targets.sample_count; ++i) {
      PauliWord w(n);
      for (int s = 0; s < n; ++s) {
        std::uint64_t bits = rng() & 3;
        w.set_site(s, bits & 1, (bits >> 1) & 1);
      }
      pool.push_back(w);
    }
  }

  std::vector<PerTargetCost> results(pool.size());
  parallel_for(
      (std::int64_t)pool.size(),
      [&](std::int64_t i) {
        PauliPath p = family.path_for(model, pool[i]);
        PerTargetCost ptc;
        ptc.target = pool[i];
        ptc.path_length = (int)p.steps.size();
        ptc.cost = path_cost(model, p, &ptc.bottleneck_prefix);
        // single-visit bookkeeping: does the path address a site twice?
        results[i] = std::move(ptc);
      },
      threads);

  if (pool.empty()) throw input_error("no targets requested");
  BarrierReport rep;
  rep.exact = false;
  rep.exhaustive = targets.all;
  rep.single_visit = true;
  rep.barrier = results[0].cost;
  rep.witness_target = results[0].target;
  rep.witness_prefix = results[0].bottleneck_prefix;
  for (const auto& r : results) {
    rep.eta_star = std::max(rep.eta_star, r.path_length);
    // more steps than non-identity sites means some site is visited twice
    if (r.path_length != r.target.weight()) rep.single_visit = false;
    if (rep.barrier < r.cost) {
      rep.barrier = r.cost;
      rep.witness_target = r.target;
      rep.witness_prefix = r.bottleneck_prefix;
    } else if (r.cost == rep.barrier && r.target < rep.witness_target) {
      rep.witness_target = r.target;
      rep.witness_prefix = r.bottleneck_prefix;
    }
  }
  if (keep_per_target) rep.per_target = std::move(results);
  return rep;
}

GeneratorSet reduced_generator_set(const StabilizerModel& model, const PauliWord& target) {
  GeneratorSet out;
  out.n_qubits = model.n();
  const auto& gens = model.generators();
  for (std::size_t k = 0; k < gens.generators.size(); ++k) {
    if (symplectic_parity(gens.generators[k], target) == 0) {
      out.generators.push_back(gens.generators[k]);
      out.couplings.push_back(gens.couplings[k]);
    }
  }
  return out;
}

FamilyPathIndex build_family_path_index(const StabilizerModel& model,
                                        const PathFamily& family, int max_n, bool force) {
  const int n = model.n();
  if (n > max_n && !force)
    throw size_limit_error("family path index is gated at N <= " + std::to_string(max_n));
  if (2 * n > 26) throw size_limit_error("family path index needs N <= 13");
  FamilyPathIndex idx;
  idx.n = n;
  idx.w1_count = 3 * n;
  const std::int64_t total = std::int64_t(1) << (2 * n);
  idx.target_edges.resize(total);
  const auto& w1 = model.w1();
  for (std::int64_t code = 0; code < total; ++code) {
    PauliWord target = PauliWord::from_code(n, (std::uint64_t)code);
    PauliPath p = family.path_for(model, target);
    std::uint64_t prefix = 0;
    for (const auto& step : p.steps) {
      int si = -1;
      for (std::size_t k = 0; k < w1.size(); ++k)
        if (w1[k] == step) { si = (int)k; break; }
      idx.target_edges[code].push_back({prefix, si});
      idx.paths_through[idx.edge_key(prefix, si)].push_back((std::uint32_t)code);
      prefix ^= step.code();
    }
  }
  return idx;
}

int width(const StabilizerModel& model, const std::vector<int>& site_order) {
  const int n = model.n();
  std::vector<int> order = site_order;
  if (order.empty()) {
    order.resize(n);
    for (int i = 0; i < n; ++i) order[i] = i;
  }
  if ((int)order.size() != n) throw input_error("site ordering length does not match model");
  std::vector<int> pos(n, -1);
  for (int p = 0; p < n; ++p) {
    if (order[p] < 0 || order[p] >= n || pos[order[p]] != -1)
      throw input_error("site ordering is not a permutation");
    pos[order[p]] = p;
  }
  std::vector<std::pair<int, int>> span;  // [min,max] position per generator
  for (const auto& g : model.generators().generators) {
    int lo = n, hi = -1, count = 0;
    for (int s = 0; s < n; ++s) {
      if (g.letter(s) != 'I') {
        lo = std::min(lo, pos[s]);
        hi = std::max(hi, pos[s]);
        ++count;
      }
    }
    if (hi - lo + 1 != count)
      throw input_error("generator " + format_pauli(g) +
                        " has non-interval support; model is not 1-D in this ordering");
    span.push_back({lo, hi});
  }
  int wd = 0;
  for (int p = 0; p + 1 < n; ++p) {
    int c = 0;
    for (const auto& [lo, hi] : span)
      if (lo <= p && p + 1 <= hi) ++c;
    wd = std::max(wd, c);
  }
  return wd;
}

}  // namespace stabgap
