#include "stabgap/commands.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

namespace stabgap {

std::string fmt12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::vector<double> parse_beta_grid(const std::string& text) {
  std::vector<double> betas;
  if (text.find(':') != std::string::npos) {
    double start, stop, step;
    char c1, c2;
    std::stringstream ss(text);
    if (!(ss >> start >> c1 >> stop >> c2 >> step) || c1 != ':' || c2 != ':' || step <= 0)
      throw input_error("malformed beta range '" + text + "' (expected start:stop:step)");
    for (double b = start; b <= stop + 1e-12; b += step) betas.push_back(b);
  } else {
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (item.empty()) continue;
      try {
        betas.push_back(std::stod(item));
      } catch (const std::exception&) {
        throw input_error("malformed beta value '" + item + "'");
      }
    }
  }
  if (betas.empty()) throw input_error("empty beta grid '" + text + "'");
  for (double b : betas)
    if (b < 0) throw input_error("negative beta in grid");
  return betas;
}

namespace {

PathFamily family_from_config(const ModelFile& mf, const RunConfig& cfg) {
  if (cfg.family == "fixed") return PathFamily::fixed_order(cfg.site_order);
  if (cfg.family == "css") {
    auto lay = mf.layout();
    if (!lay) throw input_error("css family needs a builtin toric model");
    return PathFamily::css_string(*lay);
  }
  if (cfg.family == "explicit") {
    if (cfg.paths_file.empty()) throw input_error("explicit family needs --paths FILE");
    std::ifstream in(cfg.paths_file);
    if (!in) throw input_error("cannot open paths file '" + cfg.paths_file + "'");
    std::map<PauliWord, PauliPath> paths;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      std::size_t hash = line.find('#');
      if (hash != std::string::npos) line = line.substr(0, hash);
      std::stringstream ss(line);
      std::string head;
      if (!(ss >> head)) continue;
      if (head.back() != ':')
        throw input_error(cfg.paths_file + ":" + std::to_string(lineno) +
                          ": expected 'TARGET: STEP STEP ...'");
      PauliPath p;
      p.target = parse_pauli(head.substr(0, head.size() - 1));
      std::string step;
      while (ss >> step) p.steps.push_back(parse_pauli(step));
      paths[p.target] = std::move(p);
    }
    return PathFamily::explicit_paths(std::move(paths));
  }
  throw input_error("unknown family '" + cfg.family + "' (expected fixed, css or explicit)");
}

TargetSelection targets_from_config(const RunConfig& cfg) {
  if (cfg.targets == "all") return TargetSelection::all_targets();
  if (cfg.targets.rfind("sample:", 0) == 0) {
    std::int64_t count = std::stoll(cfg.targets.substr(7));
    if (count <= 0) throw input_error("sample count must be positive");
    return TargetSelection::sample(count, cfg.seed);
  }
  throw input_error("unknown target selection '" + cfg.targets + "'");
}

int guard(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const size_limit_error& e) {
    err << "error: " << e.what() << "\n";
    return exit_size_limit;
  } catch (const input_error& e) {
    err << "error: " << e.what() << "\n";
    return exit_input_error;
  }
}

std::string model_display_name(const ModelFile& mf, const std::string& path) {
  if (!mf.name.empty()) return mf.name;
  return std::filesystem::path(path).filename().string();
}

void echo_config_header(std::ostream& os, const ModelFile& mf, const std::string& path,
                        const RunConfig& cfg, const std::vector<double>& betas) {
  os << "# stabgap sweep\n";
  os << "# model = " << model_display_name(mf, path) << "\n";
  os << "# bath = " << cfg.bath << "\n";
  os << "# family = " << cfg.family << "\n";
  os << "# targets = " << cfg.targets << "\n";
  os << "# seed = " << cfg.seed << "\n";
  os << "# mixing_epsilon = " << fmt12(cfg.mixing_epsilon) << "\n";
  os << "# betas =";
  for (double b : betas) os << " " << fmt12(b);
  os << "\n";
}

std::string opt12(const std::optional<double>& v) { return v ? fmt12(*v) : std::string(); }

void write_bound_rows_csv(std::ostream& os, const std::vector<BoundReport>& rows) {
  os << "beta,lambda_exact,gen_bound,special_bound,epsilon_bar,exact_flag,eta_star,"
        "h_star,delta_max,c_beta,t_mix_bound\n";
  for (const auto& r : rows) {
    os << fmt12(r.beta) << "," << opt12(r.lambda_exact) << "," << fmt12(r.gen_bound_value)
       << "," << opt12(r.special_bound_value) << "," << fmt12(r.epsilon_bar) << ","
       << (r.epsilon_exact ? "1" : "0") << "," << r.eta_star << "," << fmt12(r.h_star_value)
       << "," << fmt12(r.delta_max) << "," << opt12(r.c_beta_value) << ","
       << opt12(r.mixing_time) << "\n";
  }
}

VerifyOptions verify_options_from_config(const RunConfig& cfg) {
  VerifyOptions opt;
  opt.tolerance = cfg.tolerance;
  opt.mixing_epsilon = cfg.mixing_epsilon;
  opt.threads = cfg.threads;
  opt.barrier_limits.force = cfg.force;
  opt.gap_limits.force = cfg.force;
  opt.path_sum_limits.force = false;  // C(beta) stays gated; absent fields instead
  return opt;
}

}  // namespace

int cmd_check(const std::string& model_path, std::ostream& out, std::ostream& err) {
  return guard(err, [&]() -> int {
    ModelFile mf = ModelFile::parse_file(model_path);
    StabilizerModel model = StabilizerModel::build(mf.to_generators());
    out << "model " << model_display_name(mf, model_path) << "\n";
    out << "N = " << model.n() << "\n";
    out << "M = " << model.m() << "\n";
    out << "rank = " << model.rank() << "\n";
    out << "EG = " << (model.parity_check_annihilates_generators() ? "0" : "nonzero!") << "\n";
    out << "valid_syndromes = " << model.num_valid_syndromes() << "\n";
    out << "delta_max = " << fmt12(model.max_bohr().to_double()) << "\n";
    return exit_ok;
  });
}

int cmd_barrier(const std::string& model_path, const RunConfig& cfg, std::ostream& out,
                std::ostream& err) {
  return guard(err, [&]() -> int {
    ModelFile mf = ModelFile::parse_file(model_path);
    StabilizerModel model = StabilizerModel::build(mf.to_generators());
    BarrierLimits limits;
    limits.force = cfg.force;
    if (cfg.force) err << "warning: size gates overridden by --force\n";

    BarrierReport rep;
    if (cfg.exact) {
      rep = generalized_barrier_exact(model, limits, cfg.per_target, cfg.threads);
    } else {
      PathFamily family = family_from_config(mf, cfg);
      rep = heuristic_barrier(model, family, targets_from_config(cfg), cfg.per_target,
                              cfg.threads);
    }
    out << "barrier = " << fmt12(rep.barrier.to_double())
        << (rep.exact ? " (exact)" : " (upper bound)") << "\n";
    out << "exhaustive = " << (rep.exhaustive ? "true" : "false") << "\n";
    out << "witness_target = " << format_pauli(rep.witness_target) << "\n";
    out << "witness_prefix = " << format_pauli(rep.witness_prefix) << "\n";
    out << "eta_star = " << rep.eta_star << "\n";
    out << "single_visit = " << (rep.single_visit ? "true" : "false") << "\n";
    if (cfg.per_target) {
      std::ostringstream csv;
      csv << "target,cost,bottleneck_prefix\n";
      for (const auto& t : rep.per_target)
        csv << format_pauli(t.target) << "," << fmt12(t.cost.to_double()) << ","
            << format_pauli(t.bottleneck_prefix) << "\n";
      if (cfg.out_path.empty()) {
        out << csv.str();
      } else {
        std::ofstream f(cfg.out_path, std::ios::binary);
        if (!f) throw input_error("cannot write '" + cfg.out_path + "'");
        f << csv.str();
      }
    }
    return exit_ok;
  });
}

int cmd_gap(const std::string& model_path, const RunConfig& cfg, std::ostream& out,
            std::ostream& err) {
  return guard(err, [&]() -> int {
    ModelFile mf = ModelFile::parse_file(model_path);
    StabilizerModel model = StabilizerModel::build(mf.to_generators());
    Bath bath = make_bath(parse_bath_kind(cfg.bath), cfg.betas.at(0));
    GapMethod method = cfg.gap_method == "full" ? GapMethod::full : GapMethod::coset;
    GapLimits limits;
    limits.force = cfg.force;
    if (cfg.force) err << "warning: size gates overridden by --force\n";
    GapResult gap = spectral_gap(model, bath, method, limits, cfg.threads);
    out << "lambda = " << fmt12(gap.gap) << "\n";
    out << "achieving_coset = " << format_pauli(gap.achieving_rep) << "\n";
    out << "method = " << (method == GapMethod::coset ? "coset" : "full") << "\n";
    out << "residual = " << fmt12(gap.residual) << "\n";

    if (!cfg.dump_blocks_dir.empty()) {
      DaviesContext ctx = DaviesContext::make(model, bath);
      CosetDecomposition cosets = coset_representatives(model);
      std::filesystem::create_directories(cfg.dump_blocks_dir);
      for (const auto& rep : cosets.representatives) {
        auto dump = [&](const char* tag, const Eigen::MatrixXd& m) {
          std::ofstream f(std::filesystem::path(cfg.dump_blocks_dir) /
                          (format_pauli(rep) + "." + tag + ".txt"));
          for (Eigen::Index i = 0; i < m.rows(); ++i) {
            for (Eigen::Index j = 0; j < m.cols(); ++j)
              f << (j ? " " : "") << fmt12(m(i, j));
            f << "\n";
          }
        };
        dump("dirichlet", dirichlet_block(ctx, rep));
        dump("variance", variance_block(ctx, rep));
      }
    }
    return exit_ok;
  });
}

int cmd_bound(const std::string& model_path, const RunConfig& cfg, std::ostream& out,
              std::ostream& err) {
  return guard(err, [&]() -> int {
    ModelFile mf = ModelFile::parse_file(model_path);
    StabilizerModel model = StabilizerModel::build(mf.to_generators());
    PathFamily family = family_from_config(mf, cfg);
    VerifyResult res = verify(model, parse_bath_kind(cfg.bath), family, cfg.betas,
                              verify_options_from_config(cfg));
    for (const auto& r : res.rows) {
      out << "beta = " << fmt12(r.beta) << "\n";
      out << "  epsilon_bar = " << fmt12(r.epsilon_bar)
          << (r.epsilon_exact ? " (exact)" : " (upper bound)") << "\n";
      out << "  eta_star = " << r.eta_star << "\n";
      out << "  h_star = " << fmt12(r.h_star_value) << "\n";
      out << "  delta_max = " << fmt12(r.delta_max) << "\n";
      out << "  gen_bound = " << fmt12(r.gen_bound_value) << "\n";
      if (r.special_bound_value)
        out << "  special_bound = " << fmt12(*r.special_bound_value) << "\n";
      if (r.c_beta_value) {
        out << "  c_beta = " << fmt12(*r.c_beta_value) << "\n";
        out << "  c_beta_bound = " << fmt12(*r.c_beta_derived_bound) << "\n";
      }
      if (r.beta == 0.0)
        out << "  beta_zero_floor = " << fmt12(r.beta_zero_floor_value) << "\n";
      if (r.one_d_bounds) {
        out << "  chain_bound_obc = " << fmt12(r.one_d_bounds->first) << "\n";
        out << "  chain_bound_pbc = " << fmt12(r.one_d_bounds->second) << "\n";
      }
      if (r.lambda_exact) out << "  lambda_exact = " << fmt12(*r.lambda_exact) << "\n";
      if (r.mixing_time) out << "  t_mix_bound = " << fmt12(*r.mixing_time) << "\n";
    }
    return exit_ok;
  });
}

int cmd_verify(const std::string& model_path, const RunConfig& cfg, std::ostream& out,
               std::ostream& err) {
  return guard(err, [&]() -> int {
    ModelFile mf = ModelFile::parse_file(model_path);
    StabilizerModel model = StabilizerModel::build(mf.to_generators());
    PathFamily family = family_from_config(mf, cfg);
    VerifyResult res = verify(model, parse_bath_kind(cfg.bath), family, cfg.betas,
                              verify_options_from_config(cfg));
    for (const auto& r : res.rows) {
      out << (r.pass ? "pass" : "FAIL") << " beta=" << fmt12(r.beta)
          << " lambda=" << opt12(r.lambda_exact) << " gen_bound=" << fmt12(r.gen_bound_value);
      if (r.special_bound_value) out << " special_bound=" << fmt12(*r.special_bound_value);
      out << "\n";
    }
    out << (res.pass ? "verify: all rows pass" : "verify: FAILED") << "\n";
    return res.pass ? exit_ok : exit_verify_failed;
  });
}

std::string sweep_csv(const ModelFile& mf, const RunConfig& cfg) {
  StabilizerModel model = StabilizerModel::build(mf.to_generators());
  PathFamily family = family_from_config(mf, cfg);
  VerifyResult res = verify(model, parse_bath_kind(cfg.bath), family, cfg.betas,
                            verify_options_from_config(cfg));
  std::ostringstream os;
  echo_config_header(os, mf, mf.name, cfg, cfg.betas);
  write_bound_rows_csv(os, res.rows);
  return os.str();
}

int cmd_sweep(const std::string& model_path, const RunConfig& cfg, std::ostream& out,
              std::ostream& err) {
  return guard(err, [&]() -> int {
    ModelFile mf = ModelFile::parse_file(model_path);
    std::string body = sweep_csv(mf, cfg);
    if (cfg.out_path.empty()) {
      out << body;
    } else {
      std::ofstream f(cfg.out_path, std::ios::binary);
      if (!f) throw input_error("cannot write '" + cfg.out_path + "'");
      f << body;
    }
    return exit_ok;
  });
}

int cmd_mixing(const std::string& model_path, const RunConfig& cfg, std::ostream& out,
               std::ostream& err) {
  return guard(err, [&]() -> int {
    ModelFile mf = ModelFile::parse_file(model_path);
    StabilizerModel model = StabilizerModel::build(mf.to_generators());
    double beta = cfg.betas.at(0);
    Bath bath = make_bath(parse_bath_kind(cfg.bath), beta);
    GapLimits limits;
    limits.force = cfg.force;
    GapResult gap = spectral_gap(model, bath, GapMethod::coset, limits, cfg.threads);
    double t = mixing_time_bound(gibbs(model, beta), gap.gap, cfg.mixing_epsilon);
    out << "lambda = " << fmt12(gap.gap) << "\n";
    out << "epsilon = " << fmt12(cfg.mixing_epsilon) << "\n";
    out << "t_mix_bound = " << fmt12(t) << "\n";
    return exit_ok;
  });
}

}  // namespace stabgap
