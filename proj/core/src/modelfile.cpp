#include "stabgap/modelfile.hpp"

#include <fstream>
#include <sstream>

namespace stabgap {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::string unquote(const std::string& s) {
  if (s.size() >= 2 && ((s.front() == '"' && s.back() == '"') ||
                        (s.front() == '\'' && s.back() == '\'')))
    return s.substr(1, s.size() - 2);
  return s;
}

std::vector<std::string> parse_list(const std::string& value, const std::string& where) {
  if (value.size() < 2 || value.front() != '[' || value.back() != ']')
    throw input_error(where + ": expected a bracketed list, got '" + value + "'");
  std::vector<std::string> items;
  std::string inner = value.substr(1, value.size() - 2);
  std::stringstream ss(inner);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::string t = unquote(trim(item));
    if (!t.empty()) items.push_back(t);
  }
  return items;
}

int parse_int(const std::string& value, const std::string& where) {
  try {
    std::size_t pos = 0;
    int v = std::stoi(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw input_error(where + ": expected an integer, got '" + value + "'");
  }
}

bool parse_bool(const std::string& value, const std::string& where) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  throw input_error(where + ": expected true/false, got '" + value + "'");
}

}  // namespace

ModelFile ModelFile::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open model file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_string(buf.str(), path);
}

ModelFile ModelFile::parse_string(const std::string& text, const std::string& origin) {
  ModelFile mf;
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  bool saw_explicit = false, saw_builtin = false;
  while (std::getline(ss, line)) {
    ++lineno;
    std::string where = origin + ":" + std::to_string(lineno);
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw input_error(where + ": expected 'key = value'");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw input_error(where + ": expected 'key = value'");

    if (key == "name") {
      mf.name = unquote(value);
    } else if (key == "n_qubits") {
      mf.n_qubits = parse_int(value, where);
      saw_explicit = true;
    } else if (key == "generators") {
      mf.generators = parse_list(value, where);
      saw_explicit = true;
    } else if (key == "couplings") {
      mf.couplings = parse_list(value, where);
      saw_explicit = true;
    } else if (key == "builtin") {
      mf.builtin = unquote(value);
      saw_builtin = true;
    } else if (key == "n") {
      mf.n = parse_int(value, where);
    } else if (key == "lx") {
      mf.lx = parse_int(value, where);
    } else if (key == "ly") {
      mf.ly = parse_int(value, where);
    } else if (key == "coupling") {
      mf.coupling = unquote(value);
    } else if (key == "periodic") {
      mf.periodic = parse_bool(value, where);
    } else {
      throw input_error(where + ": unknown key '" + key + "'");
    }
  }
  if (saw_explicit && saw_builtin)
    throw input_error(origin + ": model file mixes explicit generators with a builtin");
  if (!saw_explicit && !saw_builtin)
    throw input_error(origin + ": model file needs generators or a builtin");
  if (saw_explicit) {
    if (mf.generators.empty()) throw input_error(origin + ": empty generator list");
    if (mf.couplings.size() != mf.generators.size())
      throw input_error(origin + ": " + std::to_string(mf.generators.size()) +
                        " generators but " + std::to_string(mf.couplings.size()) +
                        " couplings");
  }
  return mf;
}

GeneratorSet ModelFile::to_generators() const {
  if (builtin.empty()) {
    GeneratorSet g;
    g.n_qubits = n_qubits ? *n_qubits : (int)generators.front().size();
    for (const auto& s : generators) {
      PauliWord w = parse_pauli(s);
      if (n_qubits && w.n() != *n_qubits)
        throw input_error("generator '" + s + "' has length " + std::to_string(w.n()) +
                          ", n_qubits says " + std::to_string(*n_qubits));
      g.generators.push_back(w);
    }
    for (const auto& c : couplings) g.couplings.push_back(Rational::parse_decimal(c));
    return g;
  }
  Rational j = Rational::parse_decimal(coupling);
  if (builtin == "ising") return ising_chain(n, j, periodic);
  if (builtin == "cluster") return cluster_chain(n, j);
  if (builtin == "toric") return toric_code(lx, ly, j);
  throw input_error("unknown builtin '" + builtin + "' (expected ising, cluster or toric)");
}

std::optional<ToricLayout> ModelFile::layout() const {
  if (builtin == "toric") return toric_layout(lx, ly);
  return std::nullopt;
}

}  // namespace stabgap
