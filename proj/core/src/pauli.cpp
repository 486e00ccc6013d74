#include "stabgap/pauli.hpp"

namespace stabgap {

PauliWord PauliWord::single(int n, int site, char letter) {
  PauliWord w(n);
  switch (letter) {
    case 'X': w.set_site(site, true, false); break;
    case 'Y': w.set_site(site, true, true); break;
    case 'Z': w.set_site(site, false, true); break;
    default: throw input_error(std::string("invalid Pauli letter '") + letter + "'");
  }
  return w;
}

int PauliWord::weight() const {
  int c = 0;
  for (int i = 0; i < n_; ++i)
    if (x_.get(i) || z_.get(i)) ++c;
  return c;
}

char PauliWord::letter(int i) const {
  static const char tab[4] = {'I', 'X', 'Y', 'Z'};
  return tab[letter_rank(i)];
}

std::uint64_t PauliWord::code() const {
  if (n_ > 31) throw size_limit_error("word code only defined for N <= 31");
  return x_.to_u64() | (z_.to_u64() << n_);
}

PauliWord PauliWord::from_code(int n, std::uint64_t code) {
  PauliWord w(n);
  for (int i = 0; i < n; ++i)
    w.set_site(i, (code >> i) & 1, (code >> (n + i)) & 1);
  return w;
}

int symplectic_parity(const PauliWord& a, const PauliWord& b) {
  if (a.n() != b.n()) throw input_error("symplectic product of words with different N");
  return a.x_bits().parity_and(b.z_bits()) ^ a.z_bits().parity_and(b.x_bits());
}

int commutation_sign(const PauliWord& a, const PauliWord& b) {
  return symplectic_parity(a, b) ? -1 : 1;
}

PauliWord compose(const PauliWord& a, const PauliWord& b) {
  if (a.n() != b.n()) throw input_error("composition of words with different N");
  return a ^ b;
}

int weight(const PauliWord& w) { return w.weight(); }

PauliWord parse_pauli(const std::string& text) {
  if (text.empty()) throw input_error("empty Pauli string");
  PauliWord w(static_cast<int>(text.size()));
  for (std::size_t i = 0; i < text.size(); ++i) {
    switch (text[i]) {
      case 'I': break;
      case 'X': w.set_site((int)i, true, false); break;
      case 'Y': w.set_site((int)i, true, true); break;
      case 'Z': w.set_site((int)i, false, true); break;
      default:
        throw input_error("invalid Pauli letter '" + std::string(1, text[i]) +
                          "' in \"" + text + "\"");
    }
  }
  return w;
}

std::string format_pauli(const PauliWord& w) {
  std::string s(w.n(), 'I');
  for (int i = 0; i < w.n(); ++i) s[i] = w.letter(i);
  return s;
}

std::vector<PauliWord> weight_one_set(int n) {
  std::vector<PauliWord> out;
  out.reserve(3 * n);
  for (int site = 0; site < n; ++site)
    for (char c : {'X', 'Y', 'Z'})
      out.push_back(PauliWord::single(n, site, c));
  return out;
}

}  // namespace stabgap
