#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "stabgap/errors.hpp"

namespace stabgap {

/// Packed bit vector over GF(2).
class BitVec {
 public:
  BitVec() : n_(0) {}
  explicit BitVec(int n) : n_(n), w_((n + 63) / 64, 0) {}

  int size() const { return n_; }
  bool get(int i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
  void set(int i, bool v) {
    std::uint64_t m = std::uint64_t(1) << (i & 63);
    if (v) w_[i >> 6] |= m; else w_[i >> 6] &= ~m;
  }
  void flip(int i) { w_[i >> 6] ^= std::uint64_t(1) << (i & 63); }

  bool any() const {
    for (auto w : w_) if (w) return true;
    return false;
  }
  int popcount() const {
    int c = 0;
    for (auto w : w_) c += __builtin_popcountll(w);
    return c;
  }
  /// Parity of the AND with another vector of the same length.
  int parity_and(const BitVec& o) const {
    std::uint64_t acc = 0;
    for (std::size_t k = 0; k < w_.size(); ++k) acc ^= w_[k] & o.w_[k];
    return __builtin_popcountll(acc) & 1;
  }

  BitVec& operator^=(const BitVec& o) {
    for (std::size_t k = 0; k < w_.size(); ++k) w_[k] ^= o.w_[k];
    return *this;
  }
  friend BitVec operator^(BitVec a, const BitVec& b) { return a ^= b; }
  friend bool operator==(const BitVec& a, const BitVec& b) {
    return a.n_ == b.n_ && a.w_ == b.w_;
  }
  friend bool operator!=(const BitVec& a, const BitVec& b) { return !(a == b); }
  friend bool operator<(const BitVec& a, const BitVec& b) {
    for (int i = 0; i < a.n_; ++i) {
      bool x = a.get(i), y = b.get(i);
      if (x != y) return y;
    }
    return false;
  }

  std::uint64_t to_u64() const { return w_.empty() ? 0 : w_[0]; }

 private:
  int n_;
  std::vector<std::uint64_t> w_;
};

/// A point of Z_2^{2N}: the (x|z) bit pair per site labeling a Pauli operator
/// modulo phase. The all-zero word is the identity; composition is XOR.
class PauliWord {
 public:
  PauliWord() : n_(0) {}
  explicit PauliWord(int n) : n_(n), x_(n), z_(n) {}
  PauliWord(int n, const BitVec& x, const BitVec& z) : n_(n), x_(x), z_(z) {}

  static PauliWord identity(int n) { return PauliWord(n); }
  /// Weight-one word from a letter in {X, Y, Z} at the given site.
  static PauliWord single(int n, int site, char letter);

  int n() const { return n_; }
  const BitVec& x_bits() const { return x_; }
  const BitVec& z_bits() const { return z_; }
  bool x_bit(int i) const { return x_.get(i); }
  bool z_bit(int i) const { return z_.get(i); }
  void set_site(int i, bool xb, bool zb) { x_.set(i, xb); z_.set(i, zb); }

  bool is_identity() const { return !x_.any() && !z_.any(); }
  int weight() const;
  char letter(int i) const;
  /// Per-site rank with I < X < Y < Z; drives all deterministic orderings.
  int letter_rank(int i) const {
    bool xb = x_.get(i), zb = z_.get(i);
    if (!xb && !zb) return 0;
    if (xb && !zb) return 1;
    if (xb && zb) return 2;
    return 3;
  }

  PauliWord& operator^=(const PauliWord& o) {
    x_ ^= o.x_;
    z_ ^= o.z_;
    return *this;
  }
  friend PauliWord operator^(PauliWord a, const PauliWord& b) { return a ^= b; }
  friend bool operator==(const PauliWord& a, const PauliWord& b) {
    return a.n_ == b.n_ && a.x_ == b.x_ && a.z_ == b.z_;
  }
  friend bool operator!=(const PauliWord& a, const PauliWord& b) { return !(a == b); }
  friend bool operator<(const PauliWord& a, const PauliWord& b) {
    for (int i = 0; i < a.n_; ++i) {
      int ra = a.letter_rank(i), rb = b.letter_rank(i);
      if (ra != rb) return ra < rb;
    }
    return false;
  }

  /// Packs the word into 2N bits (x in the low N, z in the high N); n <= 31.
  std::uint64_t code() const;
  static PauliWord from_code(int n, std::uint64_t code);

 private:
  int n_;
  BitVec x_, z_;
};

/// Sp(a, b) mod 2: (<a_x, b_z> + <a_z, b_x>) mod 2. Symmetric and bilinear.
int symplectic_parity(const PauliWord& a, const PauliWord& b);

/// theta_{a,b} = (-1)^{Sp(a,b)}: +1 when the operators commute, -1 otherwise.
int commutation_sign(const PauliWord& a, const PauliWord& b);

/// XOR of both halves; the phase-free product.
PauliWord compose(const PauliWord& a, const PauliWord& b);

/// Number of sites with a non-identity letter.
int weight(const PauliWord& w);

/// Letter-string over {I,X,Y,Z}, the one textual Pauli representation.
PauliWord parse_pauli(const std::string& text);
std::string format_pauli(const PauliWord& w);

/// The 3N weight-one words, site-major, X_i then Y_i then Z_i.
std::vector<PauliWord> weight_one_set(int n);

}  // namespace stabgap
