#pragma once

#include <string>

#include "qec/gf2.hpp"

namespace qec {

// A Pauli operator modulo phase on n qubits, stored as the pair of X and Z
// bit masks. Qubit i carries I/X/Z/Y according to (x_i, z_i) =
// (0,0)/(1,0)/(0,1)/(1,1).
class SymplecticVector {
 public:
  SymplecticVector() = default;
  explicit SymplecticVector(std::size_t n) : n_(n), x_(n), z_(n) {}
  SymplecticVector(BitVec x, BitVec z);

  // Build from the length-2n block vector (x-bits then z-bits).
  static SymplecticVector from_raw(const BitVec& raw);

  std::size_t num_qubits() const { return n_; }
  const BitVec& x_part() const { return x_; }
  const BitVec& z_part() const { return z_; }
  BitVec& x_part() { return x_; }
  BitVec& z_part() { return z_; }

  char letter_at(std::size_t qubit) const;  // 'I', 'X', 'Y', or 'Z'
  void set_letter(std::size_t qubit, char letter);

  bool is_identity() const { return x_.is_zero() && z_.is_zero(); }

  // Length-2n block vector (x | z).
  BitVec to_raw() const { return concat(x_, z_); }

  // dot_identity selects '.' (matrix dump style) or 'I' for identity slots.
  std::string to_string(bool dot_identity = false) const;

  SymplecticVector& operator^=(const SymplecticVector& other);
  friend SymplecticVector operator^(SymplecticVector a, const SymplecticVector& b) {
    return a ^= b;
  }
  bool operator==(const SymplecticVector& other) const {
    return x_ == other.x_ && z_ == other.z_;
  }
  bool operator!=(const SymplecticVector& other) const { return !(*this == other); }
  bool operator<(const SymplecticVector& other) const {
    return to_raw() < other.to_raw();
  }

 private:
  std::size_t n_ = 0;
  BitVec x_;
  BitVec z_;
};

// Parse a Pauli string over I/X/Y/Z with '.' accepted as identity.
SymplecticVector pauli_parse(const std::string& s);

// 0 iff the two Pauli operators commute: x(u)·z(v) + z(u)·x(v) mod 2.
bool symplectic_pairing(const SymplecticVector& u, const SymplecticVector& v);

// Number of non-identity letters; equals w(x) + w(z) - w(x AND z).
std::size_t pauli_weight(const SymplecticVector& v);

}  // namespace qec
