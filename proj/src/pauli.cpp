#include "qec/pauli.hpp"

namespace qec {

SymplecticVector::SymplecticVector(BitVec x, BitVec z)
    : n_(x.size()), x_(std::move(x)), z_(std::move(z)) {
  if (x_.size() != z_.size()) throw Error("SymplecticVector: x/z length mismatch");
}

SymplecticVector SymplecticVector::from_raw(const BitVec& raw) {
  if (raw.size() % 2 != 0) throw Error("SymplecticVector::from_raw: odd length");
  std::size_t n = raw.size() / 2;
  return SymplecticVector(slice(raw, 0, n), slice(raw, n, 2 * n));
}

char SymplecticVector::letter_at(std::size_t qubit) const {
  bool x = x_.get(qubit);
  bool z = z_.get(qubit);
  if (x && z) return 'Y';
  if (x) return 'X';
  if (z) return 'Z';
  return 'I';
}

void SymplecticVector::set_letter(std::size_t qubit, char letter) {
  switch (letter) {
    case 'I':
    case '.':
      x_.set(qubit, false);
      z_.set(qubit, false);
      return;
    case 'X':
      x_.set(qubit, true);
      z_.set(qubit, false);
      return;
    case 'Z':
      x_.set(qubit, false);
      z_.set(qubit, true);
      return;
    case 'Y':
      x_.set(qubit, true);
      z_.set(qubit, true);
      return;
    default:
      throw Error("invalid Pauli letter '" + std::string(1, letter) + "'");
  }
}

std::string SymplecticVector::to_string(bool dot_identity) const {
  std::string s;
  s.reserve(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    char c = letter_at(i);
    s += (c == 'I' && dot_identity) ? '.' : c;
  }
  return s;
}

SymplecticVector& SymplecticVector::operator^=(const SymplecticVector& other) {
  if (n_ != other.n_) throw Error("SymplecticVector xor: size mismatch");
  x_ ^= other.x_;
  z_ ^= other.z_;
  return *this;
}

SymplecticVector pauli_parse(const std::string& s) {
  SymplecticVector v(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) v.set_letter(i, s[i]);
  return v;
}

bool symplectic_pairing(const SymplecticVector& u, const SymplecticVector& v) {
  if (u.num_qubits() != v.num_qubits()) throw Error("symplectic_pairing: size mismatch");
  return u.x_part().dot(v.z_part()) ^ u.z_part().dot(v.x_part());
}

std::size_t pauli_weight(const SymplecticVector& v) {
  return v.x_part().popcount() + v.z_part().popcount() -
         v.x_part().and_with(v.z_part()).popcount();
}

}  // namespace qec
