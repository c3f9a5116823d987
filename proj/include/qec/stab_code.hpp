#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qec/gf2.hpp"
#include "qec/pauli.hpp"

namespace qec {

// A stabilizer code on n qubits: an independent set of m pairwise-commuting
// Pauli rows stored as an m x 2n check matrix in (x-bits | z-bits) block
// form, together with derived data (k, a symplectic logical basis, CSS flag).
class StabilizerCode {
 public:
  std::size_t num_qubits() const { return n_; }
  std::size_t num_checks() const { return checks_.rows(); }
  std::size_t num_logicals() const { return k_; }

  const GF2Matrix& checks() const { return checks_; }
  SymplecticVector check_row(std::size_t i) const {
    return SymplecticVector::from_raw(checks_.row(i));
  }

  bool css() const { return css_; }

  // Logical operators ordered X_0..X_{k-1}, Z_0..Z_{k-1} with the standard
  // pairing matrix (X_i anticommutes with Z_i only).
  const std::vector<SymplecticVector>& logical_basis() const { return logicals_; }
  const SymplecticVector& logical_x(std::size_t i) const { return logicals_.at(i); }
  const SymplecticVector& logical_z(std::size_t i) const { return logicals_.at(k_ + i); }

  // v is a product of stabilizer generators.
  bool in_stabilizer(const SymplecticVector& v) const;
  // v commutes with every stabilizer generator.
  bool in_normalizer(const SymplecticVector& v) const;

  // Copy of this code with a caller-chosen logical basis (same ordering and
  // pairing conventions; validated).
  StabilizerCode with_logical_basis(const std::vector<SymplecticVector>& basis) const;

  bool operator==(const StabilizerCode& other) const {
    return n_ == other.n_ && checks_ == other.checks_;
  }

 private:
  friend StabilizerCode code_from_checks(const GF2Matrix& checks);
  std::size_t n_ = 0;
  std::size_t k_ = 0;
  GF2Matrix checks_;
  std::vector<SymplecticVector> logicals_;
  bool css_ = false;
  RowReduceResult checks_rref_;
};

// Build a code from Pauli strings. Rows must pairwise commute; dependent
// rows are dropped (first maximal independent subset kept, in input order).
StabilizerCode code_from_paulis(const std::vector<std::string>& rows);

// Build a code from an m x 2n block check matrix, same validation rules.
StabilizerCode code_from_checks(const GF2Matrix& checks);

// Exact minimum Pauli weight over the normalizer minus the stabilizer,
// searching weights 1..max_weight in order. nullopt means the search
// exhausted max_weight without a hit (in particular always for k = 0).
std::optional<std::size_t> distance(const StabilizerCode& c, std::size_t max_weight);

// Same contract as distance, computed meet-in-the-middle: every Pauli of
// weight <= ceil(max_weight/2) is bucketed by syndrome, and equal-syndrome
// pairs yield normalizer candidates. Needs n <= 64 and at most 256 checks.
// Fast when the check count is large enough to keep the buckets small;
// codes with very few checks should use distance instead.
std::optional<std::size_t> distance_meet(const StabilizerCode& c, std::size_t max_weight);

struct CssSplit {
  bool css = false;
  GF2Matrix x_rows;  // basis rows supported on X bits only (z-part zero)
  GF2Matrix z_rows;  // basis rows supported on Z bits only (x-part zero)
};

// True iff the stabilizer group has a generating set of pure-X and pure-Z
// rows; if so the split basis is returned.
CssSplit is_css(const StabilizerCode& c);

// Deterministic symplectic logical basis for the code (also stored on the
// code itself at construction).
std::vector<SymplecticVector> logical_basis(const StabilizerCode& c);

// Search for a qubit relabeling taking a's stabilizer group to b's:
// returns p with (relabel qubit i -> p[i]) mapping rowspan(a) onto
// rowspan(b). Backtracking with per-qubit letter-count signatures;
// supported for n <= 12 only.
std::optional<std::vector<std::size_t>> code_isomorphic(const StabilizerCode& a,
                                                        const StabilizerCode& b);

// Apply a qubit relabeling (qubit i -> perm[i]) to a whole code.
StabilizerCode permuted_code(const StabilizerCode& c, const std::vector<std::size_t>& perm);
SymplecticVector permuted_vector(const SymplecticVector& v,
                                 const std::vector<std::size_t>& perm);

// Random isotropic full-rank code, deterministic per seed.
StabilizerCode random_code(std::size_t n, std::size_t m, std::uint64_t seed);

// Code file format: "n m" header line, then m Pauli strings; '#' starts a
// comment line; blank lines ignored.
std::string code_to_file_text(const StabilizerCode& c);
StabilizerCode code_from_file_text(const std::string& text);

}  // namespace qec
