#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qec/gf2.hpp"
#include "qec/pauli.hpp"
#include "qec/stab_code.hpp"

namespace qec {

// A qubit permutation exchanging the X and Z codeword spaces of a CSS code.
// The interesting case is fixed-point-free and involutory, where the orbits
// {i, perm[i]} play the role of fibers of a double.
struct ZXDuality {
  std::size_t n = 0;               // qubit count of the code it acts on
  std::vector<std::size_t> perm;   // qubit i -> perm[i]

  bool involutory() const;
  bool fixed_point_free() const;

  // 1-based cycle notation, fixed points omitted: "(1 5)(2 6)(3 7)(4 8)".
  std::string to_cycles() const;
  static ZXDuality from_cycles(const std::string& text, std::size_t n);

  bool operator==(const ZXDuality& other) const {
    return n == other.n && perm == other.perm;
  }
};

// A fault on a base code in block column form (x and z masks, length n).
struct BlockFault {
  BitVec f_x;
  BitVec f_z;
};

// The doubling map on check matrices: each row (h_x | h_z) contributes the
// pure-X row (h_x h_z | 0 0) and the pure-Z row (0 0 | h_z h_x). Doubled
// qubits i and i+n form the fiber over base qubit i.
GF2Matrix double_check_matrix(const GF2Matrix& h);

// The doubled code [[2n, 2k]] of a code [[n, k]], CSS by construction, with
// the logical frame induced from the base frame: X'_a and Z'_{k+a} embed the
// base X_a on the X and Z sides respectively, and X'_{k+a}, Z'_a embed Z_a.
StabilizerCode double_code(const StabilizerCode& c);

// The two Pauli embeddings behind the doubled frame: the X-type image with
// x-part (u_x, u_z), and the Z-type image with z-part (u_z, u_x).
SymplecticVector doubled_x_image(const SymplecticVector& u);
SymplecticVector doubled_z_image(const SymplecticVector& u);

// True iff tau.perm maps the X codeword space of c onto the Z space and
// vice versa (c must be CSS).
bool is_zx_duality(const StabilizerCode& c, const ZXDuality& tau);

// All ZX-dualities of a CSS code, in lexicographic order on the permutation
// word. With the flag set, only fixed-point-free involutions are returned.
// Backtracking search, supported for n <= 14.
std::vector<ZXDuality> find_zx_dualities(const StabilizerCode& c,
                                         bool fixed_point_free_involutory);

// Inverse of doubling along a fixed-point-free involutory duality: returns
// a base code on n qubits whose double matches c after relabeling tau's
// orbits to the fibers {i, i+n} (orbit representatives taken min-first).
StabilizerCode unwrap(const StabilizerCode& c, const ZXDuality& tau);

// Concatenation with the [[4,2,2]] code along a duality: each tau-orbit
// feeds the two logical qubits of one [[4,2,2]] block (block j occupies
// qubits 4j..4j+3). Stabilizers are the per-block XXXX/ZZZZ plus the rows
// of c pushed through the block logical dictionary.
StabilizerCode concat_422(const StabilizerCode& c, const ZXDuality& tau);

// Check-row syndrome of a base fault: H_x f_z + H_z f_x.
BitVec base_syndrome(const StabilizerCode& c, const BlockFault& f);

struct SyndromeSplit {
  BitVec s_x;  // X-type check outcomes
  BitVec s_z;  // Z-type check outcomes
};

// Syndrome of a fault on a doubled code, split into the X-row half
// (H_x H_z) f'_z and the Z-row half (H_z H_x) f'_x. dc must have the
// doubled layout: first half pure-X rows, second half pure-Z.
SyndromeSplit doubled_syndrome_split(const StabilizerCode& dc,
                                     const SymplecticVector& fault);

// Every row with its X and Z masks exchanged (the transversal-Hadamard
// image of the group).
StabilizerCode xz_swapped_code(const StabilizerCode& c);

// Block-diagonal union of two codes on disjoint qubits (a first).
StabilizerCode direct_sum(const StabilizerCode& a, const StabilizerCode& b);

// Predicate: the double of a CSS code is one copy of the code next to one
// XZ-swapped copy. Returns a check row of one side missing from the other
// as a counterexample, or nullopt when the decomposition holds.
std::optional<SymplecticVector> css_double_decomposition_violation(
    const StabilizerCode& css_code);

// Conjugation action of CZ applied across every fiber {i, i+n} on a Pauli
// over 2n qubits.
SymplecticVector fiber_cz_image(const SymplecticVector& w);

// Predicate: fiber-transversal CZ preserves the stabilizer group of dc.
// Returns an offending image vector, or nullopt when preserved. Signs are
// outside this representation; the sign-level statement is exercised by the
// tableau engine tests.
std::optional<SymplecticVector> fiber_cz_violation(const StabilizerCode& dc);

}  // namespace qec
