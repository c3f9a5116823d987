#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qec/gf2.hpp"
#include "qec/pauli.hpp"
#include "qec/stab_code.hpp"

namespace qec {

enum class GateKind {
  H,
  S,
  Sdg,
  SqrtX,
  SqrtXdg,
  X,
  Y,
  Z,
  CX,
  CY,
  CZ,
  Swap,
  Perm,
  Reset,
  Measure,
  Barrier,
};

bool gate_is_unitary(GateKind kind);
std::size_t gate_arity(GateKind kind);  // operand count; Perm/Barrier report 0

// One circuit operation. Unitary gates carry their qubit operands; Perm
// carries a whole-register relabeling instead (new qubit i is old qubit
// perm[i]); Reset and Measure act on one qubit; Barrier is a no-op marker.
struct Gate {
  GateKind kind = GateKind::Barrier;
  std::vector<std::size_t> qubits;
  std::vector<std::size_t> perm;

  static Gate single(GateKind kind, std::size_t q);
  static Gate two(GateKind kind, std::size_t a, std::size_t b);
  static Gate permutation(std::vector<std::size_t> perm);
  static Gate reset(std::size_t q);
  static Gate measure(std::size_t q);
  static Gate barrier();
};

// An ordered gate list on a fixed-width qubit register.
class CliffordCircuit {
 public:
  CliffordCircuit() = default;
  explicit CliffordCircuit(std::size_t n) : n_(n) {}

  std::size_t num_qubits() const { return n_; }
  const std::vector<Gate>& gates() const { return gates_; }
  std::size_t size() const { return gates_.size(); }

  void append(Gate gate);  // validates operands against the register width

  CliffordCircuit& h(std::size_t q) { return add1(GateKind::H, q); }
  CliffordCircuit& s(std::size_t q) { return add1(GateKind::S, q); }
  CliffordCircuit& sdg(std::size_t q) { return add1(GateKind::Sdg, q); }
  CliffordCircuit& sqrt_x(std::size_t q) { return add1(GateKind::SqrtX, q); }
  CliffordCircuit& sqrt_xdg(std::size_t q) { return add1(GateKind::SqrtXdg, q); }
  CliffordCircuit& x(std::size_t q) { return add1(GateKind::X, q); }
  CliffordCircuit& y(std::size_t q) { return add1(GateKind::Y, q); }
  CliffordCircuit& z(std::size_t q) { return add1(GateKind::Z, q); }
  CliffordCircuit& cx(std::size_t c, std::size_t t) { return add2(GateKind::CX, c, t); }
  CliffordCircuit& cy(std::size_t c, std::size_t t) { return add2(GateKind::CY, c, t); }
  CliffordCircuit& cz(std::size_t a, std::size_t b) { return add2(GateKind::CZ, a, b); }
  CliffordCircuit& swap_qubits(std::size_t a, std::size_t b) {
    return add2(GateKind::Swap, a, b);
  }
  CliffordCircuit& perm(std::vector<std::size_t> p) {
    append(Gate::permutation(std::move(p)));
    return *this;
  }
  CliffordCircuit& reset(std::size_t q) {
    append(Gate::reset(q));
    return *this;
  }
  CliffordCircuit& measure(std::size_t q) {
    append(Gate::measure(q));
    return *this;
  }
  CliffordCircuit& barrier() {
    append(Gate::barrier());
    return *this;
  }

  // Concatenate another circuit of the same width.
  CliffordCircuit& extend(const CliffordCircuit& other);

 private:
  CliffordCircuit& add1(GateKind kind, std::size_t q) {
    append(Gate::single(kind, q));
    return *this;
  }
  CliffordCircuit& add2(GateKind kind, std::size_t a, std::size_t b) {
    append(Gate::two(kind, a, b));
    return *this;
  }
  std::size_t n_ = 0;
  std::vector<Gate> gates_;
};

// A Clifford operator modulo phase: a symplectic matrix acting on Pauli
// column vectors (x | z), together with a Pauli offset. The pair (M, p)
// stands for the Pauli p applied after the canonical operator of M, so
// composition is (M2, p2) * (M1, p1) = (M2 M1, p2 + M2 p1). The offset of a
// non-Pauli gate word is not recoverable from this quotient (S*S composes
// to the identity element here); sign-exact questions belong to Tableau.
class SymplecticClifford {
 public:
  SymplecticClifford() = default;
  SymplecticClifford(GF2Matrix mat, SymplecticVector offset);

  static SymplecticClifford identity(std::size_t n);

  std::size_t num_qubits() const { return n_; }
  const GF2Matrix& mat() const { return mat_; }
  const SymplecticVector& pauli_offset() const { return offset_; }

  // Conjugation image of a Pauli, mod phase (the offset cannot move it).
  SymplecticVector apply(const SymplecticVector& v) const;

  SymplecticClifford inverse() const;

  friend SymplecticClifford operator*(const SymplecticClifford& second,
                                      const SymplecticClifford& first);
  bool operator==(const SymplecticClifford& other) const {
    return mat_ == other.mat_ && offset_ == other.offset_;
  }
  bool operator!=(const SymplecticClifford& other) const { return !(*this == other); }

 private:
  std::size_t n_ = 0;
  GF2Matrix mat_;
  SymplecticVector offset_;
};

// The pairing matrix ((0 I) (I 0)) on 2n coordinates.
GF2Matrix omega_matrix(std::size_t n);

bool is_symplectic(const GF2Matrix& m);

// Exact symplectic semantics of one unitary gate on an n-qubit register.
// Reset and Measure have none and are rejected.
SymplecticClifford gate_symplectic(const Gate& gate, std::size_t n);

// Composition of all gates in order. Barriers are skipped; any Reset or
// Measure is rejected.
SymplecticClifford circuit_symplectic(const CliffordCircuit& circ);

// The doubling homomorphism on operators: block action M on the x half and
// (M^-1)^T on the z half, matching the code doubling under the fiber
// convention {i, i+n}. Pauli offsets map to their X-type plus Z-type
// doubled images.
SymplecticClifford lift_clifford(const SymplecticClifford& m);

// Write a symplectic operator (zero offset) as a gate word over
// {H, S, CX, SWAP} by column reduction; the empty word for the identity.
CliffordCircuit synthesize_symplectic(const SymplecticClifford& m);

// Phase-free circuit over {CX, SWAP} on 2n qubits realizing lift_clifford(m)
// for an offset-free m; verified internally before returning.
CliffordCircuit lift_to_circuit(const SymplecticClifford& m);

// If op maps the stabilizer subspace of c onto itself and its Pauli offset
// lies in the normalizer, the induced operator on the logical quotient, in
// logical-basis coordinates (X_0..X_{k-1}, Z_0..Z_{k-1}); otherwise nullopt.
std::optional<SymplecticClifford> logical_action(const StabilizerCode& c,
                                                 const SymplecticClifford& op);
std::optional<SymplecticClifford> logical_action(const StabilizerCode& c,
                                                 const CliffordCircuit& circ);

// |Cliff(n)| including phases: 8 * prod_{j=1..n} 2(4^j - 1)4^j, as a
// decimal string (the numbers outgrow 64 bits from n = 5).
std::string clifford_order(std::size_t n);

}  // namespace qec
