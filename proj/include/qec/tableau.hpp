#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "qec/clifford.hpp"
#include "qec/gf2.hpp"
#include "qec/pauli.hpp"

namespace qec {

// A Pauli operator together with a sign bit: negative=true means -P.
struct SignedPauli {
  SymplecticVector op;
  bool negative = false;

  bool operator==(const SignedPauli& other) const {
    return op == other.op && negative == other.negative;
  }
};

// Sign-tracking stabilizer state in the standard destabilizer/stabilizer
// tableau form. Row i < n is the destabilizer paired with stabilizer row i;
// signs live in a separate bit per row. Gate updates and measurements follow
// the usual g-function phase bookkeeping, so measurement statistics are exact
// including signs (global phase excluded).
class Tableau {
 public:
  explicit Tableau(std::size_t n);  // the all-zeros state: stabilizers Z_i

  // State stabilized by the given n independent, pairwise commuting signed
  // rows. Destabilizers are completed automatically.
  static Tableau from_stabilizers(const std::vector<SignedPauli>& rows);

  std::size_t num_qubits() const { return n_; }

  void apply(const Gate& g);  // unitary gates only; Barrier is a no-op
  void apply_circuit(const CliffordCircuit& circ);

  bool measure(std::size_t q, std::mt19937_64& rng);
  void reset(std::size_t q, std::mt19937_64& rng);

  SignedPauli stabilizer_row(std::size_t i) const;
  SignedPauli destabilizer_row(std::size_t i) const;

  // Expectation of a signed Pauli in the current state: +1, -1, or 0.
  int measure_expectation(const SignedPauli& p) const;

 private:
  std::size_t n_ = 0;
  // 2n rows: destabilizers first, then stabilizers. x_[r]/z_[r] hold the
  // qubit columns of row r; sign bit r_[r].
  std::vector<BitVec> x_;
  std::vector<BitVec> z_;
  std::vector<bool> r_;

  void rowsum_into(std::size_t h, std::size_t i);
};

// Depolarizing circuit noise. A uniformly random non-identity Pauli lands on
// a gate's support with the given probability; relabelings and barriers are
// noise-free. Measurement flips are classical; preparation flips follow
// resets. Defaults reflect two-qubit-dominated trap hardware rates with the
// state preparation and measurement budget split evenly.
struct NoiseModel {
  double p1 = 3.2e-5;
  double p2 = 9.2e-4;
  double p_meas = 1.35e-3;
  double p_prep = 1.35e-3;
  std::uint64_t seed = 0;
};

// One row per shot; bit j of a row is the j-th measurement in circuit order.
struct ShotTable {
  std::size_t num_measurements = 0;
  std::vector<BitVec> shots;
};

// Simulate the circuit for the given number of shots. Each shot runs on a
// private RNG stream derived from (seed, shot index), so results do not
// depend on scheduling. When a noise model is present its seed takes
// precedence over the bare seed argument.
ShotTable tableau_run(const CliffordCircuit& circ, std::size_t shots,
                      const std::optional<NoiseModel>& noise = std::nullopt,
                      std::uint64_t seed = 0);

}  // namespace qec
