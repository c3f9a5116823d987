#include "qec/clifford.hpp"

#include <algorithm>
#include <sstream>

#include "qec/double.hpp"

namespace qec {

namespace {

// Just enough unsigned big-integer arithmetic for the group-order formula:
// little-endian base 2^32 limbs.
struct BigUint {
  std::vector<std::uint32_t> limbs{0};

  static BigUint from_u64(std::uint64_t v) {
    BigUint out;
    out.limbs = {static_cast<std::uint32_t>(v), static_cast<std::uint32_t>(v >> 32)};
    out.trim();
    return out;
  }

  void trim() {
    while (limbs.size() > 1 && limbs.back() == 0) limbs.pop_back();
  }

  BigUint shifted_left(std::size_t bits) const {
    std::size_t words = bits / 32;
    std::size_t rem = bits % 32;
    BigUint out;
    out.limbs.assign(limbs.size() + words + 1, 0);
    for (std::size_t i = 0; i < limbs.size(); ++i) {
      std::uint64_t v = static_cast<std::uint64_t>(limbs[i]) << rem;
      out.limbs[i + words] |= static_cast<std::uint32_t>(v);
      out.limbs[i + words + 1] |= static_cast<std::uint32_t>(v >> 32);
    }
    out.trim();
    return out;
  }

  // this -= other; requires this >= other.
  void subtract(const BigUint& other) {
    std::int64_t borrow = 0;
    for (std::size_t i = 0; i < limbs.size(); ++i) {
      std::int64_t o = i < other.limbs.size() ? other.limbs[i] : 0;
      std::int64_t v = static_cast<std::int64_t>(limbs[i]) - o - borrow;
      borrow = 0;
      if (v < 0) {
        v += std::int64_t{1} << 32;
        borrow = 1;
      }
      limbs[i] = static_cast<std::uint32_t>(v);
    }
    if (borrow != 0) throw Error("big integer underflow");
    trim();
  }

  // Divide in place by a small divisor, returning the remainder.
  std::uint32_t div_small(std::uint32_t divisor) {
    std::uint64_t rem = 0;
    for (std::size_t i = limbs.size(); i-- > 0;) {
      std::uint64_t cur = (rem << 32) | limbs[i];
      limbs[i] = static_cast<std::uint32_t>(cur / divisor);
      rem = cur % divisor;
    }
    trim();
    return static_cast<std::uint32_t>(rem);
  }

  bool is_zero() const { return limbs.size() == 1 && limbs[0] == 0; }

  std::string to_string() const {
    if (is_zero()) return "0";
    BigUint work = *this;
    std::vector<std::uint32_t> chunks;
    while (!work.is_zero()) chunks.push_back(work.div_small(1000000000u));
    std::ostringstream out;
    out << chunks.back();
    for (std::size_t i = chunks.size() - 1; i-- > 0;) {
      out.width(9);
      out.fill('0');
      out << chunks[i];
    }
    return out.str();
  }
};

void require_qubit(std::size_t q, std::size_t n) {
  if (q >= n) throw Error("gate operand out of range");
}

}  // namespace

bool gate_is_unitary(GateKind kind) {
  return kind != GateKind::Reset && kind != GateKind::Measure;
}

std::size_t gate_arity(GateKind kind) {
  switch (kind) {
    case GateKind::CX:
    case GateKind::CY:
    case GateKind::CZ:
    case GateKind::Swap:
      return 2;
    case GateKind::Perm:
    case GateKind::Barrier:
      return 0;
    default:
      return 1;
  }
}

Gate Gate::single(GateKind kind, std::size_t q) {
  if (gate_arity(kind) != 1) throw Error("gate expects one operand");
  Gate g;
  g.kind = kind;
  g.qubits = {q};
  return g;
}

Gate Gate::two(GateKind kind, std::size_t a, std::size_t b) {
  if (gate_arity(kind) != 2) throw Error("gate expects two operands");
  if (a == b) throw Error("two-qubit gate needs distinct operands");
  Gate g;
  g.kind = kind;
  g.qubits = {a, b};
  return g;
}

Gate Gate::permutation(std::vector<std::size_t> perm) {
  Gate g;
  g.kind = GateKind::Perm;
  g.perm = std::move(perm);
  return g;
}

Gate Gate::reset(std::size_t q) {
  Gate g;
  g.kind = GateKind::Reset;
  g.qubits = {q};
  return g;
}

Gate Gate::measure(std::size_t q) {
  Gate g;
  g.kind = GateKind::Measure;
  g.qubits = {q};
  return g;
}

Gate Gate::barrier() { return Gate{}; }

void CliffordCircuit::append(Gate gate) {
  if (gate.qubits.size() != gate_arity(gate.kind)) throw Error("wrong operand count");
  if (gate.qubits.size() == 2 && gate.qubits[0] == gate.qubits[1]) {
    throw Error("two-qubit gate needs distinct operands");
  }
  for (std::size_t q : gate.qubits) require_qubit(q, n_);
  if (gate.kind == GateKind::Perm) {
    if (gate.perm.size() != n_) throw Error("relabeling has wrong length");
    std::vector<bool> seen(n_, false);
    for (std::size_t v : gate.perm) {
      if (v >= n_ || seen[v]) throw Error("relabeling is not a permutation");
      seen[v] = true;
    }
  }
  gates_.push_back(std::move(gate));
}

CliffordCircuit& CliffordCircuit::extend(const CliffordCircuit& other) {
  if (other.num_qubits() != n_) throw Error("circuit widths differ");
  for (const Gate& g : other.gates()) gates_.push_back(g);
  return *this;
}

SymplecticClifford::SymplecticClifford(GF2Matrix mat, SymplecticVector offset)
    : n_(offset.num_qubits()), mat_(std::move(mat)), offset_(std::move(offset)) {
  if (mat_.rows() != 2 * n_ || mat_.cols() != 2 * n_) {
    throw Error("operator matrix must be 2n x 2n");
  }
  if (!is_symplectic(mat_)) throw Error("operator matrix is not symplectic");
}

SymplecticClifford SymplecticClifford::identity(std::size_t n) {
  return SymplecticClifford(GF2Matrix::identity(2 * n), SymplecticVector(n));
}

SymplecticVector SymplecticClifford::apply(const SymplecticVector& v) const {
  if (v.num_qubits() != n_) throw Error("operand size mismatch");
  return SymplecticVector::from_raw(mat_.mul_vec(v.to_raw()));
}

SymplecticClifford SymplecticClifford::inverse() const {
  GF2Matrix inv = qec::inverse(mat_);
  BitVec p = inv.mul_vec(offset_.to_raw());
  return SymplecticClifford(inv, SymplecticVector::from_raw(p));
}

SymplecticClifford operator*(const SymplecticClifford& second,
                             const SymplecticClifford& first) {
  if (second.n_ != first.n_) throw Error("operator size mismatch");
  GF2Matrix mat = second.mat_.mul(first.mat_);
  SymplecticVector offset =
      second.offset_ ^ SymplecticVector::from_raw(second.mat_.mul_vec(first.offset_.to_raw()));
  return SymplecticClifford(std::move(mat), std::move(offset));
}

GF2Matrix omega_matrix(std::size_t n) {
  GF2Matrix w(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    w.set(i, n + i, true);
    w.set(n + i, i, true);
  }
  return w;
}

bool is_symplectic(const GF2Matrix& m) {
  if (m.rows() != m.cols() || m.rows() % 2 != 0) return false;
  std::size_t n = m.rows() / 2;
  GF2Matrix w = omega_matrix(n);
  return m.transposed().mul(w.mul(m)) == w;
}

SymplecticClifford gate_symplectic(const Gate& gate, std::size_t n) {
  for (std::size_t q : gate.qubits) require_qubit(q, n);
  if (!gate_is_unitary(gate.kind)) throw Error("gate has no unitary semantics");

  GF2Matrix m = GF2Matrix::identity(2 * n);
  SymplecticVector offset(n);
  auto xr = [&](std::size_t q) { return q; };      // row carrying the x output
  auto zr = [&](std::size_t q) { return n + q; };  // row carrying the z output

  switch (gate.kind) {
    case GateKind::H: {
      std::size_t q = gate.qubits[0];
      std::swap(m.row(xr(q)), m.row(zr(q)));
      break;
    }
    case GateKind::S:
    case GateKind::Sdg: {
      std::size_t q = gate.qubits[0];
      m.row(zr(q)) ^= m.row(xr(q));
      break;
    }
    case GateKind::SqrtX:
    case GateKind::SqrtXdg: {
      std::size_t q = gate.qubits[0];
      m.row(xr(q)) ^= m.row(zr(q));
      break;
    }
    case GateKind::X:
      offset.set_letter(gate.qubits[0], 'X');
      break;
    case GateKind::Y:
      offset.set_letter(gate.qubits[0], 'Y');
      break;
    case GateKind::Z:
      offset.set_letter(gate.qubits[0], 'Z');
      break;
    case GateKind::CX: {
      std::size_t c = gate.qubits[0];
      std::size_t t = gate.qubits[1];
      m.row(xr(t)).set(xr(c), true);
      m.row(zr(c)).set(zr(t), true);
      break;
    }
    case GateKind::CY: {
      std::size_t c = gate.qubits[0];
      std::size_t t = gate.qubits[1];
      m.row(zr(c)).set(xr(t), true);
      m.row(zr(c)).set(zr(t), true);
      m.row(xr(t)).set(xr(c), true);
      m.row(zr(t)).set(xr(c), true);
      break;
    }
    case GateKind::CZ: {
      std::size_t a = gate.qubits[0];
      std::size_t b = gate.qubits[1];
      m.row(zr(a)).set(xr(b), true);
      m.row(zr(b)).set(xr(a), true);
      break;
    }
    case GateKind::Swap: {
      std::size_t a = gate.qubits[0];
      std::size_t b = gate.qubits[1];
      std::swap(m.row(xr(a)), m.row(xr(b)));
      std::swap(m.row(zr(a)), m.row(zr(b)));
      break;
    }
    case GateKind::Perm: {
      if (gate.perm.size() != n) throw Error("relabeling has wrong length");
      GF2Matrix p(2 * n, 2 * n);
      for (std::size_t i = 0; i < n; ++i) {
        p.set(xr(i), xr(gate.perm[i]), true);
        p.set(zr(i), zr(gate.perm[i]), true);
      }
      m = p;
      break;
    }
    case GateKind::Barrier:
      break;
    case GateKind::Reset:
    case GateKind::Measure:
      throw Error("gate has no unitary semantics");
  }
  return SymplecticClifford(std::move(m), std::move(offset));
}

SymplecticClifford circuit_symplectic(const CliffordCircuit& circ) {
  SymplecticClifford acc = SymplecticClifford::identity(circ.num_qubits());
  for (const Gate& g : circ.gates()) {
    if (g.kind == GateKind::Barrier) continue;
    if (!gate_is_unitary(g.kind)) throw Error("circuit contains non-unitary operations");
    acc = gate_symplectic(g, circ.num_qubits()) * acc;
  }
  return acc;
}

SymplecticClifford lift_clifford(const SymplecticClifford& m) {
  std::size_t n = m.num_qubits();
  GF2Matrix w = omega_matrix(n);
  GF2Matrix z_block = w.mul(m.mat().mul(w));  // equals the inverse-transpose

  GF2Matrix lifted(4 * n, 4 * n);
  for (std::size_t r = 0; r < 2 * n; ++r) {
    for (std::size_t c = 0; c < 2 * n; ++c) {
      if (m.mat().get(r, c)) lifted.set(r, c, true);
      if (z_block.get(r, c)) lifted.set(2 * n + r, 2 * n + c, true);
    }
  }
  SymplecticVector offset =
      doubled_x_image(m.pauli_offset()) ^ doubled_z_image(m.pauli_offset());
  return SymplecticClifford(std::move(lifted), std::move(offset));
}

CliffordCircuit synthesize_symplectic(const SymplecticClifford& m) {
  if (!m.pauli_offset().is_identity()) {
    throw Error("synthesis expects a zero Pauli offset");
  }
  std::size_t n = m.num_qubits();
  GF2Matrix work = m.mat();
  std::vector<Gate> steps;  // left-multipliers in discovery order

  // Row operations realizing "apply gate after the accumulated operator".
  auto apply_h = [&](std::size_t q) {
    std::swap(work.row(q), work.row(n + q));
    steps.push_back(Gate::single(GateKind::H, q));
  };
  auto apply_s = [&](std::size_t q) {
    work.row(n + q) ^= work.row(q);
    steps.push_back(Gate::single(GateKind::S, q));
  };
  auto apply_cx = [&](std::size_t c, std::size_t t) {
    work.row(t) ^= work.row(c);
    work.row(n + c) ^= work.row(n + t);
    steps.push_back(Gate::two(GateKind::CX, c, t));
  };
  auto apply_swap = [&](std::size_t a, std::size_t b) {
    std::swap(work.row(a), work.row(b));
    std::swap(work.row(n + a), work.row(n + b));
    steps.push_back(Gate::two(GateKind::Swap, a, b));
  };
  auto letter = [&](std::size_t q, std::size_t col) {
    return std::make_pair(work.get(q, col), work.get(n + q, col));
  };

  for (std::size_t i = 0; i < n; ++i) {
    // Normalize the image of X_i to the unit X_i column.
    if (letter(i, i) == std::make_pair(false, false)) {
      std::size_t j = i + 1;
      while (j < n && letter(j, i) == std::make_pair(false, false)) ++j;
      if (j == n) throw Error("synthesis failed: singular column");
      auto lj = letter(j, i);
      if (!lj.first) apply_h(j);        // pure Z becomes X
      else if (lj.second) apply_s(j);   // Y becomes X
      apply_swap(i, j);
    }
    {
      auto li = letter(i, i);
      if (!li.first) apply_h(i);
      else if (li.second) apply_s(i);
    }
    for (std::size_t j = i + 1; j < n; ++j) {
      auto lj = letter(j, i);
      if (lj == std::make_pair(false, false)) continue;
      if (!lj.first) apply_h(j);
      else if (lj.second) apply_s(j);
      apply_cx(i, j);
    }

    // Normalize the image of Z_i to the unit Z_i column, keeping X_i fixed.
    if (!work.get(n + i, n + i)) throw Error("synthesis failed: pairing violated");
    if (work.get(i, n + i)) {  // Y at the pivot: conjugate to Z through HSH
      apply_h(i);
      apply_s(i);
      apply_h(i);
    }
    for (std::size_t j = i + 1; j < n; ++j) {
      auto lj = letter(j, n + i);
      if (lj == std::make_pair(false, false)) continue;
      if (lj.first && lj.second) apply_s(j);  // Y -> X
      if (work.get(j, n + i)) apply_h(j);     // X -> Z
      apply_cx(j, i);
    }
  }
  if (work != GF2Matrix::identity(2 * n)) throw Error("synthesis failed to converge");

  CliffordCircuit out(n);
  for (std::size_t t = steps.size(); t-- > 0;) out.append(steps[t]);
  return out;
}

CliffordCircuit lift_to_circuit(const SymplecticClifford& m) {
  std::size_t n = m.num_qubits();
  CliffordCircuit base = synthesize_symplectic(m);
  CliffordCircuit lifted(2 * n);
  for (const Gate& g : base.gates()) {
    switch (g.kind) {
      case GateKind::H:
        lifted.swap_qubits(g.qubits[0], g.qubits[0] + n);
        break;
      case GateKind::S:
        lifted.cx(g.qubits[0], g.qubits[0] + n);
        break;
      case GateKind::CX:
        lifted.cx(g.qubits[0], g.qubits[1]);
        lifted.cx(g.qubits[1] + n, g.qubits[0] + n);
        break;
      case GateKind::Swap:
        lifted.swap_qubits(g.qubits[0], g.qubits[1]);
        lifted.swap_qubits(g.qubits[0] + n, g.qubits[1] + n);
        break;
      default:
        throw Error("synthesis produced an unexpected gate");
    }
  }
  if (circuit_symplectic(lifted) != lift_clifford(m)) {
    throw Error("lifted circuit failed verification");
  }
  return lifted;
}

namespace {

// Class of a normalizer element in logical-basis coordinates.
SymplecticVector logical_coordinates(const StabilizerCode& c, const SymplecticVector& w) {
  std::size_t k = c.num_logicals();
  SymplecticVector coords(k);
  for (std::size_t b = 0; b < k; ++b) {
    if (symplectic_pairing(w, c.logical_z(b))) coords.x_part().set(b, true);
    if (symplectic_pairing(w, c.logical_x(b))) coords.z_part().set(b, true);
  }
  return coords;
}

}  // namespace

std::optional<SymplecticClifford> logical_action(const StabilizerCode& c,
                                                 const SymplecticClifford& op) {
  if (op.num_qubits() != c.num_qubits()) throw Error("operator size does not match code");
  for (std::size_t r = 0; r < c.num_checks(); ++r) {
    if (!c.in_stabilizer(op.apply(c.check_row(r)))) return std::nullopt;
  }
  if (!c.in_normalizer(op.pauli_offset())) return std::nullopt;

  std::size_t k = c.num_logicals();
  GF2Matrix l(2 * k, 2 * k);
  for (std::size_t a = 0; a < k; ++a) {
    SymplecticVector img_x = logical_coordinates(c, op.apply(c.logical_x(a)));
    SymplecticVector img_z = logical_coordinates(c, op.apply(c.logical_z(a)));
    for (std::size_t b = 0; b < k; ++b) {
      l.set(b, a, img_x.x_part().get(b));
      l.set(k + b, a, img_x.z_part().get(b));
      l.set(b, k + a, img_z.x_part().get(b));
      l.set(k + b, k + a, img_z.z_part().get(b));
    }
  }
  return SymplecticClifford(std::move(l), logical_coordinates(c, op.pauli_offset()));
}

std::optional<SymplecticClifford> logical_action(const StabilizerCode& c,
                                                 const CliffordCircuit& circ) {
  return logical_action(c, circuit_symplectic(circ));
}

std::string clifford_order(std::size_t n) {
  BigUint v = BigUint::from_u64(8);
  for (std::size_t j = 1; j <= n; ++j) {
    // v *= 2 (4^j - 1) 4^j, via shifts so large j cannot overflow.
    BigUint t = v.shifted_left(2 * j);
    t.subtract(v);                     // v (4^j - 1)
    v = t.shifted_left(2 * j + 1);     // * 2 * 4^j
  }
  return v.to_string();
}

}  // namespace qec
