#include "qec/tableau.hpp"

#include <utility>

namespace qec {

namespace {

// Phase exponent (power of i) picked up when multiplying the single-qubit
// Pauli (x1,z1) onto (x2,z2), with Y represented as x=z=1. Values -1/0/+1.
int phase_exponent(bool x1, bool z1, bool x2, bool z2) {
  if (!x1 && !z1) return 0;
  if (x1 && z1) return (z2 ? 1 : 0) - (x2 ? 1 : 0);
  if (x1) return z2 ? (x2 ? 1 : -1) : 0;
  return x2 ? (z2 ? -1 : 1) : 0;
}

int phase_sum(const BitVec& x1, const BitVec& z1, const BitVec& x2, const BitVec& z2,
              std::size_t n) {
  int tot = 0;
  for (std::size_t j = 0; j < n; ++j) {
    tot += phase_exponent(x1.get(j), z1.get(j), x2.get(j), z2.get(j));
  }
  return tot;
}

std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double rand_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * (1.0 / 9007199254740992.0);
}

bool rand_bit(std::mt19937_64& rng) { return (rng() >> 63) != 0; }

}  // namespace

Tableau::Tableau(std::size_t n) : n_(n) {
  x_.assign(2 * n, BitVec(n));
  z_.assign(2 * n, BitVec(n));
  r_.assign(2 * n, false);
  for (std::size_t i = 0; i < n; ++i) {
    x_[i].set(i, true);       // destabilizer X_i
    z_[n + i].set(i, true);   // stabilizer Z_i
  }
}

Tableau Tableau::from_stabilizers(const std::vector<SignedPauli>& rows) {
  if (rows.empty()) throw Error("a state needs at least one stabilizer row");
  std::size_t n = rows[0].op.num_qubits();
  if (rows.size() != n) throw Error("a state on n qubits needs exactly n stabilizer rows");
  for (const SignedPauli& sp : rows) {
    if (sp.op.num_qubits() != n) throw Error("stabilizer rows have mixed widths");
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (symplectic_pairing(rows[i].op, rows[j].op)) {
        throw Error("stabilizer rows anticommute");
      }
    }
  }

  GF2Matrix raw(n, 2 * n);
  GF2Matrix pairing_rows(n, 2 * n);  // row j paired against d gives <S_j, d>
  for (std::size_t j = 0; j < n; ++j) {
    raw.row(j) = rows[j].op.to_raw();
    pairing_rows.row(j) = concat(rows[j].op.z_part(), rows[j].op.x_part());
  }
  if (rank(raw) != n) throw Error("stabilizer rows are dependent");

  std::vector<BitVec> destabs;
  destabs.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    BitVec target(n);
    target.set(i, true);
    auto d = solve(pairing_rows, target);
    if (!d) throw Error("destabilizer completion failed");
    // Make the new destabilizer commute with the earlier ones; adding the
    // partner stabilizer flips exactly the offending pairing.
    for (std::size_t j = 0; j < destabs.size(); ++j) {
      bool pair = d->dot(concat(slice(destabs[j], n, 2 * n), slice(destabs[j], 0, n)));
      if (pair) *d ^= raw.row(j);
    }
    destabs.push_back(std::move(*d));
  }

  Tableau t(n);
  for (std::size_t i = 0; i < n; ++i) {
    t.x_[i] = slice(destabs[i], 0, n);
    t.z_[i] = slice(destabs[i], n, 2 * n);
    t.r_[i] = false;
    t.x_[n + i] = rows[i].op.x_part();
    t.z_[n + i] = rows[i].op.z_part();
    t.r_[n + i] = rows[i].negative;
  }
  return t;
}

void Tableau::rowsum_into(std::size_t h, std::size_t i) {
  int tot = 2 * (static_cast<int>(r_[h]) + static_cast<int>(r_[i])) +
            phase_sum(x_[i], z_[i], x_[h], z_[h], n_);
  int mod = ((tot % 4) + 4) % 4;
  if (mod != 0 && mod != 2) throw Error("phase bookkeeping lost an i factor");
  r_[h] = mod == 2;
  x_[h] ^= x_[i];
  z_[h] ^= z_[i];
}

void Tableau::apply(const Gate& g) {
  for (std::size_t q : g.qubits) {
    if (q >= n_) throw Error("gate operand out of range");
  }
  switch (g.kind) {
    case GateKind::H: {
      std::size_t q = g.qubits[0];
      for (std::size_t row = 0; row < 2 * n_; ++row) {
        bool xb = x_[row].get(q);
        bool zb = z_[row].get(q);
        if (xb && zb) r_[row] = !r_[row];
        x_[row].set(q, zb);
        z_[row].set(q, xb);
      }
      break;
    }
    case GateKind::S: {
      std::size_t q = g.qubits[0];
      for (std::size_t row = 0; row < 2 * n_; ++row) {
        bool xb = x_[row].get(q);
        bool zb = z_[row].get(q);
        if (xb && zb) r_[row] = !r_[row];
        z_[row].set(q, zb != xb);
      }
      break;
    }
    case GateKind::Sdg: {
      std::size_t q = g.qubits[0];
      for (std::size_t row = 0; row < 2 * n_; ++row) {
        bool xb = x_[row].get(q);
        bool zb = z_[row].get(q);
        if (xb && !zb) r_[row] = !r_[row];
        z_[row].set(q, zb != xb);
      }
      break;
    }
    case GateKind::SqrtX:
      apply(Gate::single(GateKind::H, g.qubits[0]));
      apply(Gate::single(GateKind::Sdg, g.qubits[0]));
      apply(Gate::single(GateKind::H, g.qubits[0]));
      break;
    case GateKind::SqrtXdg:
      apply(Gate::single(GateKind::H, g.qubits[0]));
      apply(Gate::single(GateKind::S, g.qubits[0]));
      apply(Gate::single(GateKind::H, g.qubits[0]));
      break;
    case GateKind::X: {
      std::size_t q = g.qubits[0];
      for (std::size_t row = 0; row < 2 * n_; ++row) {
        if (z_[row].get(q)) r_[row] = !r_[row];
      }
      break;
    }
    case GateKind::Y: {
      std::size_t q = g.qubits[0];
      for (std::size_t row = 0; row < 2 * n_; ++row) {
        if (x_[row].get(q) != z_[row].get(q)) r_[row] = !r_[row];
      }
      break;
    }
    case GateKind::Z: {
      std::size_t q = g.qubits[0];
      for (std::size_t row = 0; row < 2 * n_; ++row) {
        if (x_[row].get(q)) r_[row] = !r_[row];
      }
      break;
    }
    case GateKind::CX: {
      std::size_t c = g.qubits[0];
      std::size_t t = g.qubits[1];
      for (std::size_t row = 0; row < 2 * n_; ++row) {
        bool xc = x_[row].get(c);
        bool zc = z_[row].get(c);
        bool xt = x_[row].get(t);
        bool zt = z_[row].get(t);
        if (xc && zt && (xt == zc)) r_[row] = !r_[row];
        x_[row].set(t, xt != xc);
        z_[row].set(c, zc != zt);
      }
      break;
    }
    case GateKind::CZ:
      apply(Gate::single(GateKind::H, g.qubits[1]));
      apply(Gate::two(GateKind::CX, g.qubits[0], g.qubits[1]));
      apply(Gate::single(GateKind::H, g.qubits[1]));
      break;
    case GateKind::CY:
      apply(Gate::single(GateKind::Sdg, g.qubits[1]));
      apply(Gate::two(GateKind::CX, g.qubits[0], g.qubits[1]));
      apply(Gate::single(GateKind::S, g.qubits[1]));
      break;
    case GateKind::Swap: {
      std::size_t a = g.qubits[0];
      std::size_t b = g.qubits[1];
      for (std::size_t row = 0; row < 2 * n_; ++row) {
        bool xa = x_[row].get(a);
        bool xb = x_[row].get(b);
        x_[row].set(a, xb);
        x_[row].set(b, xa);
        bool za = z_[row].get(a);
        bool zb = z_[row].get(b);
        z_[row].set(a, zb);
        z_[row].set(b, za);
      }
      break;
    }
    case GateKind::Perm: {
      if (g.perm.size() != n_) throw Error("relabeling has wrong length");
      for (std::size_t row = 0; row < 2 * n_; ++row) {
        BitVec nx(n_);
        BitVec nz(n_);
        for (std::size_t i = 0; i < n_; ++i) {
          nx.set(i, x_[row].get(g.perm[i]));
          nz.set(i, z_[row].get(g.perm[i]));
        }
        x_[row] = std::move(nx);
        z_[row] = std::move(nz);
      }
      break;
    }
    case GateKind::Barrier:
      break;
    case GateKind::Reset:
    case GateKind::Measure:
      throw Error("gate has no unitary semantics");
  }
}

void Tableau::apply_circuit(const CliffordCircuit& circ) {
  if (circ.num_qubits() != n_) throw Error("circuit width does not match state");
  for (const Gate& g : circ.gates()) {
    if (!gate_is_unitary(g.kind)) throw Error("circuit contains non-unitary operations");
    apply(g);
  }
}

bool Tableau::measure(std::size_t q, std::mt19937_64& rng) {
  if (q >= n_) throw Error("measurement of unallocated qubit");
  std::size_t p = 2 * n_;
  for (std::size_t i = n_; i < 2 * n_; ++i) {
    if (x_[i].get(q)) {
      p = i;
      break;
    }
  }

  if (p < 2 * n_) {
    // Random outcome: the measured operator anticommutes with stabilizer p.
    for (std::size_t i = 0; i < 2 * n_; ++i) {
      if (i != p && x_[i].get(q)) rowsum_into(i, p);
    }
    x_[p - n_] = x_[p];
    z_[p - n_] = z_[p];
    r_[p - n_] = r_[p];
    bool outcome = rand_bit(rng);
    x_[p] = BitVec(n_);
    z_[p] = BitVec(n_);
    z_[p].set(q, true);
    r_[p] = outcome;
    return outcome;
  }

  // Deterministic outcome: accumulate the stabilizer product selected by the
  // destabilizer columns, without touching the state.
  BitVec ax(n_);
  BitVec az(n_);
  int tot = 0;
  for (std::size_t i = 0; i < n_; ++i) {
    if (!x_[i].get(q)) continue;
    tot += 2 * static_cast<int>(r_[n_ + i]) + phase_sum(x_[n_ + i], z_[n_ + i], ax, az, n_);
    ax ^= x_[n_ + i];
    az ^= z_[n_ + i];
  }
  int mod = ((tot % 4) + 4) % 4;
  if (mod != 0 && mod != 2) throw Error("phase bookkeeping lost an i factor");
  return mod == 2;
}

void Tableau::reset(std::size_t q, std::mt19937_64& rng) {
  if (measure(q, rng)) apply(Gate::single(GateKind::X, q));
}

SignedPauli Tableau::stabilizer_row(std::size_t i) const {
  if (i >= n_) throw Error("stabilizer row index out of range");
  return SignedPauli{SymplecticVector(x_[n_ + i], z_[n_ + i]), r_[n_ + i]};
}

SignedPauli Tableau::destabilizer_row(std::size_t i) const {
  if (i >= n_) throw Error("destabilizer row index out of range");
  return SignedPauli{SymplecticVector(x_[i], z_[i]), r_[i]};
}

int Tableau::measure_expectation(const SignedPauli& p) const {
  if (p.op.num_qubits() != n_) throw Error("operator size does not match state");
  const BitVec& px = p.op.x_part();
  const BitVec& pz = p.op.z_part();
  for (std::size_t i = n_; i < 2 * n_; ++i) {
    if (x_[i].dot(pz) != z_[i].dot(px)) return 0;  // anticommutes: unbiased
  }

  // p commutes with the whole group, so it is a product of stabilizer rows;
  // the destabilizer pairings pick out the factors.
  BitVec ax(n_);
  BitVec az(n_);
  int tot = 0;
  for (std::size_t i = 0; i < n_; ++i) {
    if (x_[i].dot(pz) == z_[i].dot(px)) continue;
    tot += 2 * static_cast<int>(r_[n_ + i]) + phase_sum(x_[n_ + i], z_[n_ + i], ax, az, n_);
    ax ^= x_[n_ + i];
    az ^= z_[n_ + i];
  }
  if (ax != px || az != pz) throw Error("state decomposition failed");
  int mod = ((tot % 4) + 4) % 4;
  if (mod != 0 && mod != 2) throw Error("phase bookkeeping lost an i factor");
  bool negative = mod == 2;
  return negative == p.negative ? 1 : -1;
}

ShotTable tableau_run(const CliffordCircuit& circ, std::size_t shots,
                      const std::optional<NoiseModel>& noise, std::uint64_t seed) {
  std::size_t n = circ.num_qubits();
  std::size_t num_meas = 0;
  for (const Gate& g : circ.gates()) {
    if (g.kind == GateKind::Measure) ++num_meas;
  }
  std::uint64_t seed_eff = noise ? noise->seed : seed;

  ShotTable table;
  table.num_measurements = num_meas;
  table.shots.reserve(shots);

  for (std::size_t shot = 0; shot < shots; ++shot) {
    std::mt19937_64 rng(mix64(seed_eff + 0x9E3779B97F4A7C15ULL * (shot + 1)));
    Tableau tab(n);
    BitVec record(num_meas);
    std::size_t midx = 0;

    for (const Gate& g : circ.gates()) {
      switch (g.kind) {
        case GateKind::Measure: {
          bool outcome = tab.measure(g.qubits[0], rng);
          if (noise && rand_unit(rng) < noise->p_meas) outcome = !outcome;
          record.set(midx++, outcome);
          break;
        }
        case GateKind::Reset:
          tab.reset(g.qubits[0], rng);
          if (noise && rand_unit(rng) < noise->p_prep) {
            tab.apply(Gate::single(GateKind::X, g.qubits[0]));
          }
          break;
        case GateKind::Barrier:
        case GateKind::Perm:
          tab.apply(g);
          break;
        default: {
          tab.apply(g);
          if (!noise) break;
          if (g.qubits.size() == 1) {
            if (rand_unit(rng) < noise->p1) {
              static constexpr GateKind paulis[3] = {GateKind::X, GateKind::Y, GateKind::Z};
              tab.apply(Gate::single(paulis[rng() % 3], g.qubits[0]));
            }
          } else if (g.qubits.size() == 2) {
            if (rand_unit(rng) < noise->p2) {
              static constexpr GateKind paulis[4] = {GateKind::Barrier, GateKind::X,
                                                     GateKind::Y, GateKind::Z};
              std::size_t idx = 1 + rng() % 15;  // nontrivial pair on the support
              std::size_t a = idx >> 2;
              std::size_t b = idx & 3;
              if (a != 0) tab.apply(Gate::single(paulis[a], g.qubits[0]));
              if (b != 0) tab.apply(Gate::single(paulis[b], g.qubits[1]));
            }
          }
          break;
        }
      }
    }
    table.shots.push_back(std::move(record));
  }
  return table;
}

}  // namespace qec
