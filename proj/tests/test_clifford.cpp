#include <random>
#include <vector>

#include "doctest.h"
#include "qec/clifford.hpp"
#include "qec/double.hpp"
#include "qec/stab_code.hpp"

using namespace qec;

namespace {

StabilizerCode code_412() {
  return code_from_paulis({"XYZI", "IXYZ", "ZIXY"});
}

StabilizerCode code_412_frame() {
  // Frame with the plaquette-cycle logical Hadamard pinned below.
  return code_412().with_logical_basis({pauli_parse("ZXII"), pauli_parse("IZXI")});
}

StabilizerCode code_513() {
  return code_from_paulis({"XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"});
}

SymplecticClifford sym1(GateKind kind) {
  return gate_symplectic(Gate::single(kind, 0), 1);
}

SymplecticClifford sym2(GateKind kind, std::size_t a, std::size_t b, std::size_t n = 2) {
  return gate_symplectic(Gate::two(kind, a, b), n);
}

// Random unitary gate word; Pauli gates included only on request so callers
// can force a zero offset.
CliffordCircuit random_word(std::size_t n, std::size_t length, std::mt19937_64& rng,
                            bool with_paulis) {
  std::vector<GateKind> one = {GateKind::H, GateKind::S, GateKind::Sdg, GateKind::SqrtX,
                               GateKind::SqrtXdg};
  if (with_paulis) {
    one.push_back(GateKind::X);
    one.push_back(GateKind::Y);
    one.push_back(GateKind::Z);
  }
  std::vector<GateKind> two = {GateKind::CX, GateKind::CY, GateKind::CZ, GateKind::Swap};
  CliffordCircuit circ(n);
  std::uniform_int_distribution<std::size_t> pick_q(0, n - 1);
  for (std::size_t i = 0; i < length; ++i) {
    if (n >= 2 && rng() % 3 == 0) {
      std::size_t a = pick_q(rng);
      std::size_t b = pick_q(rng);
      while (b == a) b = pick_q(rng);
      circ.append(Gate::two(two[rng() % two.size()], a, b));
    } else {
      circ.append(Gate::single(one[rng() % one.size()], pick_q(rng)));
    }
  }
  return circ;
}

SymplecticClifford random_operator(std::size_t n, std::mt19937_64& rng, bool with_paulis) {
  return circuit_symplectic(random_word(n, 16, rng, with_paulis));
}

// The map v -> v + <v,g> g, which is symplectic for any g and fixes every
// vector orthogonal to g. Used as an independent oracle for logical_action.
SymplecticClifford transvection(const SymplecticVector& g) {
  std::size_t n = g.num_qubits();
  BitVec graw = g.to_raw();
  BitVec wg = omega_matrix(n).mul_vec(graw);
  GF2Matrix t(2 * n, 2 * n);
  for (std::size_t r = 0; r < 2 * n; ++r) {
    for (std::size_t c = 0; c < 2 * n; ++c) {
      t.set(r, c, (r == c) != (graw.get(r) && wg.get(c)));
    }
  }
  return SymplecticClifford(std::move(t), SymplecticVector(n));
}

// Coordinates of a normalizer element in the code's logical basis.
SymplecticVector logical_coords(const StabilizerCode& c, const SymplecticVector& w) {
  SymplecticVector out(c.num_logicals());
  for (std::size_t b = 0; b < c.num_logicals(); ++b) {
    if (symplectic_pairing(w, c.logical_z(b))) out.x_part().set(b, true);
    if (symplectic_pairing(w, c.logical_x(b))) out.z_part().set(b, true);
  }
  return out;
}

// A random element of the normalizer: stabilizer part plus logical part.
SymplecticVector random_normalizer_element(const StabilizerCode& c, std::mt19937_64& rng) {
  SymplecticVector g(c.num_qubits());
  for (std::size_t r = 0; r < c.num_checks(); ++r) {
    if (rng() % 2) g ^= c.check_row(r);
  }
  for (std::size_t b = 0; b < c.num_logicals(); ++b) {
    if (rng() % 2) g ^= c.logical_x(b);
    if (rng() % 2) g ^= c.logical_z(b);
  }
  if (g.is_identity()) g ^= c.logical_x(0);
  return g;
}

}  // namespace

TEST_CASE("single-qubit gate tables match the generator matrices") {
  SymplecticClifford h = sym1(GateKind::H);
  CHECK(h.mat() == GF2Matrix::from_string("01\n10"));
  CHECK(h.pauli_offset().is_identity());

  SymplecticClifford s = sym1(GateKind::S);
  CHECK(s.mat() == GF2Matrix::from_string("10\n11"));
  CHECK(sym1(GateKind::Sdg) == s);  // equal modulo phase

  SymplecticClifford v = sym1(GateKind::SqrtX);
  CHECK(v.mat() == GF2Matrix::from_string("11\n01"));
  CHECK(sym1(GateKind::SqrtXdg) == v);
  CHECK(v == h * s * h);

  // Conjugation sanity on single letters.
  CHECK(h.apply(pauli_parse("X")) == pauli_parse("Z"));
  CHECK(h.apply(pauli_parse("Z")) == pauli_parse("X"));
  CHECK(h.apply(pauli_parse("Y")) == pauli_parse("Y"));
  CHECK(s.apply(pauli_parse("X")) == pauli_parse("Y"));
  CHECK(s.apply(pauli_parse("Z")) == pauli_parse("Z"));
  CHECK(v.apply(pauli_parse("Z")) == pauli_parse("Y"));
  CHECK(v.apply(pauli_parse("X")) == pauli_parse("X"));

  // Pauli gates are pure offsets.
  CHECK(sym1(GateKind::X).mat() == GF2Matrix::identity(2));
  CHECK(sym1(GateKind::X).pauli_offset() == pauli_parse("X"));
  CHECK(sym1(GateKind::Y).pauli_offset() == pauli_parse("Y"));
  CHECK(sym1(GateKind::Z).pauli_offset() == pauli_parse("Z"));

  // S S S S collapses to the identity element.
  CliffordCircuit four_s(1);
  four_s.s(0).s(0).s(0).s(0);
  CHECK(circuit_symplectic(four_s) == SymplecticClifford::identity(1));
}

TEST_CASE("the braid-generator identity S H S = H S H holds") {
  SymplecticClifford h = sym1(GateKind::H);
  SymplecticClifford s = sym1(GateKind::S);
  CHECK(s * h * s == h * s * h);
  CHECK((s * h) * (s * h) * (s * h) == SymplecticClifford::identity(1));
}

TEST_CASE("entangling gate conjugation images are pinned") {
  SymplecticClifford cx = sym2(GateKind::CX, 0, 1);
  CHECK(cx.apply(pauli_parse("XI")) == pauli_parse("XX"));
  CHECK(cx.apply(pauli_parse("IZ")) == pauli_parse("ZZ"));
  CHECK(cx.apply(pauli_parse("ZI")) == pauli_parse("ZI"));
  CHECK(cx.apply(pauli_parse("IX")) == pauli_parse("IX"));

  SymplecticClifford cz = sym2(GateKind::CZ, 0, 1);
  CHECK(cz.apply(pauli_parse("XI")) == pauli_parse("XZ"));
  CHECK(cz.apply(pauli_parse("IX")) == pauli_parse("ZX"));
  CHECK(cz.apply(pauli_parse("ZI")) == pauli_parse("ZI"));
  CHECK(cz == sym2(GateKind::CZ, 1, 0));  // symmetric

  SymplecticClifford cy = sym2(GateKind::CY, 0, 1);
  CHECK(cy.apply(pauli_parse("XI")) == pauli_parse("XY"));
  CHECK(cy.apply(pauli_parse("IX")) == pauli_parse("ZX"));
  CHECK(cy.apply(pauli_parse("IZ")) == pauli_parse("ZZ"));
  CHECK(cy.apply(pauli_parse("IY")) == pauli_parse("IY"));
  CHECK(cy.apply(pauli_parse("ZI")) == pauli_parse("ZI"));

  SymplecticClifford sw = sym2(GateKind::Swap, 0, 1);
  CHECK(sw.apply(pauli_parse("XZ")) == pauli_parse("ZX"));
  CHECK(sw.apply(pauli_parse("YI")) == pauli_parse("IY"));

  // CY built from its standard decomposition: S_t CX S_t^-1 conjugates the
  // target action from X to Y.
  CliffordCircuit decomp(2);
  decomp.sdg(1).cx(0, 1).s(1);
  CHECK(circuit_symplectic(decomp).mat() == cy.mat());
}

TEST_CASE("relabeling gathers letters to their new positions") {
  SymplecticClifford p = gate_symplectic(Gate::permutation({1, 2, 0}), 3);
  CHECK(p.apply(pauli_parse("IXI")) == pauli_parse("XII"));
  CHECK(p.apply(pauli_parse("ZII")) == pauli_parse("IIZ"));
  CHECK(p.apply(pauli_parse("XYZ")) == pauli_parse("YZX"));

  // Two relabelings compose by index chasing: r[i] = p[q[i]].
  SymplecticClifford q = gate_symplectic(Gate::permutation({2, 0, 1}), 3);
  SymplecticClifford both = q * p;
  CHECK(both == SymplecticClifford::identity(3));
}

TEST_CASE("composition is affine and inverses cancel") {
  std::mt19937_64 rng(2026);
  for (int trial = 0; trial < 20; ++trial) {
    std::size_t n = 1 + trial % 5;
    SymplecticClifford a = random_operator(n, rng, true);
    SymplecticClifford b = random_operator(n, rng, true);
    CHECK(is_symplectic(a.mat()));
    CHECK(a * a.inverse() == SymplecticClifford::identity(n));
    CHECK(a.inverse() * a == SymplecticClifford::identity(n));

    // Concatenating circuits multiplies the associated operators.
    CliffordCircuit w1 = random_word(n, 9, rng, true);
    CliffordCircuit w2 = random_word(n, 9, rng, true);
    CliffordCircuit joined(n);
    joined.extend(w1).extend(w2);
    CHECK(circuit_symplectic(joined) == circuit_symplectic(w2) * circuit_symplectic(w1));

    // Conjugation respects composition.
    SymplecticVector v = random_normalizer_element(code_from_checks(GF2Matrix(0, 2 * n)), rng);
    CHECK((a * b).apply(v) == a.apply(b.apply(v)));
  }
}

TEST_CASE("circuits validate their operands") {
  CliffordCircuit c(3);
  CHECK_THROWS_AS(c.h(3), Error);
  CHECK_THROWS_AS(c.cx(1, 1), Error);
  CHECK_THROWS_AS(c.perm({0, 1}), Error);
  CHECK_THROWS_AS(c.perm({0, 1, 1}), Error);
  CHECK_THROWS_AS(c.perm({0, 1, 3}), Error);
  c.perm({2, 1, 0});
  CHECK(c.size() == 1);

  CliffordCircuit other(2);
  CHECK_THROWS_AS(c.extend(other), Error);

  Gate bad;
  bad.kind = GateKind::CX;
  bad.qubits = {0};
  CHECK_THROWS_AS(c.append(bad), Error);

  // Non-unitary operations have no symplectic semantics.
  CliffordCircuit m(1);
  m.measure(0);
  CHECK_THROWS_AS(circuit_symplectic(m), Error);
  CHECK_THROWS_AS(gate_symplectic(Gate::reset(0), 1), Error);

  // Barriers are inert.
  CliffordCircuit b(2);
  b.barrier().h(0).barrier();
  CHECK(circuit_symplectic(b) == circuit_symplectic(CliffordCircuit(2).h(0)));
}

TEST_CASE("lifting sends the single-qubit generators to fiber wiring") {
  CHECK(lift_clifford(sym1(GateKind::S)) == sym2(GateKind::CX, 0, 1));
  CHECK(lift_clifford(sym1(GateKind::H)) == sym2(GateKind::Swap, 0, 1));
  CHECK(lift_clifford(SymplecticClifford::identity(3)) == SymplecticClifford::identity(6));

  // On wider registers each base qubit pairs with its fiber partner.
  for (std::size_t i = 0; i < 2; ++i) {
    SymplecticClifford h = gate_symplectic(Gate::single(GateKind::H, i), 2);
    CHECK(lift_clifford(h) == gate_symplectic(Gate::two(GateKind::Swap, i, i + 2), 4));
    SymplecticClifford s = gate_symplectic(Gate::single(GateKind::S, i), 2);
    CHECK(lift_clifford(s) == gate_symplectic(Gate::two(GateKind::CX, i, i + 2), 4));
  }

  // The second diagonal block is the inverse transpose of the first.
  std::mt19937_64 rng(7);
  SymplecticClifford a = random_operator(3, rng, false);
  GF2Matrix lifted = lift_clifford(a).mat();
  GF2Matrix expect = inverse(a.mat()).transposed();
  for (std::size_t r = 0; r < 6; ++r) {
    for (std::size_t c = 0; c < 6; ++c) {
      CHECK(lifted.get(6 + r, 6 + c) == expect.get(r, c));
      CHECK(lifted.get(r, 6 + c) == false);
      CHECK(lifted.get(6 + r, c) == false);
    }
  }
}

TEST_CASE("lifting is an injective homomorphism") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 25; ++trial) {
    std::size_t n = 1 + trial % 4;
    SymplecticClifford a = random_operator(n, rng, true);
    SymplecticClifford b = random_operator(n, rng, true);
    CHECK(lift_clifford(a * b) == lift_clifford(a) * lift_clifford(b));
    if (a != SymplecticClifford::identity(n)) {
      CHECK(lift_clifford(a) != SymplecticClifford::identity(2 * n));
    }
  }
}

TEST_CASE("synthesis rebuilds operators from the reduced gate set") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t n = 1 + trial % 5;
    SymplecticClifford target = random_operator(n, rng, false);
    CliffordCircuit circ = synthesize_symplectic(target);
    for (const Gate& g : circ.gates()) {
      bool allowed = g.kind == GateKind::H || g.kind == GateKind::S ||
                     g.kind == GateKind::CX || g.kind == GateKind::Swap;
      CHECK(allowed);
    }
    CHECK(circuit_symplectic(circ) == target);
  }

  CHECK(synthesize_symplectic(SymplecticClifford::identity(4)).size() == 0);
  CHECK_THROWS_AS(synthesize_symplectic(sym1(GateKind::X)), Error);
}

TEST_CASE("lifted circuits use only phase-free wiring") {
  // Base swap becomes the double swap on both fibers.
  CliffordCircuit sw = lift_to_circuit(sym2(GateKind::Swap, 0, 1));
  REQUIRE(sw.size() == 2);
  CHECK(sw.gates()[0].kind == GateKind::Swap);
  CHECK(sw.gates()[0].qubits == std::vector<std::size_t>{0, 1});
  CHECK(sw.gates()[1].kind == GateKind::Swap);
  CHECK(sw.gates()[1].qubits == std::vector<std::size_t>{2, 3});

  // Base CX becomes the two-CX fiber pattern.
  CliffordCircuit cx = lift_to_circuit(sym2(GateKind::CX, 0, 1));
  REQUIRE(cx.size() == 2);
  CHECK(cx.gates()[0].kind == GateKind::CX);
  CHECK(cx.gates()[0].qubits == std::vector<std::size_t>{0, 1});
  CHECK(cx.gates()[1].kind == GateKind::CX);
  CHECK(cx.gates()[1].qubits == std::vector<std::size_t>{3, 2});

  CHECK(lift_to_circuit(SymplecticClifford::identity(2)).size() == 0);
  CHECK_THROWS_AS(lift_to_circuit(sym1(GateKind::Z)), Error);

  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 10; ++trial) {
    std::size_t n = 1 + trial % 4;
    SymplecticClifford base = random_operator(n, rng, false);
    CliffordCircuit lifted = lift_to_circuit(base);
    for (const Gate& g : lifted.gates()) {
      bool wiring = g.kind == GateKind::CX || g.kind == GateKind::Swap;
      CHECK(wiring);
    }
    CHECK(circuit_symplectic(lifted) == lift_clifford(base));
  }
}

TEST_CASE("the plaquette qubit cycle acts as a logical Hadamard") {
  StabilizerCode c = code_412_frame();
  // Cycle qubit i to position i+1: gathered relabeling {3, 0, 1, 2}.
  CliffordCircuit cycle(4);
  cycle.perm({3, 0, 1, 2});

  auto action = logical_action(c, cycle);
  REQUIRE(action.has_value());
  CHECK(action->mat() == GF2Matrix::from_string("01\n10"));
  CHECK(action->pauli_offset().is_identity());

  // Applying the cycle twice squares the Hadamard away.
  CliffordCircuit twice(4);
  twice.extend(cycle).extend(cycle);
  auto sq = logical_action(c, twice);
  REQUIRE(sq.has_value());
  CHECK(*sq == SymplecticClifford::identity(1));
}

TEST_CASE("logical action exists exactly for code-preserving operators") {
  StabilizerCode c = code_412_frame();

  auto id = logical_action(c, SymplecticClifford::identity(4));
  REQUIRE(id.has_value());
  CHECK(*id == SymplecticClifford::identity(1));

  // A single Hadamard breaks the stabilizer group.
  CliffordCircuit h(4);
  h.h(0);
  CHECK_FALSE(logical_action(c, h).has_value());

  // A stabilizer offset acts as the logical identity.
  SymplecticClifford stab_shift(GF2Matrix::identity(8), c.check_row(0));
  auto a = logical_action(c, stab_shift);
  REQUIRE(a.has_value());
  CHECK(*a == SymplecticClifford::identity(1));

  // A logical representative offset shows up in logical coordinates.
  SymplecticClifford log_shift(GF2Matrix::identity(8), c.logical_x(0));
  auto b = logical_action(c, log_shift);
  REQUIRE(b.has_value());
  CHECK(b->mat() == GF2Matrix::identity(2));
  CHECK(b->pauli_offset() == pauli_parse("X"));

  // An anticommuting offset leaves the codespace.
  SymplecticClifford bad_shift(GF2Matrix::identity(8), pauli_parse("XIII"));
  CHECK_FALSE(logical_action(c, bad_shift).has_value());

  CHECK_THROWS_AS(logical_action(c, SymplecticClifford::identity(5)), Error);
}

TEST_CASE("transversal S after H on the five-qubit code has order three") {
  StabilizerCode c = code_513();
  CliffordCircuit circ(5);
  for (std::size_t q = 0; q < 5; ++q) circ.h(q).s(q);

  auto action = logical_action(c, circ);
  REQUIRE(action.has_value());
  CHECK(*action != SymplecticClifford::identity(1));
  CHECK(*action * *action != SymplecticClifford::identity(1));
  CHECK(*action * *action * *action == SymplecticClifford::identity(1));
}

TEST_CASE("random code-preserving operators act by the induced logical map") {
  std::mt19937_64 rng(59);
  for (int trial = 0; trial < 12; ++trial) {
    std::size_t n = 4 + trial % 3;
    std::size_t m = 2 + trial % 2;
    StabilizerCode c = random_code(n, m, 1000 + trial);

    SymplecticVector g1 = random_normalizer_element(c, rng);
    SymplecticVector g2 = random_normalizer_element(c, rng);
    SymplecticClifford t1 = transvection(g1);
    SymplecticClifford t2 = transvection(g2);

    auto a1 = logical_action(c, t1);
    REQUIRE(a1.has_value());
    CHECK(*a1 == transvection(logical_coords(c, g1)));

    auto a12 = logical_action(c, t2 * t1);
    REQUIRE(a12.has_value());
    CHECK(*a12 == transvection(logical_coords(c, g2)) * transvection(logical_coords(c, g1)));
  }
}

TEST_CASE("doubling a code transports logical actions through the lift") {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 10; ++trial) {
    std::size_t n = 3 + trial % 4;
    std::size_t m = 1 + trial % 3;
    if (m >= n) continue;
    StabilizerCode c = random_code(n, m, 500 + trial);
    StabilizerCode dc = double_code(c);

    SymplecticClifford op = transvection(random_normalizer_element(c, rng)) *
                            transvection(random_normalizer_element(c, rng));
    if (trial % 2 == 0) {
      // Exercise the Pauli offset path too.
      op = SymplecticClifford(GF2Matrix::identity(2 * n),
                              random_normalizer_element(c, rng)) *
           op;
    }

    auto base_action = logical_action(c, op);
    REQUIRE(base_action.has_value());
    auto lifted_action = logical_action(dc, lift_clifford(op));
    REQUIRE(lifted_action.has_value());
    CHECK(*lifted_action == lift_clifford(*base_action));
  }
}

TEST_CASE("group orders match the closed formula") {
  CHECK(clifford_order(0) == "8");
  CHECK(clifford_order(1) == "192");
  CHECK(clifford_order(2) == "92160");
  CHECK(clifford_order(3) == "743178240");
  CHECK(clifford_order(4) == "97029351014400");
  CHECK(clifford_order(5) == "203286581427673497600");
  CHECK(clifford_order(8) == "31446995505814020383166371418359014222725120000");
}
