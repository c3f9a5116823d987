#include "qec/qasm.hpp"

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "qec/clifford.hpp"
#include "qec/gf2.hpp"
#include "qec/tableau.hpp"

using qec::CliffordCircuit;
using qec::Gate;
using qec::GateKind;
using qec::ParsedQasm;
using qec::QasmComment;

namespace {

bool same_gates(const CliffordCircuit& a, const CliffordCircuit& b) {
  if (a.num_qubits() != b.num_qubits() || a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Gate& x = a.gates()[i];
    const Gate& y = b.gates()[i];
    if (x.kind != y.kind || x.qubits != y.qubits || x.perm != y.perm) return false;
  }
  return true;
}

// A circuit over the kinds that survive emission unchanged.
CliffordCircuit random_plain_circuit(std::mt19937_64& rng, bool with_perms) {
  std::uniform_int_distribution<std::size_t> nd(2, 6);
  const std::size_t n = nd(rng);
  CliffordCircuit c(n);
  std::uniform_int_distribution<std::size_t> len(1, 30);
  std::uniform_int_distribution<std::size_t> qd(0, n - 1);
  std::uniform_int_distribution<int> kind(0, with_perms ? 9 : 8);
  const std::size_t steps = len(rng);
  for (std::size_t i = 0; i < steps; ++i) {
    switch (kind(rng)) {
      case 0: c.h(qd(rng)); break;
      case 1: c.s(qd(rng)); break;
      case 2: c.sdg(qd(rng)); break;
      case 3: c.x(qd(rng)); break;
      case 4: c.z(qd(rng)); break;
      case 5:
      case 6:
      case 7: {
        const std::size_t a = qd(rng);
        std::size_t b = qd(rng);
        while (b == a) b = qd(rng);
        const int which = kind(rng) % 3;
        if (which == 0) c.cx(a, b);
        if (which == 1) c.cy(a, b);
        if (which == 2) c.cz(a, b);
        break;
      }
      case 8: c.barrier(); break;
      default: {
        std::vector<std::size_t> p(n);
        for (std::size_t j = 0; j < n; ++j) p[j] = j;
        std::shuffle(p.begin(), p.end(), rng);
        c.perm(p);
        break;
      }
    }
  }
  return c;
}

}  // namespace

TEST_CASE("one-qubit circuit with a measurement") {
  CliffordCircuit c(1);
  c.measure(0);
  const std::string text = qec::emit_qasm(c);
  CHECK(qec::qasm_tokens(text) ==
        std::vector<std::string>{"OPENQASM2.0;", "include\"hqslib1.inc\";",
                                 "qregq[1];", "cregm[1];", "measureq->m;"});
  const ParsedQasm back = qec::parse_qasm(text);
  CHECK(same_gates(back.circuit, c));
  CHECK(back.comments.empty());
}

TEST_CASE("every representable gate round-trips by equality") {
  CliffordCircuit c(3);
  c.reset(0).reset(1).reset(2);
  c.h(0).s(1).sdg(2).x(0).z(1);
  c.cx(0, 1).cy(1, 2).cz(2, 0);
  c.barrier();
  c.measure(0).measure(1).measure(2);
  const std::string text = qec::emit_qasm(c);
  CHECK(same_gates(qec::parse_qasm(text).circuit, c));
}

TEST_CASE("gates outside the vocabulary decompose exactly") {
  CliffordCircuit c(2);
  c.y(0).sqrt_x(1).sqrt_xdg(0).swap_qubits(0, 1);
  const std::string text = qec::emit_qasm(c);
  // The text only uses the supported names.
  CHECK(text.find("y ") == std::string::npos);
  CHECK(text.find("swap") == std::string::npos);
  const CliffordCircuit parsed = qec::parse_qasm(text).circuit;
  CHECK(qec::circuit_symplectic(parsed) == qec::circuit_symplectic(c));

  // Signs too: both circuits act identically on stabilizer rows.
  qec::Tableau direct(2);
  direct.apply_circuit(c);
  qec::Tableau roundabout(2);
  roundabout.apply_circuit(parsed);
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(direct.stabilizer_row(i) == roundabout.stabilizer_row(i));
    CHECK(direct.destabilizer_row(i) == roundabout.destabilizer_row(i));
  }
}

TEST_CASE("relabeling emits comments and retargets registers") {
  CliffordCircuit c(4);
  c.x(2);
  c.perm({0, 2, 1, 3});
  c.s(2);  // wire 2 now lives at register 1
  c.perm({0, 3, 2, 1});
  c.h(1);  // wire 1 now lives at register 3
  const std::string text = qec::emit_qasm(c);
  CHECK(qec::qasm_tokens(text) ==
        std::vector<std::string>{
            "OPENQASM2.0;", "include\"hqslib1.inc\";", "qregq[4];", "cregm[4];",
            "xq[2];", "//P(0,2,1,3)", "//labels=[0,2,1,3]", "sq[1];",
            "//P(0,3,2,1)", "//labels=[0,3,1,2]", "hq[3];",
            "//finalqubitorder:[0,3,1,2]"});
  CHECK(same_gates(qec::parse_qasm(text).circuit, c));
}

TEST_CASE("whole-register compression needs the ascending order") {
  CliffordCircuit ascending(3);
  ascending.measure(0).measure(1).measure(2);
  CHECK(qec::emit_qasm(ascending).find("measure q -> m;") != std::string::npos);

  CliffordCircuit shuffled(3);
  shuffled.measure(1).measure(0).measure(2);
  const std::string text = qec::emit_qasm(shuffled);
  CHECK(text.find("measure q -> m;") == std::string::npos);
  CHECK(text.find("measure q[1] -> m[1];") != std::string::npos);
  CHECK(same_gates(qec::parse_qasm(text).circuit, shuffled));

  // After a relabeling, the ascending pass is over registers, not wires.
  CliffordCircuit moved(3);
  moved.perm({1, 0, 2});
  moved.measure(1).measure(0).measure(2);
  CHECK(qec::emit_qasm(moved).find("measure q -> m;") != std::string::npos);
  CHECK(same_gates(qec::parse_qasm(qec::emit_qasm(moved)).circuit, moved));

  CliffordCircuit partial(3);
  partial.reset(0).reset(1);
  CHECK(qec::emit_qasm(partial).find("reset q;") == std::string::npos);
  CHECK(same_gates(qec::parse_qasm(qec::emit_qasm(partial)).circuit, partial));
}

TEST_CASE("prose comments ride along at their positions") {
  CliffordCircuit c(2);
  c.reset(0).reset(1);
  c.h(0);
  c.cx(0, 1);
  c.measure(0).measure(1);
  const std::vector<QasmComment> notes = {
      {2, "make a Bell pair"}, {4, "read it out"}, {6, "done"}};
  const std::string text = qec::emit_qasm(c, &notes);
  const ParsedQasm back = qec::parse_qasm(text);
  CHECK(same_gates(back.circuit, c));
  REQUIRE(back.comments.size() == 3);
  CHECK(back.comments[0].gate_index == 2);
  CHECK(back.comments[0].text == "make a Bell pair");
  CHECK(back.comments[1].gate_index == 4);
  CHECK(back.comments[2].gate_index == 6);
  CHECK(back.comments[2].text == "done");
  // Re-emission with the parsed comments reproduces the token stream.
  CHECK(qec::qasm_tokens(qec::emit_qasm(back.circuit, &back.comments)) ==
        qec::qasm_tokens(text));
}

TEST_CASE("token streams ignore line packing and spacing") {
  const std::string packed =
      "OPENQASM 2.0;\ninclude \"hqslib1.inc\";\n"
      "qreg q[2]; creg m[2];\n"
      "h q[0]; cx q[0], q[1];   // entangle\n"
      "measure q -> m;\n";
  const std::string spread =
      "OPENQASM    2.0;\n include \"hqslib1.inc\";\n"
      "qreg q[2];\n creg m[2];\n"
      "h  q[ 0 ];\ncx q[0],q[1];\n//   entangle\n"
      "measure q->m;\n";
  CHECK(qec::qasm_tokens(packed) == qec::qasm_tokens(spread));
  CHECK(qec::circuit_symplectic(qec::parse_qasm(
            "OPENQASM 2.0;\nqreg q[2];\nh q[0]; cx q[0], q[1];\n").circuit) ==
        qec::circuit_symplectic(CliffordCircuit(2).h(0).cx(0, 1)));
}

TEST_CASE("parse and emit are mutually inverse on random circuits") {
  std::mt19937_64 rng(20260818ULL);
  for (int trial = 0; trial < 100; ++trial) {
    CliffordCircuit c = random_plain_circuit(rng, true);
    const std::string text = qec::emit_qasm(c);
    const ParsedQasm back = qec::parse_qasm(text);
    CHECK(same_gates(back.circuit, c));
    CHECK(qec::qasm_tokens(qec::emit_qasm(back.circuit)) == qec::qasm_tokens(text));
  }
}

TEST_CASE("semantic equality survives decomposition on random circuits") {
  std::mt19937_64 rng(977);
  for (int trial = 0; trial < 40; ++trial) {
    CliffordCircuit c = random_plain_circuit(rng, false);
    std::uniform_int_distribution<std::size_t> qd(0, c.num_qubits() - 1);
    c.y(qd(rng));
    c.sqrt_x(qd(rng));
    const CliffordCircuit parsed = qec::parse_qasm(qec::emit_qasm(c)).circuit;
    CHECK(qec::circuit_symplectic(parsed) == qec::circuit_symplectic(c));
  }
}

TEST_CASE("parse errors carry line numbers") {
  using qec::Error;
  CHECK_THROWS_WITH_AS(qec::parse_qasm("qreg q[2];\n"),
                       doctest::Contains("OPENQASM"), Error);
  CHECK_THROWS_WITH_AS(qec::parse_qasm("OPENQASM 3.0;\n"),
                       doctest::Contains("version"), Error);
  CHECK_THROWS_WITH_AS(qec::parse_qasm("OPENQASM 2.0;\nqreg q[2];\nt q[0];\n"),
                       doctest::Contains("line 3"), Error);
  CHECK_THROWS_WITH_AS(qec::parse_qasm("OPENQASM 2.0;\nqreg q[2];\nt q[0];\n"),
                       doctest::Contains("unsupported gate 't'"), Error);
  CHECK_THROWS_WITH_AS(qec::parse_qasm("OPENQASM 2.0;\nqreg q[0];\n"),
                       doctest::Contains("register size"), Error);
  CHECK_THROWS_WITH_AS(qec::parse_qasm("OPENQASM 2.0;\nqreg q[2];\nh q[5];\n"),
                       doctest::Contains("out of range"), Error);
  CHECK_THROWS_WITH_AS(qec::parse_qasm("OPENQASM 2.0;\nqreg q[2];\nh q[0]\n"),
                       doctest::Contains("missing ';'"), Error);
  CHECK_THROWS_WITH_AS(qec::parse_qasm("OPENQASM 2.0;\nh q[0];\nqreg q[2];\n"),
                       doctest::Contains("before qreg"), Error);
  CHECK_THROWS_WITH_AS(
      qec::parse_qasm("OPENQASM 2.0;\nqreg q[2];\nqreg r[2];\n"),
      doctest::Contains("one qreg"), Error);
  CHECK_THROWS_WITH_AS(
      qec::parse_qasm("OPENQASM 2.0;\nqreg q[2];\nmeasure q[0] -> m[0];\n"),
      doctest::Contains("creg"), Error);
  CHECK_THROWS_WITH_AS(
      qec::parse_qasm("OPENQASM 2.0;\nqreg q[2];\ncx q[0], q[0];\n"),
      doctest::Contains("must differ"), Error);
  CHECK_THROWS_WITH_AS(qec::parse_qasm("OPENQASM 2.0;\nqreg q[2];\nh r[0];\n"),
                       doctest::Contains("unknown register 'r'"), Error);
  CHECK_THROWS_WITH_AS(qec::parse_qasm("OPENQASM 2.0;\nqreg q[3];\n// P(0, 1)\n"),
                       doctest::Contains("wrong length"), Error);
  CHECK_THROWS_WITH_AS(
      qec::parse_qasm("OPENQASM 2.0;\nqreg q[3];\n// P(0, 1, 1)\n"),
      doctest::Contains("not a permutation"), Error);
  CHECK_THROWS_WITH_AS(
      qec::parse_qasm(
          "OPENQASM 2.0;\nqreg q[3];\n// P(1, 0, 2)\n// labels = [0, 1, 2]\n"),
      doctest::Contains("disagrees"), Error);
  CHECK_THROWS_WITH_AS(
      qec::parse_qasm("OPENQASM 2.0;\nqreg q[2];\nbarrier q[0];\n"),
      doctest::Contains("whole-register"), Error);
}

TEST_CASE("structured comments are validated when present") {
  const std::string good =
      "OPENQASM 2.0;\n"
      "qreg q[3];\ncreg m[3];\n"
      "// P(1, 2, 0)\n"
      "// labels = [1, 2, 0]\n"
      "h q[1];\n"
      "measure q -> m;\n"
      "// final qubit order: [1, 2, 0]\n";
  const ParsedQasm parsed = qec::parse_qasm(good);
  REQUIRE(parsed.circuit.size() == 5);
  CHECK(parsed.circuit.gates()[0].kind == GateKind::Perm);
  CHECK(parsed.circuit.gates()[0].perm == std::vector<std::size_t>{1, 2, 0});
  // h q[1] addresses the wire whose register is 1: wire 0 after the perm.
  CHECK(parsed.circuit.gates()[1].kind == GateKind::H);
  CHECK(parsed.circuit.gates()[1].qubits == std::vector<std::size_t>{0});
  // measure q -> m walks registers 0,1,2 = wires 2,0,1.
  CHECK(parsed.circuit.gates()[2].qubits == std::vector<std::size_t>{2});
  CHECK(parsed.circuit.gates()[3].qubits == std::vector<std::size_t>{0});
  CHECK(parsed.circuit.gates()[4].qubits == std::vector<std::size_t>{1});
  CHECK(parsed.comments.empty());
}
