#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "qec/clifford.hpp"

namespace qec {

// A free-text comment pinned to a circuit position: printed immediately
// before the gate at gate_index, or after the last gate when gate_index
// equals the gate count.
struct QasmComment {
  std::size_t gate_index = 0;
  std::string text;  // without the leading "//"
};

struct ParsedQasm {
  CliffordCircuit circuit;
  std::vector<QasmComment> comments;  // free-text comments only
};

// Serialize a circuit as OpenQASM 2.0 over the gate set reset, h, s, sdg,
// x, z, cx, cy, cz, measure and barrier. Other gate kinds are decomposed
// exactly (y -> z,x; sqrt_x -> h,s,h; its inverse -> h,sdg,h; swap -> three
// cx). Relabeling gates emit no instructions: the emitter tracks which
// register currently holds each circuit wire, prints "// P(...)" and
// "// labels = [...]" checkpoints at the relabeling point, addresses later
// gates through the tracked registers, and appends a final qubit order
// comment once any relabeling occurred. A run of resets or measurements
// covering every register in ascending order collapses to the whole-register
// form ("reset q;" / "measure q -> m;").
std::string emit_qasm(const CliffordCircuit& circ,
                      const std::vector<QasmComment>* comments = nullptr);

// Parse the restricted grammar emitted above. "// P(...)" comments are
// authoritative relabeling gates; "// labels = [...]" and "// final qubit
// order: [...]" comments are validated against the tracked register state;
// all other comments are collected verbatim. Include lines are accepted and
// ignored (the gate set is built in). Errors name the offending line.
ParsedQasm parse_qasm(const std::string& text);

// Comparison tokens of a QASM text: one entry per instruction or comment in
// order, with all whitespace stripped from instructions and collapsed in
// comments. Two texts of the same program compare token-for-token equal no
// matter how statements are packed into lines.
std::vector<std::string> qasm_tokens(const std::string& text);

}  // namespace qec
