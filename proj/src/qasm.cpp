#include "qec/qasm.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qec/gf2.hpp"

namespace qec {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0;
  std::size_t b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::string strip_spaces(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
  }
  return out;
}

std::string collapse_spaces(const std::string& s) {
  std::string out;
  bool pending = false;
  for (char c : trim(s)) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      pending = true;
      continue;
    }
    if (pending && !out.empty()) out.push_back(' ');
    pending = false;
    out.push_back(c);
  }
  return out;
}

std::string int_list(const std::vector<std::size_t>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i != 0) out += ", ";
    out += std::to_string(v[i]);
  }
  return out;
}

// The current wire-to-register assignment: labels[w] is the register that
// holds circuit wire w. Relabeling gates compose by gathering.
struct LabelState {
  std::vector<std::size_t> labels;

  explicit LabelState(std::size_t n) : labels(n) {
    std::iota(labels.begin(), labels.end(), 0);
  }

  void apply_perm(const std::vector<std::size_t>& p) {
    std::vector<std::size_t> next(labels.size());
    for (std::size_t w = 0; w < labels.size(); ++w) next[w] = labels[p[w]];
    labels = std::move(next);
  }

  std::size_t wire_at(std::size_t reg) const {
    for (std::size_t w = 0; w < labels.size(); ++w) {
      if (labels[w] == reg) return w;
    }
    throw Error("register index out of range");
  }

  bool is_identity() const {
    for (std::size_t w = 0; w < labels.size(); ++w) {
      if (labels[w] != w) return false;
    }
    return true;
  }
};

}  // namespace

// ---------------------------------------------------------------------------
// Emission

namespace {

const char* simple_gate_name(GateKind kind) {
  switch (kind) {
    case GateKind::H:
      return "h";
    case GateKind::S:
      return "s";
    case GateKind::Sdg:
      return "sdg";
    case GateKind::X:
      return "x";
    case GateKind::Z:
      return "z";
    case GateKind::CX:
      return "cx";
    case GateKind::CY:
      return "cy";
    case GateKind::CZ:
      return "cz";
    default:
      return nullptr;
  }
}

// True when the gates starting at position i form a whole-register run of
// `kind` whose emitted registers come out as 0, 1, ..., n-1 in order.
bool ascending_run(const std::vector<Gate>& gates, std::size_t i, GateKind kind,
                   const LabelState& state, std::size_t n) {
  if (i + n > gates.size()) return false;
  for (std::size_t j = 0; j < n; ++j) {
    const Gate& g = gates[i + j];
    if (g.kind != kind) return false;
    if (state.labels[g.qubits.front()] != j) return false;
  }
  return true;
}

}  // namespace

std::string emit_qasm(const CliffordCircuit& circ,
                      const std::vector<QasmComment>* comments) {
  const std::size_t n = circ.num_qubits();
  if (n == 0) throw Error("cannot emit a circuit with no qubits");

  std::ostringstream out;
  out << "OPENQASM 2.0;\n";
  out << "include \"hqslib1.inc\";\n\n";
  out << "qreg q[" << n << "];\n";
  out << "creg m[" << n << "];\n\n";

  LabelState state(n);
  bool relabeled = false;
  const auto& gates = circ.gates();
  std::size_t next_comment = 0;

  const auto flush_comments = [&](std::size_t index) {
    if (comments == nullptr) return;
    while (next_comment < comments->size() &&
           (*comments)[next_comment].gate_index <= index) {
      out << "// " << (*comments)[next_comment].text << "\n";
      ++next_comment;
    }
  };

  const auto reg = [&](std::size_t wire) { return state.labels[wire]; };
  const auto one = [&](const char* name, std::size_t wire) {
    out << name << " q[" << reg(wire) << "];\n";
  };

  for (std::size_t i = 0; i < gates.size();) {
    flush_comments(i);
    const Gate& g = gates[i];

    if (g.kind == GateKind::Perm) {
      state.apply_perm(g.perm);
      relabeled = true;
      out << "// P(" << int_list(g.perm) << ")\n";
      out << "// labels = [" << int_list(state.labels) << "]\n";
      ++i;
      continue;
    }

    if (g.kind == GateKind::Reset || g.kind == GateKind::Measure) {
      // Compress a full ascending pass over the register, but never across
      // an attached comment.
      bool comment_inside = false;
      if (comments != nullptr) {
        for (std::size_t c = next_comment; c < comments->size(); ++c) {
          const std::size_t at = (*comments)[c].gate_index;
          if (at > i && at < i + n) comment_inside = true;
          if (at >= i + n) break;
        }
      }
      if (!comment_inside && ascending_run(gates, i, g.kind, state, n)) {
        out << (g.kind == GateKind::Reset ? "reset q;\n" : "measure q -> m;\n");
        i += n;
        continue;
      }
      const std::size_t r = reg(g.qubits.front());
      if (g.kind == GateKind::Reset) {
        out << "reset q[" << r << "];\n";
      } else {
        out << "measure q[" << r << "] -> m[" << r << "];\n";
      }
      ++i;
      continue;
    }

    switch (g.kind) {
      case GateKind::Barrier:
        out << "barrier q;\n";
        break;
      case GateKind::Y:
        one("z", g.qubits[0]);
        one("x", g.qubits[0]);
        break;
      case GateKind::SqrtX:
        one("h", g.qubits[0]);
        one("s", g.qubits[0]);
        one("h", g.qubits[0]);
        break;
      case GateKind::SqrtXdg:
        one("h", g.qubits[0]);
        one("sdg", g.qubits[0]);
        one("h", g.qubits[0]);
        break;
      case GateKind::Swap:
        out << "cx q[" << reg(g.qubits[0]) << "], q[" << reg(g.qubits[1]) << "];\n";
        out << "cx q[" << reg(g.qubits[1]) << "], q[" << reg(g.qubits[0]) << "];\n";
        out << "cx q[" << reg(g.qubits[0]) << "], q[" << reg(g.qubits[1]) << "];\n";
        break;
      default: {
        const char* name = simple_gate_name(g.kind);
        if (name == nullptr) throw Error("gate kind not representable in QASM");
        if (g.qubits.size() == 1) {
          one(name, g.qubits[0]);
        } else {
          out << name << " q[" << reg(g.qubits[0]) << "], q[" << reg(g.qubits[1])
              << "];\n";
        }
        break;
      }
    }
    ++i;
  }

  if (comments != nullptr) {
    for (; next_comment < comments->size(); ++next_comment) {
      out << "// " << (*comments)[next_comment].text << "\n";
    }
  }
  if (relabeled) {
    out << "// final qubit order: [" << int_list(state.labels) << "]\n";
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

struct Parser {
  ParsedQasm result;
  std::size_t line_no = 0;
  bool seen_header = false;
  std::string qreg_name;
  std::size_t qreg_size = 0;
  std::string creg_name;
  std::size_t creg_size = 0;
  std::vector<std::size_t> labels;  // labels[w] = register of wire w

  [[noreturn]] void fail(const std::string& what) const {
    throw Error("qasm line " + std::to_string(line_no) + ": " + what);
  }

  std::size_t wire_at(std::size_t r) const {
    for (std::size_t w = 0; w < labels.size(); ++w) {
      if (labels[w] == r) return w;
    }
    fail("register index " + std::to_string(r) + " out of range");
  }

  // Reads "name[index]" or a bare "name"; bare form reports index nullopt.
  struct Operand {
    std::string name;
    std::optional<std::size_t> index;
  };

  Operand parse_operand(const std::string& text) const {
    const std::string s = strip_spaces(text);
    if (s.empty()) fail("missing operand");
    const std::size_t open = s.find('[');
    if (open == std::string::npos) return {s, std::nullopt};
    if (s.back() != ']') fail("malformed operand '" + text + "'");
    const std::string idx = s.substr(open + 1, s.size() - open - 2);
    if (idx.empty() || idx.find_first_not_of("0123456789") != std::string::npos) {
      fail("malformed operand '" + text + "'");
    }
    return {s.substr(0, open), std::stoul(idx)};
  }

  std::size_t quantum_wire(const Operand& op) const {
    if (op.name != qreg_name) fail("unknown register '" + op.name + "'");
    if (!op.index.has_value()) fail("expected an indexed register");
    if (*op.index >= qreg_size) fail("register index out of range");
    return wire_at(*op.index);
  }

  void require_qreg() const {
    if (qreg_size == 0) fail("statement before qreg declaration");
  }

  void handle_statement(const std::string& raw) {
    const std::string stmt = trim(raw);
    if (stmt.empty()) return;
    std::istringstream words(stmt);
    std::string head;
    words >> head;
    std::string rest;
    std::getline(words, rest);
    rest = trim(rest);

    if (!seen_header) {
      if (head != "OPENQASM") fail("expected OPENQASM 2.0 header");
      if (strip_spaces(rest) != "2.0") fail("unsupported OPENQASM version");
      seen_header = true;
      return;
    }
    if (head == "OPENQASM") fail("duplicate OPENQASM header");
    if (head == "include") return;  // gate set is built in

    if (head == "qreg" || head == "creg") {
      const Operand op = parse_operand(rest);
      if (!op.index.has_value() || *op.index == 0) fail("malformed register size");
      if (head == "qreg") {
        if (qreg_size != 0) fail("only one qreg is supported");
        qreg_name = op.name;
        qreg_size = *op.index;
        result.circuit = CliffordCircuit(qreg_size);
        labels.resize(qreg_size);
        std::iota(labels.begin(), labels.end(), 0);
      } else {
        if (creg_size != 0) fail("only one creg is supported");
        creg_name = op.name;
        creg_size = *op.index;
      }
      return;
    }

    require_qreg();

    if (head == "reset") {
      const Operand op = parse_operand(rest);
      if (op.name != qreg_name) fail("unknown register '" + op.name + "'");
      if (op.index.has_value()) {
        if (*op.index >= qreg_size) fail("register index out of range");
        result.circuit.reset(wire_at(*op.index));
      } else {
        for (std::size_t r = 0; r < qreg_size; ++r) result.circuit.reset(wire_at(r));
      }
      return;
    }

    if (head == "barrier") {
      const Operand op = parse_operand(rest);
      if (op.name != qreg_name) fail("unknown register '" + op.name + "'");
      if (op.index.has_value()) fail("only whole-register barriers are supported");
      result.circuit.barrier();
      return;
    }

    if (head == "measure") {
      const std::size_t arrow = rest.find("->");
      if (arrow == std::string::npos) fail("measure needs '-> <creg>'");
      const Operand src = parse_operand(rest.substr(0, arrow));
      const Operand dst = parse_operand(rest.substr(arrow + 2));
      if (src.name != qreg_name) fail("unknown register '" + src.name + "'");
      if (creg_size == 0) fail("measure before creg declaration");
      if (dst.name != creg_name) fail("unknown register '" + dst.name + "'");
      if (src.index.has_value() != dst.index.has_value()) {
        fail("measure operands must both be indexed or both whole registers");
      }
      if (src.index.has_value()) {
        if (*src.index >= qreg_size || *dst.index >= creg_size) {
          fail("register index out of range");
        }
        result.circuit.measure(wire_at(*src.index));
      } else {
        if (creg_size != qreg_size) fail("whole-register measure needs equal sizes");
        for (std::size_t r = 0; r < qreg_size; ++r) result.circuit.measure(wire_at(r));
      }
      return;
    }

    static const std::vector<std::pair<std::string, GateKind>> one_qubit = {
        {"h", GateKind::H},
        {"s", GateKind::S},
        {"sdg", GateKind::Sdg},
        {"x", GateKind::X},
        {"z", GateKind::Z}};
    for (const auto& [name, kind] : one_qubit) {
      if (head == name) {
        result.circuit.append(Gate::single(kind, quantum_wire(parse_operand(rest))));
        return;
      }
    }

    static const std::vector<std::pair<std::string, GateKind>> two_qubit = {
        {"cx", GateKind::CX}, {"cy", GateKind::CY}, {"cz", GateKind::CZ}};
    for (const auto& [name, kind] : two_qubit) {
      if (head == name) {
        const std::size_t comma = rest.find(',');
        if (comma == std::string::npos) fail(name + " needs two operands");
        const std::size_t a = quantum_wire(parse_operand(rest.substr(0, comma)));
        const std::size_t b = quantum_wire(parse_operand(rest.substr(comma + 1)));
        if (a == b) fail(name + " operands must differ");
        result.circuit.append(Gate::two(kind, a, b));
        return;
      }
    }

    fail("unsupported gate '" + head + "'");
  }

  std::vector<std::size_t> parse_bracket_list(const std::string& body,
                                              const std::string& what) {
    std::vector<std::size_t> out;
    std::string cur;
    for (char c : strip_spaces(body)) {
      if (c == ',') {
        if (cur.empty()) fail("malformed " + what);
        out.push_back(std::stoul(cur));
        cur.clear();
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        cur.push_back(c);
      } else {
        fail("malformed " + what);
      }
    }
    if (!cur.empty()) out.push_back(std::stoul(cur));
    return out;
  }

  void check_labels(const std::vector<std::size_t>& want, const std::string& what) {
    if (want != labels) {
      fail(what + " comment disagrees with the tracked register assignment");
    }
  }

  void handle_comment(const std::string& raw) {
    const std::string text = trim(raw);
    if (text.empty()) return;
    const std::string packed = strip_spaces(text);

    if (packed.rfind("P(", 0) == 0 && packed.back() == ')') {
      require_qreg();
      const auto perm =
          parse_bracket_list(packed.substr(2, packed.size() - 3), "P comment");
      std::vector<bool> seen(qreg_size, false);
      if (perm.size() != qreg_size) fail("P comment has the wrong length");
      for (std::size_t v : perm) {
        if (v >= qreg_size || seen[v]) fail("P comment is not a permutation");
        seen[v] = true;
      }
      result.circuit.append(Gate::permutation(perm));
      std::vector<std::size_t> next(qreg_size);
      for (std::size_t w = 0; w < qreg_size; ++w) next[w] = labels[perm[w]];
      labels = std::move(next);
      return;
    }

    if (packed.rfind("labels=[", 0) == 0 && packed.back() == ']') {
      require_qreg();
      check_labels(parse_bracket_list(packed.substr(8, packed.size() - 9),
                                      "labels comment"),
                   "labels");
      return;
    }

    if (packed.rfind("finalqubitorder:[", 0) == 0 && packed.back() == ']') {
      require_qreg();
      check_labels(parse_bracket_list(packed.substr(17, packed.size() - 18),
                                      "final qubit order comment"),
                   "final qubit order");
      return;
    }

    result.comments.push_back({result.circuit.size(), text});
  }
};

}  // namespace

ParsedQasm parse_qasm(const std::string& text) {
  Parser p;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    ++p.line_no;
    std::string code = line;
    std::string comment;
    const std::size_t slash = line.find("//");
    if (slash != std::string::npos) {
      code = line.substr(0, slash);
      comment = line.substr(slash + 2);
    }

    std::size_t start = 0;
    while (true) {
      const std::size_t semi = code.find(';', start);
      if (semi == std::string::npos) break;
      p.handle_statement(code.substr(start, semi - start));
      start = semi + 1;
    }
    if (!trim(code.substr(start)).empty()) p.fail("missing ';'");

    if (slash != std::string::npos) p.handle_comment(comment);
  }
  if (!p.seen_header) {
    p.line_no = 1;
    p.fail("expected OPENQASM 2.0 header");
  }
  if (p.qreg_size == 0) {
    p.fail("missing qreg declaration");
  }
  return std::move(p.result);
}

std::vector<std::string> qasm_tokens(const std::string& text) {
  std::vector<std::string> tokens;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    std::string code = line;
    std::string comment;
    bool has_comment = false;
    const std::size_t slash = line.find("//");
    if (slash != std::string::npos) {
      code = line.substr(0, slash);
      comment = line.substr(slash + 2);
      has_comment = true;
    }
    std::size_t start = 0;
    while (true) {
      const std::size_t semi = code.find(';', start);
      if (semi == std::string::npos) break;
      const std::string stmt = strip_spaces(code.substr(start, semi - start));
      if (!stmt.empty()) tokens.push_back(stmt + ";");
      start = semi + 1;
    }
    if (has_comment) {
      const std::string collapsed = strip_spaces(comment);
      if (!collapsed.empty()) tokens.push_back("//" + collapsed);
    }
  }
  return tokens;
}

}  // namespace qec
