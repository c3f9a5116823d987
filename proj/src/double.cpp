#include "qec/double.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace qec {

namespace {

// x-parts of the pure-X basis rows and z-parts of the pure-Z rows of a CSS
// code, as n-column matrices.
struct CssWordSpaces {
  GF2Matrix x_words;  // basis of the X codeword space
  GF2Matrix z_words;  // basis of the Z codeword space
};

CssWordSpaces css_word_spaces(const StabilizerCode& c) {
  CssSplit split = is_css(c);
  if (!split.css) throw Error("operation requires a CSS code");
  std::size_t n = c.num_qubits();
  CssWordSpaces out{GF2Matrix(0, n), GF2Matrix(0, n)};
  for (std::size_t r = 0; r < split.x_rows.rows(); ++r) {
    out.x_words.append_row(slice(split.x_rows.row(r), 0, n));
  }
  for (std::size_t r = 0; r < split.z_rows.rows(); ++r) {
    out.z_words.append_row(slice(split.z_rows.row(r), n, 2 * n));
  }
  return out;
}

BitVec scatter_bits(const BitVec& v, const std::vector<std::size_t>& perm) {
  BitVec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v.get(i)) out.set(perm[i], true);
  }
  return out;
}

// All 2^rows combinations of the rows of a small basis matrix.
std::vector<BitVec> enumerate_span(const GF2Matrix& basis) {
  if (basis.rows() > 20) throw Error("span enumeration: basis too large");
  std::vector<BitVec> out(std::size_t{1} << basis.rows(), BitVec(basis.cols()));
  for (std::size_t mask = 1; mask < out.size(); ++mask) {
    std::size_t low = 0;
    while (!((mask >> low) & 1u)) ++low;
    out[mask] = out[mask ^ (std::size_t{1} << low)] ^ basis.row(low);
  }
  return out;
}

// Per-qubit signature: how many codewords of each weight touch the qubit.
// A relabeling taking one space to another must match these up.
std::vector<std::vector<std::uint32_t>> weight_signatures(const std::vector<BitVec>& words,
                                                          std::size_t n) {
  std::vector<std::vector<std::uint32_t>> sig(n, std::vector<std::uint32_t>(n + 1, 0));
  for (const BitVec& w : words) {
    std::size_t weight = w.popcount();
    for (std::size_t i = 0; i < n; ++i) {
      if (w.get(i)) ++sig[i][weight];
    }
  }
  return sig;
}

struct DualitySearch {
  std::size_t n;
  const std::vector<std::vector<std::uint32_t>>& sig_x;
  const std::vector<std::vector<std::uint32_t>>& sig_z;
  const GF2Matrix& x_words;
  const GF2Matrix& z_words;
  RowReduceResult x_red;
  RowReduceResult z_red;
  std::vector<std::size_t> perm;
  std::vector<ZXDuality> found;

  bool candidate_ok(std::size_t i, std::size_t j) const {
    return sig_x[i] == sig_z[j] && sig_z[i] == sig_x[j];
  }

  bool full_check() const {
    for (std::size_t r = 0; r < x_words.rows(); ++r) {
      if (!in_rowspan(z_red, scatter_bits(x_words.row(r), perm))) return false;
    }
    for (std::size_t r = 0; r < z_words.rows(); ++r) {
      if (!in_rowspan(x_red, scatter_bits(z_words.row(r), perm))) return false;
    }
    return true;
  }

  void emit() {
    if (full_check()) found.push_back(ZXDuality{n, perm});
  }

  // Pair up qubits into 2-cycles: fixed-point-free involutions only.
  void search_involutions(std::size_t scan_from) {
    std::size_t i = scan_from;
    while (i < n && perm[i] != n) ++i;
    if (i == n) {
      emit();
      return;
    }
    for (std::size_t j = i + 1; j < n; ++j) {
      if (perm[j] != n || !candidate_ok(i, j)) continue;
      perm[i] = j;
      perm[j] = i;
      search_involutions(i + 1);
      perm[i] = n;
      perm[j] = n;
    }
  }

  // Arbitrary permutations.
  void search_general(std::size_t level, std::vector<bool>& used) {
    if (level == n) {
      emit();
      return;
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (used[j] || !candidate_ok(level, j)) continue;
      perm[level] = j;
      used[j] = true;
      search_general(level + 1, used);
      used[j] = false;
    }
  }
};

void require_duality_inputs(const StabilizerCode& c, const ZXDuality& tau) {
  if (tau.n != c.num_qubits()) throw Error("duality size does not match code");
  if (tau.perm.size() != tau.n) throw Error("duality permutation has wrong length");
  std::vector<bool> seen(tau.n, false);
  for (std::size_t v : tau.perm) {
    if (v >= tau.n || seen[v]) throw Error("duality permutation is not a bijection");
    seen[v] = true;
  }
}

}  // namespace

bool ZXDuality::involutory() const {
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (perm[i] >= perm.size() || perm[perm[i]] != i) return false;
  }
  return true;
}

bool ZXDuality::fixed_point_free() const {
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (perm[i] == i) return false;
  }
  return true;
}

std::string ZXDuality::to_cycles() const {
  std::vector<bool> visited(n, false);
  std::ostringstream out;
  bool any = false;
  for (std::size_t i = 0; i < n; ++i) {
    if (visited[i] || perm[i] == i) {
      visited[i] = true;
      continue;
    }
    out << "(";
    std::size_t j = i;
    bool first = true;
    while (!visited[j]) {
      visited[j] = true;
      if (!first) out << " ";
      out << (j + 1);
      first = false;
      j = perm[j];
    }
    out << ")";
    any = true;
  }
  if (!any) return "()";
  return out.str();
}

ZXDuality ZXDuality::from_cycles(const std::string& text, std::size_t n) {
  ZXDuality tau;
  tau.n = n;
  tau.perm.resize(n);
  for (std::size_t i = 0; i < n; ++i) tau.perm[i] = i;

  std::vector<bool> mentioned(n, false);
  std::size_t pos = 0;
  auto skip_space = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  skip_space();
  while (pos < text.size()) {
    if (text[pos] != '(') throw Error("duality cycles: expected '('");
    ++pos;
    std::vector<std::size_t> cycle;
    while (true) {
      skip_space();
      if (pos >= text.size()) throw Error("duality cycles: unterminated cycle");
      if (text[pos] == ')') {
        ++pos;
        break;
      }
      if (!std::isdigit(static_cast<unsigned char>(text[pos]))) {
        throw Error("duality cycles: expected a 1-based qubit number");
      }
      std::size_t value = 0;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        value = value * 10 + static_cast<std::size_t>(text[pos] - '0');
        ++pos;
      }
      if (value == 0 || value > n) throw Error("duality cycles: qubit number out of range");
      if (mentioned[value - 1]) throw Error("duality cycles: repeated qubit");
      mentioned[value - 1] = true;
      cycle.push_back(value - 1);
    }
    for (std::size_t t = 0; t + 1 < cycle.size(); ++t) tau.perm[cycle[t]] = cycle[t + 1];
    if (cycle.size() > 1) tau.perm[cycle.back()] = cycle.front();
    skip_space();
  }
  return tau;
}

GF2Matrix double_check_matrix(const GF2Matrix& h) {
  if (h.cols() % 2 != 0) throw Error("check matrix must have 2n columns");
  std::size_t n = h.cols() / 2;
  for (std::size_t i = 0; i < h.rows(); ++i) {
    SymplecticVector a = SymplecticVector::from_raw(h.row(i));
    for (std::size_t j = i; j < h.rows(); ++j) {
      if (symplectic_pairing(a, SymplecticVector::from_raw(h.row(j)))) {
        throw Error("doubling requires an isotropic check matrix");
      }
    }
  }
  if (rank(h) != h.rows()) throw Error("doubling requires a full-rank check matrix");

  GF2Matrix out(0, 4 * n);
  BitVec zero_2n(2 * n);
  for (std::size_t r = 0; r < h.rows(); ++r) {
    BitVec hx = slice(h.row(r), 0, n);
    BitVec hz = slice(h.row(r), n, 2 * n);
    out.append_row(concat(concat(hx, hz), zero_2n));
  }
  for (std::size_t r = 0; r < h.rows(); ++r) {
    BitVec hx = slice(h.row(r), 0, n);
    BitVec hz = slice(h.row(r), n, 2 * n);
    out.append_row(concat(zero_2n, concat(hz, hx)));
  }
  return out;
}

SymplecticVector doubled_x_image(const SymplecticVector& u) {
  return SymplecticVector(concat(u.x_part(), u.z_part()), BitVec(2 * u.num_qubits()));
}

SymplecticVector doubled_z_image(const SymplecticVector& u) {
  return SymplecticVector(BitVec(2 * u.num_qubits()), concat(u.z_part(), u.x_part()));
}

StabilizerCode double_code(const StabilizerCode& c) {
  StabilizerCode doubled = code_from_checks(double_check_matrix(c.checks()));
  std::size_t k = c.num_logicals();
  if (k == 0) return doubled;

  std::vector<SymplecticVector> frame;
  frame.reserve(4 * k);
  for (std::size_t a = 0; a < k; ++a) frame.push_back(doubled_x_image(c.logical_x(a)));
  for (std::size_t a = 0; a < k; ++a) frame.push_back(doubled_x_image(c.logical_z(a)));
  for (std::size_t a = 0; a < k; ++a) frame.push_back(doubled_z_image(c.logical_z(a)));
  for (std::size_t a = 0; a < k; ++a) frame.push_back(doubled_z_image(c.logical_x(a)));
  return doubled.with_logical_basis(frame);
}

bool is_zx_duality(const StabilizerCode& c, const ZXDuality& tau) {
  require_duality_inputs(c, tau);
  CssWordSpaces spaces = css_word_spaces(c);
  if (rank(spaces.x_words) != rank(spaces.z_words)) return false;
  RowReduceResult x_red = row_reduce(spaces.x_words);
  RowReduceResult z_red = row_reduce(spaces.z_words);
  for (std::size_t r = 0; r < spaces.x_words.rows(); ++r) {
    if (!in_rowspan(z_red, scatter_bits(spaces.x_words.row(r), tau.perm))) return false;
  }
  for (std::size_t r = 0; r < spaces.z_words.rows(); ++r) {
    if (!in_rowspan(x_red, scatter_bits(spaces.z_words.row(r), tau.perm))) return false;
  }
  return true;
}

std::vector<ZXDuality> find_zx_dualities(const StabilizerCode& c,
                                         bool fixed_point_free_involutory) {
  std::size_t n = c.num_qubits();
  if (n > 14) throw Error("duality search: unsupported size (n > 14)");
  CssWordSpaces spaces = css_word_spaces(c);
  if (rank(spaces.x_words) != rank(spaces.z_words)) return {};

  std::vector<BitVec> x_all = enumerate_span(spaces.x_words);
  std::vector<BitVec> z_all = enumerate_span(spaces.z_words);
  auto sig_x = weight_signatures(x_all, n);
  auto sig_z = weight_signatures(z_all, n);

  DualitySearch search{n,
                       sig_x,
                       sig_z,
                       spaces.x_words,
                       spaces.z_words,
                       row_reduce(spaces.x_words),
                       row_reduce(spaces.z_words),
                       std::vector<std::size_t>(n, n),
                       {}};
  if (fixed_point_free_involutory) {
    if (n % 2 != 0) return {};
    search.search_involutions(0);
  } else {
    std::vector<bool> used(n, false);
    search.search_general(0, used);
  }
  std::sort(search.found.begin(), search.found.end(),
            [](const ZXDuality& a, const ZXDuality& b) { return a.perm < b.perm; });
  return search.found;
}

StabilizerCode unwrap(const StabilizerCode& c, const ZXDuality& tau) {
  require_duality_inputs(c, tau);
  if (c.num_qubits() % 2 != 0) throw Error("unwrap requires an even qubit count");
  if (!tau.involutory() || !tau.fixed_point_free()) {
    throw Error("unwrap requires a fixed-point-free involutory duality");
  }
  if (!is_zx_duality(c, tau)) throw Error("permutation is not a ZX-duality of the code");

  std::size_t n = c.num_qubits() / 2;

  // Relabel each orbit {rep, tau(rep)} to a fiber {j, j+n}, representatives
  // scanned min-first.
  std::vector<std::size_t> relabel(2 * n);
  std::vector<bool> seen(2 * n, false);
  std::size_t next = 0;
  for (std::size_t i = 0; i < 2 * n; ++i) {
    if (seen[i]) continue;
    seen[i] = true;
    seen[tau.perm[i]] = true;
    relabel[i] = next;
    relabel[tau.perm[i]] = next + n;
    ++next;
  }
  StabilizerCode aligned = permuted_code(c, relabel);

  // Pure-X rows of the aligned code have x-part (h_x, h_z); peel the base
  // rows straight off them.
  CssSplit split = is_css(aligned);
  GF2Matrix base_rows(0, 2 * n);
  for (std::size_t r = 0; r < split.x_rows.rows(); ++r) {
    base_rows.append_row(slice(split.x_rows.row(r), 0, 2 * n));
  }
  StabilizerCode base = code_from_checks(base_rows);
  if (!same_rowspan(double_check_matrix(base.checks()), aligned.checks())) {
    throw Error("unwrap: base code does not double back to the input");
  }
  return base;
}

StabilizerCode concat_422(const StabilizerCode& c, const ZXDuality& tau) {
  require_duality_inputs(c, tau);
  if (c.num_qubits() % 2 != 0) throw Error("concatenation requires an even qubit count");
  if (!tau.involutory() || !tau.fixed_point_free()) {
    throw Error("concatenation requires a fixed-point-free involutory duality");
  }
  if (!is_zx_duality(c, tau)) throw Error("permutation is not a ZX-duality of the code");

  std::size_t blocks = c.num_qubits() / 2;

  // Orbit j holds (u_j, v_j) with u_j the smaller index; carrier block j.
  std::vector<std::size_t> block_of(c.num_qubits());
  std::vector<bool> is_first(c.num_qubits());
  {
    std::vector<bool> seen(c.num_qubits(), false);
    std::size_t next = 0;
    for (std::size_t i = 0; i < c.num_qubits(); ++i) {
      if (seen[i]) continue;
      seen[i] = true;
      seen[tau.perm[i]] = true;
      block_of[i] = next;
      block_of[tau.perm[i]] = next;
      is_first[i] = true;
      is_first[tau.perm[i]] = false;
      ++next;
    }
  }

  std::size_t total = 4 * blocks;
  GF2Matrix rows(0, 2 * total);
  for (std::size_t j = 0; j < blocks; ++j) {
    SymplecticVector xxxx(total);
    SymplecticVector zzzz(total);
    for (std::size_t t = 0; t < 4; ++t) {
      xxxx.set_letter(4 * j + t, 'X');
      zzzz.set_letter(4 * j + t, 'Z');
    }
    rows.append_row(xxxx.to_raw());
    rows.append_row(zzzz.to_raw());
  }

  // Logical dictionary per block: first orbit member feeds logical 1
  // (X -> XXII, Z -> ZIZI), second feeds logical 2 (X -> XIXI, Z -> ZZII).
  for (std::size_t r = 0; r < c.num_checks(); ++r) {
    SymplecticVector w = c.check_row(r);
    SymplecticVector pushed(total);
    for (std::size_t i = 0; i < c.num_qubits(); ++i) {
      std::size_t base = 4 * block_of[i];
      if (w.x_part().get(i)) {
        pushed.x_part().flip(base + 0);
        pushed.x_part().flip(base + (is_first[i] ? 1 : 2));
      }
      if (w.z_part().get(i)) {
        pushed.z_part().flip(base + 0);
        pushed.z_part().flip(base + (is_first[i] ? 2 : 1));
      }
    }
    rows.append_row(pushed.to_raw());
  }
  return code_from_checks(rows);
}

BitVec base_syndrome(const StabilizerCode& c, const BlockFault& f) {
  std::size_t n = c.num_qubits();
  if (f.f_x.size() != n || f.f_z.size() != n) throw Error("fault size does not match code");
  BitVec s(c.num_checks());
  for (std::size_t r = 0; r < c.num_checks(); ++r) {
    SymplecticVector h = c.check_row(r);
    bool bit = h.x_part().dot(f.f_z) ^ h.z_part().dot(f.f_x);
    s.set(r, bit);
  }
  return s;
}

SyndromeSplit doubled_syndrome_split(const StabilizerCode& dc,
                                     const SymplecticVector& fault) {
  if (fault.num_qubits() != dc.num_qubits()) throw Error("fault size does not match code");
  if (dc.num_checks() % 2 != 0) throw Error("code does not have doubled layout");
  std::size_t m = dc.num_checks() / 2;
  for (std::size_t r = 0; r < m; ++r) {
    if (!dc.check_row(r).z_part().is_zero() || !dc.check_row(m + r).x_part().is_zero()) {
      throw Error("code does not have doubled layout");
    }
  }
  SyndromeSplit out{BitVec(m), BitVec(m)};
  for (std::size_t r = 0; r < m; ++r) {
    out.s_x.set(r, dc.check_row(r).x_part().dot(fault.z_part()));
    out.s_z.set(r, dc.check_row(m + r).z_part().dot(fault.x_part()));
  }
  return out;
}

StabilizerCode xz_swapped_code(const StabilizerCode& c) {
  GF2Matrix rows(0, 2 * c.num_qubits());
  for (std::size_t r = 0; r < c.num_checks(); ++r) {
    const SymplecticVector h = c.check_row(r);
    rows.append_row(concat(h.z_part(), h.x_part()));
  }
  return code_from_checks(rows);
}

StabilizerCode direct_sum(const StabilizerCode& a, const StabilizerCode& b) {
  std::size_t na = a.num_qubits();
  std::size_t nb = b.num_qubits();
  GF2Matrix rows(0, 2 * (na + nb));
  BitVec zero_a(na);
  BitVec zero_b(nb);
  for (std::size_t r = 0; r < a.num_checks(); ++r) {
    SymplecticVector h = a.check_row(r);
    rows.append_row(concat(concat(h.x_part(), zero_b), concat(h.z_part(), zero_b)));
  }
  for (std::size_t r = 0; r < b.num_checks(); ++r) {
    SymplecticVector h = b.check_row(r);
    rows.append_row(concat(concat(zero_a, h.x_part()), concat(zero_a, h.z_part())));
  }
  return code_from_checks(rows);
}

std::optional<SymplecticVector> css_double_decomposition_violation(
    const StabilizerCode& css_code) {
  if (!is_css(css_code).css) throw Error("decomposition claim requires a CSS code");
  StabilizerCode doubled = double_code(css_code);
  StabilizerCode sum = direct_sum(css_code, xz_swapped_code(css_code));
  for (std::size_t r = 0; r < doubled.num_checks(); ++r) {
    if (!sum.in_stabilizer(doubled.check_row(r))) return doubled.check_row(r);
  }
  for (std::size_t r = 0; r < sum.num_checks(); ++r) {
    if (!doubled.in_stabilizer(sum.check_row(r))) return sum.check_row(r);
  }
  return std::nullopt;
}

SymplecticVector fiber_cz_image(const SymplecticVector& w) {
  if (w.num_qubits() % 2 != 0) throw Error("fiber map requires an even qubit count");
  std::size_t n = w.num_qubits() / 2;
  SymplecticVector out = w;
  for (std::size_t i = 0; i < n; ++i) {
    if (w.x_part().get(i + n)) out.z_part().flip(i);
    if (w.x_part().get(i)) out.z_part().flip(i + n);
  }
  return out;
}

std::optional<SymplecticVector> fiber_cz_violation(const StabilizerCode& dc) {
  for (std::size_t r = 0; r < dc.num_checks(); ++r) {
    SymplecticVector image = fiber_cz_image(dc.check_row(r));
    if (!dc.in_stabilizer(image)) return image;
  }
  return std::nullopt;
}

}  // namespace qec
