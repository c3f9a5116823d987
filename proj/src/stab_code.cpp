#include "qec/stab_code.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <functional>
#include <map>
#include <random>
#include <sstream>

namespace qec {

namespace {

// Basis of the space of raw 2n-vectors commuting with every row of checks.
GF2Matrix normalizer_basis(const GF2Matrix& checks, std::size_t n) {
  // pairing(h, v) = h_x . v_z + h_z . v_x = (h_z | h_x) . (v_x | v_z),
  // so the normalizer is the kernel of the block-swapped check matrix.
  GF2Matrix swapped(checks.rows(), 2 * n);
  for (std::size_t r = 0; r < checks.rows(); ++r) {
    BitVec x = slice(checks.row(r), 0, n);
    BitVec z = slice(checks.row(r), n, 2 * n);
    swapped.row(r) = concat(z, x);
  }
  return kernel(swapped);
}

std::vector<SymplecticVector> derive_logical_basis(const GF2Matrix& checks, std::size_t n,
                                                   std::size_t k) {
  std::vector<SymplecticVector> out;
  if (k == 0) return out;

  GF2Matrix pool_matrix = normalizer_basis(checks, n);
  std::vector<BitVec> pool;
  for (std::size_t r = 0; r < pool_matrix.rows(); ++r) pool.push_back(pool_matrix.row(r));

  // Symplectic Gram-Schmidt on the quotient by the stabilizer span.
  GF2Matrix span = checks;  // grows with each chosen pair
  std::vector<std::pair<SymplecticVector, SymplecticVector>> pairs;
  while (pairs.size() < k) {
    RowReduceResult span_red = row_reduce(span);
    // First pool vector independent of the current span.
    std::size_t ui = pool.size();
    for (std::size_t i = 0; i < pool.size(); ++i) {
      if (!in_rowspan(span_red, pool[i])) {
        ui = i;
        break;
      }
    }
    if (ui == pool.size()) throw Error("logical basis extraction failed");
    SymplecticVector u = SymplecticVector::from_raw(pool[ui]);
    // First partner that anticommutes with u.
    std::size_t vi = pool.size();
    for (std::size_t i = 0; i < pool.size(); ++i) {
      if (i == ui) continue;
      if (symplectic_pairing(u, SymplecticVector::from_raw(pool[i]))) {
        vi = i;
        break;
      }
    }
    if (vi == pool.size()) throw Error("logical basis extraction failed: no partner");
    SymplecticVector v = SymplecticVector::from_raw(pool[vi]);
    // Make the rest of the pool commute with both chosen vectors.
    std::vector<BitVec> next_pool;
    for (std::size_t i = 0; i < pool.size(); ++i) {
      if (i == ui || i == vi) continue;
      SymplecticVector w = SymplecticVector::from_raw(pool[i]);
      if (symplectic_pairing(w, v)) w ^= u;
      if (symplectic_pairing(w, u)) w ^= v;
      next_pool.push_back(w.to_raw());
    }
    pool = std::move(next_pool);
    span.append_row(u.to_raw());
    span.append_row(v.to_raw());
    pairs.emplace_back(u, v);
  }

  for (const auto& p : pairs) out.push_back(p.first);
  for (const auto& p : pairs) out.push_back(p.second);
  return out;
}

void validate_logical_basis(const StabilizerCode& c,
                            const std::vector<SymplecticVector>& basis) {
  std::size_t k = c.num_logicals();
  if (basis.size() != 2 * k) throw Error("logical basis: wrong size");
  GF2Matrix span = c.checks();
  for (const SymplecticVector& v : basis) {
    if (v.num_qubits() != c.num_qubits()) throw Error("logical basis: wrong qubit count");
    if (!c.in_normalizer(v)) throw Error("logical basis: element not in normalizer");
    if (in_rowspan(span, v.to_raw())) throw Error("logical basis: element dependent");
    span.append_row(v.to_raw());
  }
  for (std::size_t i = 0; i < 2 * k; ++i) {
    for (std::size_t j = 0; j < 2 * k; ++j) {
      bool expected = (i < k) && (j == k + i);
      expected = expected || ((j < k) && (i == k + j));
      if (symplectic_pairing(basis[i], basis[j]) != expected) {
        throw Error("logical basis: pairing matrix not in standard form");
      }
    }
  }
}

}  // namespace

bool StabilizerCode::in_stabilizer(const SymplecticVector& v) const {
  return in_rowspan(checks_rref_, v.to_raw());
}

bool StabilizerCode::in_normalizer(const SymplecticVector& v) const {
  for (std::size_t r = 0; r < checks_.rows(); ++r) {
    if (symplectic_pairing(check_row(r), v)) return false;
  }
  return true;
}

StabilizerCode StabilizerCode::with_logical_basis(
    const std::vector<SymplecticVector>& basis) const {
  StabilizerCode out = *this;
  validate_logical_basis(out, basis);
  out.logicals_ = basis;
  return out;
}

StabilizerCode code_from_checks(const GF2Matrix& checks) {
  if (checks.cols() % 2 != 0) throw Error("check matrix must have 2n columns");
  std::size_t n = checks.cols() / 2;

  // Isotropy first, so the error names an offending pair of input rows.
  for (std::size_t i = 0; i < checks.rows(); ++i) {
    SymplecticVector a = SymplecticVector::from_raw(checks.row(i));
    for (std::size_t j = i + 1; j < checks.rows(); ++j) {
      SymplecticVector b = SymplecticVector::from_raw(checks.row(j));
      if (symplectic_pairing(a, b)) {
        std::ostringstream msg;
        msg << "stabilizer rows " << i << " and " << j << " anticommute: " << a.to_string()
            << " vs " << b.to_string();
        throw Error(msg.str());
      }
    }
  }

  // Keep the first maximal independent subset of the input rows.
  GF2Matrix basis(0, 2 * n);
  for (std::size_t i = 0; i < checks.rows(); ++i) {
    if (!in_rowspan(basis, checks.row(i))) basis.append_row(checks.row(i));
  }
  std::size_t m = basis.rows();
  if (m > n) throw Error("isotropic subspace cannot exceed dimension n");

  StabilizerCode code;
  code.n_ = n;
  code.k_ = n - m;
  code.checks_ = basis;
  code.checks_rref_ = row_reduce(basis);
  code.logicals_ = derive_logical_basis(basis, n, code.k_);
  code.css_ = is_css(code).css;
  return code;
}

StabilizerCode code_from_paulis(const std::vector<std::string>& rows) {
  GF2Matrix checks(0, 0);
  std::size_t n = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    SymplecticVector v = pauli_parse(rows[i]);
    if (i == 0) {
      n = v.num_qubits();
      checks = GF2Matrix(0, 2 * n);
    } else if (v.num_qubits() != n) {
      throw Error("stabilizer rows have inconsistent lengths");
    }
    checks.append_row(v.to_raw());
  }
  if (rows.empty()) throw Error("code_from_paulis: need at least one row to fix n");
  return code_from_checks(checks);
}

CssSplit is_css(const StabilizerCode& c) {
  std::size_t n = c.num_qubits();
  std::size_t m = c.num_checks();
  CssSplit out;
  out.x_rows = GF2Matrix(0, 2 * n);
  out.z_rows = GF2Matrix(0, 2 * n);
  if (m == 0) {
    out.css = true;
    return out;
  }

  // Coefficient vectors whose row combination has zero z-part (pure X), or
  // zero x-part (pure Z).
  GF2Matrix z_block(m, n);
  GF2Matrix x_block(m, n);
  for (std::size_t r = 0; r < m; ++r) {
    z_block.row(r) = slice(c.checks().row(r), n, 2 * n);
    x_block.row(r) = slice(c.checks().row(r), 0, n);
  }
  GF2Matrix pure_x_coeffs = kernel(z_block.transposed());
  GF2Matrix pure_z_coeffs = kernel(x_block.transposed());

  auto combos = [&](const GF2Matrix& coeffs) {
    GF2Matrix rows(0, 2 * n);
    for (std::size_t r = 0; r < coeffs.rows(); ++r) {
      BitVec acc(2 * n);
      for (std::size_t i = 0; i < m; ++i) {
        if (coeffs.get(r, i)) acc ^= c.checks().row(i);
      }
      rows.append_row(acc);
    }
    return rows;
  };
  out.x_rows = combos(pure_x_coeffs);
  out.z_rows = combos(pure_z_coeffs);
  out.css = rank(out.x_rows) + rank(out.z_rows) == m;
  return out;
}

std::vector<SymplecticVector> logical_basis(const StabilizerCode& c) {
  return c.logical_basis();
}

std::optional<std::size_t> distance(const StabilizerCode& c, std::size_t max_weight) {
  std::size_t n = c.num_qubits();
  std::size_t m = c.num_checks();
  if (c.num_logicals() == 0) return std::nullopt;

  // Syndrome of each single-letter Pauli against every check row, packed
  // into words so the inner DFS is pure XOR.
  constexpr std::size_t kMaxWords = 4;
  std::size_t words = (m + 63) / 64;
  if (words > kMaxWords) throw Error("distance: too many checks");
  if (words == 0) words = 1;

  // letter index: 0 = X, 1 = Z, 2 = Y
  std::vector<std::array<std::uint64_t, kMaxWords>> syndrome(n * 3);
  for (std::size_t q = 0; q < n; ++q) {
    for (int letter = 0; letter < 3; ++letter) {
      SymplecticVector v(n);
      v.set_letter(q, letter == 0 ? 'X' : (letter == 1 ? 'Z' : 'Y'));
      std::array<std::uint64_t, kMaxWords> s{};
      for (std::size_t r = 0; r < m; ++r) {
        if (symplectic_pairing(c.check_row(r), v)) s[r / 64] |= std::uint64_t{1} << (r % 64);
      }
      syndrome[q * 3 + letter] = s;
    }
  }

  const RowReduceResult& stab_red = row_reduce(c.checks());

  std::vector<std::size_t> qubits;    // chosen qubit per level
  std::vector<int> letters;           // chosen letter per level
  std::array<std::uint64_t, kMaxWords> acc{};

  // Depth-first over supports of exactly `weight` qubits in increasing
  // order, all 3 letters per qubit.
  auto found_nontrivial = [&](std::size_t weight) {
    SymplecticVector v(n);
    for (std::size_t level = 0; level < weight; ++level) {
      int letter = letters[level];
      v.set_letter(qubits[level], letter == 0 ? 'X' : (letter == 1 ? 'Z' : 'Y'));
    }
    return !in_rowspan(stab_red, v.to_raw());
  };

  for (std::size_t weight = 1; weight <= max_weight && weight <= n; ++weight) {
    qubits.assign(weight, 0);
    letters.assign(weight, 0);
    std::size_t level = 0;
    qubits[0] = 0;
    letters[0] = -1;  // advanced before use
    acc = {};

    auto toggle = [&](std::size_t lvl) {
      const auto& s = syndrome[qubits[lvl] * 3 + static_cast<std::size_t>(letters[lvl])];
      for (std::size_t w = 0; w < words; ++w) acc[w] ^= s[w];
    };

    while (true) {
      // Advance the letter at the current level.
      if (letters[level] >= 0) toggle(level);
      ++letters[level];
      if (letters[level] == 3) {
        // Advance this level's qubit; on overflow backtrack.
        ++qubits[level];
        letters[level] = -1;
        if (qubits[level] + (weight - 1 - level) >= n) {
          if (level == 0) break;
          --level;
          continue;
        }
        continue;
      }
      toggle(level);
      if (level + 1 < weight) {
        ++level;
        qubits[level] = qubits[level - 1] + 1;
        letters[level] = -1;
        if (qubits[level] + (weight - 1 - level) >= n) {
          // Not enough qubits remain; backtrack immediately.
          letters[level] = 3;  // force overflow handling
          qubits[level] = n;   // sentinel
          --level;
          // undo nothing: nothing toggled at the aborted level
          continue;
        }
        continue;
      }
      bool zero = true;
      for (std::size_t w = 0; w < words; ++w) zero = zero && acc[w] == 0;
      if (zero && found_nontrivial(weight)) return weight;
    }
  }
  return std::nullopt;
}

std::optional<std::size_t> distance_meet(const StabilizerCode& c, std::size_t max_weight) {
  const std::size_t n = c.num_qubits();
  const std::size_t m = c.num_checks();
  if (c.num_logicals() == 0) return std::nullopt;
  if (n > 64) throw Error("distance_meet: more than 64 qubits");
  constexpr std::size_t kMaxWords = 4;
  std::size_t words = (m + 63) / 64;
  if (words > kMaxWords) throw Error("distance_meet: too many checks");
  if (words == 0) words = 1;

  // Syndrome and packed support of every single-letter Pauli.
  struct Single {
    std::array<std::uint64_t, kMaxWords> syn{};
    std::uint64_t x = 0, z = 0;
  };
  std::vector<Single> singles(n * 3);
  for (std::size_t q = 0; q < n; ++q) {
    for (int letter = 0; letter < 3; ++letter) {
      const char name = letter == 0 ? 'X' : (letter == 1 ? 'Z' : 'Y');
      SymplecticVector v(n);
      v.set_letter(q, name);
      Single s;
      for (std::size_t r = 0; r < m; ++r) {
        if (symplectic_pairing(c.check_row(r), v)) s.syn[r / 64] |= std::uint64_t{1} << (r % 64);
      }
      if (name != 'Z') s.x = std::uint64_t{1} << q;
      if (name != 'X') s.z = std::uint64_t{1} << q;
      singles[q * 3 + static_cast<std::size_t>(letter)] = s;
    }
  }

  struct Entry {
    std::array<std::uint64_t, kMaxWords> key{};
    std::uint64_t x = 0, z = 0;
    bool operator<(const Entry& o) const { return key < o.key; }
  };
  const std::size_t half = (max_weight + 1) / 2;
  std::vector<Entry> entries;
  Entry acc;
  entries.push_back(acc);  // identity, so light elements pair with it

  // Depth-first over supports of weight <= half, qubits strictly ascending.
  std::function<void(std::size_t, std::size_t)> extend = [&](std::size_t first,
                                                             std::size_t depth) {
    if (depth == half) return;
    for (std::size_t q = first; q < n; ++q) {
      for (int letter = 0; letter < 3; ++letter) {
        const Single& s = singles[q * 3 + static_cast<std::size_t>(letter)];
        const Entry prev = acc;
        for (std::size_t w = 0; w < kMaxWords; ++w) acc.key[w] ^= s.syn[w];
        acc.x ^= s.x;
        acc.z ^= s.z;
        entries.push_back(acc);
        extend(q + 1, depth + 1);
        acc = prev;
      }
    }
  };
  extend(0, 0);
  std::sort(entries.begin(), entries.end());

  const RowReduceResult stab_red = row_reduce(c.checks());
  std::size_t best = static_cast<std::size_t>(-1);
  const auto consider = [&](const Entry& a, const Entry& b) {
    const std::uint64_t x = a.x ^ b.x;
    const std::uint64_t z = a.z ^ b.z;
    const auto weight = static_cast<std::size_t>(std::popcount(x | z));
    if (weight == 0 || weight >= best) return;
    BitVec raw(2 * n);
    for (std::size_t q = 0; q < n; ++q) {
      if ((x >> q) & 1) raw.set(q, true);
      if ((z >> q) & 1) raw.set(n + q, true);
    }
    if (!in_rowspan(stab_red, raw)) best = weight;
  };
  std::size_t lo = 0;
  while (lo < entries.size()) {
    std::size_t hi = lo + 1;
    while (hi < entries.size() && entries[hi].key == entries[lo].key) ++hi;
    for (std::size_t i = lo; i < hi; ++i) {
      for (std::size_t j = i + 1; j < hi; ++j) consider(entries[i], entries[j]);
    }
    lo = hi;
  }
  if (best <= max_weight) return best;
  return std::nullopt;
}

SymplecticVector permuted_vector(const SymplecticVector& v,
                                 const std::vector<std::size_t>& perm) {
  std::size_t n = v.num_qubits();
  if (perm.size() != n) throw Error("permutation size mismatch");
  SymplecticVector out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.x_part().set(perm[i], v.x_part().get(i));
    out.z_part().set(perm[i], v.z_part().get(i));
  }
  return out;
}

StabilizerCode permuted_code(const StabilizerCode& c, const std::vector<std::size_t>& perm) {
  GF2Matrix checks(0, 2 * c.num_qubits());
  for (std::size_t r = 0; r < c.num_checks(); ++r) {
    checks.append_row(permuted_vector(c.check_row(r), perm).to_raw());
  }
  return code_from_checks(checks);
}

std::optional<std::vector<std::size_t>> code_isomorphic(const StabilizerCode& a,
                                                        const StabilizerCode& b) {
  if (a.num_qubits() != b.num_qubits()) return std::nullopt;
  std::size_t n = a.num_qubits();
  if (n > 12) throw Error("code_isomorphic: unsupported size (n > 12)");
  if (a.num_checks() != b.num_checks()) return std::nullopt;
  std::size_t m = a.num_checks();

  // Enumerate both stabilizer groups; per-qubit signature = letter counts
  // over the whole group, which any relabeling must preserve.
  auto group_elements = [&](const StabilizerCode& c) {
    std::vector<SymplecticVector> out;
    std::size_t total = std::size_t{1} << m;
    out.reserve(total);
    for (std::size_t mask = 0; mask < total; ++mask) {
      SymplecticVector acc(n);
      for (std::size_t r = 0; r < m; ++r) {
        if ((mask >> r) & 1u) acc ^= c.check_row(r);
      }
      out.push_back(acc);
    }
    return out;
  };
  std::vector<SymplecticVector> ga = group_elements(a);
  std::vector<SymplecticVector> gb = group_elements(b);

  auto signatures = [&](const std::vector<SymplecticVector>& group) {
    std::vector<std::array<std::size_t, 3>> sig(n, {0, 0, 0});
    for (const SymplecticVector& v : group) {
      for (std::size_t q = 0; q < n; ++q) {
        char c = v.letter_at(q);
        if (c == 'X') ++sig[q][0];
        if (c == 'Y') ++sig[q][1];
        if (c == 'Z') ++sig[q][2];
      }
    }
    return sig;
  };
  std::vector<std::array<std::size_t, 3>> sig_a = signatures(ga);
  std::vector<std::array<std::size_t, 3>> sig_b = signatures(gb);

  RowReduceResult b_red = row_reduce(b.checks());
  std::vector<std::size_t> perm(n, 0);
  std::vector<bool> used(n, false);

  auto leaf_check = [&]() {
    for (std::size_t r = 0; r < m; ++r) {
      if (!in_rowspan(b_red, permuted_vector(a.check_row(r), perm).to_raw())) return false;
    }
    return true;
  };

  // Depth-first assignment of images with signature pruning.
  std::vector<std::size_t> stack;
  std::size_t level = 0;
  std::vector<std::size_t> next_candidate(n + 1, 0);
  while (true) {
    if (level == n) {
      if (leaf_check()) return perm;
      --level;
      used[perm[level]] = false;
      continue;
    }
    bool advanced = false;
    for (std::size_t cand = next_candidate[level]; cand < n; ++cand) {
      if (used[cand] || sig_a[level] != sig_b[cand]) continue;
      perm[level] = cand;
      used[cand] = true;
      next_candidate[level] = cand + 1;
      next_candidate[level + 1] = 0;
      ++level;
      advanced = true;
      break;
    }
    if (!advanced) {
      next_candidate[level] = 0;
      if (level == 0) return std::nullopt;
      --level;
      used[perm[level]] = false;
    }
  }
}

StabilizerCode random_code(std::size_t n, std::size_t m, std::uint64_t seed) {
  if (m > n) throw Error("random_code: m may not exceed n");
  std::mt19937_64 rng(seed);

  GF2Matrix chosen(0, 2 * n);
  while (chosen.rows() < m) {
    // Basis of vectors commuting with everything chosen so far.
    GF2Matrix commuting = [&] {
      if (chosen.rows() == 0) return GF2Matrix::identity(2 * n);
      GF2Matrix swapped(chosen.rows(), 2 * n);
      for (std::size_t r = 0; r < chosen.rows(); ++r) {
        BitVec x = slice(chosen.row(r), 0, n);
        BitVec z = slice(chosen.row(r), n, 2 * n);
        swapped.row(r) = concat(z, x);
      }
      return kernel(swapped);
    }();
    // Random combination, retried until independent of the current rows.
    for (int attempt = 0; attempt < 256; ++attempt) {
      BitVec v(2 * n);
      for (std::size_t r = 0; r < commuting.rows(); ++r) {
        if (rng() & 1u) v ^= commuting.row(r);
      }
      if (!v.is_zero() && !in_rowspan(chosen, v)) {
        chosen.append_row(v);
        break;
      }
    }
  }
  return code_from_checks(chosen);
}

std::string code_to_file_text(const StabilizerCode& c) {
  std::ostringstream out;
  out << c.num_qubits() << " " << c.num_checks() << "\n";
  for (std::size_t r = 0; r < c.num_checks(); ++r) {
    out << c.check_row(r).to_string(true) << "\n";
  }
  return out.str();
}

StabilizerCode code_from_file_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t n = 0;
  std::size_t m = 0;
  bool have_header = false;
  std::vector<std::string> rows;
  while (std::getline(in, line)) {
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream fields(line);
    if (!have_header) {
      if (fields >> n >> m) have_header = true;
      continue;
    }
    std::string pauli;
    while (fields >> pauli) rows.push_back(pauli);
  }
  if (!have_header) throw Error("code file: missing 'n m' header");
  if (rows.size() != m) {
    std::ostringstream msg;
    msg << "code file: expected " << m << " rows, found " << rows.size();
    throw Error(msg.str());
  }
  if (m == 0) {
    // No rows carry n, so build the empty check matrix directly.
    return code_from_checks(GF2Matrix(0, 2 * n));
  }
  StabilizerCode code = code_from_paulis(rows);
  if (code.num_qubits() != n) throw Error("code file: header n disagrees with rows");
  return code;
}

}  // namespace qec
