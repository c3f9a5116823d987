#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qec {

// Domain error for the whole library. Callers that want to distinguish
// usage errors from math errors can catch this type.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Fixed-length bit vector over GF(2), packed 64 bits per word.
// Value-semantic and cheap to copy at the sizes used here (<= a few
// hundred bits).
class BitVec {
 public:
  BitVec() = default;
  explicit BitVec(std::size_t size);

  static BitVec from_string(const std::string& s);  // '0'/'1' characters

  std::size_t size() const { return size_; }
  bool get(std::size_t i) const;
  void set(std::size_t i, bool value);
  void flip(std::size_t i);

  BitVec& operator^=(const BitVec& other);
  friend BitVec operator^(BitVec a, const BitVec& b) { return a ^= b; }

  // Parity of the AND of two vectors: the GF(2) inner product.
  bool dot(const BitVec& other) const;
  // Bitwise AND, used for overlap counting.
  BitVec and_with(const BitVec& other) const;

  std::size_t popcount() const;
  bool is_zero() const;
  bool any() const { return !is_zero(); }

  std::string to_string() const;

  bool operator==(const BitVec& other) const;
  bool operator!=(const BitVec& other) const { return !(*this == other); }
  // Lexicographic order on the bit string; used for canonical choices.
  bool operator<(const BitVec& other) const;

  // Direct word access for hot loops (distance search).
  const std::vector<std::uint64_t>& words() const { return words_; }

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
  void check_index(std::size_t i) const;
};

// Concatenate two bit vectors: a followed by b.
BitVec concat(const BitVec& a, const BitVec& b);
// Slice bits [begin, end) into a new vector.
BitVec slice(const BitVec& v, std::size_t begin, std::size_t end);

// Dense matrix over GF(2), one BitVec per row.
class GF2Matrix {
 public:
  GF2Matrix() = default;
  GF2Matrix(std::size_t rows, std::size_t cols);

  static GF2Matrix identity(std::size_t n);
  static GF2Matrix from_rows(const std::vector<BitVec>& rows);
  // Parse newline-separated '0'/'1' row strings.
  static GF2Matrix from_string(const std::string& text);

  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }

  bool get(std::size_t r, std::size_t c) const { return rows_.at(r).get(c); }
  void set(std::size_t r, std::size_t c, bool value) { rows_.at(r).set(c, value); }

  const BitVec& row(std::size_t r) const { return rows_.at(r); }
  BitVec& row(std::size_t r) { return rows_.at(r); }
  const std::vector<BitVec>& row_list() const { return rows_; }

  void append_row(const BitVec& row);

  GF2Matrix transposed() const;
  GF2Matrix mul(const GF2Matrix& other) const;
  BitVec mul_vec(const BitVec& v) const;

  bool operator==(const GF2Matrix& other) const;
  bool operator!=(const GF2Matrix& other) const { return !(*this == other); }

  bool is_zero() const;

  std::string to_string() const;  // one '0'/'1' row string per line

 private:
  std::size_t cols_ = 0;
  std::vector<BitVec> rows_;
};

GF2Matrix vstack(const GF2Matrix& top, const GF2Matrix& bottom);
GF2Matrix hstack(const GF2Matrix& left, const GF2Matrix& right);

struct RowReduceResult {
  GF2Matrix rref;
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;  // pivot column per nonzero rref row
};

// Reduced row echelon form with leftmost-pivot tie-breaking. Row space
// is preserved; rank is the number of nonzero rref rows.
RowReduceResult row_reduce(const GF2Matrix& m);

std::size_t rank(const GF2Matrix& m);

// Basis of the right null space {v : m v = 0}, with cols(m) - rank(m) rows.
GF2Matrix kernel(const GF2Matrix& m);

// Some x with m x = b, or nullopt if the system is inconsistent.
std::optional<BitVec> solve(const GF2Matrix& m, const BitVec& b);

// Inverse of a square invertible matrix; throws on singular input.
GF2Matrix inverse(const GF2Matrix& m);

// Rowspan membership and subspace comparison, built on row_reduce.
bool in_rowspan(const RowReduceResult& reduced, const BitVec& v);
bool in_rowspan(const GF2Matrix& m, const BitVec& v);
bool same_rowspan(const GF2Matrix& a, const GF2Matrix& b);

}  // namespace qec
