#include "qec/gf2.hpp"

#include <bit>
#include <sstream>

namespace qec {

namespace {
constexpr std::size_t kWordBits = 64;

std::size_t word_count(std::size_t bits) { return (bits + kWordBits - 1) / kWordBits; }
}  // namespace

BitVec::BitVec(std::size_t size) : size_(size), words_(word_count(size), 0) {}

BitVec BitVec::from_string(const std::string& s) {
  BitVec v(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '1') {
      v.set(i, true);
    } else if (s[i] != '0') {
      throw Error("BitVec::from_string: expected '0' or '1', got '" + std::string(1, s[i]) + "'");
    }
  }
  return v;
}

void BitVec::check_index(std::size_t i) const {
  if (i >= size_) throw Error("BitVec index out of range");
}

bool BitVec::get(std::size_t i) const {
  check_index(i);
  return (words_[i / kWordBits] >> (i % kWordBits)) & 1u;
}

void BitVec::set(std::size_t i, bool value) {
  check_index(i);
  std::uint64_t mask = std::uint64_t{1} << (i % kWordBits);
  if (value) {
    words_[i / kWordBits] |= mask;
  } else {
    words_[i / kWordBits] &= ~mask;
  }
}

void BitVec::flip(std::size_t i) {
  check_index(i);
  words_[i / kWordBits] ^= std::uint64_t{1} << (i % kWordBits);
}

BitVec& BitVec::operator^=(const BitVec& other) {
  if (size_ != other.size_) throw Error("BitVec xor: size mismatch");
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
  return *this;
}

bool BitVec::dot(const BitVec& other) const {
  if (size_ != other.size_) throw Error("BitVec dot: size mismatch");
  std::uint64_t acc = 0;
  for (std::size_t w = 0; w < words_.size(); ++w) acc ^= words_[w] & other.words_[w];
  return std::popcount(acc) & 1u;
}

BitVec BitVec::and_with(const BitVec& other) const {
  if (size_ != other.size_) throw Error("BitVec and: size mismatch");
  BitVec out(size_);
  for (std::size_t w = 0; w < words_.size(); ++w) out.words_[w] = words_[w] & other.words_[w];
  return out;
}

std::size_t BitVec::popcount() const {
  std::size_t total = 0;
  for (std::uint64_t w : words_) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

bool BitVec::is_zero() const {
  for (std::uint64_t w : words_) {
    if (w != 0) return false;
  }
  return true;
}

std::string BitVec::to_string() const {
  std::string s(size_, '0');
  for (std::size_t i = 0; i < size_; ++i) {
    if (get(i)) s[i] = '1';
  }
  return s;
}

bool BitVec::operator==(const BitVec& other) const {
  return size_ == other.size_ && words_ == other.words_;
}

bool BitVec::operator<(const BitVec& other) const {
  if (size_ != other.size_) return size_ < other.size_;
  for (std::size_t i = 0; i < size_; ++i) {
    bool a = get(i);
    bool b = other.get(i);
    if (a != b) return b;  // '0' sorts before '1'
  }
  return false;
}

BitVec concat(const BitVec& a, const BitVec& b) {
  BitVec out(a.size() + b.size());
  for (std::size_t i = 0; i < a.size(); ++i) out.set(i, a.get(i));
  for (std::size_t i = 0; i < b.size(); ++i) out.set(a.size() + i, b.get(i));
  return out;
}

BitVec slice(const BitVec& v, std::size_t begin, std::size_t end) {
  if (begin > end || end > v.size()) throw Error("BitVec slice: bad range");
  BitVec out(end - begin);
  for (std::size_t i = begin; i < end; ++i) out.set(i - begin, v.get(i));
  return out;
}

GF2Matrix::GF2Matrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows, BitVec(cols)) {}

GF2Matrix GF2Matrix::identity(std::size_t n) {
  GF2Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
  return m;
}

GF2Matrix GF2Matrix::from_rows(const std::vector<BitVec>& rows) {
  GF2Matrix m;
  if (rows.empty()) return m;
  m.cols_ = rows.front().size();
  for (const BitVec& r : rows) {
    if (r.size() != m.cols_) throw Error("GF2Matrix::from_rows: ragged rows");
    m.rows_.push_back(r);
  }
  return m;
}

GF2Matrix GF2Matrix::from_string(const std::string& text) {
  std::vector<BitVec> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    rows.push_back(BitVec::from_string(line));
  }
  return from_rows(rows);
}

void GF2Matrix::append_row(const BitVec& row) {
  if (rows_.empty() && cols_ == 0) cols_ = row.size();
  if (row.size() != cols_) throw Error("GF2Matrix::append_row: width mismatch");
  rows_.push_back(row);
}

GF2Matrix GF2Matrix::transposed() const {
  GF2Matrix t(cols_, rows());
  for (std::size_t r = 0; r < rows(); ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      if (get(r, c)) t.set(c, r, true);
    }
  }
  return t;
}

GF2Matrix GF2Matrix::mul(const GF2Matrix& other) const {
  if (cols_ != other.rows()) throw Error("GF2Matrix::mul: shape mismatch");
  GF2Matrix out(rows(), other.cols());
  for (std::size_t r = 0; r < rows(); ++r) {
    for (std::size_t k = 0; k < cols_; ++k) {
      if (get(r, k)) out.rows_[r] ^= other.rows_[k];
    }
  }
  return out;
}

BitVec GF2Matrix::mul_vec(const BitVec& v) const {
  if (cols_ != v.size()) throw Error("GF2Matrix::mul_vec: shape mismatch");
  BitVec out(rows());
  for (std::size_t r = 0; r < rows(); ++r) out.set(r, rows_[r].dot(v));
  return out;
}

bool GF2Matrix::operator==(const GF2Matrix& other) const {
  return cols_ == other.cols_ && rows_ == other.rows_;
}

bool GF2Matrix::is_zero() const {
  for (const BitVec& r : rows_) {
    if (!r.is_zero()) return false;
  }
  return true;
}

std::string GF2Matrix::to_string() const {
  std::string out;
  for (const BitVec& r : rows_) {
    out += r.to_string();
    out += '\n';
  }
  return out;
}

GF2Matrix vstack(const GF2Matrix& top, const GF2Matrix& bottom) {
  if (top.rows() == 0) return bottom;
  if (bottom.rows() == 0) return top;
  if (top.cols() != bottom.cols()) throw Error("vstack: width mismatch");
  GF2Matrix out = top;
  for (std::size_t r = 0; r < bottom.rows(); ++r) out.append_row(bottom.row(r));
  return out;
}

GF2Matrix hstack(const GF2Matrix& left, const GF2Matrix& right) {
  if (left.rows() != right.rows()) throw Error("hstack: height mismatch");
  GF2Matrix out(left.rows(), left.cols() + right.cols());
  for (std::size_t r = 0; r < left.rows(); ++r) {
    out.row(r) = concat(left.row(r), right.row(r));
  }
  return out;
}

RowReduceResult row_reduce(const GF2Matrix& m) {
  RowReduceResult result;
  std::vector<BitVec> rows = m.row_list();
  std::size_t pivot_row = 0;
  for (std::size_t col = 0; col < m.cols() && pivot_row < rows.size(); ++col) {
    std::size_t found = rows.size();
    for (std::size_t r = pivot_row; r < rows.size(); ++r) {
      if (rows[r].get(col)) {
        found = r;
        break;
      }
    }
    if (found == rows.size()) continue;
    std::swap(rows[pivot_row], rows[found]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r != pivot_row && rows[r].get(col)) rows[r] ^= rows[pivot_row];
    }
    result.pivots.push_back(col);
    ++pivot_row;
  }
  result.rank = pivot_row;
  // Keep zero rows out of the rref so membership tests are direct.
  rows.resize(pivot_row, BitVec(m.cols()));
  GF2Matrix rref(0, m.cols());
  for (const BitVec& r : rows) rref.append_row(r);
  if (pivot_row == 0) rref = GF2Matrix(0, m.cols());
  result.rref = rref;
  return result;
}

std::size_t rank(const GF2Matrix& m) { return row_reduce(m).rank; }

GF2Matrix kernel(const GF2Matrix& m) {
  RowReduceResult red = row_reduce(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t p : red.pivots) is_pivot[p] = true;

  GF2Matrix basis(0, m.cols());
  for (std::size_t free_col = 0; free_col < m.cols(); ++free_col) {
    if (is_pivot[free_col]) continue;
    BitVec v(m.cols());
    v.set(free_col, true);
    // Back-substitute: pivot row i forces the pivot column's value.
    for (std::size_t i = 0; i < red.rank; ++i) {
      if (red.rref.get(i, free_col)) v.set(red.pivots[i], true);
    }
    basis.append_row(v);
  }
  return basis;
}

std::optional<BitVec> solve(const GF2Matrix& m, const BitVec& b) {
  if (b.size() != m.rows()) throw Error("solve: rhs length mismatch");
  // Row-reduce the augmented matrix [m | b].
  GF2Matrix aug(m.rows(), m.cols() + 1);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    aug.row(r) = concat(m.row(r), BitVec(1));
    aug.set(r, m.cols(), b.get(r));
  }
  RowReduceResult red = row_reduce(aug);
  BitVec x(m.cols());
  for (std::size_t i = 0; i < red.rank; ++i) {
    if (red.pivots[i] == m.cols()) return std::nullopt;  // 0 = 1 row
    if (red.rref.get(i, m.cols())) x.set(red.pivots[i], true);
  }
  return x;
}

GF2Matrix inverse(const GF2Matrix& m) {
  std::size_t n = m.rows();
  if (m.cols() != n) throw Error("inverse: matrix is not square");
  // Reduce [m | I]; the right half becomes the inverse.
  GF2Matrix eye = GF2Matrix::identity(n);
  GF2Matrix aug(0, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    aug.append_row(concat(m.row(r), eye.row(r)));
  }
  RowReduceResult red = row_reduce(aug);
  if (red.rank != n) throw Error("inverse: matrix is singular");
  for (std::size_t i = 0; i < n; ++i) {
    if (red.pivots[i] != i) throw Error("inverse: matrix is singular");
  }
  GF2Matrix out(0, n);
  for (std::size_t r = 0; r < n; ++r) {
    out.append_row(slice(red.rref.row(r), n, 2 * n));
  }
  return out;
}

bool in_rowspan(const RowReduceResult& reduced, const BitVec& v) {
  BitVec w = v;
  for (std::size_t i = 0; i < reduced.rank; ++i) {
    if (w.get(reduced.pivots[i])) w ^= reduced.rref.row(i);
  }
  return w.is_zero();
}

bool in_rowspan(const GF2Matrix& m, const BitVec& v) { return in_rowspan(row_reduce(m), v); }

bool same_rowspan(const GF2Matrix& a, const GF2Matrix& b) {
  if (a.cols() != b.cols()) return false;
  RowReduceResult ra = row_reduce(a);
  RowReduceResult rb = row_reduce(b);
  return ra.rank == rb.rank && ra.rref == rb.rref;
}

}  // namespace qec
