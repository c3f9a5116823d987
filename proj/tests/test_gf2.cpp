#include "qec/gf2.hpp"

#include <random>
#include <set>

#include "doctest.h"

using namespace qec;

namespace {

// Independent oracle: rank as log2 of the number of distinct vectors in the
// row span, found by enumerating every row subset. Only usable for few rows.
std::size_t brute_rank(const GF2Matrix& m) {
  std::set<std::string> span;
  std::size_t subsets = std::size_t{1} << m.rows();
  for (std::size_t mask = 0; mask < subsets; ++mask) {
    BitVec acc(m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if ((mask >> r) & 1u) acc ^= m.row(r);
    }
    span.insert(acc.to_string());
  }
  std::size_t rank = 0;
  while ((std::size_t{1} << rank) < span.size()) ++rank;
  return rank;
}

// Independent oracle: the full null space as a set of vectors, found by
// testing every candidate. Only usable for small column counts.
std::set<std::string> brute_kernel_set(const GF2Matrix& m) {
  std::set<std::string> out;
  std::size_t total = std::size_t{1} << m.cols();
  for (std::size_t mask = 0; mask < total; ++mask) {
    BitVec v(m.cols());
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if ((mask >> c) & 1u) v.set(c, true);
    }
    if (m.mul_vec(v).is_zero()) out.insert(v.to_string());
  }
  return out;
}

GF2Matrix random_matrix(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  GF2Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      m.set(r, c, (rng() >> 13) & 1u);
    }
  }
  return m;
}

}  // namespace

TEST_CASE("BitVec basics") {
  BitVec v(70);
  CHECK(v.size() == 70);
  CHECK(v.is_zero());
  v.set(0, true);
  v.set(69, true);
  CHECK(v.get(0));
  CHECK(v.get(69));
  CHECK_FALSE(v.get(35));
  CHECK(v.popcount() == 2);
  v.flip(69);
  CHECK(v.popcount() == 1);

  BitVec a = BitVec::from_string("1101");
  BitVec b = BitVec::from_string("0111");
  CHECK((a ^ b).to_string() == "1010");
  CHECK(a.dot(b) == ((1 + 1) % 2));  // overlap at positions 1 and 3
  CHECK(a.and_with(b).to_string() == "0101");
  CHECK(concat(a, b).to_string() == "11010111");
  CHECK(slice(concat(a, b), 4, 8) == b);
  CHECK(BitVec::from_string("0011") < BitVec::from_string("0101"));
  CHECK_THROWS_AS(BitVec::from_string("01x"), Error);
  CHECK_THROWS_AS(a.dot(BitVec(5)), Error);
}

TEST_CASE("row_reduce on identity") {
  RowReduceResult r = row_reduce(GF2Matrix::identity(2));
  CHECK(r.rank == 2);
  CHECK(r.pivots == std::vector<std::size_t>{0, 1});
  CHECK(r.rref == GF2Matrix::identity(2));
}

TEST_CASE("row_reduce on zero matrix") {
  RowReduceResult r = row_reduce(GF2Matrix(3, 4));
  CHECK(r.rank == 0);
  CHECK(r.pivots.empty());
  CHECK(r.rref.rows() == 0);
  CHECK(r.rref.cols() == 4);
}

TEST_CASE("row_reduce with a dependent row") {
  GF2Matrix m = GF2Matrix::from_string("110\n011\n101\n");
  CHECK(brute_rank(m) == 2);  // oracle first: third row is the sum of the others
  RowReduceResult r = row_reduce(m);
  CHECK(r.rank == 2);
  CHECK(same_rowspan(m, r.rref));
}

TEST_CASE("row_reduce is idempotent and rank matches transpose on random input") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    GF2Matrix m = random_matrix(1 + rng() % 6, 1 + rng() % 6, rng);
    RowReduceResult r = row_reduce(m);
    CHECK(r.rank == brute_rank(m));
    CHECK(rank(m.transposed()) == r.rank);
    RowReduceResult again = row_reduce(r.rref);
    CHECK(again.rref == r.rref);
    CHECK(again.rank == r.rank);
  }
}

TEST_CASE("kernel of identity is empty") {
  GF2Matrix k = kernel(GF2Matrix::identity(4));
  CHECK(k.rows() == 0);
  CHECK(k.cols() == 4);
}

TEST_CASE("kernel of zero matrix is everything") {
  GF2Matrix k = kernel(GF2Matrix(2, 3));
  CHECK(k.rows() == 3);
  CHECK(rank(k) == 3);
}

TEST_CASE("kernel of a rank-2 map") {
  GF2Matrix m = GF2Matrix::from_string("110\n011\n");
  std::set<std::string> oracle = brute_kernel_set(m);
  CHECK(oracle.count("111") == 1);
  CHECK(oracle.size() == 2);  // zero vector plus (1 1 1)
  GF2Matrix k = kernel(m);
  REQUIRE(k.rows() == 1);
  CHECK(k.row(0).to_string() == "111");
}

TEST_CASE("kernel properties on random input") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    std::size_t rows = 1 + rng() % 5;
    std::size_t cols = 1 + rng() % 8;
    GF2Matrix m = random_matrix(rows, cols, rng);
    GF2Matrix k = kernel(m);
    for (std::size_t r = 0; r < k.rows(); ++r) {
      CHECK(m.mul_vec(k.row(r)).is_zero());
    }
    CHECK(rank(k) == k.rows());
    CHECK(k.rows() + rank(m) == cols);
    std::set<std::string> oracle = brute_kernel_set(m);
    CHECK(oracle.size() == (std::size_t{1} << k.rows()));
  }
}

TEST_CASE("solve against enumeration") {
  GF2Matrix id = GF2Matrix::identity(3);
  BitVec b = BitVec::from_string("101");
  auto x = solve(id, b);
  REQUIRE(x.has_value());
  CHECK(*x == b);

  auto none = solve(GF2Matrix(2, 3), BitVec::from_string("10"));
  CHECK_FALSE(none.has_value());

  GF2Matrix m = GF2Matrix::from_string("11\n11\n");
  // Oracle: none of the four candidate vectors maps to (1,0).
  std::size_t hits = 0;
  for (std::size_t mask = 0; mask < 4; ++mask) {
    BitVec v(2);
    v.set(0, mask & 1u);
    v.set(1, (mask >> 1) & 1u);
    if (m.mul_vec(v) == BitVec::from_string("10")) ++hits;
  }
  CHECK(hits == 0);
  CHECK_FALSE(solve(m, BitVec::from_string("10")).has_value());
}

TEST_CASE("solve finds a witness whenever one exists") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 80; ++trial) {
    std::size_t rows = 1 + rng() % 5;
    std::size_t cols = 1 + rng() % 6;
    GF2Matrix m = random_matrix(rows, cols, rng);
    BitVec target(cols);
    for (std::size_t c = 0; c < cols; ++c) target.set(c, (rng() >> 7) & 1u);
    BitVec b = m.mul_vec(target);
    auto x = solve(m, b);
    REQUIRE(x.has_value());
    CHECK(m.mul_vec(*x) == b);
  }
}

TEST_CASE("matrix text round-trip and block operations") {
  GF2Matrix m = GF2Matrix::from_string("101\n010\n");
  CHECK(m.to_string() == "101\n010\n");
  CHECK(GF2Matrix::from_string(m.to_string()) == m);

  GF2Matrix h = hstack(m, GF2Matrix::identity(2));
  CHECK(h.cols() == 5);
  CHECK(h.row(0).to_string() == "10110");
  GF2Matrix v = vstack(GF2Matrix::identity(3), m);
  CHECK(v.rows() == 5);

  GF2Matrix prod = m.mul(m.transposed());
  CHECK(prod.rows() == 2);
  CHECK(prod.cols() == 2);
  // Row-by-row inner products, computed by hand: (101)·(101)=0, (101)·(010)=0, (010)·(010)=1.
  CHECK(prod.to_string() == "00\n01\n");
}

TEST_CASE("rowspan helpers") {
  GF2Matrix m = GF2Matrix::from_string("1100\n0110\n");
  CHECK(in_rowspan(m, BitVec::from_string("1010")));
  CHECK_FALSE(in_rowspan(m, BitVec::from_string("0001")));
  CHECK(same_rowspan(m, GF2Matrix::from_string("1010\n0110\n")));
  CHECK_FALSE(same_rowspan(m, GF2Matrix::from_string("1100\n0111\n")));
}
