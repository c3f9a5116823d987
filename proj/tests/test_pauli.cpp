#include "qec/pauli.hpp"

#include <string>
#include <vector>

#include "doctest.h"

using namespace qec;

namespace {

// Enumerate every Pauli string of length n in a fixed letter order.
std::vector<std::string> all_pauli_strings(std::size_t n) {
  const std::string letters = "IXZY";
  std::vector<std::string> out{""};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::string> next;
    for (const std::string& prefix : out) {
      for (char c : letters) next.push_back(prefix + c);
    }
    out = std::move(next);
  }
  return out;
}

std::size_t count_non_identity(const std::string& s) {
  std::size_t count = 0;
  for (char c : s) {
    if (c != 'I') ++count;
  }
  return count;
}

}  // namespace

TEST_CASE("parse maps letters to the x/z bit pair") {
  SymplecticVector yz = pauli_parse("YZ");
  CHECK(yz.x_part().to_string() == "10");
  CHECK(yz.z_part().to_string() == "11");
  CHECK(yz.to_raw().to_string() == "1011");

  CHECK(pauli_parse("II").is_identity());

  SymplecticVector v = pauli_parse("X.ZY");
  CHECK(v.x_part().to_string() == "1001");
  CHECK(v.z_part().to_string() == "0011");
  CHECK(v.to_string() == "XIZY");
  CHECK(v.to_string(true) == "X.ZY");

  CHECK_THROWS_AS(pauli_parse("XQ"), Error);
}

TEST_CASE("parse and render round-trip over every string up to n=4") {
  for (std::size_t n = 0; n <= 4; ++n) {
    for (const std::string& s : all_pauli_strings(n)) {
      SymplecticVector v = pauli_parse(s);
      CHECK(v.to_string() == s);
      CHECK(pauli_parse(v.to_string(true)) == v);
      CHECK(SymplecticVector::from_raw(v.to_raw()) == v);
    }
  }
}

TEST_CASE("pairing detects anticommutation") {
  CHECK(symplectic_pairing(pauli_parse("X"), pauli_parse("Z")) == true);
  CHECK(symplectic_pairing(pauli_parse("X"), pauli_parse("Y")) == true);
  CHECK(symplectic_pairing(pauli_parse("Z"), pauli_parse("Y")) == true);
  CHECK(symplectic_pairing(pauli_parse("X"), pauli_parse("X")) == false);
  CHECK(symplectic_pairing(pauli_parse("XYZI"), pauli_parse("IXYZ")) == false);
  CHECK_THROWS_AS(symplectic_pairing(pauli_parse("X"), pauli_parse("XX")), Error);
}

TEST_CASE("pairing is symmetric, bilinear, and zero on the diagonal") {
  for (const std::string& a : all_pauli_strings(3)) {
    SymplecticVector u = pauli_parse(a);
    CHECK(symplectic_pairing(u, u) == false);
    for (const std::string& b : all_pauli_strings(3)) {
      SymplecticVector v = pauli_parse(b);
      CHECK(symplectic_pairing(u, v) == symplectic_pairing(v, u));
      // Anticommutation count oracle: letters anticommute exactly when both
      // are non-identity and different.
      std::size_t clashes = 0;
      for (std::size_t i = 0; i < 3; ++i) {
        char x = a[i];
        char y = b[i];
        if (x != 'I' && y != 'I' && x != y) ++clashes;
      }
      CHECK(symplectic_pairing(u, v) == (clashes % 2 == 1));
    }
  }
}

TEST_CASE("pairing is linear in each argument") {
  for (const std::string& a : all_pauli_strings(2)) {
    for (const std::string& b : all_pauli_strings(2)) {
      for (const std::string& c : all_pauli_strings(2)) {
        SymplecticVector u = pauli_parse(a);
        SymplecticVector v = pauli_parse(b);
        SymplecticVector w = pauli_parse(c);
        bool lhs = symplectic_pairing(u ^ v, w);
        bool rhs = symplectic_pairing(u, w) ^ symplectic_pairing(v, w);
        CHECK(lhs == rhs);
      }
    }
  }
}

TEST_CASE("weight equals the count of non-identity letters") {
  CHECK(pauli_weight(pauli_parse("YZ")) == 2);
  CHECK(pauli_weight(SymplecticVector(5)) == 0);
  CHECK(pauli_weight(pauli_parse("XYZI")) == 3);
  for (std::size_t n = 0; n <= 4; ++n) {
    for (const std::string& s : all_pauli_strings(n)) {
      CHECK(pauli_weight(pauli_parse(s)) == count_non_identity(s));
    }
  }
}

TEST_CASE("xor composes Pauli letters modulo phase") {
  SymplecticVector prod = pauli_parse("XXY") ^ pauli_parse("ZIY");
  CHECK(prod.to_string() == "YXI");
}
