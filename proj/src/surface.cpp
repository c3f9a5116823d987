#include "qec/surface.hpp"

#include "qec/double.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <queue>
#include <random>
#include <sstream>
#include <utility>

namespace qec {

namespace {

int letter_index(char c) {
  switch (c) {
    case 'X':
      return 0;
    case 'Y':
      return 1;
    case 'Z':
      return 2;
    default:
      throw Error(std::string("invalid Pauli letter '") + c + "'");
  }
}

void xor_letter(SymplecticVector& v, std::size_t qubit, char letter) {
  if (letter == 'X' || letter == 'Y') v.x_part().flip(qubit);
  if (letter == 'Z' || letter == 'Y') v.z_part().flip(qubit);
}

}  // namespace

GenonGraph::GenonGraph(std::vector<std::vector<int>> rotations, std::vector<int> theta)
    : rotations_(std::move(rotations)), theta_(std::move(theta)) {
  const std::size_t num_darts = theta_.size();
  dart_vertex_.assign(num_darts, -1);
  dart_pos_.assign(num_darts, -1);

  for (std::size_t v = 0; v < rotations_.size(); ++v) {
    const std::size_t val = rotations_[v].size();
    if (val != 3 && val != 4) {
      throw Error("vertex " + std::to_string(v) + " has valence " + std::to_string(val) +
                  "; only 3 and 4 are allowed");
    }
    for (std::size_t p = 0; p < val; ++p) {
      const int d = rotations_[v][p];
      if (d < 0 || static_cast<std::size_t>(d) >= num_darts) {
        throw Error("dart id " + std::to_string(d) + " out of range");
      }
      if (dart_vertex_[static_cast<std::size_t>(d)] != -1) {
        throw Error("dart " + std::to_string(d) + " appears in two rotation slots");
      }
      dart_vertex_[static_cast<std::size_t>(d)] = static_cast<int>(v);
      dart_pos_[static_cast<std::size_t>(d)] = static_cast<int>(p);
    }
  }
  for (std::size_t d = 0; d < num_darts; ++d) {
    if (dart_vertex_[d] == -1) {
      throw Error("dart " + std::to_string(d) + " missing from every rotation");
    }
    const int t = theta_[d];
    if (t < 0 || static_cast<std::size_t>(t) >= num_darts) {
      throw Error("edge pairing out of range at dart " + std::to_string(d));
    }
    if (static_cast<std::size_t>(t) == d) {
      throw Error("edge pairing fixes dart " + std::to_string(d));
    }
    if (static_cast<std::size_t>(theta_[static_cast<std::size_t>(t)]) != d) {
      throw Error("edge pairing is not an involution at dart " + std::to_string(d));
    }
  }

  // Edges numbered by ascending smaller dart id.
  dart_edge_.assign(num_darts, -1);
  for (std::size_t d = 0; d < num_darts; ++d) {
    if (static_cast<int>(d) < theta_[d]) {
      dart_edge_[d] = static_cast<int>(edge_dart_.size());
      dart_edge_[static_cast<std::size_t>(theta_[d])] = dart_edge_[d];
      edge_dart_.push_back(static_cast<int>(d));
    }
  }

  // Faces are the orbits of d -> sigma(theta(d)).
  dart_face_.assign(num_darts, -1);
  for (std::size_t d0 = 0; d0 < num_darts; ++d0) {
    if (dart_face_[d0] != -1) continue;
    const int f = static_cast<int>(faces_.size());
    std::vector<int> orbit;
    int d = static_cast<int>(d0);
    do {
      dart_face_[static_cast<std::size_t>(d)] = f;
      orbit.push_back(d);
      d = sigma(this->theta(d));
    } while (d != static_cast<int>(d0));
    if (orbit.size() < 2) {
      throw Error("monogon face at dart " + std::to_string(d0));
    }
    faces_.push_back(std::move(orbit));
  }

  // Connected components over vertices.
  std::vector<char> seen(rotations_.size(), 0);
  for (std::size_t v0 = 0; v0 < rotations_.size(); ++v0) {
    if (seen[v0]) continue;
    ++components_;
    std::queue<std::size_t> q;
    q.push(v0);
    seen[v0] = 1;
    while (!q.empty()) {
      const std::size_t v = q.front();
      q.pop();
      for (int d : rotations_[v]) {
        const auto w = static_cast<std::size_t>(vertex_of_dart(this->theta(d)));
        if (!seen[w]) {
          seen[w] = 1;
          q.push(w);
        }
      }
    }
  }
}

int GenonGraph::sigma(int d) const {
  const auto v = static_cast<std::size_t>(vertex_of_dart(d));
  const auto p = static_cast<std::size_t>(dart_position(d));
  const auto& rot = rotations_[v];
  return rot[(p + 1) % rot.size()];
}

int GenonGraph::corner_face(std::size_t v, std::size_t c) const {
  const auto& rot = rotations_.at(v);
  return face_of_dart(rot[(c + 1) % rot.size()]);
}

std::vector<GenonGraph::Corner> GenonGraph::face_corners(std::size_t f) const {
  std::vector<Corner> out;
  for (int d : faces_.at(f)) {
    const int v = vertex_of_dart(d);
    const auto k = static_cast<int>(valence(static_cast<std::size_t>(v)));
    out.push_back({v, (dart_position(d) + k - 1) % k});
  }
  return out;
}

std::size_t GenonGraph::num_trivalent() const {
  std::size_t count = 0;
  for (const auto& rot : rotations_) {
    if (rot.size() == 3) ++count;
  }
  return count;
}

std::vector<int> GenonGraph::face_colours() const {
  std::vector<int> colour(num_faces(), -1);
  for (std::size_t f0 = 0; f0 < num_faces(); ++f0) {
    if (colour[f0] != -1) continue;
    colour[f0] = 0;
    std::queue<std::size_t> q;
    q.push(f0);
    while (!q.empty()) {
      const std::size_t f = q.front();
      q.pop();
      for (int d : faces_[f]) {
        const auto g = static_cast<std::size_t>(face_of_dart(theta(d)));
        if (colour[g] == -1) {
          colour[g] = 1 - colour[f];
          q.push(g);
        } else if (colour[g] == colour[f]) {
          return {};
        }
      }
    }
  }
  return colour;
}

bool GenonGraph::bicolourable() const {
  return num_faces() == 0 || !face_colours().empty();
}

GenonGraph build_graph(std::vector<std::vector<int>> rotations, std::vector<int> theta) {
  return GenonGraph(std::move(rotations), std::move(theta));
}

GenonCode::GenonCode(GenonGraph graph, std::vector<std::string> decoration)
    : graph_(std::move(graph)), decoration_(std::move(decoration)) {
  if (decoration_.size() != graph_.num_vertices()) {
    throw Error("decoration has " + std::to_string(decoration_.size()) + " entries for " +
                std::to_string(graph_.num_vertices()) + " vertices");
  }
  for (std::size_t v = 0; v < graph_.num_vertices(); ++v) {
    const std::string& s = decoration_[v];
    const std::size_t val = graph_.valence(v);
    if (s.size() != val) {
      throw Error("vertex " + std::to_string(v) + ": expected " + std::to_string(val) +
                  " corner letters, got \"" + s + "\"");
    }
    for (char c : s) letter_index(c);
    if (val == 3) {
      std::string sorted = s;
      std::sort(sorted.begin(), sorted.end());
      if (sorted != "XYZ") {
        throw Error("vertex " + std::to_string(v) + ": corner letters \"" + s +
                    "\" are not an allowed 3-valent pattern");
      }
    } else {
      if (s[0] != s[2] || s[1] != s[3] || s[0] == s[1]) {
        throw Error("vertex " + std::to_string(v) + ": corner letters \"" + s +
                    "\" are not an allowed 4-valent alternation");
      }
    }
  }

  std::vector<BitVec> rows;
  rows.reserve(graph_.num_faces());
  for (std::size_t f = 0; f < graph_.num_faces(); ++f) {
    rows.push_back(face_row(f).to_raw());
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = i + 1; j < rows.size(); ++j) {
      if (symplectic_pairing(SymplecticVector::from_raw(rows[i]),
                             SymplecticVector::from_raw(rows[j]))) {
        throw Error("face rows " + std::to_string(i) + " and " + std::to_string(j) +
                    " anticommute");
      }
    }
  }
  GF2Matrix checks(0, 2 * graph_.num_vertices());
  for (const auto& r : rows) checks.append_row(r);
  code_ = code_from_checks(checks);
}

SymplecticVector GenonCode::face_row(std::size_t f) const {
  SymplecticVector row(graph_.num_vertices());
  for (const auto& corner : graph_.face_corners(f)) {
    xor_letter(row, static_cast<std::size_t>(corner.vertex),
               letter(static_cast<std::size_t>(corner.vertex),
                      static_cast<std::size_t>(corner.corner)));
  }
  return row;
}

bool GenonCode::clean() const {
  for (std::size_t v = 0; v < graph_.num_vertices(); ++v) {
    if (graph_.valence(v) != 4) continue;
    for (char c : decoration_[v]) {
      if (c == 'Y') return false;
    }
  }
  return true;
}

GenonCode place_code(const GenonGraph& graph, const std::vector<std::string>& decoration) {
  return GenonCode(graph, decoration);
}

namespace {

const std::array<std::string, 6>& trivalent_patterns() {
  static const std::array<std::string, 6> p = {"XYZ", "XZY", "YXZ", "YZX", "ZXY", "ZYX"};
  return p;
}

const std::array<std::string, 6>& quadrivalent_patterns() {
  static const std::array<std::string, 6> p = {"XYXY", "XZXZ", "YXYX", "YZYZ", "ZXZX", "ZYZY"};
  return p;
}

const std::string& vertex_pattern(std::size_t valence, std::size_t index) {
  return valence == 3 ? trivalent_patterns()[index] : quadrivalent_patterns()[index];
}

}  // namespace

EnumeratedCodes enumerate_codes(const GenonGraph& graph, std::size_t cap) {
  const std::size_t nv = graph.num_vertices();
  if (nv > 24) {
    throw Error("enumeration over " + std::to_string(nv) + " vertices does not fit a counter");
  }
  EnumeratedCodes out;
  out.count = 1;
  for (std::size_t v = 0; v < nv; ++v) out.count *= 6;

  std::vector<std::size_t> digits(nv, 0);
  for (std::uint64_t i = 0; i < out.count; ++i) {
    if (out.codes.size() >= cap) break;
    std::vector<std::string> deco(nv);
    for (std::size_t v = 0; v < nv; ++v) {
      deco[v] = vertex_pattern(graph.valence(v), digits[v]);
    }
    out.codes.emplace_back(graph, std::move(deco));
    for (std::size_t v = nv; v-- > 0;) {
      if (++digits[v] < 6) break;
      digits[v] = 0;
    }
  }
  return out;
}

std::optional<std::vector<std::string>> local_letter_maps(const GenonCode& a,
                                                          const GenonCode& b) {
  if (!(a.graph() == b.graph())) return std::nullopt;
  std::vector<std::string> maps;
  for (std::size_t v = 0; v < a.graph().num_vertices(); ++v) {
    const std::string& from = a.decoration()[v];
    const std::string& to = b.decoration()[v];
    bool found = false;
    for (const std::string& perm : trivalent_patterns()) {
      std::string image = from;
      for (char& c : image) c = perm[static_cast<std::size_t>(letter_index(c))];
      if (image == to) {
        maps.push_back(perm);
        found = true;
        break;
      }
    }
    if (!found) return std::nullopt;
  }
  return maps;
}

namespace {

// Wall rule for a single edge, keyed by the four corner letters around it:
// (a1, a2) along one side, (b1, b2) along the other, endpoints in the same
// order. A Y-free side decides by letter inequality; when both sides carry
// a Y, matching non-Y letters place the wall. Stored as an 81-entry table so
// the even-parity regression has a single object to falsify.
struct WallTable {
  std::array<std::uint8_t, 81> bit{};

  WallTable() {
    const char letters[3] = {'X', 'Y', 'Z'};
    for (int ia1 = 0; ia1 < 3; ++ia1) {
      for (int ia2 = 0; ia2 < 3; ++ia2) {
        for (int ib1 = 0; ib1 < 3; ++ib1) {
          for (int ib2 = 0; ib2 < 3; ++ib2) {
            const char a1 = letters[ia1], a2 = letters[ia2];
            const char b1 = letters[ib1], b2 = letters[ib2];
            std::uint8_t w = 0;
            if (a1 != 'Y' && a2 != 'Y') {
              w = a1 != a2;
            } else if (b1 != 'Y' && b2 != 'Y') {
              w = b1 != b2;
            } else {
              const char na = (a1 == 'Y') ? a2 : a1;
              const char nb = (b1 == 'Y') ? b2 : b1;
              w = na == nb;
            }
            bit[static_cast<std::size_t>(((ia1 * 3 + ia2) * 3 + ib1) * 3 + ib2)] = w;
          }
        }
      }
    }
  }

  bool operator()(char a1, char a2, char b1, char b2) const {
    const std::size_t key = static_cast<std::size_t>(
        ((letter_index(a1) * 3 + letter_index(a2)) * 3 + letter_index(b1)) * 3 +
        letter_index(b2));
    return bit[key] != 0;
  }
};

const WallTable& wall_table() {
  static const WallTable t;
  return t;
}

}  // namespace

bool DomainWalls::edge_has_wall(int e) const {
  return std::binary_search(wall_edges.begin(), wall_edges.end(), e);
}

DomainWalls domain_walls(const GenonCode& gc) {
  const GenonGraph& g = gc.graph();
  DomainWalls out;

  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    const int d = g.edge_dart(static_cast<int>(e));
    const int dd = g.theta(d);
    const auto v1 = static_cast<std::size_t>(g.vertex_of_dart(d));
    const auto v2 = static_cast<std::size_t>(g.vertex_of_dart(dd));
    const auto k1 = g.valence(v1);
    const auto k2 = g.valence(v2);
    const auto p1 = static_cast<std::size_t>(g.dart_position(d));
    const auto p2 = static_cast<std::size_t>(g.dart_position(dd));
    // Side of face_of(d): the corner behind d at v1 and the corner at the
    // position of theta(d) at v2. The other side takes the complements.
    const char a1 = gc.letter(v1, (p1 + k1 - 1) % k1);
    const char a2 = gc.letter(v2, p2);
    const char b1 = gc.letter(v1, p1);
    const char b2 = gc.letter(v2, (p2 + k2 - 1) % k2);
    if (wall_table()(a1, a2, b1, b2)) {
      out.wall_edges.push_back(static_cast<int>(e));
    }
  }

  for (std::size_t v = 0; v < g.num_vertices(); ++v) {
    if (g.valence(v) != 3) continue;
    for (std::size_t c = 0; c < 3; ++c) {
      if (gc.letter(v, c) == 'Y') {
        out.genons.push_back({static_cast<int>(v), static_cast<int>(c),
                              g.corner_face(v, c)});
      }
    }
  }

  for (std::size_t f = 0; f < g.num_faces(); ++f) {
    if (wall_ends_at_face(gc, out, f) % 2 != 0) {
      throw Error("wall parity violated at face " + std::to_string(f));
    }
  }
  return out;
}

std::size_t wall_ends_at_face(const GenonCode& gc, const DomainWalls& walls, std::size_t f) {
  const GenonGraph& g = gc.graph();
  std::size_t count = 0;
  for (int d : g.face_darts(f)) {
    if (walls.edge_has_wall(g.edge_of_dart(d))) ++count;
  }
  for (const auto& flag : walls.genons) {
    if (flag.face == static_cast<int>(f)) ++count;
  }
  return count;
}

DoubleCover double_cover(const GenonCode& gc) {
  const GenonGraph& base = gc.graph();
  const auto n = base.num_vertices();
  const auto base_darts = base.num_darts();
  DoubleCover out;
  out.base_walls = domain_walls(gc);

  // Genons indexed in their stored (ascending vertex) order; each 3-valent
  // vertex owns at most one.
  std::vector<int> genon_at_vertex(n, -1);
  for (std::size_t j = 0; j < out.base_walls.genons.size(); ++j) {
    genon_at_vertex[static_cast<std::size_t>(out.base_walls.genons[j].vertex)] =
        static_cast<int>(j);
  }
  const std::size_t m = out.base_walls.genons.size();

  // Cover vertex ids: sheet 0 keeps the base id, sheet 1 adds n. Base dart d
  // on sheet s becomes d + s*base_darts; genon j contributes the new darts
  // 2*base_darts + 2j (sheet 0) and 2*base_darts + 2j + 1.
  std::vector<std::vector<int>> rotations(2 * n);
  // Base corner behind every cover corner, per cover vertex.
  std::vector<std::vector<int>> corner_base(2 * n);
  for (std::size_t s = 0; s < 2; ++s) {
    for (std::size_t v = 0; v < n; ++v) {
      const std::size_t u = v + s * n;
      const auto& rot = base.rotation(v);
      const int j = genon_at_vertex[v];
      const int genon_corner =
          j >= 0 ? out.base_walls.genons[static_cast<std::size_t>(j)].corner : -1;
      for (std::size_t p = 0; p < rot.size(); ++p) {
        rotations[u].push_back(rot[p] + static_cast<int>(s * base_darts));
        corner_base[u].push_back(static_cast<int>(p));
        if (static_cast<int>(p) == genon_corner) {
          rotations[u].push_back(static_cast<int>(2 * base_darts + 2 * static_cast<std::size_t>(j) + s));
          corner_base[u].push_back(static_cast<int>(p));
        }
      }
      // Corner q sits between rotation slots q and q+1; a genon dart in slot
      // q+1 splits the base corner, so the corner inherits the slot-q label
      // already recorded. The final wrap corner pairs the last slot with the
      // first and keeps the last slot's base corner.
    }
  }

  std::vector<int> theta(2 * base_darts + 2 * m, -1);
  for (std::size_t d = 0; d < base_darts; ++d) {
    const int partner = base.theta(static_cast<int>(d));
    const bool crosses = out.base_walls.edge_has_wall(base.edge_of_dart(static_cast<int>(d)));
    for (std::size_t s = 0; s < 2; ++s) {
      const std::size_t target_sheet = crosses ? 1 - s : s;
      theta[d + s * base_darts] =
          partner + static_cast<int>(target_sheet * base_darts);
    }
  }
  for (std::size_t j = 0; j < m; ++j) {
    theta[2 * base_darts + 2 * j] = static_cast<int>(2 * base_darts + 2 * j + 1);
    theta[2 * base_darts + 2 * j + 1] = static_cast<int>(2 * base_darts + 2 * j);
  }

  out.graph = GenonGraph(std::move(rotations), std::move(theta));
  out.projection.resize(2 * n);
  for (std::size_t u = 0; u < 2 * n; ++u) {
    out.projection[u] = static_cast<int>(u % n);
  }

  if (out.graph.num_faces() != 2 * base.num_faces() ||
      out.graph.euler_characteristic() != 2 * base.euler_characteristic() - static_cast<int>(m)) {
    throw Error("double cover bookkeeping failed");
  }

  if (!gc.clean()) return out;

  // Classify each cover face: class 0 faces carry X everywhere and visit
  // base X-corners on sheet 0 and Z-corners on sheet 1; class 1 is the
  // mirror. Y corners vote on neither, so the remaining faces are settled by
  // propagation across shared edges.
  const std::size_t cover_faces = out.graph.num_faces();
  std::vector<int> cls(cover_faces, -1);
  std::queue<std::size_t> ready;
  for (std::size_t f = 0; f < cover_faces; ++f) {
    for (const auto& corner : out.graph.face_corners(f)) {
      const auto u = static_cast<std::size_t>(corner.vertex);
      const std::size_t sheet = u < n ? 0 : 1;
      const std::size_t v = u % n;
      const auto bc = static_cast<std::size_t>(corner_base[u][static_cast<std::size_t>(corner.corner)]);
      const char letter = gc.letter(v, bc);
      if (letter == 'Y') continue;
      const int want = (letter == 'X') == (sheet == 0) ? 0 : 1;
      if (cls[f] == -1) {
        cls[f] = want;
      } else if (cls[f] != want) {
        throw Error("cover face classes conflict; the base code is not clean");
      }
    }
    if (cls[f] != -1) ready.push(f);
  }
  while (!ready.empty()) {
    const std::size_t f = ready.front();
    ready.pop();
    for (int d : out.graph.face_darts(f)) {
      const auto g2 = static_cast<std::size_t>(out.graph.face_of_dart(out.graph.theta(d)));
      const int want = 1 - cls[f];
      if (cls[g2] == -1) {
        cls[g2] = want;
        ready.push(g2);
      } else if (cls[g2] != want) {
        throw Error("cover faces are not two-colourable; the base code is not clean");
      }
    }
  }
  for (std::size_t f = 0; f < cover_faces; ++f) {
    if (cls[f] == -1) throw Error("unclassified cover face " + std::to_string(f));
  }

  std::vector<std::string> deco(2 * n);
  for (std::size_t u = 0; u < 2 * n; ++u) {
    deco[u].assign(out.graph.valence(u), '?');
  }
  for (std::size_t f = 0; f < cover_faces; ++f) {
    const char letter = cls[f] == 0 ? 'X' : 'Z';
    for (const auto& corner : out.graph.face_corners(f)) {
      deco[static_cast<std::size_t>(corner.vertex)][static_cast<std::size_t>(corner.corner)] =
          letter;
    }
  }
  out.code = GenonCode(out.graph, deco);
  return out;
}

GenonCode cover_code(const GenonCode& gc) {
  if (!gc.clean()) {
    throw Error(
        "cover code requires a clean code (4-valent corners limited to X and Z); "
        "apply a local Clifford cleaning first");
  }
  return *double_cover(gc).code;
}

namespace {

// Local flag list at a vertex, in the cyclic order pairing each edge with
// the corner before and after it: slot 2c holds the flag of corner c's face
// on edge c, slot 2c+1 the same face's flag on edge c+1.
std::vector<int> local_flags(const GenonGraph& g, std::size_t v) {
  const auto& rot = g.rotation(v);
  const std::size_t k = rot.size();
  std::vector<int> flags(2 * k);
  for (std::size_t c = 0; c < k; ++c) {
    flags[2 * c] = g.theta(rot[c]);
    flags[2 * c + 1] = rot[(c + 1) % k];
  }
  return flags;
}

// Constraint rows whose kernel is the string space.
GF2Matrix string_constraints(const GenonGraph& g) {
  GF2Matrix rows(0, g.num_darts());
  for (std::size_t v = 0; v < g.num_vertices(); ++v) {
    const auto flags = local_flags(g, v);
    if (g.valence(v) == 3) {
      BitVec row(g.num_darts());
      for (int d : flags) row.flip(static_cast<std::size_t>(d));
      rows.append_row(row);
    } else {
      BitVec row_a(g.num_darts());
      BitVec row_b(g.num_darts());
      for (std::size_t i = 0; i < 8; ++i) {
        BitVec& row = (i % 4 < 2) ? row_a : row_b;
        row.flip(static_cast<std::size_t>(flags[i]));
      }
      rows.append_row(row_a);
      rows.append_row(row_b);
    }
  }
  return rows;
}

}  // namespace

std::vector<StringOperator> string_space(const GenonGraph& graph) {
  const GF2Matrix basis = kernel(string_constraints(graph));
  std::vector<StringOperator> out;
  out.reserve(basis.rows());
  for (std::size_t i = 0; i < basis.rows(); ++i) {
    out.push_back({basis.row(i)});
  }
  return out;
}

SymplecticVector string_to_logical(const GenonCode& gc, const StringOperator& s) {
  const GenonGraph& g = gc.graph();
  if (s.support.size() != g.num_darts()) {
    throw Error("string support has " + std::to_string(s.support.size()) + " flags; expected " +
                std::to_string(g.num_darts()));
  }
  SymplecticVector result(g.num_vertices());
  for (std::size_t v = 0; v < g.num_vertices(); ++v) {
    const auto flags = local_flags(g, v);
    const std::size_t k = g.valence(v);
    BitVec local(2 * k);
    for (std::size_t i = 0; i < 2 * k; ++i) {
      if (s.support.get(static_cast<std::size_t>(flags[i]))) local.flip(i);
    }
    if (local.is_zero()) continue;

    // Generators: corner c hugging its own face (slots 2c, 2c+1) and corner
    // c crossed from outside (slots 2c-1, 2c+2). Crossings carry the corner
    // letter; the decomposition's crossing coefficients are unique enough
    // for the sum to be well defined.
    std::vector<BitVec> gens;
    for (std::size_t c = 0; c < k; ++c) {
      BitVec hug(2 * k);
      hug.flip(2 * c);
      hug.flip(2 * c + 1);
      gens.push_back(hug);
    }
    for (std::size_t c = 0; c < k; ++c) {
      BitVec cross(2 * k);
      cross.flip((2 * c + 2 * k - 1) % (2 * k));
      cross.flip((2 * c + 2) % (2 * k));
      gens.push_back(cross);
    }
    const auto coeffs = solve(GF2Matrix::from_rows(gens).transposed(), local);
    if (!coeffs) {
      throw Error("flag pattern at vertex " + std::to_string(v) +
                  " is not an allowed string configuration");
    }
    for (std::size_t c = 0; c < k; ++c) {
      if (coeffs->get(k + c)) xor_letter(result, v, gc.letter(v, c));
    }
  }
  return result;
}

StringOperator internal_face_string(const GenonGraph& graph, std::size_t f) {
  BitVec support(graph.num_darts());
  for (int d : graph.face_darts(f)) support.flip(static_cast<std::size_t>(d));
  return {support};
}

StringOperator external_face_string(const GenonGraph& graph, std::size_t f) {
  BitVec support(graph.num_darts());
  for (int d : graph.face_darts(f)) {
    support.flip(static_cast<std::size_t>(graph.theta(d)));
  }
  return {support};
}

namespace {

struct GaussInt {
  long long re = 0;
  long long im = 0;
  bool operator<(const GaussInt& o) const {
    return re != o.re ? re < o.re : im < o.im;
  }
  bool operator==(const GaussInt& o) const { return re == o.re && im == o.im; }
};

long long floor_div(long long a, long long b) {
  long long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

// Nearest integer to num/den for den > 0, halves rounded up.
long long nearest(long long num, long long den) { return floor_div(2 * num + den, 2 * den); }

}  // namespace

GenonCode cyclic_toric(int a, int b) {
  if (a == 0 && b == 0) throw Error("cyclic toric modulus must be nonzero");
  const long long norm = static_cast<long long>(a) * a + static_cast<long long>(b) * b;

  const auto reduce = [&](GaussInt z) {
    const long long qr = nearest(z.re * a + z.im * b, norm);
    const long long qi = nearest(z.im * a - z.re * b, norm);
    return GaussInt{z.re - (qr * a - qi * b), z.im - (qr * b + qi * a)};
  };

  std::map<GaussInt, int> index;
  std::vector<GaussInt> residues;
  std::queue<GaussInt> frontier;
  const std::array<GaussInt, 4> steps = {GaussInt{1, 0}, GaussInt{0, 1}, GaussInt{-1, 0},
                                         GaussInt{0, -1}};
  frontier.push(reduce({0, 0}));
  index[frontier.front()] = 0;
  residues.push_back(frontier.front());
  while (!frontier.empty()) {
    const GaussInt z = frontier.front();
    frontier.pop();
    for (const auto& step : steps) {
      const GaussInt w = reduce({z.re + step.re, z.im + step.im});
      if (index.find(w) == index.end()) {
        index[w] = static_cast<int>(residues.size());
        residues.push_back(w);
        frontier.push(w);
      }
    }
  }
  if (static_cast<long long>(residues.size()) != norm) {
    throw Error("residue walk found " + std::to_string(residues.size()) + " classes, expected " +
                std::to_string(norm));
  }

  // Stable vertex ids: sort residues, then renumber.
  std::vector<GaussInt> ordered = residues;
  std::sort(ordered.begin(), ordered.end());
  std::map<GaussInt, int> id;
  for (std::size_t i = 0; i < ordered.size(); ++i) id[ordered[i]] = static_cast<int>(i);

  const auto nv = static_cast<std::size_t>(norm);
  std::vector<std::vector<int>> rotations(nv);
  std::vector<int> theta(4 * nv);
  for (std::size_t v = 0; v < nv; ++v) {
    for (int dir = 0; dir < 4; ++dir) {
      rotations[v].push_back(static_cast<int>(4 * v) + dir);
    }
  }
  for (std::size_t v = 0; v < nv; ++v) {
    for (int dir = 0; dir < 4; ++dir) {
      const GaussInt w = reduce({ordered[v].re + steps[static_cast<std::size_t>(dir)].re,
                                 ordered[v].im + steps[static_cast<std::size_t>(dir)].im});
      theta[4 * v + static_cast<std::size_t>(dir)] = 4 * id[w] + ((dir + 2) % 4);
    }
  }

  GenonGraph graph(std::move(rotations), std::move(theta));
  std::vector<std::string> deco(nv, "XZXZ");
  return GenonCode(std::move(graph), std::move(deco));
}

GenonGraph rect_torus_graph(int rows, int cols) {
  if (rows < 1 || cols < 1) throw Error("torus grid needs positive dimensions");
  const auto nv = static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols);
  const auto at = [&](int r, int c) {
    return ((r % rows + rows) % rows) * cols + ((c % cols + cols) % cols);
  };
  std::vector<std::vector<int>> rotations(nv);
  std::vector<int> theta(4 * nv);
  for (std::size_t v = 0; v < nv; ++v) {
    for (int dir = 0; dir < 4; ++dir) rotations[v].push_back(static_cast<int>(4 * v) + dir);
  }
  // Directions east, north, west, south; north wraps rows upward.
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      const int v = at(r, c);
      theta[static_cast<std::size_t>(4 * v + 0)] = 4 * at(r, c + 1) + 2;
      theta[static_cast<std::size_t>(4 * v + 1)] = 4 * at(r + 1, c) + 3;
      theta[static_cast<std::size_t>(4 * v + 2)] = 4 * at(r, c - 1) + 0;
      theta[static_cast<std::size_t>(4 * v + 3)] = 4 * at(r - 1, c) + 1;
    }
  }
  return GenonGraph(std::move(rotations), std::move(theta));
}

GenonCode decorate_by_face(const GenonGraph& graph, const std::vector<char>& letters) {
  if (letters.size() != graph.num_faces()) {
    throw Error("need one letter per face");
  }
  std::vector<std::string> deco(graph.num_vertices());
  for (std::size_t v = 0; v < graph.num_vertices(); ++v) {
    for (std::size_t c = 0; c < graph.valence(v); ++c) {
      deco[v].push_back(letters[static_cast<std::size_t>(graph.corner_face(v, c))]);
    }
  }
  return GenonCode(graph, deco);
}

namespace {

struct Vec3 {
  double x = 0, y = 0, z = 0;
};

Vec3 sub(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
Vec3 scaled(const Vec3& a, double s) { return {a.x * s, a.y * s, a.z * s}; }
Vec3 normalized(const Vec3& a) { return scaled(a, 1.0 / std::sqrt(dot(a, a))); }

// Rotation system of a convex polyhedron: darts sorted counterclockwise
// around each vertex's outward normal. Edge j owns darts 2j and 2j+1.
GenonGraph polyhedron_graph(const std::vector<Vec3>& pos,
                            const std::vector<std::pair<int, int>>& edges) {
  std::vector<std::vector<int>> rotations(pos.size());
  std::vector<int> theta(2 * edges.size());
  std::vector<std::vector<std::pair<double, int>>> slots(pos.size());
  for (std::size_t j = 0; j < edges.size(); ++j) {
    theta[2 * j] = static_cast<int>(2 * j + 1);
    theta[2 * j + 1] = static_cast<int>(2 * j);
    for (int side = 0; side < 2; ++side) {
      const int from = side == 0 ? edges[j].first : edges[j].second;
      const int to = side == 0 ? edges[j].second : edges[j].first;
      const Vec3 normal = normalized(pos[static_cast<std::size_t>(from)]);
      Vec3 ref{1, 0, 0};
      if (std::abs(normal.x) >= std::abs(normal.y) && std::abs(normal.x) >= std::abs(normal.z)) {
        ref = {0, 1, 0};
      }
      const Vec3 u = normalized(sub(ref, scaled(normal, dot(ref, normal))));
      const Vec3 w = cross(normal, u);
      const Vec3 dir = sub(pos[static_cast<std::size_t>(to)], pos[static_cast<std::size_t>(from)]);
      const double angle = std::atan2(dot(dir, w), dot(dir, u));
      slots[static_cast<std::size_t>(from)].push_back({angle, static_cast<int>(2 * j + side)});
    }
  }
  for (std::size_t v = 0; v < pos.size(); ++v) {
    std::sort(slots[v].begin(), slots[v].end());
    for (const auto& [angle, dart] : slots[v]) rotations[v].push_back(dart);
  }
  return GenonGraph(std::move(rotations), std::move(theta));
}

GenonCode build_tetra_412() {
  const std::vector<Vec3> pos = {{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}};
  const std::vector<std::pair<int, int>> edges = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  const GenonGraph graph = polyhedron_graph(pos, edges);

  const StabilizerCode target = code_from_paulis({"XYZI", "IXYZ", "ZIXY"});
  std::array<std::size_t, 4> digits{};
  while (true) {
    std::vector<std::string> deco;
    for (std::size_t v = 0; v < 4; ++v) deco.push_back(trivalent_patterns()[digits[v]]);
    GenonCode candidate(graph, deco);
    if (same_rowspan(candidate.code().checks(), target.checks())) return candidate;
    std::size_t v = 4;
    while (v-- > 0) {
      if (++digits[v] < 6) break;
      digits[v] = 0;
      if (v == 0) throw Error("no tetrahedron decoration matches the expected code");
    }
  }
}

GenonCode build_surface_512() {
  const std::vector<Vec3> pos = {{2, 0, 0}, {0, 2, 0}, {-2, 0, 0}, {0, -2, 0}, {0, 0, 2}};
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < 4; ++i) edges.push_back({i, (i + 1) % 4});  // ring, edge i
  for (int i = 0; i < 4; ++i) edges.push_back({i, 4});            // spokes
  const GenonGraph graph = polyhedron_graph(pos, edges);

  // Clean configuration whose doubled code reaches distance three. The CSS
  // decoration (triangles alternating X and Z, outer face Y) only doubles
  // to distance two, so scan letter orders at the ring vertices with an
  // alternating apex and keep the first that lifts to a distance-three
  // double; the survivors are non-CSS.
  for (const char* apex : {"XZXZ", "ZXZX"}) {
    std::array<std::size_t, 4> pick{};
    while (true) {
      std::vector<std::string> deco(5);
      for (int v = 0; v < 4; ++v) {
        deco[static_cast<std::size_t>(v)] = trivalent_patterns()[pick[static_cast<std::size_t>(v)]];
      }
      deco[4] = apex;
      GenonCode candidate(graph, deco);
      if (candidate.code().num_logicals() == 1 &&
          distance(candidate.code(), 3) == std::optional<std::size_t>(2) &&
          distance(double_code(candidate.code()), 3) == std::optional<std::size_t>(3)) {
        return candidate;
      }
      std::size_t i = 4;
      while (i > 0 && pick[i - 1] == 5) pick[--i] = 0;
      if (i == 0) break;
      ++pick[i - 1];
    }
  }
  throw Error("no pyramid decoration doubles to distance three");
}

GenonCode build_prism_622() {
  std::vector<Vec3> pos;
  for (int layer = 0; layer < 2; ++layer) {
    for (int i = 0; i < 3; ++i) {
      const double angle = 2.0 * M_PI * i / 3.0;
      pos.push_back({2 * std::cos(angle), 2 * std::sin(angle), layer == 0 ? 1.2 : -1.2});
    }
  }
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < 3; ++i) edges.push_back({i, (i + 1) % 3});          // top ring
  for (int i = 0; i < 3; ++i) edges.push_back({3 + i, 3 + (i + 1) % 3});  // bottom ring
  for (int i = 0; i < 3; ++i) edges.push_back({i, 3 + i});                // verticals
  const GenonGraph graph = polyhedron_graph(pos, edges);

  // Triangles carry X. Each vertex puts Y on the square its downward (or
  // upward) dart bounds and Z on the other square.
  std::vector<std::string> deco(6);
  for (std::size_t v = 0; v < 6; ++v) {
    const int vertical_dart = static_cast<int>(2 * (6 + v % 3)) + (v < 3 ? 0 : 1);
    const int y_face = graph.face_of_dart(vertical_dart);
    for (std::size_t c = 0; c < 3; ++c) {
      const int f = graph.corner_face(v, c);
      bool triangle = true;
      for (const auto& corner : graph.face_corners(static_cast<std::size_t>(f))) {
        if ((corner.vertex < 3) != (v < 3)) triangle = false;
      }
      deco[v].push_back(triangle ? 'X' : (f == y_face ? 'Y' : 'Z'));
    }
  }
  return GenonCode(graph, deco);
}

GenonGraph build_jaunty_graph() {
  std::vector<Vec3> pos = {{2, 0, 0}, {-2, 0, 0}, {0, 2, 0}, {0, -2, 0}, {0, 0, 2}, {0, 0, -2}};
  for (int sx = 0; sx < 2; ++sx) {
    for (int sy = 0; sy < 2; ++sy) {
      for (int sz = 0; sz < 2; ++sz) {
        pos.push_back({sx == 0 ? 1.0 : -1.0, sy == 0 ? 1.0 : -1.0, sz == 0 ? 1.0 : -1.0});
      }
    }
  }
  std::vector<std::pair<int, int>> edges;
  for (int o = 0; o < 6; ++o) {
    for (int cube = 6; cube < 14; ++cube) {
      const int bits = cube - 6;
      const int sign_x = (bits & 4) ? -1 : 1;
      const int sign_y = (bits & 2) ? -1 : 1;
      const int sign_z = (bits & 1) ? -1 : 1;
      const bool touches = (o == 0 && sign_x > 0) || (o == 1 && sign_x < 0) ||
                           (o == 2 && sign_y > 0) || (o == 3 && sign_y < 0) ||
                           (o == 4 && sign_z > 0) || (o == 5 && sign_z < 0);
      if (touches) edges.push_back({o, cube});
    }
  }
  return polyhedron_graph(pos, edges);
}

GenonCode build_jaunty_1433() {
  // Clean decoration located by a seeded search over the alternating
  // patterns at the six 4-valent vertices and the letter orders at the eight
  // 3-valent ones, keeping the first hit with distance three.
  const GenonGraph graph = build_jaunty_graph();
  std::mt19937_64 rng(20260818ULL);
  while (true) {
    std::vector<std::string> deco;
    for (int v = 0; v < 6; ++v) deco.push_back(rng() % 2 == 0 ? "XZXZ" : "ZXZX");
    for (int v = 6; v < 14; ++v) {
      deco.push_back(trivalent_patterns()[static_cast<std::size_t>(rng() % 6)]);
    }
    GenonCode candidate(graph, deco);
    if (candidate.code().num_logicals() != 3) continue;
    if (distance(candidate.code(), 3) == std::optional<std::size_t>(3)) return candidate;
  }
}

GenonCode build_torus_12_4_3() {
  // A genus-one map with six 4-valent and six 3-valent vertices, 21 edges
  // and 9 faces. No such distance-three map arises from deleting edges of a
  // rectangular torus grid or from chording a hexagonal one (each vertex
  // pattern there shares an anticommuting-face set with a neighbour, leaving
  // a weight-two logical); this pairing was found by annealing over
  // genus-one maps with the count of weight-two normalizer elements outside
  // the stabilizer span as the energy, then frozen. Vertex v < 6 owns darts
  // 4v..4v+3 and vertex 6+j owns darts 24+3j..24+3j+2, in rotation order.
  static const std::vector<int> pairing = {
      35, 17, 29, 21, 26, 30, 34, 27, 37, 28, 33, 39, 36, 38,
      31, 22, 24, 1,  32, 41, 40, 3,  15, 25, 16, 23, 4,  7,
      9,  2,  5,  14, 18, 10, 6,  0,  12, 8,  13, 11, 20, 19};
  std::vector<std::vector<int>> rotations(12);
  for (int v = 0; v < 6; ++v) {
    for (int i = 0; i < 4; ++i) {
      rotations[static_cast<std::size_t>(v)].push_back(4 * v + i);
    }
  }
  for (int j = 0; j < 6; ++j) {
    for (int i = 0; i < 3; ++i) {
      rotations[static_cast<std::size_t>(6 + j)].push_back(24 + 3 * j + i);
    }
  }
  std::vector<std::string> deco(12, "XZXZ");
  for (int v = 6; v < 12; ++v) deco[static_cast<std::size_t>(v)] = "XYZ";
  return GenonCode(GenonGraph(std::move(rotations), pairing), std::move(deco));
}

}  // namespace

std::vector<BuiltinGenonCode> builtin_graphs() {
  static const std::vector<BuiltinGenonCode> catalog = [] {
    std::vector<BuiltinGenonCode> out;
    out.push_back({"tetra-412", build_tetra_412(), 4, 1, 2, 4, 0});
    out.push_back({"surface-512", build_surface_512(), 5, 1, 2, 4, 0});
    out.push_back({"prism-622", build_prism_622(), 6, 2, 2, 6, 0});
    out.push_back({"jaunty-1433", build_jaunty_1433(), 14, 3, 3, 8, 0});
    out.push_back({"torus-12-4-3", build_torus_12_4_3(), 12, 4, 3, 6, 1});
    return out;
  }();
  return catalog;
}

BuiltinGenonCode builtin_graph(const std::string& name) {
  for (const auto& entry : builtin_graphs()) {
    if (entry.name == name) return entry;
  }
  throw Error("unknown builtin genon code \"" + name + "\"");
}

std::string graph_to_file_text(const GenonGraph& graph,
                               const std::vector<std::string>* decoration) {
  std::ostringstream out;
  out << graph.num_vertices() << "\n";
  for (std::size_t v = 0; v < graph.num_vertices(); ++v) {
    const auto& rot = graph.rotation(v);
    for (std::size_t p = 0; p < rot.size(); ++p) {
      out << (p ? " " : "") << rot[p];
    }
    out << "\n";
  }
  out << "theta";
  for (std::size_t d = 0; d < graph.num_darts(); ++d) out << " " << graph.theta(static_cast<int>(d));
  out << "\n";
  if (decoration != nullptr) {
    out << "deco\n";
    for (const auto& s : *decoration) out << s << "\n";
  }
  return out.str();
}

ParsedGraphFile graph_from_file_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  const auto next_line = [&](std::string& target) {
    while (std::getline(in, line)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      target = line;
      return true;
    }
    return false;
  };

  std::string header;
  if (!next_line(header)) throw Error("graph file is empty");
  std::size_t nv = 0;
  try {
    nv = static_cast<std::size_t>(std::stoul(header));
  } catch (const std::exception&) {
    throw Error("graph file must start with the vertex count");
  }

  std::vector<std::vector<int>> rotations(nv);
  for (std::size_t v = 0; v < nv; ++v) {
    std::string row;
    if (!next_line(row)) throw Error("missing rotation for vertex " + std::to_string(v));
    std::istringstream rs(row);
    int d = 0;
    while (rs >> d) rotations[v].push_back(d);
    if (rotations[v].empty()) throw Error("empty rotation for vertex " + std::to_string(v));
  }

  std::string theta_line;
  if (!next_line(theta_line)) throw Error("missing theta line");
  std::istringstream ts(theta_line);
  std::string tag;
  ts >> tag;
  if (tag != "theta") throw Error("expected theta line, got \"" + theta_line + "\"");
  std::vector<int> theta;
  int t = 0;
  while (ts >> t) theta.push_back(t);

  ParsedGraphFile out{GenonGraph(std::move(rotations), std::move(theta)), std::nullopt};

  std::string deco_tag;
  if (next_line(deco_tag)) {
    if (deco_tag != "deco") throw Error("unexpected trailing line \"" + deco_tag + "\"");
    std::vector<std::string> deco(nv);
    for (std::size_t v = 0; v < nv; ++v) {
      if (!next_line(deco[v])) throw Error("missing decoration for vertex " + std::to_string(v));
      while (!deco[v].empty() && (deco[v].back() == '\r' || deco[v].back() == ' ')) {
        deco[v].pop_back();
      }
    }
    out.decoration = deco;
  }
  return out;
}

}  // namespace qec
