#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qec/gf2.hpp"
#include "qec/pauli.hpp"
#include "qec/stab_code.hpp"

namespace qec {

// An oriented combinatorial surface with all vertices of valence 3 or 4.
// The surface is a rotation system: every edge is split into two darts, each
// dart leaves one vertex, and the cyclic dart order around a vertex encodes
// the local orientation. Faces are the orbits of d -> sigma(theta(d)) and
// the genus follows from the Euler characteristic.
//
// Corner c of vertex v sits between rotation(v)[c] and rotation(v)[c+1]
// (cyclically); the face owning that corner is face_of_dart of the latter.
class GenonGraph {
 public:
  GenonGraph() = default;

  // rotations[v] lists the darts leaving v in cyclic order; theta pairs each
  // dart with its partner on the same edge. Validates valences, the
  // involution, and the no-monogon rule.
  GenonGraph(std::vector<std::vector<int>> rotations, std::vector<int> theta);

  std::size_t num_vertices() const { return rotations_.size(); }
  std::size_t num_darts() const { return theta_.size(); }
  std::size_t num_edges() const { return theta_.size() / 2; }
  std::size_t num_faces() const { return faces_.size(); }

  const std::vector<int>& rotation(std::size_t v) const { return rotations_.at(v); }
  std::size_t valence(std::size_t v) const { return rotations_.at(v).size(); }
  int theta(int d) const { return theta_.at(static_cast<std::size_t>(d)); }
  int vertex_of_dart(int d) const { return dart_vertex_.at(static_cast<std::size_t>(d)); }
  // Position of d within the rotation of its vertex.
  int dart_position(int d) const { return dart_pos_.at(static_cast<std::size_t>(d)); }
  // Cyclic successor of d around its vertex.
  int sigma(int d) const;

  // Edges are numbered by ascending smaller dart id.
  int edge_of_dart(int d) const { return dart_edge_.at(static_cast<std::size_t>(d)); }
  int edge_dart(int e) const { return edge_dart_.at(static_cast<std::size_t>(e)); }

  int face_of_dart(int d) const { return dart_face_.at(static_cast<std::size_t>(d)); }
  const std::vector<int>& face_darts(std::size_t f) const { return faces_.at(f); }

  // Face of the corner with index c at vertex v.
  int corner_face(std::size_t v, std::size_t c) const;

  struct Corner {
    int vertex = 0;
    int corner = 0;
  };
  // Corners of face f in boundary-walk order (one entry per visit).
  std::vector<Corner> face_corners(std::size_t f) const;

  int euler_characteristic() const {
    return static_cast<int>(num_vertices()) - static_cast<int>(num_edges()) +
           static_cast<int>(num_faces());
  }
  std::size_t num_components() const { return components_; }
  // Total genus (summed over components for a disconnected surface).
  int genus() const { return (2 * static_cast<int>(components_) - euler_characteristic()) / 2; }

  std::size_t num_trivalent() const;

  // True iff the faces admit a proper 2-colouring across edges.
  bool bicolourable() const;
  // The lexicographically-least proper face 2-colouring, or empty if none.
  std::vector<int> face_colours() const;

  bool operator==(const GenonGraph& other) const {
    return rotations_ == other.rotations_ && theta_ == other.theta_;
  }

 private:
  std::vector<std::vector<int>> rotations_;
  std::vector<int> theta_;
  std::vector<int> dart_vertex_;
  std::vector<int> dart_pos_;
  std::vector<int> dart_edge_;
  std::vector<int> edge_dart_;
  std::vector<int> dart_face_;
  std::vector<std::vector<int>> faces_;
  std::size_t components_ = 0;
};

GenonGraph build_graph(std::vector<std::vector<int>> rotations, std::vector<int> theta);

// A stabilizer code drawn on a GenonGraph: one qubit per vertex, one
// stabilizer row per face, and a Pauli letter on every corner. Allowed
// corner patterns are X,Y,Z in some order at 3-valent vertices and a
// two-letter alternation at 4-valent vertices.
class GenonCode {
 public:
  GenonCode() = default;
  // decoration[v][c] is the letter at corner c of vertex v. Validates the
  // per-vertex patterns and the pairwise commutation of the face rows.
  GenonCode(GenonGraph graph, std::vector<std::string> decoration);

  const GenonGraph& graph() const { return graph_; }
  const std::vector<std::string>& decoration() const { return decoration_; }
  char letter(std::size_t v, std::size_t c) const { return decoration_.at(v).at(c); }

  // Product of the face's corner letters, one qubit per vertex.
  SymplecticVector face_row(std::size_t f) const;
  const StabilizerCode& code() const { return code_; }

  // No Y letters at 4-valent vertices.
  bool clean() const;

  bool operator==(const GenonCode& other) const {
    return graph_ == other.graph_ && decoration_ == other.decoration_;
  }

 private:
  GenonGraph graph_;
  std::vector<std::string> decoration_;
  StabilizerCode code_;
};

GenonCode place_code(const GenonGraph& graph, const std::vector<std::string>& decoration);

// All decorations of the graph, mixed-radix order over per-vertex patterns
// (6 per vertex). count is the full number; codes holds the first cap.
struct EnumeratedCodes {
  std::uint64_t count = 0;
  std::vector<GenonCode> codes;
};
EnumeratedCodes enumerate_codes(const GenonGraph& graph,
                                std::size_t cap = static_cast<std::size_t>(-1));

// Per-vertex letter permutation sending decoration a to decoration b, if one
// exists (it always does for two decorations of the same graph). perm maps
// indexed by "XYZ" position: letter L -> perm[index(L)].
std::optional<std::vector<std::string>> local_letter_maps(const GenonCode& a,
                                                          const GenonCode& b);

// A wall endpoint at the Y corner of a 3-valent vertex.
struct GenonFlag {
  int vertex = 0;
  int corner = 0;
  int face = 0;
  bool operator==(const GenonFlag& other) const {
    return vertex == other.vertex && corner == other.corner && face == other.face;
  }
};

// The wall decoration derived from a code: edge crossings (a segment joining
// the two face centers through the edge) and face-to-flag segments ending at
// 3-valent Y corners. Endpoints only ever occur at the latter.
struct DomainWalls {
  std::vector<int> wall_edges;     // ascending edge ids carrying a crossing
  std::vector<GenonFlag> genons;   // ascending vertex order

  std::size_t genon_count() const { return genons.size(); }
  bool edge_has_wall(int e) const;
};

DomainWalls domain_walls(const GenonCode& gc);

// Number of wall ends meeting at the center of face f (edge crossings are
// counted once per boundary visit, plus the face's own flag segments).
std::size_t wall_ends_at_face(const GenonCode& gc, const DomainWalls& walls, std::size_t f);

// The branched double cover of the surface relative to a code. Base vertex v
// lifts to cover vertices v (sheet 0) and v + n (sheet 1); edges crossing a
// wall connect opposite sheets; every 3-valent Y corner contributes one new
// edge joining the two sheets of its vertex. code is present iff the base
// code is clean, and is then CSS.
struct DoubleCover {
  GenonGraph graph;
  std::vector<int> projection;  // cover vertex -> base vertex
  DomainWalls base_walls;
  std::optional<GenonCode> code;
};

DoubleCover double_cover(const GenonCode& gc);

// The cover code alone; raises a helpful error for non-clean input.
GenonCode cover_code(const GenonCode& gc);

// A string operator: a bit per edge-side flag. Flags are indexed by dart id,
// dart d meaning the pair (edge of d, face of d).
struct StringOperator {
  BitVec support;

  bool operator==(const StringOperator& other) const { return support == other.support; }
};

// Basis of the subspace of flag vectors whose restriction to every vertex
// neighborhood is an allowed local pattern (even overlap with each vertex
// constraint set).
std::vector<StringOperator> string_space(const GenonGraph& graph);

// The Pauli operator a string carries: at every vertex the local flag
// pattern is decomposed over corner-hugging and corner-crossing generators,
// and each crossing contributes its corner letter. Raises if s is not a
// string operator.
SymplecticVector string_to_logical(const GenonCode& gc, const StringOperator& s);

// The two distinguished strings of a face: its own boundary flags, and the
// flags just across its boundary edges.
StringOperator internal_face_string(const GenonGraph& graph, std::size_t f);
StringOperator external_face_string(const GenonGraph& graph, std::size_t f);

// Genus-one family on the quotient of the Gaussian integers by a + bi, with
// n = a^2 + b^2 vertices and the two-letter alternating decoration.
GenonCode cyclic_toric(int a, int b);

// Plain rows x cols torus grid (4-valent, genus one).
GenonGraph rect_torus_graph(int rows, int cols);

// Uniform-letter-per-face decoration (letters[f] in XYZ); corners copy their
// face letter. Valid only when the letters alternate at every vertex.
GenonCode decorate_by_face(const GenonGraph& graph, const std::vector<char>& letters);

struct BuiltinGenonCode {
  std::string name;
  GenonCode code;
  std::size_t n = 0;
  std::size_t k = 0;
  std::size_t d = 0;
  std::size_t m = 0;      // expected genon count
  int genus = 0;          // base surface genus
};

// The named example catalog: tetra-412, surface-512, prism-622, jaunty-1433,
// torus-12-4-3.
std::vector<BuiltinGenonCode> builtin_graphs();
BuiltinGenonCode builtin_graph(const std::string& name);

// Text format: vertex count; one cyclic dart list per vertex; a "theta" line
// with the dart pairing; an optional "deco" section with one letter string
// per vertex.
std::string graph_to_file_text(const GenonGraph& graph,
                               const std::vector<std::string>* decoration = nullptr);

struct ParsedGraphFile {
  GenonGraph graph;
  std::optional<std::vector<std::string>> decoration;
};
ParsedGraphFile graph_from_file_text(const std::string& text);

}  // namespace qec
