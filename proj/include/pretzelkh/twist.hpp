#ifndef PRETZELKH_TWIST_HPP
#define PRETZELKH_TWIST_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pretzelkh/diagram.hpp"
#include "pretzelkh/integer.hpp"
#include "pretzelkh/linalg.hpp"

namespace pretzelkh {

// ---------------------------------------------------------------------------
// Four-ended crossingless tangles and dotted cobordisms between them.

// Vertical = two vertical strands, Horizontal = cap over cup.
enum class Smoothing : std::uint8_t { Vertical, Horizontal };

// A cobordism between two crossingless 4-ended tangles, as an integer
// combination of a basis.
//   same shape:      {1, u, v, uv}, u/v a dot on the first/second arc
//                    (cap/cup for Horizontal, left/right for Vertical)
//   different shape: {S, SD}, the saddle and the saddle with one dot
// Relations: u^2 = v^2 = D^2 = 0, S u = S v = S D, S S = u + v.
struct TangleMorphism {
  Smoothing from = Smoothing::Vertical;
  Smoothing to = Smoothing::Vertical;
  std::array<long long, 4> c{};

  static TangleMorphism identity(Smoothing s) { return {s, s, {1, 0, 0, 0}}; }
  static TangleMorphism dots(Smoothing s, long long u, long long v) { return {s, s, {0, u, v, 0}}; }
  static TangleMorphism saddle(Smoothing from, Smoothing to) { return {from, to, {1, 0, 0, 0}}; }

  bool is_zero() const { return c == std::array<long long, 4>{}; }
  // +-1 times an identity.
  bool is_unit() const;

  TangleMorphism operator-() const;
  TangleMorphism& operator+=(const TangleMorphism& o);

  friend bool operator==(const TangleMorphism&, const TangleMorphism&) = default;
};

// g o f (first f, then g).
TangleMorphism compose(const TangleMorphism& g, const TangleMorphism& f);
std::string to_string(const TangleMorphism& m);

enum class TwistSign { Positive, Negative };

// One object of a twist complex. weight is the number of 1-resolutions
// (homological position before the global -n_- shift); qshift replaces
// the |state| term of the quantum grading.
struct TwistObject {
  Smoothing shape = Smoothing::Vertical;
  int weight = 0;
  int qshift = 0;

  friend bool operator==(const TwistObject&, const TwistObject&) = default;
};

// Simplified complex of an n-crossing twist region: a zig-zag of n+1
// objects joined by one saddle and n-1 dot maps (u -+ v alternating).
//   Positive: || -> = -> = ... -> =     (0-resolution vertical)
//   Negative: = -> = ... -> = -> ||     (0-resolution horizontal)
struct TwistComplex {
  int n = 0;
  TwistSign sign = TwistSign::Positive;
  std::vector<TwistObject> objects;
  std::vector<TangleMorphism> maps;  // maps[i]: objects[i] -> objects[i+1]

  // Sign of the v-coefficient of the dot map at the far end of the zig-zag
  // from the saddle; +1 when there is no dot map.
  int terminal_sign() const;
  // Every composite maps[i+1] o maps[i] vanishes under the relations.
  bool composites_vanish() const;
};

TwistComplex twist_complex(int n, TwistSign sign);

// Rebuilds the twist complex from scratch: stacks n single-crossing
// complexes, deloops every closed circle, and cancels every invertible
// entry. Used to check the closed form of twist_complex.
TwistComplex reduce_twist_by_stacking(int n, TwistSign sign);

// Same objects, and maps equal up to a sign per map.
bool same_up_to_signs(const TwistComplex& a, const TwistComplex& b);

// ---------------------------------------------------------------------------
// Cube of simplified column complexes over closed crossingless diagrams.

// A term x-multiplication on one circle, with a coefficient.
struct DotTerm {
  int circle = 0;
  int coeff = 0;
};

enum class CubeEdgeKind : std::uint8_t { Saddle, Dots };

struct CubeNode {
  std::array<int, 3> index{};          // object index per column
  std::array<Smoothing, 3> shapes{};
  int circles = 0;
  int basepoint_circle = 0;
  std::array<int, 12> port_circle{};   // circle through each template port
  int weight = 0;
  int qshift = 0;
};

struct CubeEdge {
  int from = 0;
  int to = 0;
  int column = 0;
  CubeEdgeKind kind = CubeEdgeKind::Saddle;
  // Dots edges: terms on non-basepoint circles only (dots on the basepoint
  // act by zero); an empty list is the zero map.
  std::vector<DotTerm> dots;
  int koszul = 1;  // (-1)^(weights of earlier columns)
};

struct TwistCube {
  PretzelParams params;
  ClosureArc basepoint = kDefaultBasepoint;
  std::array<TwistComplex, 3> columns;
  std::vector<CubeNode> nodes;  // lexicographic in (a, b, c)
  std::vector<CubeEdge> edges;

  int node_index(int a, int b, int c) const;
};

// Any nonzero twist counts; the formulas cover (-p, q, r).
TwistCube build_twist_cube(const PretzelParams& params, ClosureArc basepoint = kDefaultBasepoint);
TwistCube build_twist_cube(int p, int q, int r);

std::string dump_cube(const TwistCube& cube);

// ---------------------------------------------------------------------------
// Free complexes and Gaussian elimination.

struct Provenance {
  int node = -1;             // cube node, -1 when not from a cube
  std::uint32_t labels = 0;  // bit i set: circle i labelled x
};

struct FreeGenerator {
  int h = 0;
  int q = 0;
  Provenance from;
};

// Based free complex; d(g_i) = sum over out[i] of coeff * g_j.
struct FreeComplex {
  std::vector<FreeGenerator> gens;
  std::vector<std::vector<std::pair<int, Integer>>> out;

  int size() const { return static_cast<int>(gens.size()); }
  std::size_t nonzeros() const;
  // Throws IntegrityError on a grading violation or d^2 != 0.
  void check() const;
  GradedComplex to_graded() const;
};

FreeComplex to_free_complex(const TwistCube& cube, const CrossingCounts& counts);
FreeComplex to_free_complex(const TwistCube& cube, OrientationPattern pattern);
FreeComplex from_graded(const GradedComplex& c);

// Cancels generator pairs joined by a +-1 entry, correcting the remaining
// differential by -c a^{-1} b, until no unit entry is left. Pivots are
// taken in order of (h, source index), the target being the smallest
// index carrying a unit.
FreeComplex gaussian_eliminate(const FreeComplex& c);

// twist cube -> free complex -> elimination -> homology.
HomologyTable fast_homology(int p, int q, int r, OrientationPattern pattern);
HomologyTable fast_homology(const PretzelParams& params, std::optional<OrientationPattern> pattern);

// ---------------------------------------------------------------------------
// Path signs on the floor grid.

// Steps on the (q+1) x (r+1) floor grid: X moves one column right in the
// r direction, Y one row right in the q direction, Down lowers the wall
// height by one.
enum class Step : std::uint8_t { X, Y, Down };

struct GridPoint {
  int height = 0;  // position along the wall, 0 = floor
  int y = 0;
  int x = 0;
};

// Floor colouring: a Y edge is always orange (+), an X edge leaving row y
// is orange iff y is even. Orange is the standard double-complex sign.
bool floor_edge_orange(Step direction, int y, int x);

// Sign of a path: each horizontal step at height z contributes its floor
// sign times (-1)^z; Down steps contribute +1 (the sign of the cancelled
// vertical arrow cancels the sign of the elimination formula).
int path_sign(const GridPoint& start, const std::vector<Step>& steps);

// The colour rule read backwards from the floor: 'B'/'O' per horizontal
// step, last step first; start at +, flip on B at odd positions and on O
// at even positions.
int path_sign_from_colors(std::string_view colors);

// Colour word of a path, in the order used by path_sign_from_colors.
std::string path_colors(const GridPoint& start, const std::vector<Step>& steps);

// Signed count of admissible paths from start to end: horizontal steps
// (X or Y) alternate with Down steps, starting horizontally in the
// direction first_step, and each path is weighted by path_sign.
long long signed_path_count(const GridPoint& start, const GridPoint& end, Step first_step);

// Brute-force enumeration used to cross-check signed_path_count.
long long signed_path_count_bruteforce(const GridPoint& start, const GridPoint& end, Step first_step);

}  // namespace pretzelkh

#endif  // PRETZELKH_TWIST_HPP
