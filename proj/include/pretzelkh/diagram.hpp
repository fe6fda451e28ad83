#ifndef PRETZELKH_DIAGRAM_HPP
#define PRETZELKH_DIAGRAM_HPP

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pretzelkh {

// Signed twist counts of the three columns, left to right. The family
// studied throughout is P(-p,q,r) = {-p, q, r} with p,q,r >= 1.
struct PretzelParams {
  int k1 = 0;
  int k2 = 0;
  int k3 = 0;

  friend bool operator==(const PretzelParams&, const PretzelParams&) = default;
};

// Orientation of a 3-column pretzel, written as the signs at arrow
// positions 1 and 2 (position 3 is always +). Each pattern is
// characterised by the set of columns whose two strands run
// antiparallel:
//   -+  all three columns
//   ++  the middle (q) column only
//   +-  the first (p) column only
//   --  the last (r) column only
enum class OrientationPattern { PlusPlus, PlusMinus, MinusPlus, MinusMinus };

inline constexpr std::array<OrientationPattern, 4> kAllPatterns = {
    OrientationPattern::PlusPlus, OrientationPattern::PlusMinus, OrientationPattern::MinusPlus,
    OrientationPattern::MinusMinus};

std::string to_string(OrientationPattern pattern);
// Accepts "++", "+-", "-+", "--". Throws std::invalid_argument.
OrientationPattern parse_pattern(std::string_view text);

struct CrossingCounts {
  int n_plus = 0;
  int n_minus = 0;

  friend bool operator==(const CrossingCounts&, const CrossingCounts&) = default;
};

enum class Classification { QuasiAlternating, ThinNonQA, ThickNonQA };
std::string to_string(Classification c);

// Closure arcs of the standard three-column picture. T = top, B = bottom;
// the digits name the columns joined (2-0 is the outer arc).
enum class ClosureArc { Top01, Top12, Top20, Bottom01, Bottom12, Bottom20 };

// Ports of the three-column template: column i has TL = 4i, TR = 4i+1,
// BL = 4i+2, BR = 4i+3. Returns the two ports joined by a closure arc.
std::array<int, 2> closure_arc_ports(ClosureArc arc);

// Basepoint placement used for every pretzel built here.
inline constexpr ClosureArc kDefaultBasepoint = ClosureArc::Top20;

// One crossing in PD notation X(a,b,c,d): a is the incoming under-edge and
// b,c,d follow counterclockwise. sign is +1 or -1.
struct Crossing {
  std::array<int, 4> edges{};
  int sign = 1;

  friend bool operator==(const Crossing&, const Crossing&) = default;
};

class DiagramError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A link diagram in PD form. Edge identifiers are positive integers, each
// used by exactly two crossing slots. Components without crossings are
// kept as a separate free-circle count. Immutable once built.
class PlanarDiagram {
 public:
  // Validates the edge multiset and the basepoint. basepoint == 0 puts the
  // basepoint on a free circle, which requires free_circles >= 1.
  PlanarDiagram(std::vector<Crossing> crossings, int free_circles, int basepoint);

  const std::vector<Crossing>& crossings() const { return crossings_; }
  int crossing_count() const { return static_cast<int>(crossings_.size()); }
  // Sorted distinct edge identifiers.
  const std::vector<int>& edges() const { return edges_; }
  int components() const { return components_; }
  int free_circles() const { return free_circles_; }
  int basepoint() const { return basepoint_; }
  CrossingCounts counts() const;

  friend bool operator==(const PlanarDiagram& a, const PlanarDiagram& b) {
    return a.crossings_ == b.crossings_ && a.free_circles_ == b.free_circles_ &&
           a.basepoint_ == b.basepoint_;
  }

 private:
  std::vector<Crossing> crossings_;
  std::vector<int> edges_;
  int free_circles_ = 0;
  int basepoint_ = 0;
  int components_ = 0;
};

// Standard three-column pretzel diagram. Crossings are ordered column by
// column (k1 first), bottom to top inside a column. Without a pattern a
// knot gets its forced orientation and a link the first valid pattern in
// kAllPatterns order.
PlanarDiagram build_pretzel_pd(const PretzelParams& params,
                               std::optional<OrientationPattern> pattern = std::nullopt,
                               ClosureArc basepoint = kDefaultBasepoint);

// Number of link components of the pretzel (free circles included).
int pretzel_components(const PretzelParams& params);

// Patterns realisable by orienting the components of the diagram.
std::vector<OrientationPattern> valid_orientation_patterns(const PretzelParams& params);
std::vector<OrientationPattern> valid_orientation_patterns(int p, int q, int r);

// Forced pattern of the knot P(-p,q,r). Throws DiagramError when two or
// more of p,q,r are even.
OrientationPattern knot_orientation_pattern(int p, int q, int r);

// Positive/negative crossing counts of P(-p,q,r) under the pattern.
CrossingCounts crossing_counts(OrientationPattern pattern, int p, int q, int r);

// Quasi-alternating / thin / thick status of P(-p,q,r), p,q,r >= 1.
Classification classify(int p, int q, int r);

// Result of bringing arbitrary twist counts to the form P(-p,q,r),
// p <= q <= r, by mirroring and permuting columns.
struct NormalizedPretzel {
  int p = 0;
  int q = 0;
  int r = 0;
  bool mirrored = false;     // the mirror image was taken
  bool alternating = false;  // no column has the opposite sign
  bool permuted = false;     // columns were reordered
};

NormalizedPretzel normalize(const PretzelParams& params);

}  // namespace pretzelkh

#endif  // PRETZELKH_DIAGRAM_HPP
