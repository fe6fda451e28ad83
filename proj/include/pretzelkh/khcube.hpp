#ifndef PRETZELKH_KHCUBE_HPP
#define PRETZELKH_KHCUBE_HPP

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <vector>

#include "pretzelkh/diagram.hpp"
#include "pretzelkh/linalg.hpp"

namespace pretzelkh {

class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kDefaultCrossingCap = 20;

// One bit per crossing, in crossing order.
struct ResolutionState {
  std::vector<std::uint8_t> bits;

  int weight() const;
};

// Smoothing convention, for X(a,b,c,d):
//   bit 0 joins a-b and c-d   (the oriented smoothing at a positive crossing)
//   bit 1 joins a-d and b-c
// Circles are numbered by first appearance along the sorted edge list;
// free circles come last.
struct Resolution {
  int circles = 0;
  std::vector<int> edge_circle;  // indexed like PlanarDiagram::edges()
  int basepoint_circle = 0;
};

Resolution resolve_state(const PlanarDiagram& pd, const ResolutionState& state);

enum class Label : std::uint8_t { One, X };

struct StateGenerator {
  ResolutionState state;
  std::vector<Label> labels;  // per circle; labels[basepoint_circle] == X
  int basepoint_circle = 0;
};

// Generators of the reduced complex sitting over one state, in the order
// used by build_reduced_complex.
std::vector<StateGenerator> state_generators(const PlanarDiagram& pd, const ResolutionState& state);

struct CubeOptions {
  int max_crossings = kDefaultCrossingCap;
};

// Reduced Khovanov complex: basepoint circle labelled x, gradings
//   h = |s| - n_-,   q = sum(+1 for 1, -1 for x) + 1 + |s| + n_+ - 2 n_-.
// The differential out of a state flips a 0-bit at crossing i with sign
// (-1)^(number of 1-bits before i). Group i holds the states of weight i,
// ordered by state bitmask then by label mask. Throws ResourceError above
// the crossing cap.
GradedComplex build_reduced_complex(const PlanarDiagram& pd, const CubeOptions& options = {});

// Text format for complexes, see docs/complex-format.md.
void write_complex(std::ostream& os, const GradedComplex& c);
GradedComplex read_complex(std::istream& is);

}  // namespace pretzelkh

#endif  // PRETZELKH_KHCUBE_HPP
