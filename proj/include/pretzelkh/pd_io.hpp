#ifndef PRETZELKH_PD_IO_HPP
#define PRETZELKH_PD_IO_HPP

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "pretzelkh/diagram.hpp"

namespace pretzelkh {

enum class ParseErrorKind { MalformedTerm, EdgeMultiplicity, UnknownDirective, Inconsistent };

class ParseError : public std::runtime_error {
 public:
  ParseError(ParseErrorKind kind, std::size_t position, const std::string& what)
      : std::runtime_error(what + " (at offset " + std::to_string(position) + ")"),
        kind_(kind),
        position_(position) {}

  ParseErrorKind kind() const { return kind_; }
  std::size_t position() const { return position_; }

 private:
  ParseErrorKind kind_;
  std::size_t position_;
};

// Parsed input: either a pretzel shorthand or a PD code.
struct LinkInput {
  std::optional<PretzelParams> pretzel;
  std::optional<OrientationPattern> orientation;
  std::optional<PlanarDiagram> diagram;  // set for PD input
};

// Reads the text format
//
//   X(a,b,c,d) ...     crossings, edges numbered along the orientation
//   base=<edge>        basepoint edge (default: smallest edge)
//   circles=<n>        crossingless components
//   P(k1,k2,k3)        pretzel shorthand (no X terms allowed alongside)
//   orientation=+-     pattern for the pretzel shorthand
//   # ...              comment to end of line
//
// Terms are separated by whitespace or commas. Crossing signs are
// inferred from the strand directions. An edge listed only once is a
// dangling end; each dangling outgoing end is closed up with the next
// dangling incoming end in edge-number order.
LinkInput parse_link(std::string_view text);

// PD-only convenience; a pretzel shorthand is expanded with
// build_pretzel_pd.
PlanarDiagram parse_pd(std::string_view text);

// Inverse of parse_pd for diagrams whose signs agree with their strand
// directions (all diagrams produced by this library do).
std::string print_pd(const PlanarDiagram& diagram);

}  // namespace pretzelkh

#endif  // PRETZELKH_PD_IO_HPP
