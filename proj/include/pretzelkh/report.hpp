#ifndef PRETZELKH_REPORT_HPP
#define PRETZELKH_REPORT_HPP

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pretzelkh/diagram.hpp"
#include "pretzelkh/formulas.hpp"
#include "pretzelkh/khcube.hpp"
#include "pretzelkh/linalg.hpp"

namespace pretzelkh {

enum class Method { Cube, Fast, Formula };

std::string to_string(Method m);

// Bad user input that is not a syntax error of the link text (unknown
// method, missing orientation, ...). Maps to the parse-error exit code.
class RequestError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// What to run. "all" keeps every applicable route and silently skips the
// cube above the crossing cap; an explicit list treats that as an error.
struct MethodSelection {
  std::vector<Method> methods;  // in cube, fast, formula order
  bool all = false;

  std::string label() const;
};

// Accepts "all" or a comma list of cube, fast, formula.
MethodSelection parse_methods(std::string_view text);

struct RouteResult {
  Method method = Method::Cube;
  bool computed = false;
  std::string note;        // reason when not computed
  HomologyTable table;     // empty unless computed
  double ms = 0.0;

  friend bool operator==(const RouteResult&, const RouteResult&) = default;
};

struct Report {
  // P(k1,k2,k3) as given; all zero for a bare PD code.
  PretzelParams params;
  // P(-p,q,r) view of params when it has that shape, else zeros.
  int p = 0;
  int q = 0;
  int r = 0;
  std::string orientation;  // "", "++", "+-", "-+", "--"
  int n_plus = 0;
  int n_minus = 0;
  std::string method;
  HomologyTable homology;                 // first computed route
  std::map<int, long long> two_delta;
  bool agree = true;
  double ms = 0.0;
  std::vector<RouteResult> routes;
  std::string disagreement;               // empty when agree

  friend bool operator==(const Report&, const Report&) = default;
};

struct ComputeOptions {
  MethodSelection methods = parse_methods("all");
  int max_crossings = kDefaultCrossingCap;
};

// Fills homology, two_delta, agree, disagreement and ms from the routes.
// The verdict is a match only if every computed table is identical.
void reconcile(Report& report);

// Pretzel input. Links need an orientation; knots get their forced one
// and reject a conflicting request. Throws RequestError, ResourceError.
Report compute_pretzel(const PretzelParams& params, std::optional<OrientationPattern> orientation,
                       const ComputeOptions& options);

// PD input: only the cube route applies.
Report compute_diagram(const PlanarDiagram& diagram, const ComputeOptions& options);

// Formula table for P(-p,q,r): the bigraded closed form as an (h,q)
// table. Knots with r < q are handled by exchanging q and r. Throws
// FormulaScopeError outside 2 <= p <= q <= r.
HomologyTable formula_table(int p, int q, int r, OrientationPattern pattern);

// All (p,q,r,pattern) with 2 <= p <= q <= r and p+q+r <= max_sum, in
// sorted order.
struct SweepJob {
  int p = 0;
  int q = 0;
  int r = 0;
  OrientationPattern pattern = OrientationPattern::PlusPlus;
};
std::vector<SweepJob> sweep_jobs(int max_sum);

// Runs every job on a pool of threads (0 = hardware concurrency);
// results come back in job order.
std::vector<Report> run_sweep(const std::vector<SweepJob>& jobs, const ComputeOptions& options,
                              unsigned threads = 0);

// Measured spread of the delta support (max - min of 2delta, halved, plus
// one), i.e. 1 for a thin table. 0 for an empty table.
int delta_width(const HomologyTable& table);

// One JSON object per report, and back.
std::string to_json(const Report& report);
Report report_from_json(std::string_view text);

// Human-readable multi-line rendering.
std::string format_report(const Report& report);

}  // namespace pretzelkh

#endif  // PRETZELKH_REPORT_HPP
