#include "pretzelkh/diagram.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>
#include <set>

namespace pretzelkh {

std::string to_string(OrientationPattern pattern) {
  switch (pattern) {
    case OrientationPattern::PlusPlus: return "++";
    case OrientationPattern::PlusMinus: return "+-";
    case OrientationPattern::MinusPlus: return "-+";
    case OrientationPattern::MinusMinus: return "--";
  }
  return "?";
}

OrientationPattern parse_pattern(std::string_view text) {
  for (auto pattern : kAllPatterns) {
    if (text == to_string(pattern)) return pattern;
  }
  throw std::invalid_argument("orientation pattern must be one of ++, +-, -+, --: '" +
                              std::string(text) + "'");
}

std::string to_string(Classification c) {
  switch (c) {
    case Classification::QuasiAlternating: return "QuasiAlternating";
    case Classification::ThinNonQA: return "ThinNonQA";
    case Classification::ThickNonQA: return "ThickNonQA";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// PlanarDiagram

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

PlanarDiagram::PlanarDiagram(std::vector<Crossing> crossings, int free_circles, int basepoint)
    : crossings_(std::move(crossings)), free_circles_(free_circles), basepoint_(basepoint) {
  if (free_circles_ < 0) throw DiagramError("negative free-circle count");
  std::map<int, int> uses;
  for (const auto& x : crossings_) {
    if (x.sign != 1 && x.sign != -1) throw DiagramError("crossing sign must be +1 or -1");
    for (int e : x.edges) {
      if (e <= 0) throw DiagramError("edge identifiers must be positive");
      ++uses[e];
    }
  }
  for (const auto& [e, n] : uses) {
    if (n != 2) {
      throw DiagramError("edge " + std::to_string(e) + " appears " + std::to_string(n) +
                         " times; expected 2");
    }
    edges_.push_back(e);
  }

  std::map<int, int> index;
  for (int i = 0; i < static_cast<int>(edges_.size()); ++i) index[edges_[i]] = i;
  UnionFind uf(static_cast<int>(edges_.size()));
  for (const auto& x : crossings_) {
    uf.unite(index[x.edges[0]], index[x.edges[2]]);
    uf.unite(index[x.edges[1]], index[x.edges[3]]);
  }
  std::set<int> roots;
  for (int i = 0; i < static_cast<int>(edges_.size()); ++i) roots.insert(uf.find(i));
  components_ = static_cast<int>(roots.size()) + free_circles_;

  if (basepoint_ == 0) {
    if (!crossings_.empty() || free_circles_ == 0) {
      if (crossings_.empty()) throw DiagramError("empty diagram has nowhere to put a basepoint");
      throw DiagramError("basepoint edge 0 does not exist");
    }
  } else if (!index.count(basepoint_)) {
    throw DiagramError("basepoint edge " + std::to_string(basepoint_) + " does not exist");
  }
}

CrossingCounts PlanarDiagram::counts() const {
  CrossingCounts c;
  for (const auto& x : crossings_) (x.sign > 0 ? c.n_plus : c.n_minus) += 1;
  return c;
}

// ---------------------------------------------------------------------------
// Pretzel template
//
// Node layout of the template graph:
//   ports   0..11   column i owns TL=4i, TR=4i+1, BL=4i+2, BR=4i+3
//   slots   12+4g+s crossing g (global order), s in {SW, SE, NE, NW}
// Every node has exactly two neighbours; the graph is a disjoint union of
// cycles, one per link component.

namespace {

enum Slot { SW = 0, SE = 1, NE = 2, NW = 3 };

constexpr int kPorts = 12;
int port_tl(int col) { return 4 * col; }
int port_tr(int col) { return 4 * col + 1; }
int port_bl(int col) { return 4 * col + 2; }
int port_br(int col) { return 4 * col + 3; }

// Closure arcs as port pairs, indexed by ClosureArc.
constexpr std::array<std::array<int, 2>, 6> kClosure = {{
    {1, 4},    // Top01: TR0 - TL1
    {5, 8},    // Top12: TR1 - TL2
    {9, 0},    // Top20: TR2 - TL0
    {3, 6},    // Bottom01: BR0 - BL1
    {7, 10},   // Bottom12: BR1 - BL2
    {11, 2},   // Bottom20: BR2 - BL0
}};

struct Template {
  std::array<int, 3> twists{};
  std::array<int, 3> first_crossing{};
  int crossings = 0;
  // Link neighbours (ports and slot-to-outside links) and through-partner
  // inside a crossing. through[n] == -1 for ports.
  std::vector<std::array<int, 2>> links;
  std::vector<int> link_count;
  std::vector<int> through;
  // For each port, the neighbour on the column side.
  std::array<int, kPorts> column_side{};

  int slot(int g, int s) const { return kPorts + 4 * g + s; }
  int nodes() const { return kPorts + 4 * crossings; }
  int col_of_crossing(int g) const {
    return g < first_crossing[1] ? 0 : (g < first_crossing[2] ? 1 : 2);
  }

  void link(int a, int b) {
    links[a][link_count[a]++] = b;
    links[b][link_count[b]++] = a;
  }

  explicit Template(const PretzelParams& params) {
    twists = {params.k1, params.k2, params.k3};
    for (int i = 0; i < 3; ++i) {
      first_crossing[i] = crossings;
      crossings += std::abs(twists[i]);
    }
    links.assign(nodes(), {-1, -1});
    link_count.assign(nodes(), 0);
    through.assign(nodes(), -1);
    for (int g = 0; g < crossings; ++g) {
      through[slot(g, SW)] = slot(g, NE);
      through[slot(g, NE)] = slot(g, SW);
      through[slot(g, SE)] = slot(g, NW);
      through[slot(g, NW)] = slot(g, SE);
    }
    for (int col = 0; col < 3; ++col) {
      int n = std::abs(twists[col]);
      int g0 = first_crossing[col];
      if (n == 0) {
        link(port_tl(col), port_bl(col));
        link(port_tr(col), port_br(col));
        column_side[port_tl(col)] = port_bl(col);
        column_side[port_bl(col)] = port_tl(col);
        column_side[port_tr(col)] = port_br(col);
        column_side[port_br(col)] = port_tr(col);
        continue;
      }
      for (int j = 0; j + 1 < n; ++j) {
        link(slot(g0 + j, NW), slot(g0 + j + 1, SW));
        link(slot(g0 + j, NE), slot(g0 + j + 1, SE));
      }
      int top = g0 + n - 1;
      link(port_tl(col), slot(top, NW));
      link(port_tr(col), slot(top, NE));
      link(port_bl(col), slot(g0, SW));
      link(port_br(col), slot(g0, SE));
      column_side[port_tl(col)] = slot(top, NW);
      column_side[port_tr(col)] = slot(top, NE);
      column_side[port_bl(col)] = slot(g0, SW);
      column_side[port_br(col)] = slot(g0, SE);
    }
    for (const auto& arc : kClosure) link(arc[0], arc[1]);
  }

  // Next node when walking from prev into cur.
  int step(int prev, int cur) const {
    if (through[cur] >= 0) return prev == through[cur] ? links[cur][0] : through[cur];
    return links[cur][0] == prev ? links[cur][1] : links[cur][0];
  }
};

// One traced component: cyclic node sequence in its reference direction.
struct Component {
  std::vector<int> nodes;
  bool has_slot = false;
};

std::vector<Component> trace_components(const Template& t) {
  std::vector<Component> comps;
  std::vector<bool> seen(t.nodes(), false);
  // Every component uses at least one closure arc; starting there anchors
  // the reference direction and the edge numbering at a fixed place.
  for (const auto& arc : kClosure) {
    if (seen[arc[0]]) continue;
    Component c;
    int prev = arc[0];
    int cur = arc[1];
    c.nodes.push_back(arc[0]);
    seen[arc[0]] = true;
    while (cur != arc[0]) {
      c.nodes.push_back(cur);
      seen[cur] = true;
      int next = t.step(prev, cur);
      prev = cur;
      cur = next;
    }
    for (int n : c.nodes) c.has_slot = c.has_slot || n >= kPorts;
    comps.push_back(std::move(c));
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
    throw std::logic_error("pretzel template has a component without closure arcs");
  }
  return comps;
}

// True when, walking the sequence forwards, the strand at `port` moves
// into its column (downward at a top port).
bool enters_column(const Template& t, const std::vector<int>& seq, bool forward, int port) {
  const int n = static_cast<int>(seq.size());
  for (int i = 0; i < n; ++i) {
    if (seq[i] != port) continue;
    int next = forward ? seq[(i + 1) % n] : seq[(i - 1 + n) % n];
    return next == t.column_side[port];
  }
  throw std::logic_error("port not on component");
}

int component_of(const std::vector<Component>& comps, int node) {
  for (int i = 0; i < static_cast<int>(comps.size()); ++i) {
    if (std::find(comps[i].nodes.begin(), comps[i].nodes.end(), node) != comps[i].nodes.end()) {
      return i;
    }
  }
  throw std::logic_error("node not on any component");
}

// Antiparallel flags of the three columns for a given choice of component
// directions.
std::array<bool, 3> antiparallel(const Template& t, const std::vector<Component>& comps,
                                 const std::vector<bool>& forward) {
  std::array<bool, 3> out{};
  for (int col = 0; col < 3; ++col) {
    int cl = component_of(comps, port_tl(col));
    int cr = component_of(comps, port_tr(col));
    bool dl = enters_column(t, comps[cl].nodes, forward[cl], port_tl(col));
    bool dr = enters_column(t, comps[cr].nodes, forward[cr], port_tr(col));
    out[col] = dl != dr;
  }
  return out;
}

OrientationPattern pattern_of(const std::array<bool, 3>& anti) {
  if (anti[0] && anti[1] && anti[2]) return OrientationPattern::MinusPlus;
  if (!anti[0] && anti[1] && !anti[2]) return OrientationPattern::PlusPlus;
  if (anti[0] && !anti[1] && !anti[2]) return OrientationPattern::PlusMinus;
  if (!anti[0] && !anti[1] && anti[2]) return OrientationPattern::MinusMinus;
  throw std::logic_error("column orientations violate the closure parity");
}

// All direction choices (first component fixed forward) with their pattern.
std::vector<std::pair<std::vector<bool>, OrientationPattern>> orientation_choices(
    const Template& t, const std::vector<Component>& comps) {
  std::vector<std::pair<std::vector<bool>, OrientationPattern>> out;
  const int n = static_cast<int>(comps.size());
  for (int mask = 0; mask < (1 << (n - 1)); ++mask) {
    std::vector<bool> forward(n, true);
    for (int i = 1; i < n; ++i) forward[i] = ((mask >> (i - 1)) & 1) == 0;
    out.emplace_back(forward, pattern_of(antiparallel(t, comps, forward)));
  }
  return out;
}

void require_nonzero(const PretzelParams& params) {
  if (params.k1 == 0 && params.k2 == 0 && params.k3 == 0) {
    throw DiagramError("all twist counts are zero; use free circles instead");
  }
}

}  // namespace

PlanarDiagram build_pretzel_pd(const PretzelParams& params,
                               std::optional<OrientationPattern> pattern, ClosureArc basepoint) {
  require_nonzero(params);
  Template t(params);
  auto comps = trace_components(t);
  auto choices = orientation_choices(t, comps);

  const std::vector<bool>* forward = nullptr;
  if (pattern) {
    for (const auto& [fw, pat] : choices) {
      if (pat == *pattern) forward = &fw;
    }
    if (!forward) {
      throw DiagramError("orientation pattern " + to_string(*pattern) +
                         " is not realisable for this pretzel");
    }
  } else {
    for (auto want : kAllPatterns) {
      for (const auto& [fw, pat] : choices) {
        if (!forward && pat == want) forward = &fw;
      }
    }
  }

  // Walk each component in its chosen direction and cut it into PD edges at
  // crossing slots. slot_edge[s] is the edge at slot s, slot_in[s] whether
  // that edge points into the crossing.
  std::vector<int> slot_edge(t.nodes(), 0);
  std::vector<bool> slot_in(t.nodes(), false);
  std::vector<int> node_edge(t.nodes(), 0);
  int next_edge = 1;
  int free_circles = 0;
  for (int ci = 0; ci < static_cast<int>(comps.size()); ++ci) {
    const auto& c = comps[ci];
    if (!c.has_slot) {
      ++free_circles;
      continue;
    }
    std::vector<int> seq = c.nodes;
    if (!(*forward)[ci]) std::reverse(seq.begin() + 1, seq.end());
    const int n = static_cast<int>(seq.size());
    auto outgoing = [&](int i) {
      return seq[i] >= kPorts && t.through[seq[i]] == seq[(i - 1 + n) % n];
    };
    // Begin at the last crossing exit before seq[0], so the edge through
    // the anchoring closure arc gets the component's first number.
    int begin = n - 1;
    while (!outgoing(begin)) --begin;
    int edge = 0;
    for (int k = 0; k < n; ++k) {
      int i = (begin + k) % n;
      int node = seq[i];
      if (node < kPorts) {
        node_edge[node] = edge;
      } else if (outgoing(i)) {
        edge = next_edge++;
        slot_edge[node] = edge;
        slot_in[node] = false;
      } else {
        slot_edge[node] = edge;
        slot_in[node] = true;
      }
    }
  }

  std::vector<Crossing> crossings;
  crossings.reserve(t.crossings);
  for (int g = 0; g < t.crossings; ++g) {
    int col = t.col_of_crossing(g);
    bool positive_twist = t.twists[col] > 0;
    // Positive half-twist: the SW-NE strand is over, so SE-NW is under.
    std::array<int, 2> under = positive_twist ? std::array<int, 2>{SE, NW}
                                              : std::array<int, 2>{SW, NE};
    int a_slot = slot_in[t.slot(g, under[0])] ? under[0] : under[1];
    // Counterclockwise order starting from the incoming under slot.
    constexpr std::array<int, 4> ccw = {SE, NE, NW, SW};
    int start = static_cast<int>(std::find(ccw.begin(), ccw.end(), a_slot) - ccw.begin());
    Crossing x;
    for (int k = 0; k < 4; ++k) x.edges[k] = slot_edge[t.slot(g, ccw[(start + k) % 4])];
    int d_slot = ccw[(start + 3) % 4];
    x.sign = slot_in[t.slot(g, d_slot)] ? 1 : -1;
    crossings.push_back(x);
  }

  const auto& arc = kClosure[static_cast<int>(basepoint)];
  int base_edge = node_edge[arc[0]];
  if (base_edge == 0) {
    // The basepoint arc lies on a crossingless component.
    if (!crossings.empty()) {
      throw DiagramError("basepoint arc lies on a free circle");
    }
  }
  return PlanarDiagram(std::move(crossings), free_circles, base_edge);
}

std::array<int, 2> closure_arc_ports(ClosureArc arc) {
  const auto& a = kClosure[static_cast<int>(arc)];
  return {a[0], a[1]};
}

int pretzel_components(const PretzelParams& params) {
  require_nonzero(params);
  Template t(params);
  return static_cast<int>(trace_components(t).size());
}

std::vector<OrientationPattern> valid_orientation_patterns(const PretzelParams& params) {
  require_nonzero(params);
  Template t(params);
  auto comps = trace_components(t);
  std::set<OrientationPattern> found;
  for (const auto& [fw, pat] : orientation_choices(t, comps)) found.insert(pat);
  std::vector<OrientationPattern> out;
  for (auto pat : kAllPatterns) {
    if (found.count(pat)) out.push_back(pat);
  }
  return out;
}

std::vector<OrientationPattern> valid_orientation_patterns(int p, int q, int r) {
  if (p < 1 || q < 1 || r < 1) throw DiagramError("p, q, r must be positive");
  return valid_orientation_patterns(PretzelParams{-p, q, r});
}

OrientationPattern knot_orientation_pattern(int p, int q, int r) {
  if (p < 1 || q < 1 || r < 1) throw DiagramError("p, q, r must be positive");
  int evens = (p % 2 == 0) + (q % 2 == 0) + (r % 2 == 0);
  if (evens >= 2) throw DiagramError("link: pattern must be supplied");
  if (q % 2 == 0) return OrientationPattern::PlusPlus;
  if (p % 2 == 0) return OrientationPattern::PlusMinus;
  if (r % 2 == 0) return OrientationPattern::MinusMinus;
  return OrientationPattern::MinusPlus;
}

CrossingCounts crossing_counts(OrientationPattern pattern, int p, int q, int r) {
  auto valid = valid_orientation_patterns(p, q, r);
  if (std::find(valid.begin(), valid.end(), pattern) == valid.end()) {
    throw DiagramError("orientation pattern " + to_string(pattern) + " is not valid for P(-" +
                       std::to_string(p) + "," + std::to_string(q) + "," + std::to_string(r) +
                       ")");
  }
  switch (pattern) {
    case OrientationPattern::PlusPlus: return {r, p + q};
    case OrientationPattern::PlusMinus: return {p + q + r, 0};
    case OrientationPattern::MinusPlus: return {p, q + r};
    case OrientationPattern::MinusMinus: return {q, p + r};
  }
  return {};
}

Classification classify(int p, int q, int r) {
  if (p < 1 || q < 1 || r < 1) throw DiagramError("p, q, r must be positive");
  int m = std::min(q, r);
  if (p == 1 || p > m) return Classification::QuasiAlternating;
  if (p % 2 == 1 && m == p) return Classification::ThinNonQA;
  return Classification::ThickNonQA;
}

NormalizedPretzel normalize(const PretzelParams& params) {
  std::array<int, 3> k = {params.k1, params.k2, params.k3};
  NormalizedPretzel out;
  int negatives = (k[0] < 0) + (k[1] < 0) + (k[2] < 0);
  if (negatives >= 2) {
    for (int& v : k) v = -v;
    out.mirrored = true;
    negatives = 3 - negatives - ((k[0] == 0) + (k[1] == 0) + (k[2] == 0));
  }
  std::array<int, 3> before = k;
  if (negatives == 0) {
    out.alternating = true;
    std::sort(k.begin(), k.end());
    out.p = k[0];
    out.q = k[1];
    out.r = k[2];
  } else {
    int neg = k[0] < 0 ? 0 : (k[1] < 0 ? 1 : 2);
    int a = k[(neg + 1) % 3];
    int b = k[(neg + 2) % 3];
    out.p = -k[neg];
    out.q = std::min(a, b);
    out.r = std::max(a, b);
    k = {-out.p, out.q, out.r};
  }
  out.permuted = k != before;
  return out;
}

}  // namespace pretzelkh
