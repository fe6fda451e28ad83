#include "pretzelkh/khcube.hpp"

#include <algorithm>
#include <bit>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>

namespace pretzelkh {

int ResolutionState::weight() const {
  return static_cast<int>(std::count(bits.begin(), bits.end(), std::uint8_t{1}));
}

namespace {

constexpr std::size_t kGeneratorCap = std::size_t{1} << 24;

int edge_index(const PlanarDiagram& pd, int edge) {
  const auto& edges = pd.edges();
  auto it = std::lower_bound(edges.begin(), edges.end(), edge);
  return static_cast<int>(it - edges.begin());
}

// Crossings with edge identifiers replaced by their positions in edges().
std::vector<std::array<int, 4>> indexed_crossings(const PlanarDiagram& pd) {
  std::vector<std::array<int, 4>> out;
  out.reserve(pd.crossings().size());
  for (const auto& x : pd.crossings()) {
    std::array<int, 4> a{};
    for (int k = 0; k < 4; ++k) a[k] = edge_index(pd, x.edges[k]);
    out.push_back(a);
  }
  return out;
}

// Resolution of a bitmask state; scratch-free variant of resolve_state.
struct Resolver {
  std::vector<std::array<int, 4>> xs;
  int n_edges = 0;
  int free_circles = 0;
  int base_edge = -1;  // -1: basepoint on the first free circle
  std::vector<int> parent;
  std::vector<int> label;

  explicit Resolver(const PlanarDiagram& pd)
      : xs(indexed_crossings(pd)),
        n_edges(static_cast<int>(pd.edges().size())),
        free_circles(pd.free_circles()),
        base_edge(pd.basepoint() == 0 ? -1 : edge_index(pd, pd.basepoint())),
        parent(n_edges),
        label(n_edges) {}

  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }

  // Fills edge_circle (size n_edges); returns {circles, basepoint circle}.
  std::pair<int, int> run(std::uint64_t mask, int* edge_circle) {
    std::iota(parent.begin(), parent.end(), 0);
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const auto& a = xs[i];
      if ((mask >> i) & 1U) {
        parent[find(a[0])] = find(a[3]);
        parent[find(a[1])] = find(a[2]);
      } else {
        parent[find(a[0])] = find(a[1]);
        parent[find(a[2])] = find(a[3]);
      }
    }
    std::fill(label.begin(), label.end(), -1);
    int circles = 0;
    for (int e = 0; e < n_edges; ++e) {
      const int root = find(e);
      if (label[root] < 0) label[root] = circles++;
      edge_circle[e] = label[root];
    }
    const int base = base_edge >= 0 ? edge_circle[base_edge] : circles;
    return {circles + free_circles, base};
  }
};

std::uint64_t to_mask(const ResolutionState& state) {
  std::uint64_t m = 0;
  for (std::size_t i = 0; i < state.bits.size(); ++i) {
    if (state.bits[i]) m |= std::uint64_t{1} << i;
  }
  return m;
}

void check_state(const PlanarDiagram& pd, const ResolutionState& state) {
  if (static_cast<int>(state.bits.size()) != pd.crossing_count()) {
    throw std::invalid_argument("state has " + std::to_string(state.bits.size()) +
                                " bits for a diagram with " +
                                std::to_string(pd.crossing_count()) + " crossings");
  }
  if (pd.crossing_count() > 63) throw ResourceError("more than 63 crossings");
}

// Drops bit `base` from a label mask.
inline std::uint32_t compress(std::uint32_t mask, int base) {
  const std::uint32_t low = mask & ((1U << base) - 1U);
  return low | ((mask >> (base + 1)) << base);
}

inline std::uint32_t expand(std::uint32_t local, int base) {
  const std::uint32_t low = local & ((1U << base) - 1U);
  return low | (1U << base) | ((local >> base) << (base + 1));
}

}  // namespace

Resolution resolve_state(const PlanarDiagram& pd, const ResolutionState& state) {
  check_state(pd, state);
  Resolver r(pd);
  Resolution out;
  out.edge_circle.resize(r.n_edges);
  auto [circles, base] = r.run(to_mask(state), out.edge_circle.data());
  out.circles = circles;
  out.basepoint_circle = base;
  return out;
}

std::vector<StateGenerator> state_generators(const PlanarDiagram& pd,
                                             const ResolutionState& state) {
  const Resolution res = resolve_state(pd, state);
  std::vector<StateGenerator> out;
  const std::uint32_t count = 1U << (res.circles - 1);
  for (std::uint32_t local = 0; local < count; ++local) {
    const std::uint32_t mask = expand(local, res.basepoint_circle);
    StateGenerator g;
    g.state = state;
    g.basepoint_circle = res.basepoint_circle;
    for (int c = 0; c < res.circles; ++c) g.labels.push_back((mask >> c) & 1U ? Label::X : Label::One);
    out.push_back(std::move(g));
  }
  return out;
}

GradedComplex build_reduced_complex(const PlanarDiagram& pd, const CubeOptions& options) {
  const int n = pd.crossing_count();
  if (n > options.max_crossings) {
    throw ResourceError("diagram has " + std::to_string(n) + " crossings; the cube cap is " +
                        std::to_string(options.max_crossings) + " (use the fast route)");
  }
  if (n > 30) throw ResourceError("cube construction supports at most 30 crossings");
  const CrossingCounts counts = pd.counts();
  Resolver resolver(pd);
  const int E = resolver.n_edges;
  const std::uint64_t states = std::uint64_t{1} << n;

  std::vector<std::uint8_t> edge_circle(states * E);
  std::vector<std::uint8_t> circles(states);
  std::vector<std::uint8_t> base(states);
  std::vector<std::uint32_t> offset(states);
  std::vector<std::size_t> group_size(n + 1, 0);
  std::vector<int> scratch(E);
  std::size_t total = 0;
  for (std::uint64_t s = 0; s < states; ++s) {
    auto [c, b] = resolver.run(s, scratch.data());
    if (c > 31) throw ResourceError("state with more than 31 circles");
    std::copy(scratch.begin(), scratch.end(), edge_circle.begin() + s * E);
    circles[s] = static_cast<std::uint8_t>(c);
    base[s] = static_cast<std::uint8_t>(b);
    const int w = std::popcount(s);
    offset[s] = static_cast<std::uint32_t>(group_size[w]);
    const std::size_t gens = std::size_t{1} << (c - 1);
    group_size[w] += gens;
    total += gens;
    if (total > kGeneratorCap) {
      throw ResourceError("reduced complex exceeds " + std::to_string(kGeneratorCap) +
                          " generators");
    }
  }

  GradedComplex out;
  out.h_min = -counts.n_minus;
  out.qgrades.resize(n + 1);
  for (int w = 0; w <= n; ++w) out.qgrades[w].resize(group_size[w]);
  const int shift = 1 + counts.n_plus - 2 * counts.n_minus;
  for (std::uint64_t s = 0; s < states; ++s) {
    const int c = circles[s];
    const int w = std::popcount(s);
    const std::uint32_t count = 1U << (c - 1);
    for (std::uint32_t local = 0; local < count; ++local) {
      // Basepoint contributes -1; each other x contributes -1, each 1 +1.
      const int xs = std::popcount(local);
      const int eps = -1 + (c - 1 - xs) - xs;
      out.qgrades[w][offset[s] + local] = eps + w + shift;
    }
  }

  std::vector<std::vector<MatrixEntry>> triples(n);
  std::vector<int> circle_map(32);
  for (std::uint64_t s = 0; s < states; ++s) {
    const int w = std::popcount(s);
    const std::uint8_t* ec = &edge_circle[s * E];
    const int cs = circles[s];
    const int bs = base[s];
    const int edge_circles_s = cs - pd.free_circles();
    for (int i = 0; i < n; ++i) {
      if ((s >> i) & 1U) continue;
      const std::uint64_t t = s | (std::uint64_t{1} << i);
      const std::uint8_t* et = &edge_circle[t * E];
      const int ct = circles[t];
      const int bt = base[t];
      const int edge_circles_t = ct - pd.free_circles();
      const int sign = (std::popcount(s & ((std::uint64_t{1} << i) - 1)) % 2) ? -1 : 1;
      const auto& x = resolver.xs[i];

      // Circle correspondence s -> t for circles away from the crossing.
      for (int e = 0; e < E; ++e) circle_map[ec[e]] = et[e];
      for (int f = 0; f < pd.free_circles(); ++f) circle_map[edge_circles_s + f] = edge_circles_t + f;

      const int a = ec[x[0]];
      const int b = ec[x[2]];
      const std::uint32_t count = 1U << (cs - 1);
      if (a != b) {
        // Merge: a and b both land on circle m.
        const int m = et[x[0]];
        for (std::uint32_t local = 0; local < count; ++local) {
          const std::uint32_t mask = expand(local, bs);
          const bool xa = (mask >> a) & 1U;
          const bool xb = (mask >> b) & 1U;
          if (xa && xb) continue;
          std::uint32_t image = 0;
          for (int k = 0; k < cs; ++k) {
            if (k == a || k == b) continue;
            if ((mask >> k) & 1U) image |= 1U << circle_map[k];
          }
          if (xa || xb) image |= 1U << m;
          triples[w].push_back({static_cast<int>(offset[t] + compress(image, bt)),
                                static_cast<int>(offset[s] + local), Integer(sign)});
        }
      } else {
        // Split: circle a becomes a1 (through x[0]) and a2 (through x[1]).
        const int a1 = et[x[0]];
        const int a2 = et[x[1]];
        for (std::uint32_t local = 0; local < count; ++local) {
          const std::uint32_t mask = expand(local, bs);
          std::uint32_t rest = 0;
          for (int k = 0; k < cs; ++k) {
            if (k == a) continue;
            if ((mask >> k) & 1U) rest |= 1U << circle_map[k];
          }
          const int col = static_cast<int>(offset[s] + local);
          if ((mask >> a) & 1U) {
            const std::uint32_t image = rest | (1U << a1) | (1U << a2);
            triples[w].push_back({static_cast<int>(offset[t] + compress(image, bt)), col, Integer(sign)});
          } else {
            // 1 -> 1(x)x + x(x)1; a term with a 1 on the basepoint drops out.
            for (int xon : {a1, a2}) {
              const std::uint32_t image = rest | (1U << xon);
              if (!((image >> bt) & 1U)) continue;
              triples[w].push_back(
                  {static_cast<int>(offset[t] + compress(image, bt)), col, Integer(sign)});
            }
          }
        }
      }
    }
  }
  out.differentials.reserve(n);
  for (int w = 0; w < n; ++w) {
    out.differentials.emplace_back(static_cast<int>(group_size[w + 1]),
                                   static_cast<int>(group_size[w]), std::move(triples[w]));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Text format

void write_complex(std::ostream& os, const GradedComplex& c) {
  os << "pretzelkh-complex 1\n";
  os << "h_min " << c.h_min << "\n";
  os << "groups " << c.groups() << "\n";
  for (int i = 0; i < c.groups(); ++i) {
    os << "group " << i << ' ' << c.qgrades[i].size();
    for (int q : c.qgrades[i]) os << ' ' << q;
    os << "\n";
  }
  for (std::size_t i = 0; i < c.differentials.size(); ++i) {
    const auto& d = c.differentials[i];
    os << "map " << i << ' ' << d.rows() << ' ' << d.cols() << ' ' << d.nonzeros() << "\n";
    for (const auto& e : d.entries()) os << e.row << ' ' << e.col << ' ' << e.value << "\n";
  }
  os << "end\n";
}

namespace {

[[noreturn]] void format_error(const std::string& what) {
  throw std::runtime_error("complex file: " + what);
}

void expect(std::istream& is, const std::string& word) {
  std::string w;
  if (!(is >> w) || w != word) format_error("expected '" + word + "', got '" + w + "'");
}

}  // namespace

GradedComplex read_complex(std::istream& is) {
  GradedComplex c;
  expect(is, "pretzelkh-complex");
  int version = 0;
  if (!(is >> version) || version != 1) format_error("unsupported version");
  expect(is, "h_min");
  if (!(is >> c.h_min)) format_error("bad h_min");
  expect(is, "groups");
  int groups = 0;
  if (!(is >> groups) || groups < 0) format_error("bad group count");
  c.qgrades.resize(groups);
  for (int i = 0; i < groups; ++i) {
    expect(is, "group");
    int idx = 0;
    std::size_t size = 0;
    if (!(is >> idx >> size) || idx != i) format_error("bad group header");
    c.qgrades[i].resize(size);
    for (auto& q : c.qgrades[i]) {
      if (!(is >> q)) format_error("bad q-grade");
    }
  }
  for (int i = 0; i + 1 < groups; ++i) {
    expect(is, "map");
    int idx = 0, rows = 0, cols = 0;
    std::size_t nnz = 0;
    if (!(is >> idx >> rows >> cols >> nnz) || idx != i) format_error("bad map header");
    std::vector<MatrixEntry> triples;
    triples.reserve(nnz);
    for (std::size_t k = 0; k < nnz; ++k) {
      int r = 0, col = 0;
      std::string v;
      if (!(is >> r >> col >> v)) format_error("bad matrix entry");
      triples.push_back({r, col, Integer(v)});
    }
    c.differentials.emplace_back(rows, cols, std::move(triples));
  }
  expect(is, "end");
  return c;
}

}  // namespace pretzelkh
