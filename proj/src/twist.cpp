#include "pretzelkh/twist.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "pretzelkh/khcube.hpp"

namespace pretzelkh {

// ---------------------------------------------------------------------------
// Tangle morphisms

bool TangleMorphism::is_unit() const {
  return from == to && (c[0] == 1 || c[0] == -1) && c[1] == 0 && c[2] == 0 && c[3] == 0;
}

TangleMorphism TangleMorphism::operator-() const {
  TangleMorphism m = *this;
  for (auto& v : m.c) v = -v;
  return m;
}

TangleMorphism& TangleMorphism::operator+=(const TangleMorphism& o) {
  if (o.from != from || o.to != to) throw std::invalid_argument("adding morphisms of different type");
  for (int i = 0; i < 4; ++i) c[i] += o.c[i];
  return *this;
}

TangleMorphism compose(const TangleMorphism& g, const TangleMorphism& f) {
  if (f.to != g.from) throw std::invalid_argument("composing non-composable tangle morphisms");
  TangleMorphism out{f.from, g.to, {}};
  const bool f_same = f.from == f.to;
  const bool g_same = g.from == g.to;
  if (f_same && g_same) {
    // Z[u,v]/(u^2,v^2) with basis index bits u = 1, v = 2.
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) {
        if ((i & j) == 0) out.c[i | j] += g.c[i] * f.c[j];
      }
    }
  } else if (f_same) {
    // (g0 S + g1 SD)(f0 + f1 u + f2 v + f3 uv); S u = S v = SD, D^2 = 0.
    out.c[0] = g.c[0] * f.c[0];
    out.c[1] = g.c[0] * (f.c[1] + f.c[2]) + g.c[1] * f.c[0];
  } else if (g_same) {
    out.c[0] = g.c[0] * f.c[0];
    out.c[1] = (g.c[1] + g.c[2]) * f.c[0] + g.c[0] * f.c[1];
  } else {
    // S S = u + v (neck cutting); one extra dot gives uv.
    const long long s = g.c[0] * f.c[0];
    out.c[1] = s;
    out.c[2] = s;
    out.c[3] = g.c[0] * f.c[1] + g.c[1] * f.c[0];
  }
  return out;
}

namespace {

const char* shape_name(Smoothing s) { return s == Smoothing::Vertical ? "||" : "="; }

}  // namespace

std::string to_string(const TangleMorphism& m) {
  std::ostringstream os;
  os << shape_name(m.from) << "->" << shape_name(m.to) << ":";
  const bool same = m.from == m.to;
  static const char* same_basis[] = {"1", "u", "v", "uv"};
  static const char* cross_basis[] = {"S", "SD"};
  bool any = false;
  for (int i = 0; i < (same ? 4 : 2); ++i) {
    if (m.c[i] == 0) continue;
    os << (m.c[i] > 0 ? (any ? "+" : "") : "-");
    if (std::llabs(m.c[i]) != 1) os << std::llabs(m.c[i]);
    os << (same ? same_basis[i] : cross_basis[i]);
    any = true;
  }
  if (!any) os << "0";
  return os.str();
}

// ---------------------------------------------------------------------------
// Twist complexes

int TwistComplex::terminal_sign() const {
  if (n < 2) return 1;
  const TangleMorphism& far = sign == TwistSign::Positive ? maps.back() : maps.front();
  return far.c[2] < 0 ? -1 : 1;
}

bool TwistComplex::composites_vanish() const {
  for (std::size_t i = 0; i + 1 < maps.size(); ++i) {
    if (!compose(maps[i + 1], maps[i]).is_zero()) return false;
  }
  return true;
}

TwistComplex twist_complex(int n, TwistSign sign) {
  if (n < 1) throw std::invalid_argument("twist_complex needs n >= 1");
  TwistComplex t;
  t.n = n;
  t.sign = sign;
  const auto V = Smoothing::Vertical;
  const auto E = Smoothing::Horizontal;
  if (sign == TwistSign::Positive) {
    t.objects.push_back({V, 0, 0});
    for (int i = 1; i <= n; ++i) t.objects.push_back({E, i, 2 * i - 1});
    t.maps.push_back(TangleMorphism::saddle(V, E));
    for (int i = 1; i < n; ++i) t.maps.push_back(TangleMorphism::dots(E, 1, (i % 2 == 0) ? 1 : -1));
  } else {
    for (int j = 0; j < n; ++j) t.objects.push_back({E, j, 2 * j - n + 1});
    t.objects.push_back({V, n, n});
    for (int j = 0; j + 1 < n; ++j) {
      t.maps.push_back(TangleMorphism::dots(E, 1, ((n - 1 - j) % 2 == 0) ? 1 : -1));
    }
    t.maps.push_back(TangleMorphism::saddle(E, V));
  }
  return t;
}

namespace {

// Complex over the tangle category, for the stacking reduction.
struct TangleComplex {
  std::vector<TwistObject> objects;
  std::map<std::pair<int, int>, TangleMorphism> d;  // (from, to)

  void add(int from, int to, const TangleMorphism& m) {
    if (m.is_zero()) return;
    auto [it, inserted] = d.try_emplace({from, to}, m);
    if (!inserted) {
      it->second += m;
      if (it->second.is_zero()) d.erase(it);
    }
  }
};

TangleMorphism same(Smoothing s, long long a, long long u, long long v = 0, long long uv = 0) {
  return {s, s, {a, u, v, uv}};
}

// Image of an object under stacking on top of a horizontal smoothing:
// || over = is =, and = over = is = plus a circle, delooped into the
// summands "circle = 1" (q+1) and "circle = x" (q-1).
std::vector<TwistObject> over_horizontal(const TwistObject& o, const TwistObject& n) {
  const int w = o.weight + n.weight;
  const int q = o.qshift + n.qshift;
  if (o.shape == Smoothing::Vertical) return {{Smoothing::Horizontal, w, q}};
  return {{Smoothing::Horizontal, w, q + 1}, {Smoothing::Horizontal, w, q - 1}};
}

// Matrix of f (from o1 to o2) stacked on top of a horizontal smoothing, as
// entries (source summand, target summand, morphism).
std::vector<std::tuple<int, int, TangleMorphism>> map_over_horizontal(const TangleMorphism& f) {
  const auto E = Smoothing::Horizontal;
  const auto& c = f.c;
  std::vector<std::tuple<int, int, TangleMorphism>> out;
  if (f.from == Smoothing::Vertical && f.to == Smoothing::Vertical) {
    // Both strands run into the cap.
    out.emplace_back(0, 0, same(E, c[0], c[1] + c[2]));
  } else if (f.from == Smoothing::Vertical) {
    // Split off the circle: S -> (u, 1), SD -> (0, u).
    out.emplace_back(0, 0, same(E, 0, c[0]));
    out.emplace_back(0, 1, same(E, c[0], c[1]));
  } else if (f.to == Smoothing::Vertical) {
    // Merge the circle back: S -> [1, u], SD -> [u, 0].
    out.emplace_back(0, 0, same(E, c[0], c[1]));
    out.emplace_back(1, 0, same(E, 0, c[0]));
  } else {
    // u acts on the cap; v acts on the circle (1 -> x).
    out.emplace_back(0, 0, same(E, c[0], c[1]));
    out.emplace_back(1, 1, same(E, c[0], c[1]));
    out.emplace_back(0, 1, same(E, c[2], c[3]));
  }
  return out;
}

TangleComplex single_crossing(TwistSign sign) {
  TangleComplex t;
  const auto V = Smoothing::Vertical;
  const auto E = Smoothing::Horizontal;
  if (sign == TwistSign::Positive) {
    t.objects = {{V, 0, 0}, {E, 1, 1}};
    t.add(0, 1, TangleMorphism::saddle(V, E));
  } else {
    t.objects = {{E, 0, 0}, {V, 1, 1}};
    t.add(0, 1, TangleMorphism::saddle(E, V));
  }
  return t;
}

// Stacks the complex t on top of one more crossing of the given sign,
// ordering the new crossing last.
TangleComplex stack(const TangleComplex& t, TwistSign sign) {
  const TangleComplex c = single_crossing(sign);
  TangleComplex out;
  // index[k][i]: summand indices of object i stacked over c.objects[k].
  std::vector<std::vector<std::vector<int>>> index(2);
  for (int k = 0; k < 2; ++k) {
    const TwistObject& n = c.objects[k];
    for (const auto& o : t.objects) {
      std::vector<int> ids;
      if (n.shape == Smoothing::Vertical) {
        ids.push_back(static_cast<int>(out.objects.size()));
        out.objects.push_back({o.shape, o.weight + n.weight, o.qshift + n.qshift});
      } else {
        for (const auto& img : over_horizontal(o, n)) {
          ids.push_back(static_cast<int>(out.objects.size()));
          out.objects.push_back(img);
        }
      }
      index[k].push_back(ids);
    }
  }
  // Old differential, tensored with each new object.
  for (int k = 0; k < 2; ++k) {
    const bool horizontal = c.objects[k].shape == Smoothing::Horizontal;
    for (const auto& [key, f] : t.d) {
      const auto& src = index[k][key.first];
      const auto& dst = index[k][key.second];
      if (!horizontal) {
        out.add(src[0], dst[0], f);
      } else {
        for (const auto& [si, ti, m] : map_over_horizontal(f)) out.add(src[si], dst[ti], m);
      }
    }
  }
  // New crossing's saddle, tensored with each old object.
  const auto V = Smoothing::Vertical;
  const auto E = Smoothing::Horizontal;
  for (std::size_t i = 0; i < t.objects.size(); ++i) {
    const auto& o = t.objects[i];
    const long long s = (o.weight % 2 == 0) ? 1 : -1;
    const auto& src = index[0][i];
    const auto& dst = index[1][i];
    if (sign == TwistSign::Positive) {
      if (o.shape == V) {
        out.add(src[0], dst[0], {V, E, {s, 0, 0, 0}});
      } else {
        // Split the bottom arc: to "circle = 1" with v, to "circle = x" with 1.
        out.add(src[0], dst[0], same(E, 0, 0, s));
        out.add(src[0], dst[1], same(E, s, 0));
      }
    } else {
      if (o.shape == V) {
        out.add(src[0], dst[0], {E, V, {s, 0, 0, 0}});
      } else {
        // Merge the circle into the bottom arc.
        out.add(src[0], dst[0], same(E, s, 0));
        out.add(src[1], dst[0], same(E, 0, 0, s));
      }
    }
  }
  return out;
}

// Gaussian elimination in the tangle category (unit pivots only).
TangleComplex eliminate(TangleComplex t) {
  std::vector<bool> alive(t.objects.size(), true);
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<int> order(t.objects.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return t.objects[a].weight < t.objects[b].weight; });
    for (int x : order) {
      if (!alive[x]) continue;
      int y = -1;
      TangleMorphism a;
      for (const auto& [key, m] : t.d) {
        if (key.first == x && m.is_unit() && t.objects[key.second].qshift == t.objects[x].qshift) {
          y = key.second;
          a = m;
          break;
        }
      }
      if (y < 0) continue;
      std::vector<std::pair<int, TangleMorphism>> into_y;
      std::vector<std::pair<int, TangleMorphism>> from_x;
      for (const auto& [key, m] : t.d) {
        if (key.second == y && key.first != x) into_y.emplace_back(key.first, m);
        if (key.first == x && key.second != y) from_x.emplace_back(key.second, m);
      }
      for (const auto& [s, b] : into_y) {
        for (const auto& [k, cm] : from_x) {
          // -c a^{-1} b with a^{-1} = a.
          TangleMorphism z = compose(cm, b);
          if (a.c[0] > 0) z = -z;
          t.add(s, k, z);
        }
      }
      for (auto it = t.d.begin(); it != t.d.end();) {
        const auto& key = it->first;
        const bool touches = key.first == x || key.second == x || key.first == y || key.second == y;
        it = touches ? t.d.erase(it) : std::next(it);
      }
      alive[x] = alive[y] = false;
      changed = true;
    }
  }
  TangleComplex out;
  std::vector<int> renum(t.objects.size(), -1);
  for (std::size_t i = 0; i < t.objects.size(); ++i) {
    if (!alive[i]) continue;
    renum[i] = static_cast<int>(out.objects.size());
    out.objects.push_back(t.objects[i]);
  }
  for (const auto& [key, m] : t.d) out.add(renum[key.first], renum[key.second], m);
  return out;
}

}  // namespace

TwistComplex reduce_twist_by_stacking(int n, TwistSign sign) {
  if (n < 1) throw std::invalid_argument("reduce_twist_by_stacking needs n >= 1");
  TangleComplex t = single_crossing(sign);
  for (int k = 1; k < n; ++k) t = eliminate(stack(t, sign));
  TwistComplex out;
  out.n = n;
  out.sign = sign;
  std::vector<int> order(t.objects.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return t.objects[a].weight < t.objects[b].weight; });
  for (int i : order) out.objects.push_back(t.objects[i]);
  for (std::size_t i = 0; i + 1 < order.size(); ++i) {
    auto it = t.d.find({order[i], order[i + 1]});
    out.maps.push_back(it == t.d.end() ? TangleMorphism{t.objects[order[i]].shape,
                                                        t.objects[order[i + 1]].shape, {}}
                                       : it->second);
  }
  // Anything other than a chain of consecutive maps is reported by leaving
  // maps shorter than objects - 1 or with extra entries; count them.
  std::size_t chain = 0;
  for (std::size_t i = 0; i + 1 < order.size(); ++i) chain += t.d.count({order[i], order[i + 1]});
  if (chain != t.d.size()) out.maps.clear();
  return out;
}

bool same_up_to_signs(const TwistComplex& a, const TwistComplex& b) {
  if (a.objects != b.objects || a.maps.size() != b.maps.size()) return false;
  for (std::size_t i = 0; i < a.maps.size(); ++i) {
    if (a.maps[i] != b.maps[i] && a.maps[i] != -b.maps[i]) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Twist cube

namespace {

constexpr int kPorts = 12;

int tl(int col) { return 4 * col; }
int tr(int col) { return 4 * col + 1; }
int bl(int col) { return 4 * col + 2; }
int br(int col) { return 4 * col + 3; }

// Ports on the first and second arc of a smoothing (u and v arcs).
std::array<std::array<int, 2>, 2> arcs(Smoothing s, int col) {
  if (s == Smoothing::Vertical) return {{{tl(col), bl(col)}, {tr(col), br(col)}}};
  return {{{tl(col), tr(col)}, {bl(col), br(col)}}};
}

struct Circles {
  int count = 0;
  std::array<int, kPorts> port_circle{};
};

Circles closed_circles(const std::array<Smoothing, 3>& shapes) {
  std::array<int, kPorts> parent{};
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  auto unite = [&](int a, int b) { parent[find(a)] = find(b); };
  for (int col = 0; col < 3; ++col) {
    for (const auto& arc : arcs(shapes[col], col)) unite(arc[0], arc[1]);
  }
  for (auto arc : {ClosureArc::Top01, ClosureArc::Top12, ClosureArc::Top20, ClosureArc::Bottom01,
                   ClosureArc::Bottom12, ClosureArc::Bottom20}) {
    const auto ports = closure_arc_ports(arc);
    unite(ports[0], ports[1]);
  }
  Circles c;
  std::array<int, kPorts> label;
  label.fill(-1);
  for (int p = 0; p < kPorts; ++p) {
    const int root = find(p);
    if (label[root] < 0) label[root] = c.count++;
    c.port_circle[p] = label[root];
  }
  return c;
}

// Column with no twists: a fixed vertical smoothing.
TwistComplex trivial_column() {
  TwistComplex t;
  t.n = 0;
  t.objects.push_back({Smoothing::Vertical, 0, 0});
  return t;
}

}  // namespace

int TwistCube::node_index(int a, int b, int c) const {
  const int nb = static_cast<int>(columns[1].objects.size());
  const int nc = static_cast<int>(columns[2].objects.size());
  return (a * nb + b) * nc + c;
}

TwistCube build_twist_cube(const PretzelParams& params, ClosureArc basepoint) {
  if (params.k1 == 0 && params.k2 == 0 && params.k3 == 0) {
    throw DiagramError("all twist counts are zero");
  }
  TwistCube cube;
  cube.params = params;
  cube.basepoint = basepoint;
  const std::array<int, 3> k = {params.k1, params.k2, params.k3};
  for (int i = 0; i < 3; ++i) {
    cube.columns[i] = k[i] == 0 ? trivial_column()
                                : twist_complex(std::abs(k[i]),
                                                k[i] > 0 ? TwistSign::Positive : TwistSign::Negative);
  }
  const int base_port = closure_arc_ports(basepoint)[0];
  const auto& cols = cube.columns;
  for (std::size_t a = 0; a < cols[0].objects.size(); ++a) {
    for (std::size_t b = 0; b < cols[1].objects.size(); ++b) {
      for (std::size_t c = 0; c < cols[2].objects.size(); ++c) {
        CubeNode node;
        node.index = {static_cast<int>(a), static_cast<int>(b), static_cast<int>(c)};
        const std::array<const TwistObject*, 3> obj = {&cols[0].objects[a], &cols[1].objects[b],
                                                       &cols[2].objects[c]};
        for (int i = 0; i < 3; ++i) {
          node.shapes[i] = obj[i]->shape;
          node.weight += obj[i]->weight;
          node.qshift += obj[i]->qshift;
        }
        const Circles circ = closed_circles(node.shapes);
        node.circles = circ.count;
        node.port_circle = circ.port_circle;
        node.basepoint_circle = circ.port_circle[base_port];
        cube.nodes.push_back(node);
      }
    }
  }
  for (int from = 0; from < static_cast<int>(cube.nodes.size()); ++from) {
    const CubeNode& node = cube.nodes[from];
    int earlier = 0;
    for (int col = 0; col < 3; ++col) {
      const int idx = node.index[col];
      const int koszul = (earlier % 2 == 0) ? 1 : -1;
      earlier += cols[col].objects[idx].weight;
      if (idx + 1 >= static_cast<int>(cols[col].objects.size())) continue;
      auto next = node.index;
      ++next[col];
      CubeEdge e;
      e.from = from;
      e.to = cube.node_index(next[0], next[1], next[2]);
      e.column = col;
      e.koszul = koszul;
      const TangleMorphism& m = cols[col].maps[idx];
      if (m.from != m.to) {
        e.kind = CubeEdgeKind::Saddle;
      } else {
        e.kind = CubeEdgeKind::Dots;
        const auto a = arcs(m.from, col);
        std::map<int, int> terms;
        terms[node.port_circle[a[0][0]]] += static_cast<int>(m.c[1]);
        terms[node.port_circle[a[1][0]]] += static_cast<int>(m.c[2]);
        for (const auto& [circle, coeff] : terms) {
          if (coeff != 0 && circle != node.basepoint_circle) e.dots.push_back({circle, coeff});
        }
      }
      cube.edges.push_back(std::move(e));
    }
  }
  return cube;
}

TwistCube build_twist_cube(int p, int q, int r) {
  if (p < 1 || q < 1 || r < 1) throw std::invalid_argument("build_twist_cube expects p, q, r >= 1");
  return build_twist_cube(PretzelParams{-p, q, r});
}

std::string dump_cube(const TwistCube& cube) {
  std::ostringstream os;
  os << "cube (" << cube.params.k1 << "," << cube.params.k2 << "," << cube.params.k3 << ") nodes "
     << cube.nodes.size() << " edges " << cube.edges.size() << "\n";
  for (std::size_t i = 0; i < cube.nodes.size(); ++i) {
    const auto& n = cube.nodes[i];
    os << "node " << i << " [" << n.index[0] << "," << n.index[1] << "," << n.index[2] << "] "
       << shape_name(n.shapes[0]) << ' ' << shape_name(n.shapes[1]) << ' ' << shape_name(n.shapes[2])
       << " circles " << n.circles << " base " << n.basepoint_circle << " w " << n.weight << " qs "
       << n.qshift << "\n";
  }
  for (const auto& e : cube.edges) {
    os << "edge " << e.from << " -> " << e.to << " col " << e.column << ' '
       << (e.kind == CubeEdgeKind::Saddle ? "saddle" : "dots") << " sign " << e.koszul;
    for (const auto& t : e.dots) os << " " << t.coeff << "*x" << t.circle;
    os << "\n";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Free complexes

std::size_t FreeComplex::nonzeros() const {
  std::size_t n = 0;
  for (const auto& row : out) n += row.size();
  return n;
}

void FreeComplex::check() const {
  if (out.size() != gens.size()) throw IntegrityError("free complex: adjacency size mismatch");
  for (int i = 0; i < size(); ++i) {
    for (const auto& [j, c] : out[i]) {
      if (j < 0 || j >= size()) throw IntegrityError("free complex: entry out of range");
      if (gens[j].h != gens[i].h + 1 || gens[j].q != gens[i].q) {
        throw IntegrityError("free complex: entry " + std::to_string(i) + " -> " +
                             std::to_string(j) + " breaks the (h,q) grading");
      }
    }
  }
  std::unordered_map<int, Integer> acc;
  for (int i = 0; i < size(); ++i) {
    acc.clear();
    for (const auto& [j, c] : out[i]) {
      for (const auto& [k, c2] : out[j]) acc[k] += c * c2;
    }
    for (const auto& [k, v] : acc) {
      if (!v.is_zero()) {
        std::ostringstream os;
        os << "d^2 != 0: square from generator " << i << " (node " << gens[i].from.node
           << ") to generator " << k << " (node " << gens[k].from.node << ") has coefficient "
           << v;
        throw IntegrityError(os.str());
      }
    }
  }
}

GradedComplex FreeComplex::to_graded() const {
  GradedComplex g;
  if (gens.empty()) return g;
  int lo = gens[0].h;
  int hi = gens[0].h;
  for (const auto& x : gens) {
    lo = std::min(lo, x.h);
    hi = std::max(hi, x.h);
  }
  g.h_min = lo;
  g.qgrades.resize(hi - lo + 1);
  std::vector<int> local(gens.size());
  for (int i = 0; i < size(); ++i) {
    auto& group = g.qgrades[gens[i].h - lo];
    local[i] = static_cast<int>(group.size());
    group.push_back(gens[i].q);
  }
  std::vector<std::vector<MatrixEntry>> triples(hi - lo);
  for (int i = 0; i < size(); ++i) {
    for (const auto& [j, c] : out[i]) {
      if (gens[j].h != gens[i].h + 1) throw IntegrityError("free complex: entry breaks h grading");
      triples[gens[i].h - lo].push_back({local[j], local[i], c});
    }
  }
  for (int k = 0; k < hi - lo; ++k) {
    g.differentials.emplace_back(static_cast<int>(g.qgrades[k + 1].size()),
                                 static_cast<int>(g.qgrades[k].size()), std::move(triples[k]));
  }
  return g;
}

FreeComplex from_graded(const GradedComplex& c) {
  FreeComplex f;
  std::vector<int> start(c.groups() + 1, 0);
  for (int i = 0; i < c.groups(); ++i) {
    start[i + 1] = start[i] + static_cast<int>(c.qgrades[i].size());
    for (int q : c.qgrades[i]) f.gens.push_back({c.h_min + i, q, {}});
  }
  f.out.resize(f.gens.size());
  for (std::size_t i = 0; i < c.differentials.size(); ++i) {
    for (const auto& e : c.differentials[i].entries()) {
      f.out[start[i] + e.col].emplace_back(start[i + 1] + e.row, e.value);
    }
  }
  return f;
}

namespace {

inline std::uint32_t expand_mask(std::uint32_t local, int base) {
  const std::uint32_t low = local & ((1U << base) - 1U);
  return low | (1U << base) | ((local >> base) << (base + 1));
}

inline std::uint32_t compress_mask(std::uint32_t mask, int base) {
  const std::uint32_t low = mask & ((1U << base) - 1U);
  return low | ((mask >> (base + 1)) << base);
}

}  // namespace

FreeComplex to_free_complex(const TwistCube& cube, const CrossingCounts& counts) {
  FreeComplex f;
  std::vector<int> offset(cube.nodes.size());
  const int shift = 1 + counts.n_plus - 2 * counts.n_minus;
  for (std::size_t i = 0; i < cube.nodes.size(); ++i) {
    const auto& node = cube.nodes[i];
    offset[i] = f.size();
    const std::uint32_t count = 1U << (node.circles - 1);
    for (std::uint32_t local = 0; local < count; ++local) {
      const int xs = std::popcount(local);
      const int eps = -1 + (node.circles - 1 - xs) - xs;
      f.gens.push_back({node.weight - counts.n_minus, eps + node.qshift + shift,
                        {static_cast<int>(i), expand_mask(local, node.basepoint_circle)}});
    }
  }
  f.out.resize(f.gens.size());

  for (const auto& e : cube.edges) {
    const CubeNode& s = cube.nodes[e.from];
    const CubeNode& t = cube.nodes[e.to];
    const std::uint32_t count = 1U << (s.circles - 1);
    if (e.kind == CubeEdgeKind::Dots) {
      for (std::uint32_t local = 0; local < count; ++local) {
        const std::uint32_t mask = expand_mask(local, s.basepoint_circle);
        for (const auto& term : e.dots) {
          if ((mask >> term.circle) & 1U) continue;  // x * x = 0
          const std::uint32_t image = mask | (1U << term.circle);
          f.out[offset[e.from] + local].emplace_back(
              offset[e.to] + compress_mask(image, t.basepoint_circle), Integer(term.coeff * e.koszul));
        }
      }
      continue;
    }
    // Saddle in column e.column.
    const int col = e.column;
    std::array<int, 32> circle_map{};
    for (int p = 0; p < kPorts; ++p) {
      if (p / 4 != col) circle_map[s.port_circle[p]] = t.port_circle[p];
    }
    const int a = s.port_circle[tl(col)];
    const int b = s.port_circle[br(col)];
    for (std::uint32_t local = 0; local < count; ++local) {
      const std::uint32_t mask = expand_mask(local, s.basepoint_circle);
      const int src = offset[e.from] + static_cast<int>(local);
      std::uint32_t rest = 0;
      for (int k = 0; k < s.circles; ++k) {
        if (k == a || k == b) continue;
        if ((mask >> k) & 1U) rest |= 1U << circle_map[k];
      }
      const Integer sign(e.koszul);
      if (a != b) {
        const bool xa = (mask >> a) & 1U;
        const bool xb = (mask >> b) & 1U;
        if (xa && xb) continue;
        const int m = t.port_circle[tl(col)];
        const std::uint32_t image = rest | ((xa || xb) ? (1U << m) : 0U);
        if (!((image >> t.basepoint_circle) & 1U)) continue;
        f.out[src].emplace_back(offset[e.to] + compress_mask(image, t.basepoint_circle), sign);
      } else {
        const int a1 = t.port_circle[tl(col)];
        const int a2 = t.port_circle[br(col)];
        if ((mask >> a) & 1U) {
          const std::uint32_t image = rest | (1U << a1) | (1U << a2);
          f.out[src].emplace_back(offset[e.to] + compress_mask(image, t.basepoint_circle), sign);
        } else {
          for (int xon : {a1, a2}) {
            const std::uint32_t image = rest | (1U << xon);
            if (!((image >> t.basepoint_circle) & 1U)) continue;
            f.out[src].emplace_back(offset[e.to] + compress_mask(image, t.basepoint_circle), sign);
          }
        }
      }
    }
  }
  return f;
}

FreeComplex to_free_complex(const TwistCube& cube, OrientationPattern pattern) {
  const PlanarDiagram pd = build_pretzel_pd(cube.params, pattern, cube.basepoint);
  return to_free_complex(cube, pd.counts());
}

// ---------------------------------------------------------------------------
// Gaussian elimination

FreeComplex gaussian_eliminate(const FreeComplex& input) {
  const int n = input.size();
  std::vector<std::unordered_map<int, Integer>> out(n);
  std::vector<std::unordered_map<int, Integer>> in(n);
  for (int i = 0; i < n; ++i) {
    for (const auto& [j, c] : input.out[i]) {
      if (c.is_zero()) continue;
      Integer& slot = out[i][j];
      slot += c;
      if (slot.is_zero()) {
        out[i].erase(j);
        in[j].erase(i);
      } else {
        in[j][i] = slot;
      }
    }
  }
  std::vector<char> alive(n, 1);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return input.gens[a].h < input.gens[b].h; });

  auto set_entry = [&](int s, int t, const Integer& v) {
    if (v.is_zero()) {
      out[s].erase(t);
      in[t].erase(s);
    } else {
      out[s][t] = v;
      in[t][s] = v;
    }
  };

  bool changed = true;
  while (changed) {
    changed = false;
    for (int x : order) {
      if (!alive[x]) continue;
      int y = -1;
      for (const auto& [j, c] : out[x]) {
        if (c.is_unit() && (y < 0 || j < y)) y = j;
      }
      if (y < 0) continue;
      const Integer a = out[x][y];  // a^{-1} == a
      std::vector<std::pair<int, Integer>> sources;
      for (const auto& [s, b] : in[y]) {
        if (s != x) sources.emplace_back(s, b);
      }
      std::vector<std::pair<int, Integer>> targets;
      for (const auto& [t, c] : out[x]) {
        if (t != y) targets.emplace_back(t, c);
      }
      for (const auto& [s, b] : sources) {
        const Integer ab = a * b;
        for (const auto& [t, c] : targets) {
          auto it = out[s].find(t);
          Integer v = it == out[s].end() ? Integer(0) : it->second;
          v -= c * ab;
          set_entry(s, t, v);
        }
      }
      // Detach x and y.
      for (int g : {x, y}) {
        for (const auto& [t, c] : out[g]) in[t].erase(g);
        for (const auto& [s, c] : in[g]) out[s].erase(g);
        out[g].clear();
        in[g].clear();
        alive[g] = 0;
      }
      changed = true;
    }
  }

  FreeComplex result;
  std::vector<int> renum(n, -1);
  for (int i = 0; i < n; ++i) {
    if (!alive[i]) continue;
    renum[i] = result.size();
    result.gens.push_back(input.gens[i]);
  }
  result.out.resize(result.gens.size());
  for (int i = 0; i < n; ++i) {
    if (!alive[i]) continue;
    auto& row = result.out[renum[i]];
    for (const auto& [j, c] : out[i]) row.emplace_back(renum[j], c);
    std::sort(row.begin(), row.end(),
              [](const auto& l, const auto& r) { return l.first < r.first; });
  }
  return result;
}

HomologyTable fast_homology(const PretzelParams& params, std::optional<OrientationPattern> pattern) {
  const PlanarDiagram pd = build_pretzel_pd(params, pattern);
  const TwistCube cube = build_twist_cube(params);
  const FreeComplex reduced = gaussian_eliminate(to_free_complex(cube, pd.counts()));
  return homology(reduced.to_graded());
}

HomologyTable fast_homology(int p, int q, int r, OrientationPattern pattern) {
  if (p < 1 || q < 1 || r < 1) throw std::invalid_argument("fast_homology expects p, q, r >= 1");
  return fast_homology(PretzelParams{-p, q, r}, pattern);
}

// ---------------------------------------------------------------------------
// Path signs

bool floor_edge_orange(Step direction, int y, int /*x*/) {
  return direction == Step::Y || y % 2 == 0;
}

int path_sign(const GridPoint& start, const std::vector<Step>& steps) {
  GridPoint at = start;
  int sign = 1;
  for (Step s : steps) {
    if (s == Step::Down) {
      --at.height;
      continue;
    }
    int edge = floor_edge_orange(s, at.y, at.x) ? 1 : -1;
    if (at.height % 2 != 0) edge = -edge;
    sign *= edge;
    if (s == Step::X) ++at.x; else ++at.y;
  }
  return sign;
}

int path_sign_from_colors(std::string_view colors) {
  int sign = 1;
  for (std::size_t i = 0; i < colors.size(); ++i) {
    const bool odd = (i % 2 == 0);  // positions are 1-based
    const char c = colors[i];
    if (c != 'B' && c != 'O') throw std::invalid_argument("colour word must use B and O");
    if ((odd && c == 'B') || (!odd && c == 'O')) sign = -sign;
  }
  return sign;
}

std::string path_colors(const GridPoint& start, const std::vector<Step>& steps) {
  GridPoint at = start;
  std::string word;
  for (Step s : steps) {
    if (s == Step::Down) {
      --at.height;
      continue;
    }
    word.push_back(floor_edge_orange(s, at.y, at.x) ? 'O' : 'B');
    if (s == Step::X) ++at.x; else ++at.y;
  }
  std::reverse(word.begin(), word.end());
  return word;
}

namespace {

// Horizontal steps in an admissible path between two grid points, or -1.
int horizontal_steps(const GridPoint& start, const GridPoint& end) {
  const int k = start.height - end.height + 1;
  if (k < 1 || end.y < start.y || end.x < start.x) return -1;
  if ((end.y - start.y) + (end.x - start.x) != k) return -1;
  return k;
}

}  // namespace

long long signed_path_count(const GridPoint& start, const GridPoint& end, Step first_step) {
  if (first_step == Step::Down) throw std::invalid_argument("paths start horizontally");
  const int k = horizontal_steps(start, end);
  if (k < 0) return 0;
  const int dy = end.y - start.y;
  // ways[j] = signed count of partial paths having taken j Y steps so far.
  std::vector<long long> ways(dy + 2, 0);
  {
    const int j = first_step == Step::Y ? 1 : 0;
    if (j > dy || (first_step == Step::X && end.x == start.x)) return 0;
    ways[j] = path_sign(start, {first_step});
  }
  for (int i = 1; i < k; ++i) {
    const int z = start.height - i;
    std::vector<long long> next(dy + 2, 0);
    for (int j = 0; j <= dy; ++j) {
      if (ways[j] == 0) continue;
      const int y = start.y + j;
      const int x = start.x + (i - j);
      const int flip = (z % 2 == 0) ? 1 : -1;
      if (j + 1 <= dy) next[j + 1] += ways[j] * flip * (floor_edge_orange(Step::Y, y, x) ? 1 : -1);
      if (x + 1 <= end.x) next[j] += ways[j] * flip * (floor_edge_orange(Step::X, y, x) ? 1 : -1);
    }
    ways = std::move(next);
  }
  return ways[dy];
}

long long signed_path_count_bruteforce(const GridPoint& start, const GridPoint& end, Step first_step) {
  const int k = horizontal_steps(start, end);
  if (k < 0 || k > 30) return 0;
  long long total = 0;
  for (std::uint32_t choice = 0; choice < (1U << (k - 1)); ++choice) {
    std::vector<Step> steps{first_step};
    for (int i = 1; i < k; ++i) {
      steps.push_back(Step::Down);
      steps.push_back(((choice >> (i - 1)) & 1U) ? Step::Y : Step::X);
    }
    int ys = 0;
    for (Step s : steps) ys += s == Step::Y;
    if (ys != end.y - start.y) continue;
    total += path_sign(start, steps);
  }
  return total;
}

}  // namespace pretzelkh
