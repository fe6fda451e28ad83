#include "pretzelkh/pd_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <numeric>
#include <sstream>
#include <vector>

namespace pretzelkh {

namespace {

struct Token {
  enum Kind { Crossing, Pretzel, Directive } kind;
  std::size_t pos = 0;
  std::vector<int> ints;   // for X(...) and P(...)
  std::string name;        // directive name
  std::string value;       // directive value
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_separators();
      if (at_end()) break;
      out.push_back(term());
    }
    return out;
  }

 private:
  bool at_end() const { return i_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[i_]; }

  void skip_separators() {
    while (!at_end()) {
      char c = peek();
      if (std::isspace(static_cast<unsigned char>(c)) || c == ',' || c == ';') {
        ++i_;
      } else if (c == '#') {
        while (!at_end() && peek() != '\n') ++i_;
      } else {
        break;
      }
    }
  }

  [[noreturn]] void fail(std::size_t pos, const std::string& what) const {
    throw ParseError(ParseErrorKind::MalformedTerm, pos, what);
  }

  int integer() {
    std::size_t start = i_;
    if (peek() == '-' || peek() == '+') ++i_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++i_;
    int value = 0;
    std::string_view digits = text_.substr(start, i_ - start);
    if (!digits.empty() && digits.front() == '+') digits.remove_prefix(1);
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (ec != std::errc() || ptr != digits.data() + digits.size() || digits.empty()) {
      fail(start, "expected an integer");
    }
    return value;
  }

  std::vector<int> int_list() {
    std::size_t open = i_;
    if (peek() != '(') fail(open, "expected '('");
    ++i_;
    std::vector<int> out;
    while (true) {
      while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++i_;
      out.push_back(integer());
      while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++i_;
      if (peek() == ',') {
        ++i_;
        continue;
      }
      if (peek() == ')') {
        ++i_;
        return out;
      }
      fail(i_, "expected ',' or ')'");
    }
  }

  Token term() {
    Token t;
    t.pos = i_;
    std::size_t start = i_;
    while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) ++i_;
    std::string word(text_.substr(start, i_ - start));
    if (word.empty()) fail(start, "unexpected character '" + std::string(1, peek()) + "'");
    if (peek() == '(') {
      if (word == "X") {
        t.kind = Token::Crossing;
        t.ints = int_list();
        if (t.ints.size() != 4) fail(start, "a crossing needs exactly four edges");
      } else if (word == "P") {
        t.kind = Token::Pretzel;
        t.ints = int_list();
        if (t.ints.size() != 3) fail(start, "pretzel shorthand needs exactly three twist counts");
      } else {
        fail(start, "unknown term '" + word + "'");
      }
      return t;
    }
    if (peek() == '=') {
      ++i_;
      t.kind = Token::Directive;
      t.name = word;
      std::size_t vstart = i_;
      while (!at_end() && !std::isspace(static_cast<unsigned char>(peek())) && peek() != ',' &&
             peek() != ';' && peek() != '#') {
        ++i_;
      }
      t.value = std::string(text_.substr(vstart, i_ - vstart));
      if (t.value.empty()) fail(vstart, "directive '" + word + "' has no value");
      return t;
    }
    fail(start, "malformed term '" + word + "'");
  }

  std::string_view text_;
  std::size_t i_ = 0;
};

int directive_int(const Token& t) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(t.value.data(), t.value.data() + t.value.size(), value);
  if (ec != std::errc() || ptr != t.value.data() + t.value.size()) {
    throw ParseError(ParseErrorKind::MalformedTerm, t.pos,
                     "directive '" + t.name + "' needs an integer value");
  }
  return value;
}

// Slot (crossing g, position k) packed as 4g+k.
constexpr int strand_partner(int slot) { return (slot & ~3) | ((slot + 2) & 3); }

struct SlotGraph {
  std::vector<std::array<int, 4>> x;  // edge ids per crossing
  std::map<int, std::vector<int>> occurrences;

  explicit SlotGraph(std::vector<std::array<int, 4>> crossings) : x(std::move(crossings)) {
    for (int g = 0; g < static_cast<int>(x.size()); ++g) {
      for (int k = 0; k < 4; ++k) occurrences[x[g][k]].push_back(4 * g + k);
    }
  }

  int edge_at(int slot) const { return x[slot / 4][slot % 4]; }

  // The other slot on the same edge, or -1 for a dangling end.
  int edge_partner(int slot) const {
    const auto& occ = occurrences.at(edge_at(slot));
    if (occ.size() != 2) return -1;
    return occ[0] == slot ? occ[1] : occ[0];
  }
};

// Walks a strand sequence starting by entering the crossing at `start`.
// Returns the visited slots as (entry, exit) pairs; stops when the walk
// closes up or reaches a dangling end.
std::vector<std::pair<int, int>> walk(const SlotGraph& g, int start) {
  std::vector<std::pair<int, int>> steps;
  int entry = start;
  while (true) {
    int exit = strand_partner(entry);
    steps.emplace_back(entry, exit);
    int next = g.edge_partner(exit);
    if (next < 0 || next == start) break;
    entry = next;
  }
  return steps;
}

// A walk is correctly directed when every under strand runs from position
// 0 to position 2. Returns +1 (keep), -1 (reverse) or 0 (no under strand).
int under_vote(const std::vector<std::pair<int, int>>& steps, std::size_t pos) {
  int vote = 0;
  for (auto [entry, exit] : steps) {
    int k = entry % 4;
    if (k != 0 && k != 2) continue;
    int v = (k == 0) ? 1 : -1;
    if (vote != 0 && v != vote) {
      throw ParseError(ParseErrorKind::Inconsistent, pos,
                       "under-strand directions are inconsistent along a component");
    }
    vote = v;
  }
  return vote;
}

std::vector<std::pair<int, int>> reversed(const std::vector<std::pair<int, int>>& steps) {
  std::vector<std::pair<int, int>> out;
  for (auto it = steps.rbegin(); it != steps.rend(); ++it) out.emplace_back(it->second, it->first);
  return out;
}

struct UnionFind {
  std::map<int, int> parent;
  int find(int a) {
    auto it = parent.find(a);
    if (it == parent.end() || it->second == a) return a;
    int r = find(it->second);
    parent[a] = r;
    return r;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a < b) std::swap(a, b);
    parent[a] = b;
  }
};

// Closes dangling ends and returns the crossings with merged edge ids
// together with the old->new edge map.
std::vector<std::array<int, 4>> close_dangling(std::vector<std::array<int, 4>> crossings,
                                               UnionFind& merged, std::size_t pos) {
  SlotGraph g(crossings);
  struct OpenPath {
    int first_edge;  // dangling incoming end
    int last_edge;   // dangling outgoing end
  };
  std::vector<OpenPath> paths;
  std::vector<bool> used(4 * crossings.size(), false);
  for (const auto& [edge, occ] : g.occurrences) {
    if (occ.size() != 1 || used[occ[0]]) continue;
    auto steps = walk(g, occ[0]);
    int vote = under_vote(steps, pos);
    int first = g.edge_at(steps.front().first);
    int last = g.edge_at(steps.back().second);
    if (vote < 0 || (vote == 0 && last < first)) {
      steps = reversed(steps);
      std::swap(first, last);
    }
    for (auto [a, b] : steps) used[a] = used[b] = true;
    paths.push_back({first, last});
  }
  if (paths.empty()) return crossings;

  std::vector<int> starts;
  for (const auto& p : paths) starts.push_back(p.first_edge);
  std::sort(starts.begin(), starts.end());
  std::vector<bool> taken(starts.size(), false);
  std::vector<OpenPath> by_end = paths;
  std::sort(by_end.begin(), by_end.end(),
            [](const OpenPath& a, const OpenPath& b) { return a.last_edge < b.last_edge; });
  for (const auto& p : by_end) {
    std::size_t k = std::upper_bound(starts.begin(), starts.end(), p.last_edge) - starts.begin();
    std::size_t tries = 0;
    while (tries < starts.size() && taken[k % starts.size()]) {
      ++k;
      ++tries;
    }
    k %= starts.size();
    taken[k] = true;
    merged.unite(p.last_edge, starts[k]);
  }
  for (auto& x : crossings) {
    for (int& e : x) e = merged.find(e);
  }
  return crossings;
}

std::vector<Crossing> assign_signs(const std::vector<std::array<int, 4>>& crossings,
                                   std::size_t pos) {
  SlotGraph g(crossings);
  for (const auto& [edge, occ] : g.occurrences) {
    if (occ.size() != 2) {
      throw ParseError(ParseErrorKind::EdgeMultiplicity, pos,
                       "edge " + std::to_string(edge) + " appears " +
                           std::to_string(occ.size()) + " times; expected 2");
    }
  }
  // Component edge sets, for the numbering fallback on over-only loops.
  std::vector<bool> incoming(4 * crossings.size(), false);
  std::vector<bool> seen(4 * crossings.size(), false);
  for (int s = 0; s < static_cast<int>(seen.size()); ++s) {
    if (seen[s]) continue;
    auto steps = walk(g, s);
    int vote = under_vote(steps, pos);
    if (vote == 0) {
      // Over-only component: follow the edge numbering at its first
      // crossing; when both directions qualify, run d -> b.
      std::vector<int> comp_edges;
      for (auto [a, b] : steps) comp_edges.push_back(g.edge_at(a));
      std::sort(comp_edges.begin(), comp_edges.end());
      auto succ = [&](int e) {
        auto it = std::upper_bound(comp_edges.begin(), comp_edges.end(), e);
        return it == comp_edges.end() ? comp_edges.front() : *it;
      };
      auto [a, b] = steps.front();
      int ein = g.edge_at(a);
      int eout = g.edge_at(b);
      bool fwd = succ(ein) == eout;
      bool bwd = succ(eout) == ein;
      vote = (fwd && !bwd) ? 1 : (bwd && !fwd) ? -1 : (a % 4 == 3 ? 1 : -1);
    }
    if (vote < 0) steps = reversed(steps);
    for (auto [entry, exit] : steps) {
      seen[entry] = seen[exit] = true;
      incoming[entry] = true;
    }
  }
  std::vector<Crossing> out;
  for (int i = 0; i < static_cast<int>(crossings.size()); ++i) {
    Crossing x;
    x.edges = crossings[i];
    x.sign = incoming[4 * i + 3] ? 1 : -1;
    out.push_back(x);
  }
  return out;
}

}  // namespace

LinkInput parse_link(std::string_view text) {
  auto tokens = Lexer(text).run();
  LinkInput out;
  std::vector<std::array<int, 4>> crossings;
  std::optional<int> base;
  std::size_t base_pos = 0;
  int circles = 0;
  std::size_t first_x_pos = text.size();
  std::optional<std::size_t> pretzel_pos;
  for (const auto& t : tokens) {
    switch (t.kind) {
      case Token::Crossing: {
        std::array<int, 4> x{};
        for (int k = 0; k < 4; ++k) {
          if (t.ints[k] <= 0) {
            throw ParseError(ParseErrorKind::MalformedTerm, t.pos, "edge ids must be positive");
          }
          x[k] = t.ints[k];
        }
        first_x_pos = std::min(first_x_pos, t.pos);
        crossings.push_back(x);
        break;
      }
      case Token::Pretzel:
        if (out.pretzel) {
          throw ParseError(ParseErrorKind::MalformedTerm, t.pos, "more than one pretzel term");
        }
        out.pretzel = PretzelParams{t.ints[0], t.ints[1], t.ints[2]};
        pretzel_pos = t.pos;
        break;
      case Token::Directive:
        if (t.name == "base") {
          base = directive_int(t);
          base_pos = t.pos;
        } else if (t.name == "circles") {
          circles = directive_int(t);
          if (circles < 0) {
            throw ParseError(ParseErrorKind::MalformedTerm, t.pos, "negative circle count");
          }
        } else if (t.name == "orientation") {
          try {
            out.orientation = parse_pattern(t.value);
          } catch (const std::invalid_argument& e) {
            throw ParseError(ParseErrorKind::MalformedTerm, t.pos, e.what());
          }
        } else {
          throw ParseError(ParseErrorKind::UnknownDirective, t.pos,
                           "unknown directive '" + t.name + "'");
        }
        break;
    }
  }

  if (out.pretzel) {
    if (!crossings.empty() || circles != 0 || base) {
      throw ParseError(ParseErrorKind::MalformedTerm, *pretzel_pos,
                       "pretzel shorthand cannot be combined with PD terms");
    }
    return out;
  }
  if (out.orientation) {
    throw ParseError(ParseErrorKind::MalformedTerm, 0,
                     "orientation= applies only to the pretzel shorthand");
  }

  std::size_t pos = crossings.empty() ? 0 : first_x_pos;
  {
    std::map<int, int> uses;
    for (const auto& x : crossings) {
      for (int e : x) {
        if (++uses[e] > 2) {
          throw ParseError(ParseErrorKind::EdgeMultiplicity, pos,
                           "edge " + std::to_string(e) + " appears more than twice");
        }
      }
    }
  }
  UnionFind merged;
  crossings = close_dangling(std::move(crossings), merged, pos);
  auto signed_crossings = assign_signs(crossings, pos);

  int basepoint = 0;
  if (!signed_crossings.empty()) {
    if (base) {
      basepoint = merged.find(*base);
    } else {
      basepoint = signed_crossings.front().edges[0];
      for (const auto& x : signed_crossings) {
        for (int e : x.edges) basepoint = std::min(basepoint, e);
      }
    }
  } else if (base) {
    throw ParseError(ParseErrorKind::Inconsistent, base_pos,
                     "base= needs a crossing; a diagram of free circles has no edges");
  }
  try {
    out.diagram.emplace(std::move(signed_crossings), circles, basepoint);
  } catch (const DiagramError& e) {
    throw ParseError(ParseErrorKind::Inconsistent, base ? base_pos : pos, e.what());
  }
  return out;
}

PlanarDiagram parse_pd(std::string_view text) {
  LinkInput in = parse_link(text);
  if (in.pretzel) return build_pretzel_pd(*in.pretzel, in.orientation);
  return *in.diagram;
}

std::string print_pd(const PlanarDiagram& diagram) {
  std::ostringstream os;
  bool first = true;
  for (const auto& x : diagram.crossings()) {
    if (!first) os << ' ';
    first = false;
    os << "X(" << x.edges[0] << ',' << x.edges[1] << ',' << x.edges[2] << ',' << x.edges[3]
       << ')';
  }
  if (diagram.basepoint() != 0) os << (first ? "" : " ") << "base=" << diagram.basepoint();
  if (diagram.free_circles() > 0) {
    os << (first && diagram.basepoint() == 0 ? "" : " ") << "circles=" << diagram.free_circles();
  }
  return os.str();
}

}  // namespace pretzelkh
