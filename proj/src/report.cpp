#include "pretzelkh/report.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "pretzelkh/poly.hpp"
#include "pretzelkh/twist.hpp"

namespace pretzelkh {

using nlohmann::json;

std::string to_string(Method m) {
  switch (m) {
    case Method::Cube: return "cube";
    case Method::Fast: return "fast";
    case Method::Formula: return "formula";
  }
  return "?";
}

namespace {

Method method_from_string(std::string_view s) {
  if (s == "cube") return Method::Cube;
  if (s == "fast") return Method::Fast;
  if (s == "formula") return Method::Formula;
  throw RequestError("unknown method '" + std::string(s) + "' (expected cube, fast, formula or all)");
}

double elapsed_ms(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since).count();
}

}  // namespace

std::string MethodSelection::label() const {
  if (all) return "all";
  std::string out;
  for (Method m : methods) out += (out.empty() ? "" : ",") + to_string(m);
  return out;
}

MethodSelection parse_methods(std::string_view text) {
  MethodSelection sel;
  if (text == "all") {
    sel.all = true;
    sel.methods = {Method::Cube, Method::Fast, Method::Formula};
    return sel;
  }
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::string_view word =
        text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    const Method m = method_from_string(word);
    if (std::find(sel.methods.begin(), sel.methods.end(), m) == sel.methods.end()) sel.methods.push_back(m);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  std::sort(sel.methods.begin(), sel.methods.end());
  return sel;
}

HomologyTable formula_table(int p, int q, int r, OrientationPattern pattern) {
  BigradedPoly poly;
  if (q > r) {
    // Exchanging the last two columns is an isotopy; for a knot the
    // orientation is forced on both sides.
    OrientationPattern swapped;
    try {
      knot_orientation_pattern(p, q, r);
      swapped = knot_orientation_pattern(p, r, q);
    } catch (const DiagramError&) {
      throw FormulaScopeError("formulas expect q <= r for links");
    }
    poly = theorem3_bigraded(p, r, q, swapped);
  } else {
    poly = theorem3_bigraded(p, q, r, pattern);
  }
  HomologyTable t;
  for (const auto& [key, c] : poly.terms()) {
    if (c < 0) throw IntegrityError("closed form has a negative coefficient: " + poly.to_string());
    t[{key.second, key.first}].free_rank = static_cast<int>(c);
  }
  return t;
}

namespace {

// Describes the first few cells where two tables differ.
std::string describe_difference(const HomologyTable& a, const HomologyTable& b) {
  std::ostringstream os;
  int shown = 0;
  auto cell_text = [](const HomologyTable& t, const std::pair<int, int>& key) {
    auto it = t.find(key);
    if (it == t.end()) return std::string("0");
    std::string s = std::to_string(it->second.free_rank);
    for (const auto& tor : it->second.torsion) s += "+Z/" + tor.to_string();
    return s;
  };
  std::map<std::pair<int, int>, int> keys;
  for (const auto& [k, v] : a) keys[k] = 0;
  for (const auto& [k, v] : b) keys[k] = 0;
  for (const auto& [k, unused] : keys) {
    (void)unused;
    const auto ca = cell_text(a, k);
    const auto cb = cell_text(b, k);
    if (ca == cb) continue;
    if (shown++ == 4) {
      os << " ...";
      break;
    }
    os << " (h=" << k.first << ",q=" << k.second << "): " << ca << " vs " << cb << ";";
  }
  return os.str();
}

}  // namespace

void reconcile(Report& report) {
  report.agree = true;
  report.disagreement.clear();
  const RouteResult* first = nullptr;
  for (const auto& route : report.routes) {
    if (!route.computed) continue;
    if (!first) {
      first = &route;
      continue;
    }
    if (route.table != first->table) {
      report.agree = false;
      report.disagreement += to_string(first->method) + " vs " + to_string(route.method) + ":" +
                             describe_difference(first->table, route.table) + " ";
    }
  }
  if (!report.disagreement.empty()) report.disagreement.pop_back();
  if (first) {
    report.homology = first->table;
    report.two_delta = delta_collapse(first->table).ranks;
  }
  report.ms = 0.0;
  for (const auto& route : report.routes) report.ms += route.ms;
}

namespace {

bool wants(const ComputeOptions& options, Method m) {
  const auto& ms = options.methods.methods;
  return std::find(ms.begin(), ms.end(), m) != ms.end();
}

// Skipping a route is fine under "all"; an explicit request must run.
void skip(const ComputeOptions& options, Report& report, Method m, const std::string& why) {
  if (!options.methods.all) throw RequestError(to_string(m) + " route unavailable: " + why);
  report.routes.push_back({m, false, why, {}, 0.0});
}

template <typename F>
void run_route(Report& report, Method m, F&& body) {
  const auto start = std::chrono::steady_clock::now();
  HomologyTable table = body();
  report.routes.push_back({m, true, "", std::move(table), elapsed_ms(start)});
}

void run_cube(const ComputeOptions& options, Report& report, const PlanarDiagram& pd) {
  if (pd.crossing_count() > options.max_crossings) {
    const std::string why = std::to_string(pd.crossing_count()) + " crossings exceed the cap of " +
                            std::to_string(options.max_crossings);
    if (!options.methods.all) throw ResourceError("cube route: " + why);
    report.routes.push_back({Method::Cube, false, why, {}, 0.0});
    return;
  }
  run_route(report, Method::Cube, [&] {
    return homology(build_reduced_complex(pd, CubeOptions{options.max_crossings}));
  });
}

}  // namespace

Report compute_pretzel(const PretzelParams& params, std::optional<OrientationPattern> orientation,
                       const ComputeOptions& options) {
  if (params.k1 == 0 && params.k2 == 0 && params.k3 == 0) throw RequestError("P(0,0,0) has no crossings");
  Report report;
  report.params = params;
  if (params.k1 < 0 && params.k2 > 0 && params.k3 > 0) {
    report.p = -params.k1;
    report.q = params.k2;
    report.r = params.k3;
  }
  report.method = options.methods.label();

  const int components = pretzel_components(params);
  const auto valid = valid_orientation_patterns(params);
  OrientationPattern pattern;
  if (components == 1) {
    pattern = valid.front();
    if (orientation && *orientation != pattern) {
      throw RequestError("orientation " + to_string(*orientation) + " conflicts with the knot's forced " +
                         to_string(pattern));
    }
  } else {
    if (!orientation) {
      throw RequestError("orientation required: the link has " + std::to_string(components) +
                         " components (use --orientation)");
    }
    if (std::find(valid.begin(), valid.end(), *orientation) == valid.end()) {
      throw RequestError("orientation " + to_string(*orientation) + " is not realisable on this link");
    }
    pattern = *orientation;
  }
  report.orientation = to_string(pattern);
  const PlanarDiagram pd = build_pretzel_pd(params, pattern);
  report.n_plus = pd.counts().n_plus;
  report.n_minus = pd.counts().n_minus;

  if (wants(options, Method::Cube)) run_cube(options, report, pd);
  if (wants(options, Method::Fast)) {
    run_route(report, Method::Fast, [&] { return fast_homology(params, pattern); });
  }
  if (wants(options, Method::Formula)) {
    if (report.p == 0) {
      skip(options, report, Method::Formula, "closed forms cover P(-p,q,r) with p,q,r >= 1 only");
    } else if (classify(report.p, report.q, report.r) == Classification::QuasiAlternating) {
      skip(options, report, Method::Formula, "quasi-alternating: deferred to the cube and fast routes");
    } else if (report.q > report.r && components > 1) {
      skip(options, report, Method::Formula, "closed forms for links expect q <= r");
    } else {
      run_route(report, Method::Formula,
                [&] { return formula_table(report.p, report.q, report.r, pattern); });
    }
  }
  reconcile(report);
  return report;
}

Report compute_diagram(const PlanarDiagram& diagram, const ComputeOptions& options) {
  Report report;
  report.method = options.methods.label();
  report.n_plus = diagram.counts().n_plus;
  report.n_minus = diagram.counts().n_minus;
  if (wants(options, Method::Cube)) run_cube(options, report, diagram);
  if (wants(options, Method::Fast)) skip(options, report, Method::Fast, "needs pretzel input");
  if (wants(options, Method::Formula)) skip(options, report, Method::Formula, "needs pretzel input");
  reconcile(report);
  return report;
}

std::vector<SweepJob> sweep_jobs(int max_sum) {
  std::vector<SweepJob> jobs;
  for (int p = 2; 3 * p <= max_sum; ++p) {
    for (int q = p; p + 2 * q <= max_sum; ++q) {
      for (int r = q; p + q + r <= max_sum; ++r) {
        for (OrientationPattern pat : valid_orientation_patterns(p, q, r)) jobs.push_back({p, q, r, pat});
      }
    }
  }
  return jobs;
}

std::vector<Report> run_sweep(const std::vector<SweepJob>& jobs, const ComputeOptions& options,
                              unsigned threads) {
  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, std::max<std::size_t>(1, jobs.size()));
  std::vector<Report> results(jobs.size());
  std::vector<std::exception_ptr> errors(jobs.size());
  // Largest jobs first keeps the tail short.
  std::vector<std::size_t> order(jobs.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return jobs[a].p + jobs[a].q + jobs[a].r > jobs[b].p + jobs[b].q + jobs[b].r;
  });
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k; (k = next.fetch_add(1)) < order.size();) {
      const std::size_t i = order[k];
      const SweepJob& j = jobs[i];
      try {
        results[i] = compute_pretzel({-j.p, j.q, j.r}, j.pattern, options);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;
}

int delta_width(const HomologyTable& table) {
  const DeltaCollapse d = delta_collapse(table);
  std::vector<int> keys;
  for (const auto& [k, v] : d.ranks) {
    if (v != 0) keys.push_back(k);
  }
  for (const auto& [k, v] : d.torsion) {
    if (!v.empty()) keys.push_back(k);
  }
  if (keys.empty()) return 0;
  const auto [lo, hi] = std::minmax_element(keys.begin(), keys.end());
  return (*hi - *lo) / 2 + 1;
}

// ---------------------------------------------------------------------------
// JSON

namespace {

json torsion_json(const std::vector<Integer>& torsion) {
  json out = json::array();
  for (const auto& t : torsion) {
    if (t.is_small()) {
      out.push_back(t.to_int64());
    } else {
      out.push_back(t.to_string());
    }
  }
  return out;
}

std::vector<Integer> torsion_from_json(const json& j) {
  std::vector<Integer> out;
  for (const auto& t : j) out.push_back(t.is_string() ? Integer(t.get<std::string>()) : Integer(t.get<std::int64_t>()));
  return out;
}

json table_json(const HomologyTable& table) {
  json out = json::array();
  for (const auto& [key, cell] : table) {
    out.push_back({{"h", key.first}, {"q", key.second}, {"rank", cell.free_rank},
                   {"torsion", torsion_json(cell.torsion)}});
  }
  return out;
}

HomologyTable table_from_json(const json& j) {
  HomologyTable t;
  for (const auto& cell : j) {
    t[{cell.at("h").get<int>(), cell.at("q").get<int>()}] = {cell.at("rank").get<int>(),
                                                               torsion_from_json(cell.at("torsion"))};
  }
  return t;
}

}  // namespace

std::string to_json(const Report& report) {
  json j;
  j["p"] = report.p;
  j["q"] = report.q;
  j["r"] = report.r;
  j["params"] = {report.params.k1, report.params.k2, report.params.k3};
  j["orientation"] = report.orientation;
  j["n_plus"] = report.n_plus;
  j["n_minus"] = report.n_minus;
  j["method"] = report.method;
  j["homology"] = table_json(report.homology);
  json td = json::object();
  for (const auto& [k, v] : report.two_delta) td[std::to_string(k)] = v;
  j["two_delta"] = td;
  j["agree"] = report.agree;
  j["ms"] = report.ms;
  json routes = json::array();
  for (const auto& route : report.routes) {
    json rj = {{"method", to_string(route.method)}, {"computed", route.computed}, {"ms", route.ms}};
    if (route.computed) {
      rj["homology"] = table_json(route.table);
    } else {
      rj["note"] = route.note;
    }
    routes.push_back(rj);
  }
  j["routes"] = routes;
  if (!report.agree) j["disagreement"] = report.disagreement;
  return j.dump();
}

Report report_from_json(std::string_view text) {
  const json j = json::parse(text);
  Report r;
  r.p = j.at("p").get<int>();
  r.q = j.at("q").get<int>();
  r.r = j.at("r").get<int>();
  const auto& params = j.at("params");
  r.params = {params.at(0).get<int>(), params.at(1).get<int>(), params.at(2).get<int>()};
  r.orientation = j.at("orientation").get<std::string>();
  r.n_plus = j.at("n_plus").get<int>();
  r.n_minus = j.at("n_minus").get<int>();
  r.method = j.at("method").get<std::string>();
  r.homology = table_from_json(j.at("homology"));
  for (const auto& [k, v] : j.at("two_delta").items()) r.two_delta[std::stoi(k)] = v.get<long long>();
  r.agree = j.at("agree").get<bool>();
  r.ms = j.at("ms").get<double>();
  for (const auto& rj : j.at("routes")) {
    RouteResult route;
    route.method = method_from_string(rj.at("method").get<std::string>());
    route.computed = rj.at("computed").get<bool>();
    route.ms = rj.at("ms").get<double>();
    if (route.computed) {
      route.table = table_from_json(rj.at("homology"));
    } else {
      route.note = rj.at("note").get<std::string>();
    }
    r.routes.push_back(std::move(route));
  }
  if (j.contains("disagreement")) r.disagreement = j.at("disagreement").get<std::string>();
  return r;
}

std::string format_report(const Report& report) {
  std::ostringstream os;
  if (report.params.k1 || report.params.k2 || report.params.k3) {
    os << "P(" << report.params.k1 << "," << report.params.k2 << "," << report.params.k3 << ")";
  } else {
    os << "PD input";
  }
  if (!report.orientation.empty()) os << "  orientation " << report.orientation;
  os << "  n+ = " << report.n_plus << "  n- = " << report.n_minus << "\n";
  for (const auto& route : report.routes) {
    os << "  " << to_string(route.method) << ": ";
    if (route.computed) {
      os.setf(std::ios::fixed);
      os.precision(2);
      os << route.ms << " ms, total rank " << total_rank(route.table) << "\n";
    } else {
      os << "skipped (" << route.note << ")\n";
    }
  }
  os << format_table(report.homology);
  if (!report.homology.empty() && format_table(report.homology).back() != '\n') os << "\n";
  os << "2delta:";
  for (auto it = report.two_delta.rbegin(); it != report.two_delta.rend(); ++it) {
    os << " " << it->first << ":" << it->second;
  }
  os << "\n";
  os << (report.agree ? "verdict: match" : "verdict: DISAGREE " + report.disagreement) << "\n";
  return os.str();
}

}  // namespace pretzelkh
