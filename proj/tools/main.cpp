#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "pretzelkh/diagram.hpp"
#include "pretzelkh/formulas.hpp"
#include "pretzelkh/khcube.hpp"
#include "pretzelkh/pd_io.hpp"
#include "pretzelkh/report.hpp"
#include "pretzelkh/twist.hpp"

namespace {

using namespace pretzelkh;

// Exit codes are part of the interface.
constexpr int kOk = 0;
constexpr int kIoError = 1;
constexpr int kParseError = 2;
constexpr int kResourceCap = 3;
constexpr int kDisagreement = 4;

struct Common {
  std::string method = "all";
  std::string orientation;
  std::string format = "table";
  int max_crossings = kDefaultCrossingCap;
};

std::optional<OrientationPattern> orientation_flag(const std::string& text) {
  if (text.empty()) return std::nullopt;
  return parse_pattern(text);
}

ComputeOptions options_of(const Common& c) {
  ComputeOptions o;
  o.methods = parse_methods(c.method);
  o.max_crossings = c.max_crossings;
  return o;
}

int emit(const Report& report, const std::string& format) {
  if (format == "json") {
    std::cout << to_json(report) << "\n";
  } else {
    std::cout << format_report(report);
  }
  if (!report.agree) {
    std::cerr << "routes disagree: " << report.disagreement << "\n";
    return kDisagreement;
  }
  return kOk;
}

Report compute_link_text(const std::string& text, const Common& c) {
  const LinkInput in = parse_link(text);
  auto orientation = orientation_flag(c.orientation);
  if (in.pretzel) {
    if (in.orientation && orientation && *in.orientation != *orientation) {
      throw RequestError("orientation given twice with different values");
    }
    if (!orientation) orientation = in.orientation;
    return compute_pretzel(*in.pretzel, orientation, options_of(c));
  }
  if (orientation) throw RequestError("--orientation applies to pretzel input only");
  return compute_diagram(*in.diagram, options_of(c));
}

int cmd_compute(const std::string& link, const Common& c) {
  return emit(compute_link_text(link, c), c.format);
}

int cmd_pd(const std::string& path, const Common& c) {
  std::string text;
  if (path == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
  } else {
    std::ifstream in(path);
    if (!in) {
      std::cerr << "error: cannot read " << path << "\n";
      return kIoError;
    }
    text.assign(std::istreambuf_iterator<char>(in), {});
  }
  return emit(compute_link_text(text, c), c.format);
}

int cmd_sweep(int max_sum, const Common& c, const std::string& out_path, unsigned threads) {
  const ComputeOptions options = options_of(c);
  const bool cube = std::find(options.methods.methods.begin(), options.methods.methods.end(),
                              Method::Cube) != options.methods.methods.end();
  if (cube && !options.methods.all && max_sum > options.max_crossings) {
    std::cerr << "error: cube route requested up to " << max_sum << " crossings, cap is "
              << options.max_crossings << " (raise --max-crossings or drop cube)\n";
    return kResourceCap;
  }
  std::ofstream file;
  if (!out_path.empty()) {
    file.open(out_path);
    if (!file) {
      std::cerr << "error: cannot write " << out_path << "\n";
      return kIoError;
    }
  }
  std::ostream& out = out_path.empty() ? std::cout : file;
  const auto jobs = sweep_jobs(max_sum);
  const auto reports = run_sweep(jobs, options, threads);
  int bad = 0;
  for (const auto& r : reports) {
    out << to_json(r) << "\n";
    if (!r.agree) {
      ++bad;
      std::cerr << "disagreement at P(-" << r.p << "," << r.q << "," << r.r << ") " << r.orientation
                << ": " << r.disagreement << "\n";
    }
  }
  std::cerr << "sweep: " << reports.size() << " cases, " << bad << " disagreements\n";
  return bad ? kDisagreement : kOk;
}

int cmd_classify(int p, int q, int r, bool measure, const std::string& format) {
  const Classification c = classify(p, q, r);
  nlohmann::json j = {{"p", p}, {"q", q}, {"r", r}, {"classification", to_string(c)}};
  if (measure) {
    const auto table = fast_homology(PretzelParams{-p, q, r}, std::nullopt);
    const int width = delta_width(table);
    j["delta_width"] = width;
    nlohmann::json td = nlohmann::json::object();
    for (const auto& [k, v] : delta_collapse(table).ranks) td[std::to_string(k)] = v;
    j["two_delta"] = td;
    const bool thin_expected = c != Classification::ThickNonQA;
    j["consistent"] = (width == 1) == thin_expected;
  }
  if (format == "json") {
    std::cout << j.dump() << "\n";
  } else {
    std::cout << "P(-" << p << "," << q << "," << r << "): " << to_string(c);
    if (measure) {
      std::cout << ", delta-width " << j["delta_width"].get<int>()
                << (j["consistent"].get<bool>() ? "" : " (INCONSISTENT with classification)");
    }
    std::cout << "\n";
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reduced Khovanov homology of 3-strand pretzel links"};
  app.require_subcommand(1);

  Common common;
  auto add_common = [&](CLI::App* sub, bool orientation) {
    sub->add_option("--method,--methods", common.method, "all, or a comma list of cube,fast,formula")
        ->capture_default_str();
    if (orientation) sub->add_option("--orientation", common.orientation, "pattern ++, +-, -+ or --");
    sub->add_option("--format", common.format, "table or json")
        ->check(CLI::IsMember({"table", "json"}))
        ->capture_default_str();
    sub->add_option("--max-crossings", common.max_crossings, "crossing cap for the cube route")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
  };

  std::string link;
  auto* compute = app.add_subcommand("compute", "compute one link, e.g. compute 'P(-3,4,5)'");
  compute->add_option("link", link, "pretzel shorthand or PD text")->required();
  add_common(compute, true);

  std::string pd_path;
  auto* pd = app.add_subcommand("pd", "compute from a PD file ('-' for stdin)");
  pd->add_option("file", pd_path)->required();
  add_common(pd, true);

  int max_sum = 13;
  std::string out_path;
  unsigned threads = 0;
  auto* sweep = app.add_subcommand("sweep", "all 2 <= p <= q <= r with p+q+r <= max-sum, as JSON lines");
  sweep->add_option("--max-sum", max_sum)->check(CLI::PositiveNumber)->capture_default_str();
  sweep->add_option("--out", out_path, "output file (default stdout)");
  sweep->add_option("--threads", threads, "worker threads, 0 = all cores")->capture_default_str();
  add_common(sweep, false);

  std::array<int, 3> pqr{};
  bool no_measure = false;
  auto* cls = app.add_subcommand("classify", "QA / thin / thick status of P(-p,q,r)");
  cls->add_option("p", pqr[0])->required()->check(CLI::PositiveNumber);
  cls->add_option("q", pqr[1])->required()->check(CLI::PositiveNumber);
  cls->add_option("r", pqr[2])->required()->check(CLI::PositiveNumber);
  cls->add_flag("--no-homology", no_measure, "skip the measured delta-width");
  cls->add_option("--format", common.format)->check(CLI::IsMember({"table", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kParseError;
  }

  try {
    if (*compute) return cmd_compute(link, common);
    if (*pd) return cmd_pd(pd_path, common);
    if (*sweep) return cmd_sweep(max_sum, common, out_path, threads);
    if (*cls) return cmd_classify(pqr[0], pqr[1], pqr[2], !no_measure, common.format);
  } catch (const ResourceError& e) {
    std::cerr << "resource cap: " << e.what() << "\n";
    return kResourceCap;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParseError;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kParseError;
  } catch (const std::invalid_argument& e) {
    // RequestError, DiagramError, FormulaScopeError and pattern syntax.
    std::cerr << "error: " << e.what() << "\n";
    return kParseError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIoError;
  }
  return kOk;
}
