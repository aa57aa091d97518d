#include "intdist/cli.hpp"

#include "intdist/report.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <regex>
#include <sstream>

namespace intdist {

namespace {

struct Options {
  std::vector<std::string> points;
  std::string radius = "50";
  std::size_t count = 10;
  bool summary = false;
  bool csv = false;
  std::string out;
  std::string report;
};

std::vector<LatticePoint> parse_points(const std::vector<std::string>& tokens) {
  std::vector<LatticePoint> pts;
  for (const std::string& t : tokens) pts.push_back(parse_point(t));
  return pts;
}

Integer parse_positive(const std::string& text, const char* flag) {
  static const std::regex kDigits(R"(^\d+$)");
  if (!std::regex_match(text, kDigits) || Integer(text) < 1) {
    throw ParseError(std::string(flag) + " expects a positive integer, got '" + text + "'");
  }
  return Integer(text);
}

std::string join(const std::vector<std::string>& args) {
  std::string s;
  for (std::size_t i = 0; i < args.size(); ++i) s += (i ? " " : "") + args[i];
  return s;
}

void emit(const std::string& text, const Options& opt, std::ostream& out) {
  if (opt.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(opt.out, std::ios::binary);
  if (!f || !(f << text) || !f.flush()) throw DomainError("cannot write output file '" + opt.out + "'");
}

std::string read_input(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  std::ifstream f(path, std::ios::binary);
  if (!f) throw DomainError("cannot read report file '" + path + "'");
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

void add_output_flags(CLI::App* cmd, Options& opt, bool summary) {
  if (summary) cmd->add_flag("--summary", opt.summary, "Human-readable summary instead of the structured report");
  cmd->add_flag("--csv", opt.csv, "CSV rows instead of the structured report");
  cmd->add_option("--out", opt.out, "Write to PATH instead of standard output");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Lattice points at integral distance from given lattice points", "intdist"};
  app.require_subcommand(1);
  Options opt;

  auto* classify = app.add_subcommand("classify", "Structure of S(P1,P2) for two points");
  classify->add_option("points", opt.points, "Two points x,y")->required()->expected(2);
  classify->add_option("--radius", opt.radius, "Window half-width for listing infinite branches");
  add_output_flags(classify, opt, true);

  auto* generate = app.add_subcommand("generate", "Members of the designated infinite family");
  generate->add_option("points", opt.points, "Two points x,y")->required()->expected(2);
  generate->add_option("--count", opt.count, "Number of points")->check(CLI::PositiveNumber);
  add_output_flags(generate, opt, false);

  auto* multi = app.add_subcommand("multi", "Complete solution for three or more points");
  multi->add_option("points", opt.points, "Three or more points x,y")->required()->expected(1, -1);
  add_output_flags(multi, opt, true);

  auto* oracle = app.add_subcommand("oracle", "Brute-force scan of [-radius, radius]^2");
  oracle->add_option("points", opt.points, "One or more points x,y")->required()->expected(1, -1);
  oracle->add_option("--radius", opt.radius, "Window half-width");
  add_output_flags(oracle, opt, false);

  auto* plot = app.add_subcommand("plot", "SVG scatter of a report document (- reads standard input)");
  plot->add_option("report", opt.report, "Report document path")->required();
  plot->add_option("--out", opt.out, "Write the SVG to PATH instead of standard output");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << "run with --help for usage\n";
    return kExitUsage;
  }

  const std::string command = join(args);
  try {
    if (classify->parsed()) {
      const auto pts = parse_points(opt.points);
      const StructureReport rep = classify_pair(pts[0], pts[1], parse_positive(opt.radius, "--radius"));
      emit(opt.summary ? render_structure_summary(rep)
                       : opt.csv ? render_structure_csv(rep) : render_structure(rep, command),
           opt, out);
    } else if (generate->parsed()) {
      const auto pts = parse_points(opt.points);
      const StructureReport rep = classify_pair(pts[0], pts[1], 1);
      if (!rep.infinite) {
        std::ostringstream msg;
        msg << "set is finite: {";
        const auto all = rep.all_points();
        for (std::size_t i = 0; i < all.size(); ++i) msg << (i ? "," : "") << all[i];
        msg << "}";
        throw DomainError(msg.str());
      }
      const auto gen = generate_points(rep, opt.count);
      emit(opt.csv ? render_generated_csv(gen) : render_generated(rep, gen, command), opt, out);
    } else if (multi->parsed()) {
      const auto pts = parse_points(opt.points);
      if (pts.size() < 3) {
        err << "error: multi needs at least three points; for two points use: intdist classify "
            << opt.points[0] << (pts.size() > 1 ? " " + opt.points[1] : "") << "\n";
        return kExitUsage;
      }
      const MultiReport rep = solve_multi(pts);
      emit(opt.summary ? render_multi_summary(rep) : opt.csv ? render_multi_csv(rep) : render_multi(rep, command),
           opt, out);
    } else if (oracle->parsed()) {
      const auto pts = parse_points(opt.points);
      const OracleResult res = brute_force(pts, parse_positive(opt.radius, "--radius"));
      emit(opt.csv ? render_oracle_csv(res) : render_oracle(pts, res, command), opt, out);
    } else if (plot->parsed()) {
      const ParsedDocument doc = parse_document(read_input(opt.report));
      emit(render_svg(doc), opt, out);
    }
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomain;
  }
  return kExitOk;
}

}  // namespace intdist
