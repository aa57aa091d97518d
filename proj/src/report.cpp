#include "intdist/report.hpp"

#include <algorithm>
#include <cstdio>
#include <regex>
#include <set>
#include <sstream>

namespace intdist {

namespace {

void header(std::ostringstream& os, const std::string& command, const std::string& report,
            const std::vector<LatticePoint>& given) {
  os << "schemaVersion: " << kSchemaVersion << "\n";
  os << "command: " << command << "\n";
  os << "report: " << report << "\n";
  for (const LatticePoint& p : given) os << "given: " << format_point(p) << "\n";
}

std::string format_set(const std::vector<LatticePoint>& pts) {
  std::ostringstream os;
  os << "{";
  for (std::size_t i = 0; i < pts.size(); ++i) os << (i ? "," : "") << pts[i];
  os << "}";
  return os.str();
}

std::string format_conic(const Conic& c, char u = 'x', char v = 'y') {
  const std::string uu = std::string(1, u) + "^2";
  const std::string uv = std::string(1, u) + v;
  const std::string vv = std::string(1, v) + "^2";
  const std::string u1(1, u);
  const std::string v1(1, v);
  std::ostringstream os;
  bool first = true;
  auto term = [&](const Integer& coef, const std::string& mono) {
    if (coef == 0) return;
    if (coef < 0) os << "-";
    else if (!first) os << "+";
    if (abs(coef) != 1 || mono.empty()) os << abs(coef);
    os << mono;
    first = false;
  };
  term(c.A, uu);
  term(c.B, uv);
  term(c.C, vv);
  term(c.D, u1);
  term(c.E, v1);
  term(c.F, "");
  if (first) os << "0";
  os << "=0";
  return os.str();
}

const char* bool_text(bool b) { return b ? "true" : "false"; }

std::vector<LatticePoint> seeds_in_original(const StructureReport& rep, const Branch& br) {
  std::vector<LatticePoint> out;
  for (const LatticePoint& s : br.description.family->seeds) {
    out.push_back(rep.pair.to_original(br.embedding ? br.embedding->apply(s) : s));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void render_branch(std::ostringstream& os, const StructureReport& rep, const Branch& br, const char* role) {
  const PointSetDescription& d = br.description;
  os << "branch: k=" << br.k << " role=" << role << " kind=" << to_string(d.kind)
     << " complete=" << bool_text(d.kind == PointSetKind::FinitePoints || d.kind == PointSetKind::EmptySet)
     << " delta=" << br.delta << " count=" << br.points.size() << "\n";
  if (!br.note.empty()) os << "note: " << br.note << "\n";
  if (br.embedding) {
    const LatticePoint base = rep.pair.to_original(br.embedding->base);
    const LatticePoint dir = rep.pair.map.apply(br.embedding->direction);
    os << "parametrization: Q=" << format_point(base) << "+t*" << format_point(dir) << " |Q-P1|=|z| conic: "
       << format_conic(*br.conic, 't', 'z') << "\n";
  } else if (br.conic) {
    os << "conic: " << format_conic(*br.conic) << " frame=canonical\n";
  }
  for (const IntegerLine& l : br.lines) os << "line: " << to_string(l) << "\n";
  if (d.family) {
    const PellFamily& f = *d.family;
    os << "family: disc=" << f.form.disc << " constant=" << f.form.constant << " modulus=" << f.form.modulus
       << " unit=" << f.fundamental_unit.t << "," << f.fundamental_unit.u
       << " generatorExponent=" << f.generator_exponent << " congruentExponent=" << f.congruent_exponent << "\n";
    for (const LatticePoint& s : seeds_in_original(rep, br)) os << "seed: " << format_point(s) << "\n";
  }
  for (const LatticePoint& p : br.points) os << "point: " << format_point(p) << "\n";
}

// Lines carrying the infinite families that are not off-line hyperbolas.
std::vector<IntegerLine> infinite_lines(const StructureReport& rep) {
  std::vector<IntegerLine> out;
  if (rep.equidistant.description.kind == PointSetKind::PellFamily) out.push_back(rep.equidistant.lines.front());
  if (rep.line_op) out.push_back(rep.line_op->lines.front());
  return out;
}

}  // namespace

LatticePoint parse_point(const std::string& token) {
  static const std::regex kPoint(R"(^\s*([+-]?\d+)\s*,\s*([+-]?\d+)\s*$)");
  std::smatch m;
  if (!std::regex_match(token, m, kPoint)) throw ParseError("expected a point x,y but got '" + token + "'");
  auto num = [](std::string s) {
    if (!s.empty() && s[0] == '+') s.erase(0, 1);
    return Integer(s);
  };
  return {num(m[1]), num(m[2])};
}

std::string format_point(const LatticePoint& p) { return p.x.str() + "," + p.y.str(); }

std::string render_structure(const StructureReport& rep, const std::string& command) {
  std::ostringstream os;
  header(os, command, "structure", {rep.p1, rep.p2});
  os << "radius: " << rep.radius << "\n";
  os << "canonical: " << rep.pair.a << "," << rep.pair.b << "\n";
  const OrthogonalMap& m = rep.pair.map;
  os << "transform: origin=" << format_point(rep.pair.origin) << " matrix=" << m.m11 << "," << m.m12 << ","
     << m.m21 << "," << m.m22 << "\n";
  os << "exceptional: " << rep.exceptional.value_or("none") << "\n";
  os << "infinite: " << bool_text(rep.infinite) << "\n";
  os << "infiniteOffLines: " << bool_text(rep.infinite_off_lines) << "\n";
  if (rep.witness) {
    os << "witness: k=" << rep.witness->k << " seed=" << format_point(rep.witness->seed)
       << " delta=" << rep.witness->delta << "\n";
  } else {
    os << "witness: none\n";
  }
  render_branch(os, rep, rep.equidistant, "equidistant");
  for (const Branch& br : rep.branches) render_branch(os, rep, br, "hyperbola");
  if (rep.line_op) {
    render_branch(os, rep, *rep.line_op, "lineOP");
  } else {
    os << "lineOP: absent\n";
  }
  os << "end\n";
  return os.str();
}

std::string render_structure_summary(const StructureReport& rep) {
  std::ostringstream os;
  const std::string tag = rep.exceptional ? " (case " + *rep.exceptional + ")" : "";
  if (rep.infinite_off_lines) {
    os << "infinite off every finite union of lines; witness k=" << rep.witness->k << ", seed "
       << rep.witness->seed << tag << "\n";
  } else if (!rep.infinite) {
    os << "finite: " << format_set(rep.all_points()) << tag << "\n";
  } else {
    const auto lines = infinite_lines(rep);
    std::vector<LatticePoint> sporadic;
    for (const LatticePoint& q : rep.all_points()) {
      if (std::none_of(lines.begin(), lines.end(), [&](const IntegerLine& l) { return l.evaluate(q) == 0; })) {
        sporadic.push_back(q);
      }
    }
    os << "infinite on the line";
    for (std::size_t i = 0; i < lines.size(); ++i) os << (i ? " and the line " : " ") << to_string(lines[i]);
    if (!sporadic.empty()) os << ", sporadic " << format_set(sporadic);
    os << tag << "\n";
  }
  return os.str();
}

std::string render_structure_csv(const StructureReport& rep) {
  std::ostringstream os;
  os << "role,k,x,y\n";
  auto rows = [&](const Branch& br, const char* role) {
    for (const LatticePoint& p : br.points) os << role << "," << br.k << "," << p.x << "," << p.y << "\n";
  };
  rows(rep.equidistant, "equidistant");
  for (const Branch& br : rep.branches) rows(br, "hyperbola");
  if (rep.line_op) rows(*rep.line_op, "lineOP");
  return os.str();
}

std::string render_generated(const StructureReport& rep, const std::vector<GeneratedPoint>& points,
                             const std::string& command) {
  std::ostringstream os;
  header(os, command, "generate", {rep.p1, rep.p2});
  if (rep.witness) {
    os << "family: hyperbola k=" << abs(rep.witness->k) << "\n";
  } else if (rep.equidistant.description.kind == PointSetKind::PellFamily) {
    os << "family: equidistant k=0 line=" << to_string(rep.equidistant.lines.front()) << "\n";
  } else {
    os << "family: lineOP line=" << to_string(rep.line_op->lines.front()) << "\n";
  }
  os << "order: exponent\n";
  os << "count: " << points.size() << "\n";
  for (const GeneratedPoint& g : points) {
    os << "point: " << format_point(g.point) << " d1=" << g.d1 << " d2=" << g.d2 << "\n";
  }
  os << "end\n";
  return os.str();
}

std::string render_generated_csv(const std::vector<GeneratedPoint>& points) {
  std::ostringstream os;
  os << "x,y,d1,d2\n";
  for (const GeneratedPoint& g : points) os << g.point.x << "," << g.point.y << "," << g.d1 << "," << g.d2 << "\n";
  return os.str();
}

std::string render_multi(const MultiReport& rep, const std::string& command) {
  std::ostringstream os;
  header(os, command, "multi", rep.points);
  os << "kind: " << to_string(rep.kind) << "\n";
  os << "tuples: " << rep.tuples_examined << "\n";
  if (rep.line) {
    os << "line: " << to_string(rep.line->line) << "\n";
    os << "condition: " << rep.line->condition << "\n";
  }
  os << "count: " << rep.finite_part.size() << "\n";
  for (const LatticePoint& p : rep.finite_part) os << "point: " << format_point(p) << "\n";
  os << "end\n";
  return os.str();
}

std::string render_multi_summary(const MultiReport& rep) {
  std::ostringstream os;
  if (rep.line) {
    os << "line " << to_string(rep.line->line) << " \xE2\x88\xAA finite " << format_set(rep.finite_part) << "\n";
  } else {
    os << "finite " << format_set(rep.finite_part) << "\n";
  }
  return os.str();
}

std::string render_multi_csv(const MultiReport& rep) {
  std::ostringstream os;
  os << "x,y\n";
  for (const LatticePoint& p : rep.finite_part) os << p.x << "," << p.y << "\n";
  return os.str();
}

std::string render_oracle(const std::vector<LatticePoint>& given, const OracleResult& result,
                          const std::string& command) {
  std::ostringstream os;
  header(os, command, "oracle", given);
  os << "radius: " << result.radius << "\n";
  os << "count: " << result.points.size() << "\n";
  for (const LatticePoint& p : result.points) os << "point: " << format_point(p) << "\n";
  os << "end\n";
  return os.str();
}

std::string render_oracle_csv(const OracleResult& result) {
  std::ostringstream os;
  os << "x,y\n";
  for (const LatticePoint& p : result.points) os << p.x << "," << p.y << "\n";
  return os.str();
}

std::optional<std::string> ParsedDocument::field(const std::string& key) const {
  for (const auto& [k, v] : fields) {
    if (k == key) return v;
  }
  return std::nullopt;
}

ParsedDocument parse_document(const std::string& text) {
  ParsedDocument doc;
  std::istringstream in(text);
  std::string line;
  bool ended = false;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (ended) {
      if (!line.empty()) throw ParseError("content after end at line " + std::to_string(lineno));
      continue;
    }
    if (line == "end") {
      ended = true;
      continue;
    }
    const auto colon = line.find(": ");
    if (colon == std::string::npos) throw ParseError("expected 'key: value' at line " + std::to_string(lineno));
    std::string key = line.substr(0, colon);
    std::string value = line.substr(colon + 2);
    if (lineno == 1 && key != "schemaVersion") throw ParseError("document must open with schemaVersion");
    if (key == "schemaVersion") doc.schema_version = value;
    else if (key == "command") doc.command = value;
    else if (key == "report") doc.report = value;
    else if (key == "given") doc.given.push_back(parse_point(value));
    else if (key == "point") doc.points.push_back(parse_point(value.substr(0, value.find(' '))));
    doc.fields.emplace_back(std::move(key), std::move(value));
  }
  if (doc.schema_version.empty()) throw ParseError("missing schemaVersion");
  if (doc.schema_version != kSchemaVersion) throw ParseError("unsupported schemaVersion " + doc.schema_version);
  if (!ended) throw ParseError("missing end line");
  return doc;
}

OracleResult to_oracle_result(const ParsedDocument& doc) {
  if (doc.report != "oracle") throw ParseError("not an oracle document");
  auto radius = doc.field("radius");
  auto count = doc.field("count");
  if (!radius || !count) throw ParseError("oracle document lacks radius or count");
  OracleResult r{Integer(*radius), doc.points};
  if (std::to_string(r.points.size()) != *count) throw ParseError("oracle document count mismatch");
  return r;
}

std::string render_svg(const ParsedDocument& doc) {
  constexpr double kSize = 640;
  constexpr double kMargin = 48;
  Integer lo = -1;
  Integer hi = 1;
  for (const auto* set : {&doc.given, &doc.points}) {
    for (const LatticePoint& p : *set) {
      lo = std::min({lo, p.x, p.y});
      hi = std::max({hi, p.x, p.y});
    }
  }
  const long double lo_d = lo.convert_to<long double>();
  const long double span = (hi - lo).convert_to<long double>();
  const double inner = kSize - 2 * kMargin;
  auto px = [&](const Integer& v) {
    return static_cast<double>(kMargin + (v.convert_to<long double>() - lo_d) / span * inner);
  };
  auto py = [&](const Integer& v) { return kSize - px(v); };
  auto num = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return std::string(buf);
  };
  auto escape = [](const std::string& s) {
    std::string out;
    for (char c : s) {
      if (c == '<') out += "&lt;";
      else if (c == '>') out += "&gt;";
      else if (c == '&') out += "&amp;";
      else out += c;
    }
    return out;
  };
  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kSize << "\" height=\"" << kSize
     << "\" viewBox=\"0 0 " << kSize << " " << kSize << "\">\n";
  os << "<title>" << escape(doc.command) << "</title>\n";
  os << "<rect x=\"0\" y=\"0\" width=\"" << kSize << "\" height=\"" << kSize << "\" fill=\"white\"/>\n";
  const std::string x0 = num(px(0));
  const std::string y0 = num(py(0));
  os << "<g class=\"axes\" stroke=\"black\" stroke-width=\"1\">\n";
  os << "<line x1=\"" << num(kMargin) << "\" y1=\"" << y0 << "\" x2=\"" << num(kSize - kMargin) << "\" y2=\"" << y0
     << "\"/>\n";
  os << "<line x1=\"" << x0 << "\" y1=\"" << num(kMargin) << "\" x2=\"" << x0 << "\" y2=\"" << num(kSize - kMargin)
     << "\"/>\n";
  os << "</g>\n";
  os << "<g class=\"labels\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<text x=\"" << num(kSize - kMargin + 8) << "\" y=\"" << y0 << "\">x</text>\n";
  os << "<text x=\"" << x0 << "\" y=\"" << num(kMargin - 10) << "\">y</text>\n";
  os << "<text x=\"" << num(kMargin) << "\" y=\"" << num(kSize - kMargin + 20) << "\">" << lo << "</text>\n";
  os << "<text x=\"" << num(kSize - kMargin) << "\" y=\"" << num(kSize - kMargin + 20) << "\">" << hi
     << "</text>\n";
  os << "<text x=\"" << num(kMargin) << "\" y=\"" << num(kSize - 8) << "\">given: red squares; found: blue circles ("
     << doc.points.size() << ")</text>\n";
  os << "</g>\n";
  std::set<LatticePoint> seen;
  for (const LatticePoint& p : doc.points) {
    if (!seen.insert(p).second) continue;
    os << "<circle class=\"found\" cx=\"" << num(px(p.x)) << "\" cy=\"" << num(py(p.y))
       << "\" r=\"3\" fill=\"steelblue\"/>\n";
  }
  for (const LatticePoint& p : doc.given) {
    os << "<rect class=\"given\" x=\"" << num(px(p.x) - 4) << "\" y=\"" << num(py(p.y) - 4)
       << "\" width=\"8\" height=\"8\" fill=\"none\" stroke=\"crimson\" stroke-width=\"2\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace intdist
