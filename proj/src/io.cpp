#include "kpoly/io.hpp"

#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>
#include <vector>

#include "kpoly/errors.hpp"

namespace kpoly {

namespace {

std::vector<std::string_view> tokens(std::string_view line) {
  if (const auto hash = line.find('#'); hash != std::string_view::npos) {
    line = line.substr(0, hash);
  }
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

[[noreturn]] void fail_at(int line_no, const std::string& what) {
  throw Error(Errc::kParse, "line " + std::to_string(line_no) + ": " + what);
}

// Reads non-empty tokenized lines, tracking line numbers.
class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}
  std::optional<std::vector<std::string_view>> next() {
    while (std::getline(in_, buf_)) {
      ++line_no_;
      auto t = tokens(buf_);
      if (!t.empty()) return t;
    }
    return std::nullopt;
  }
  int line_no() const { return line_no_; }

 private:
  std::istream& in_;
  std::string buf_;
  int line_no_ = 0;
};

template <class F>
auto at_line(int line_no, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    fail_at(line_no, e.what());
  }
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view token) {
  double v = 0.0;
  const char* end = token.data() + token.size();
  const auto res = std::from_chars(token.data(), end, v);
  if (res.ec != std::errc() || res.ptr != end) {
    throw Error(Errc::kParse, "not a number: '" + std::string(token) + "'");
  }
  return v;
}

int parse_int(std::string_view token) {
  int v = 0;
  const char* end = token.data() + token.size();
  const auto res = std::from_chars(token.data(), end, v);
  if (res.ec != std::errc() || res.ptr != end) {
    throw Error(Errc::kParse, "not an integer: '" + std::string(token) + "'");
  }
  return v;
}

PolyhedronFile read_polyhedron_file(std::istream& in) {
  LineReader r(in);
  auto header = r.next();
  if (!header || (*header)[0] != "kpoly" || header->size() != 3) {
    fail_at(r.line_no(), "expected header 'kpoly <kappa> <num_triangles>'");
  }
  PolyhedronFile f;
  const int n = at_line(r.line_no(), [&] {
    f.kappa = parse_double((*header)[1]);
    return parse_int((*header)[2]);
  });
  if (n < 1) fail_at(r.line_no(), "triangle count must be positive");
  f.triangles.assign(n, Sides{0.0, 0.0, 0.0});
  std::vector<char> seen(n, 0);
  while (auto t = r.next()) {
    const auto& tok = *t;
    if (tok[0] == "tri") {
      if (tok.size() != 5) fail_at(r.line_no(), "expected 'tri <id> <a> <b> <c>'");
      at_line(r.line_no(), [&] {
        const int id = parse_int(tok[1]);
        if (id < 0 || id >= n) throw Error(Errc::kParse, "triangle id out of range");
        if (seen[id]) throw Error(Errc::kParse, "triangle id repeated");
        seen[id] = 1;
        f.triangles[id] = {parse_double(tok[2]), parse_double(tok[3]), parse_double(tok[4])};
        return 0;
      });
    } else if (tok[0] == "glue") {
      const bool flip = tok.size() == 6 && tok[5] == "flip";
      if (tok.size() != 5 && !flip) {
        fail_at(r.line_no(), "expected 'glue <t1> <e1> <t2> <e2> [flip]'");
      }
      at_line(r.line_no(), [&] {
        GluingPair g;
        g.first = {parse_int(tok[1]), parse_int(tok[2])};
        g.second = {parse_int(tok[3]), parse_int(tok[4])};
        g.flipped = flip;
        f.gluing.pairs.push_back(g);
        return 0;
      });
    } else {
      fail_at(r.line_no(), "unknown record '" + std::string(tok[0]) + "'");
    }
  }
  for (int i = 0; i < n; ++i) {
    if (!seen[i]) throw Error(Errc::kParse, "triangle " + std::to_string(i) + " missing");
  }
  return f;
}

void write_polyhedron_file(std::ostream& out, const PolyhedronFile& f) {
  out << "kpoly " << format_double(f.kappa) << ' ' << f.triangles.size() << '\n';
  for (std::size_t i = 0; i < f.triangles.size(); ++i) {
    const Sides& s = f.triangles[i];
    out << "tri " << i << ' ' << format_double(s[0]) << ' ' << format_double(s[1]) << ' '
        << format_double(s[2]) << '\n';
  }
  for (const GluingPair& g : f.gluing.pairs) {
    out << "glue " << g.first.triangle << ' ' << g.first.edge << ' ' << g.second.triangle
        << ' ' << g.second.edge << (g.flipped ? " flip" : "") << '\n';
  }
}

PolyhedronFile to_file(const KPolyhedron& p) {
  return {p.curvature().value(), p.side_lengths(), p.gluing()};
}

KPolyhedron build_from_file(const PolyhedronFile& f) {
  return KPolyhedron::build(Curvature(f.kappa), f.triangles, f.gluing);
}

KPolyhedron load_polyhedron(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::kParse, "cannot open " + path);
  return build_from_file(read_polyhedron_file(in));
}

void save_polyhedron(const std::string& path, const KPolyhedron& p) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::kParse, "cannot write " + path);
  write_polyhedron_file(out, to_file(p));
}

FiniteMetricSpace read_metric_space(std::istream& in) {
  LineReader r(in);
  auto header = r.next();
  if (!header || header->size() != 2 || (*header)[0] != "fms") {
    fail_at(r.line_no(), "expected header 'fms <n>'");
  }
  const int n = at_line(r.line_no(), [&] { return parse_int((*header)[1]); });
  if (n < 1) fail_at(r.line_no(), "size must be positive");
  std::vector<double> d;
  d.reserve(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    auto row = r.next();
    if (!row) fail_at(r.line_no(), "expected " + std::to_string(n) + " rows");
    if (static_cast<int>(row->size()) != n) {
      fail_at(r.line_no(), "row must have " + std::to_string(n) + " entries");
    }
    at_line(r.line_no(), [&] {
      for (auto tok : *row) d.push_back(parse_double(tok));
      return 0;
    });
  }
  if (r.next()) fail_at(r.line_no(), "trailing content after the matrix");
  return FiniteMetricSpace(n, std::move(d));
}

void write_metric_space(std::ostream& out, const FiniteMetricSpace& x) {
  out << "fms " << x.size() << '\n';
  for (int i = 0; i < x.size(); ++i) {
    for (int j = 0; j < x.size(); ++j) {
      if (j) out << ' ';
      out << format_double(x(i, j));
    }
    out << '\n';
  }
}

FiniteMetricSpace load_metric_space(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::kParse, "cannot open " + path);
  return read_metric_space(in);
}

}  // namespace kpoly
