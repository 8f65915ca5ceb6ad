#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>

#include "generators.hpp"
#include "kpoly/errors.hpp"
#include "kpoly/fixtures.hpp"
#include "kpoly/io.hpp"

namespace kpoly {
namespace {

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no kpoly::Error thrown";
  return Errc::kParse;
}

std::string write(const PolyhedronFile& f) {
  std::ostringstream out;
  write_polyhedron_file(out, f);
  return out.str();
}

PolyhedronFile read(const std::string& text) {
  std::istringstream in(text);
  return read_polyhedron_file(in);
}

TEST(Numbers, RoundTripBitExactly) {
  CounterRng rng(61, 0);
  for (int i = 0; i < 1000; ++i) {
    const double x = std::ldexp(rng.uniform(-1, 1), static_cast<int>(rng.below(80)) - 40);
    EXPECT_EQ(parse_double(format_double(x)), x);
  }
  for (double x : {0.0, 1.0, 0.1, std::numbers::pi, 1e-300, 5e-324,
                   std::numeric_limits<double>::max()}) {
    EXPECT_EQ(parse_double(format_double(x)), x);
  }
  EXPECT_EQ(parse_double("1.5"), 1.5);
  EXPECT_EQ(parse_int("-12"), -12);
  EXPECT_EQ(code_of([] { parse_double("1.5x"); }), Errc::kParse);
  EXPECT_EQ(code_of([] { parse_double(""); }), Errc::kParse);
  EXPECT_EQ(code_of([] { parse_int("3.0"); }), Errc::kParse);
}

TEST(PolyhedronFormat, ParsesCommentsFlipsAndAnyOrder) {
  const std::string text =
      "# two equilateral triangles\n"
      "kpoly 0 2\n"
      "\n"
      "tri 1 1 1 1   # second\n"
      "tri 0 1 1 1\n"
      "glue 0 0 1 0 flip\n"
      "glue 0 1 1 1 flip\n"
      "glue 0 2 1 2 flip\n";
  const PolyhedronFile f = read(text);
  EXPECT_EQ(f.kappa, 0.0);
  ASSERT_EQ(f.triangles.size(), 2u);
  ASSERT_EQ(f.gluing.pairs.size(), 3u);
  for (const GluingPair& g : f.gluing.pairs) EXPECT_TRUE(g.flipped);
  const KPolyhedron p = build_from_file(f);
  EXPECT_EQ(p.euler_characteristic(), 2);
}

TEST(PolyhedronFormat, WriteReadWriteIsByteStable) {
  for (const KPolyhedron& p : {cube(), flat_torus(3), octant_sphere(), icosahedron(0.7)}) {
    const std::string once = write(to_file(p));
    const std::string twice = write(read(once));
    EXPECT_EQ(once, twice);
    const KPolyhedron q = build_from_file(read(once));
    EXPECT_EQ(q.side_lengths(), p.side_lengths());
    EXPECT_EQ(q.curvature(), p.curvature());
    for (int v = 0; v < p.num_vertices(); ++v) EXPECT_EQ(q.omega(v), p.omega(v));
  }
}

TEST(PolyhedronFormat, ErrorsCarryLineNumbers) {
  auto message = [](const std::string& text) {
    try {
      read(text);
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), Errc::kParse);
      return std::string(e.what());
    }
    ADD_FAILURE() << "accepted: " << text;
    return std::string();
  };
  EXPECT_NE(message("kpoly 0 1\ntri 0 1 1 x\n").find("line 2"), std::string::npos);
  EXPECT_NE(message("kpoly 0 1\ntri 0 1 1\n").find("line 2"), std::string::npos);
  EXPECT_NE(message("kpoly 0 1\nbogus 1\n").find("line 2"), std::string::npos);
  EXPECT_FALSE(message("tri 0 1 1 1\n").empty());
  EXPECT_FALSE(message("kpoly 0 2\ntri 0 1 1 1\n").empty());  // triangle 1 missing
  EXPECT_FALSE(message("kpoly 0 1\ntri 0 1 1 1\ntri 0 1 1 1\n").empty());
  EXPECT_FALSE(message("kpoly 0 1\ntri 0 1 1 1\nglue 0 0 0 1 sideways\n").empty());
}

TEST(MetricFormat, RoundTrip) {
  CounterRng rng(67, 0);
  const FiniteMetricSpace x = testing::random_metric_space(rng, 5);
  std::ostringstream out;
  write_metric_space(out, x);
  std::istringstream in(out.str());
  const FiniteMetricSpace y = read_metric_space(in);
  EXPECT_EQ(y.matrix(), x.matrix());
  std::ostringstream again;
  write_metric_space(again, y);
  EXPECT_EQ(again.str(), out.str());

  std::istringstream bad("fms 2\n0 1\n2 0\n");
  EXPECT_EQ(code_of([&] { read_metric_space(bad); }), Errc::kInvalidMetric);
  std::istringstream short_row("fms 2\n0 1\n1\n");
  EXPECT_EQ(code_of([&] { read_metric_space(short_row); }), Errc::kParse);
}

TEST(Files, MissingPathIsAParseError) {
  EXPECT_EQ(code_of([] { load_polyhedron("/nonexistent/x.kpoly"); }), Errc::kParse);
  EXPECT_EQ(code_of([] { load_metric_space("/nonexistent/x.fms"); }), Errc::kParse);
}

}  // namespace
}  // namespace kpoly
