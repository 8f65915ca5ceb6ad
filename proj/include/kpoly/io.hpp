#pragma once

// Text formats.
//
//   .kpoly   kpoly <kappa> <num_triangles>
//            tri <id> <a> <b> <c>              (ids 0 .. n-1, any order)
//            glue <t1> <e1> <t2> <e2> [flip]
//   .fms     fms <n>
//            n lines of n decimals
//
// `#` starts a comment; blank lines are ignored. Numbers are parsed and
// printed locale-independently; printing uses 17 significant digits, so a
// write -> read -> write cycle is byte-stable.

#include <istream>
#include <ostream>
#include <string>
#include <string_view>

#include "kpoly/gh_metric.hpp"
#include "kpoly/kpolyhedron.hpp"

namespace kpoly {

std::string format_double(double x);
double parse_double(std::string_view token);
int parse_int(std::string_view token);

// Raw contents of a .kpoly file, before geometric validation.
struct PolyhedronFile {
  double kappa = 0.0;
  std::vector<Sides> triangles;
  GluingMap gluing;
};

PolyhedronFile read_polyhedron_file(std::istream& in);
void write_polyhedron_file(std::ostream& out, const PolyhedronFile& f);
PolyhedronFile to_file(const KPolyhedron& p);
KPolyhedron build_from_file(const PolyhedronFile& f);

KPolyhedron load_polyhedron(const std::string& path);
void save_polyhedron(const std::string& path, const KPolyhedron& p);

FiniteMetricSpace read_metric_space(std::istream& in);
void write_metric_space(std::ostream& out, const FiniteMetricSpace& x);
FiniteMetricSpace load_metric_space(const std::string& path);

}  // namespace kpoly
