#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "harmonic_aaa/conformal.hpp"
#include "harmonic_aaa/geometry.hpp"
#include "harmonic_aaa/laplace.hpp"
#include "harmonic_aaa/rational.hpp"

namespace harmonic_aaa::io {

using Json = nlohmann::ordered_json;

/// Parses "a+bi", "a-bi", "a", "bi" (spaces allowed, 'i' mandatory on the
/// imaginary part). Throws InvalidInput.
Complex parse_complex(std::string_view text);
std::string format_complex(Complex z);

// Shortest text that reads back to the same double ("%.17g").
std::string format_double(double x);

enum class ValueColumn { Required, Optional };

/// Boundary CSV: one "x,y,u" record per line, optional "x,y,u" header,
/// blank lines and '#' comments ignored. With ValueColumn::Optional, two-field
/// "x,y" records are accepted too (values then stay empty). Errors carry
/// "<source>:<line>:".
BoundarySamples read_boundary_csv(std::istream& in, const std::string& source = "<input>",
                                  ValueColumn values = ValueColumn::Required);
BoundarySamples read_boundary_csv(const std::string& path, ValueColumn values = ValueColumn::Required);
void write_boundary_csv(std::ostream& out, const BoundarySamples& s);

// "x,y" records (header optional).
std::vector<Complex> read_points_csv(std::istream& in, const std::string& source = "<input>");
std::vector<Complex> read_points_csv(const std::string& path);

/// Samples plus polygon: the vertex file when given, else the deduplicated
/// sample loop.
Boundary load_boundary(const std::string& path, const std::optional<std::string>& vertices_path,
                       ValueColumn values = ValueColumn::Required);

void write_field_csv(std::ostream& out, const std::vector<FieldRow>& rows);

// x,y,kept (kept = 1 for poles used in w).
void write_poles_csv(std::ostream& out, const std::vector<Complex>& all_poles, const std::vector<Complex>& kept);

void write_gridlines_csv(std::ostream& out, const std::vector<Polyline>& lines);

Json to_json(const BarycentricApproximant& r);
BarycentricApproximant approximant_from_json(const Json& j);

Json to_json(const ArnoldiBasisFit& fit);
ArnoldiBasisFit arnoldi_from_json(const Json& j);

Json to_json(const SolverConfig& cfg);

/// Everything needed to evaluate w again, plus the config echo and counts.
Json solution_to_json(const LaplaceSolution& sol, const SolverConfig& cfg);
ComplexPotential potential_from_json(const Json& j);

Json map_to_json(const ConformalMap& map, const SolverConfig& cfg);

Json read_json(const std::string& path);
void write_text(const std::string& path, const std::string& text);

}  // namespace harmonic_aaa::io
