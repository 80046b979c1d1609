#include "harmonic_aaa/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "harmonic_aaa/errors.hpp"

namespace harmonic_aaa::io {

namespace {

std::string trim(std::string_view s) {
  std::size_t a = 0;
  std::size_t b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

std::string strip_spaces(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
  }
  return out;
}

// Whole-string decimal parse.
std::optional<double> to_double(std::string_view s) {
  if (s.empty()) return std::nullopt;
  if (s.front() == '+') s.remove_prefix(1);
  double x = 0.0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc() || end != s.data() + s.size()) return std::nullopt;
  return x;
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(trim(field));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

bool is_header(const std::vector<std::string>& fields) {
  for (const auto& f : fields) {
    if (f.empty() || !std::isalpha(static_cast<unsigned char>(f.front()))) return false;
  }
  return !fields.empty();
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path);
  return in;
}

// Reads numeric CSV records of `min_fields`..`max_fields` fields.
std::vector<std::vector<double>> read_records(std::istream& in, const std::string& source, std::size_t min_fields,
                                              std::size_t max_fields) {
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  bool seen_data = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto fields = split_fields(t);
    if (!seen_data && rows.empty() && is_header(fields)) {
      seen_data = true;
      continue;
    }
    seen_data = true;
    const std::string where = source + ":" + std::to_string(line_no) + ": ";
    if (fields.size() < min_fields || fields.size() > max_fields) {
      throw InvalidInput(where + "expected " + std::to_string(min_fields) +
                         (min_fields == max_fields ? "" : "-" + std::to_string(max_fields)) + " fields, got " +
                         std::to_string(fields.size()));
    }
    std::vector<double> row;
    for (const auto& f : fields) {
      const auto x = to_double(f);
      if (!x) throw InvalidInput(where + "not a number: '" + f + "'");
      if (!std::isfinite(*x)) throw InvalidInput(where + "non-finite value");
      row.push_back(*x);
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw InvalidInput(where + "inconsistent field count");
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

Json complex_pair(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex pair_complex(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw InvalidInput("json: expected [re, im] pair");
  return {j.at(0).get<double>(), j.at(1).get<double>()};
}

Json complex_array(const ComplexVector& v) {
  Json a = Json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) a.push_back(complex_pair(v(k)));
  return a;
}

Json complex_array(const std::vector<Complex>& v) {
  Json a = Json::array();
  for (Complex z : v) a.push_back(complex_pair(z));
  return a;
}

ComplexVector complex_vector(const Json& a) {
  if (!a.is_array()) throw InvalidInput("json: expected an array of [re, im] pairs");
  ComplexVector v(static_cast<Eigen::Index>(a.size()));
  for (std::size_t k = 0; k < a.size(); ++k) v(static_cast<Eigen::Index>(k)) = pair_complex(a[k]);
  return v;
}

std::vector<Complex> complex_list(const Json& a) {
  const ComplexVector v = complex_vector(a);
  return {v.data(), v.data() + v.size()};
}

Json polygon_json(const PolygonRegion& p) { return complex_array(p.vertices()); }

const char* mask_name(FieldMask m) {
  switch (m) {
    case FieldMask::Valid:
      return "0";
    case FieldMask::Outside:
      return "1";
    case FieldMask::Error:
      return "2";
  }
  return "2";
}

}  // namespace

Complex parse_complex(std::string_view text) {
  const std::string s = strip_spaces(text);
  const auto fail = [&] { return InvalidInput("not a complex literal: '" + std::string(text) + "'"); };
  if (s.empty()) throw fail();

  if (s.back() != 'i') {
    const auto re = to_double(s);
    if (!re) throw fail();
    return {*re, 0.0};
  }
  const std::string body = s.substr(0, s.size() - 1);
  // Split at the last sign that is not the leading one or part of an exponent.
  std::size_t split = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  const auto imag_part = [&](std::string_view im) -> std::optional<double> {
    if (im.empty() || im == "+") return 1.0;
    if (im == "-") return -1.0;
    return to_double(im);
  };
  if (split == std::string::npos) {
    const auto im = imag_part(body);
    if (!im) throw fail();
    return {0.0, *im};
  }
  const auto re = to_double(std::string_view(body).substr(0, split));
  const auto im = imag_part(std::string_view(body).substr(split));
  if (!re || !im) throw fail();
  return {*re, *im};
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string format_complex(Complex z) {
  const double im = z.imag();
  return format_double(z.real()) + (std::signbit(im) ? "-" : "+") + format_double(std::abs(im)) + "i";
}

BoundarySamples read_boundary_csv(std::istream& in, const std::string& source, ValueColumn values) {
  const std::size_t min_fields = values == ValueColumn::Required ? 3 : 2;
  const auto rows = read_records(in, source, min_fields, 3);
  BoundarySamples s;
  for (const auto& r : rows) {
    s.points.emplace_back(r[0], r[1]);
    if (r.size() == 3) s.values.push_back(r[2]);
  }
  if (s.points.size() < 3) throw InvalidInput(source + ": need at least 3 samples, got " + std::to_string(s.size()));
  if (signed_area(s.points) < 0.0) s.counterclockwise = false;
  return s;
}

BoundarySamples read_boundary_csv(const std::string& path, ValueColumn values) {
  auto in = open_input(path);
  return read_boundary_csv(in, path, values);
}

void write_boundary_csv(std::ostream& out, const BoundarySamples& s) {
  out << (s.has_values() ? "x,y,u\n" : "x,y\n");
  for (std::size_t j = 0; j < s.size(); ++j) {
    out << format_double(s.points[j].real()) << ',' << format_double(s.points[j].imag());
    if (s.has_values()) out << ',' << format_double(s.values[j]);
    out << '\n';
  }
}

std::vector<Complex> read_points_csv(std::istream& in, const std::string& source) {
  std::vector<Complex> out;
  for (const auto& r : read_records(in, source, 2, 2)) out.emplace_back(r[0], r[1]);
  return out;
}

std::vector<Complex> read_points_csv(const std::string& path) {
  auto in = open_input(path);
  return read_points_csv(in, path);
}

Boundary load_boundary(const std::string& path, const std::optional<std::string>& vertices_path,
                       ValueColumn values) {
  Boundary b;
  b.samples = read_boundary_csv(path, values);
  if (vertices_path) {
    b.polygon = PolygonRegion(read_points_csv(*vertices_path));
  } else {
    std::vector<Complex> loop;
    for (std::size_t k : dedup_closed_loop(b.samples.points)) loop.push_back(b.samples.points[k]);
    b.polygon = PolygonRegion(std::move(loop));
  }
  return b;
}

void write_field_csv(std::ostream& out, const std::vector<FieldRow>& rows) {
  out << "x,y,re_w,im_w,mask\n";
  for (const FieldRow& r : rows) {
    out << format_double(r.x) << ',' << format_double(r.y) << ',' << format_double(r.re_w) << ','
        << format_double(r.im_w) << ',' << mask_name(r.mask) << '\n';
  }
}

void write_poles_csv(std::ostream& out, const std::vector<Complex>& all_poles, const std::vector<Complex>& kept) {
  out << "x,y,kept\n";
  for (Complex p : all_poles) {
    const bool k = std::find(kept.begin(), kept.end(), p) != kept.end();
    out << format_double(p.real()) << ',' << format_double(p.imag()) << ',' << (k ? 1 : 0) << '\n';
  }
}

void write_gridlines_csv(std::ostream& out, const std::vector<Polyline>& lines) {
  out << "id,x,y\n";
  for (const Polyline& l : lines) {
    for (Complex z : l.points) out << l.id << ',' << format_double(z.real()) << ',' << format_double(z.imag()) << '\n';
  }
}

Json to_json(const BarycentricApproximant& r) {
  Json j;
  j["support_points"] = complex_array(r.support_points);
  j["support_values"] = complex_array(r.support_values);
  j["weights"] = complex_array(r.weights);
  j["max_error"] = r.max_error;
  return j;
}

BarycentricApproximant approximant_from_json(const Json& j) {
  BarycentricApproximant r;
  r.support_points = complex_vector(j.at("support_points"));
  r.support_values = complex_vector(j.at("support_values"));
  r.weights = complex_vector(j.at("weights"));
  r.max_error = j.at("max_error").get<double>();
  if (r.support_values.size() != r.size() || r.weights.size() != r.size()) {
    throw InvalidInput("json: approximant arrays differ in length");
  }
  return r;
}

Json to_json(const ArnoldiBasisFit& fit) {
  Json j;
  j["center"] = complex_pair(fit.center);
  j["degree"] = fit.degree;
  j["basis_kind"] = to_string(fit.kind);
  Json h = Json::array();
  for (Eigen::Index r = 0; r < fit.hessenberg.rows(); ++r) {
    for (Eigen::Index c = 0; c < fit.hessenberg.cols(); ++c) h.push_back(complex_pair(fit.hessenberg(r, c)));
  }
  j["H"] = std::move(h);
  j["coeffs"] = complex_array(fit.coeffs);
  return j;
}

ArnoldiBasisFit arnoldi_from_json(const Json& j) {
  ArnoldiBasisFit fit;
  fit.center = pair_complex(j.at("center"));
  fit.degree = j.at("degree").get<std::size_t>();
  const auto kind = j.at("basis_kind").get<std::string>();
  if (kind == to_string(BasisKind::Forward)) {
    fit.kind = BasisKind::Forward;
  } else if (kind == to_string(BasisKind::Reciprocal)) {
    fit.kind = BasisKind::Reciprocal;
  } else {
    throw InvalidInput("json: unknown basis_kind '" + kind + "'");
  }
  const auto n = static_cast<Eigen::Index>(fit.degree);
  const ComplexVector h = complex_vector(j.at("H"));
  if (h.size() != (n + 1) * n) throw InvalidInput("json: H has the wrong size for the degree");
  fit.hessenberg.resize(n + 1, n);
  for (Eigen::Index r = 0; r <= n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) fit.hessenberg(r, c) = h(r * n + c);
  }
  fit.coeffs = complex_vector(j.at("coeffs"));
  if (fit.coeffs.size() != n + 1) throw InvalidInput("json: coeffs must have degree + 1 entries");
  return fit;
}

Json to_json(const SolverConfig& cfg) {
  Json j;
  j["smooth_degree"] = cfg.smooth_degree ? Json(*cfg.smooth_degree) : Json(nullptr);
  j["mmax"] = cfg.effective_mmax();
  j["aaa_tol"] = cfg.aaa_tol;
  j["lawson"] = cfg.lawson;
  j["polygon_tol"] = cfg.polygon_tol;
  if (cfg.cluster) {
    j["cluster"] = {{"per_side", cfg.cluster->per_side}, {"min_exp", cfg.cluster->min_exp}};
  } else {
    j["cluster"] = nullptr;
  }
  j["cleanup"] = cfg.cleanup;
  return j;
}

Json solution_to_json(const LaplaceSolution& sol, const SolverConfig& cfg) {
  const ComplexPotential& w = sol.potential;
  Json j;
  j["region"] = to_string(w.region);
  j["center"] = complex_pair(w.center);
  j["smooth"] = to_json(w.smooth);
  j["kept_poles"] = complex_array(w.kept_poles);
  j["pole_coeffs"] = complex_array(w.pole_coeffs);
  j["b0"] = complex_pair(w.b0);
  j["im_shift"] = w.im_shift;
  j["jump"] = w.jump;
  j["boundary_max_error"] = w.boundary_max_error;
  Json polys = Json::array();
  for (const PolygonRegion& p : w.polygons) polys.push_back(polygon_json(p));
  j["polygons"] = std::move(polys);
  j["config"] = to_json(cfg);
  j["sample_count"] = sol.samples.size();
  j["smooth_degree"] = sol.smooth_degree;
  j["total_poles"] = sol.all_poles.size();
  j["warning"] = sol.warning;
  return j;
}

ComplexPotential potential_from_json(const Json& j) {
  try {
    ComplexPotential w;
    const auto region = j.at("region").get<std::string>();
    if (region == to_string(SolveRegion::Interior)) {
      w.region = SolveRegion::Interior;
    } else if (region == to_string(SolveRegion::Exterior)) {
      w.region = SolveRegion::Exterior;
    } else {
      throw InvalidInput("json: unknown region '" + region + "'");
    }
    w.center = pair_complex(j.at("center"));
    w.smooth = arnoldi_from_json(j.at("smooth"));
    w.kept_poles = complex_list(j.at("kept_poles"));
    w.pole_coeffs = complex_list(j.at("pole_coeffs"));
    if (w.pole_coeffs.size() != w.kept_poles.size()) throw InvalidInput("json: one coefficient per kept pole");
    w.b0 = pair_complex(j.at("b0"));
    w.im_shift = j.at("im_shift").get<double>();
    w.jump = j.value("jump", 0.0);
    w.boundary_max_error = j.at("boundary_max_error").get<double>();
    for (const auto& p : j.at("polygons")) w.polygons.emplace_back(complex_list(p));
    if (w.polygons.empty()) throw InvalidInput("json: solution needs at least one polygon");
    return w;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("json: malformed solution: ") + e.what());
  }
}

Json map_to_json(const ConformalMap& map, const SolverConfig& cfg) {
  Json j;
  j["kind"] = to_string(map.kind);
  j["modulus"] = map.modulus ? Json(*map.modulus) : Json(nullptr);
  j["forward"] = to_json(map.forward);
  j["inverse"] = to_json(map.inverse);
  j["solution"] = solution_to_json(map.solution, cfg);
  return j;
}

Json read_json(const std::string& path) {
  auto in = open_input(path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(path + ": " + e.what());
  }
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write " + path);
  out << text;
  if (!out) throw InvalidInput("write failed: " + path);
}

}  // namespace harmonic_aaa::io
