#include "harmonic_aaa/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace harmonic_aaa::svg {

namespace {

struct Box {
  double xmin = std::numeric_limits<double>::infinity();
  double xmax = -std::numeric_limits<double>::infinity();
  double ymin = std::numeric_limits<double>::infinity();
  double ymax = -std::numeric_limits<double>::infinity();

  void add(Complex z) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return;
    xmin = std::min(xmin, z.real());
    xmax = std::max(xmax, z.real());
    ymin = std::min(ymin, z.imag());
    ymax = std::max(ymax, z.imag());
  }
  bool empty() const { return !(xmin <= xmax); }
  bool contains(Complex z) const {
    return z.real() >= xmin && z.real() <= xmax && z.imag() >= ymin && z.imag() <= ymax;
  }
};

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

// Blue -> white -> red ramp.
std::string band_color(int band, int bands) {
  const double t = bands > 1 ? static_cast<double>(band) / (bands - 1) : 0.5;
  double r, g, b;
  if (t < 0.5) {
    const double s = t / 0.5;
    r = 0.15 + 0.85 * s;
    g = 0.3 + 0.7 * s;
    b = 1.0;
  } else {
    const double s = (t - 0.5) / 0.5;
    r = 1.0;
    g = 1.0 - 0.75 * s;
    b = 1.0 - 0.85 * s;
  }
  char buf[16];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", static_cast<int>(std::lround(255 * r)),
                static_cast<int>(std::lround(255 * g)), static_cast<int>(std::lround(255 * b)));
  return buf;
}

Box panel_box(const Panel& p) {
  Box box;
  for (const auto& poly : p.polygons) {
    for (Complex v : poly.vertices()) box.add(v);
  }
  for (double r : p.circles) {
    box.add({-r, -r});
    box.add({r, r});
  }
  for (const auto& l : p.polylines) {
    for (Complex z : l.points) box.add(z);
  }
  if (p.field) {
    for (const auto& row : p.field->rows) box.add({row.x, row.y});
  }
  if (box.empty()) {
    box.add({-1.0, -1.0});
    box.add({1.0, 1.0});
  }
  const double w = box.xmax - box.xmin;
  const double h = box.ymax - box.ymin;
  const double side = std::max({w, h, 1e-12}) * 1.1;
  const double cx = 0.5 * (box.xmin + box.xmax);
  const double cy = 0.5 * (box.ymin + box.ymax);
  return {cx - side / 2, cx + side / 2, cy - side / 2, cy + side / 2};
}

void render_panel(std::ostringstream& out, const Panel& p, double x0, double size) {
  const Box box = panel_box(p);
  const double scale = size / (box.xmax - box.xmin);
  const auto X = [&](double x) { return x0 + (x - box.xmin) * scale; };
  const auto Y = [&](double y) { return (box.ymax - y) * scale; };
  const double stroke = 1.2;

  out << "<g>\n";
  out << "<rect x=\"" << num(x0) << "\" y=\"0\" width=\"" << num(size) << "\" height=\"" << num(size)
      << "\" fill=\"white\" stroke=\"#cccccc\"/>\n";

  if (p.field && p.field->nx >= 2 && p.field->ny >= 2) {
    const FieldLayer& f = *p.field;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const auto& r : f.rows) {
      if (r.mask != FieldMask::Valid) continue;
      lo = std::min(lo, r.re_w);
      hi = std::max(hi, r.re_w);
    }
    if (lo <= hi) {
      const double dx = std::abs(f.rows[1].x - f.rows[0].x) * scale;
      const double dy = std::abs(f.rows[f.nx].y - f.rows[0].y) * scale;
      const int bands = std::max(f.bands, 2);
      for (const auto& r : f.rows) {
        if (r.mask != FieldMask::Valid) continue;
        int band = hi > lo ? static_cast<int>((r.re_w - lo) / (hi - lo) * bands) : bands / 2;
        band = std::clamp(band, 0, bands - 1);
        out << "<rect x=\"" << num(X(r.x) - dx / 2) << "\" y=\"" << num(Y(r.y) - dy / 2) << "\" width=\""
            << num(dx * 1.02) << "\" height=\"" << num(dy * 1.02) << "\" fill=\"" << band_color(band, bands)
            << "\"/>\n";
      }
    }
  }

  for (double r : p.circles) {
    out << "<circle cx=\"" << num(X(0.0)) << "\" cy=\"" << num(Y(0.0)) << "\" r=\"" << num(r * scale)
        << "\" fill=\"none\" stroke=\"black\" stroke-width=\"" << stroke << "\"/>\n";
  }
  for (const auto& l : p.polylines) {
    if (l.points.size() < 2) continue;
    out << "<polyline fill=\"none\" stroke=\"#3060c0\" stroke-width=\"0.8\" points=\"";
    for (Complex z : l.points) {
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) continue;
      out << num(X(z.real())) << ',' << num(Y(z.imag())) << ' ';
    }
    out << "\"/>\n";
  }
  for (const auto& poly : p.polygons) {
    out << "<polygon fill=\"none\" stroke=\"black\" stroke-width=\"" << stroke << "\" points=\"";
    for (Complex v : poly.vertices()) out << num(X(v.real())) << ',' << num(Y(v.imag())) << ' ';
    out << "\"/>\n";
  }
  for (Complex z : p.dropped_poles) {
    if (!box.contains(z)) continue;
    out << "<circle cx=\"" << num(X(z.real())) << "\" cy=\"" << num(Y(z.imag())) << "\" r=\"1.5\" fill=\"#888888\"/>\n";
  }
  for (Complex z : p.kept_poles) {
    if (!box.contains(z)) continue;
    const double cx = X(z.real());
    const double cy = Y(z.imag());
    out << "<path d=\"M" << num(cx - 3) << ',' << num(cy - 3) << "L" << num(cx + 3) << ',' << num(cy + 3) << "M"
        << num(cx - 3) << ',' << num(cy + 3) << "L" << num(cx + 3) << ',' << num(cy - 3)
        << "\" stroke=\"#c00000\" stroke-width=\"1\"/>\n";
  }
  if (!p.title.empty()) {
    out << "<text x=\"" << num(x0 + 8) << "\" y=\"18\" font-family=\"sans-serif\" font-size=\"13\">" << p.title
        << "</text>\n";
  }
  out << "</g>\n";
}

}  // namespace

std::string render(const std::vector<Panel>& panels, double panel_size) {
  std::ostringstream out;
  const double width = panel_size * static_cast<double>(std::max<std::size_t>(panels.size(), 1));
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width) << "\" height=\"" << num(panel_size)
      << "\" viewBox=\"0 0 " << num(width) << ' ' << num(panel_size) << "\">\n";
  for (std::size_t k = 0; k < panels.size(); ++k) {
    render_panel(out, panels[k], panel_size * static_cast<double>(k), panel_size);
  }
  out << "</svg>\n";
  return out.str();
}

Panel solution_panel(const LaplaceSolution& sol, std::optional<FieldLayer> field) {
  Panel p;
  p.title = std::string("Re w, ") + to_string(sol.potential.region);
  p.polygons = sol.potential.polygons;
  p.kept_poles = sol.potential.kept_poles;
  for (Complex z : sol.all_poles) {
    if (std::find(p.kept_poles.begin(), p.kept_poles.end(), z) == p.kept_poles.end()) p.dropped_poles.push_back(z);
  }
  p.field = std::move(field);
  return p;
}

std::vector<Panel> map_panels(const ConformalMap& map, const std::vector<Polyline>& lines) {
  Panel domain;
  domain.title = "domain";
  domain.polygons = map.solution.potential.polygons;
  Panel disk;
  disk.title = to_string(map.kind);
  disk.circles = {1.0};
  if (map.modulus) disk.circles.push_back(*map.modulus);
  // Circle and ray images live in the domain; pushed-forward grid lines in the disk.
  for (const Polyline& l : lines) {
    (l.id.rfind("grid_", 0) == 0 ? disk : domain).polylines.push_back(l);
  }
  return {domain, disk};
}

}  // namespace harmonic_aaa::svg
