#include "windfarm/svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace wf {

namespace {

std::string fmt(const char* format, double a) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), format, a);
  return buf;
}

std::string num(double v) { return fmt("%.2f", v); }

struct Canvas {
  std::string body;
  double width, height;

  void line(double x1, double y1, double x2, double y2, const char* stroke, double w = 1.0) {
    body += "<line x1=\"" + num(x1) + "\" y1=\"" + num(y1) + "\" x2=\"" + num(x2) + "\" y2=\"" +
            num(y2) + "\" stroke=\"" + stroke + "\" stroke-width=\"" + num(w) + "\"/>\n";
  }
  void circle(double cx, double cy, double r, const char* fill, const char* stroke,
              double w = 1.0) {
    body += "<circle cx=\"" + num(cx) + "\" cy=\"" + num(cy) + "\" r=\"" + num(r) + "\" fill=\"" +
            fill + "\" stroke=\"" + stroke + "\" stroke-width=\"" + num(w) + "\"/>\n";
  }
  void rect(double x, double y, double w, double h, const std::string& fill) {
    body += "<rect x=\"" + num(x) + "\" y=\"" + num(y) + "\" width=\"" + num(w) + "\" height=\"" +
            num(h) + "\" fill=\"" + fill + "\"/>\n";
  }
  void text(double x, double y, const std::string& s, int size = 12) {
    body += "<text x=\"" + num(x) + "\" y=\"" + num(y) + "\" font-family=\"sans-serif\" font-size=\"" +
            std::to_string(size) + "\" fill=\"#333\">" + s + "</text>\n";
  }
  std::string document() const {
    return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" "
           "width=\"" + num(width) + "\" height=\"" + num(height) + "\" viewBox=\"0 0 " +
           num(width) + " " + num(height) + "\">\n<rect width=\"100%\" height=\"100%\" "
           "fill=\"white\"/>\n" + body + "</svg>\n";
  }
};

/// Blue (slow) to red (fast) diverging ramp for speed heatmaps.
std::string speed_color(double t) {
  t = std::clamp(t, 0.0, 1.0);
  const int r = static_cast<int>(std::lround(255.0 * t));
  const int g = static_cast<int>(std::lround(80.0 + 100.0 * (1.0 - std::abs(2.0 * t - 1.0))));
  const int b = static_cast<int>(std::lround(255.0 * (1.0 - t)));
  char buf[16];
  std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", r, g, b);
  return buf;
}

}  // namespace

std::string plot_layout(const CandidateGrid& grid, const std::vector<int>& selected,
                        const TurbineSpec& turbine, double spacing_factor) {
  if (static_cast<Eigen::Index>(selected.size()) != grid.size())
    throw std::invalid_argument("plot: layout/grid size mismatch");

  const double pad = 1.2;
  const double extent = grid.boundary_radius * pad + turbine.rotor_diameter;
  const double size = 640.0;
  const double scale = size / (2.0 * extent);
  auto sx = [&](double x) { return size / 2.0 + x * scale; };
  auto sy = [&](double y) { return size / 2.0 - y * scale; };

  Canvas c{.body = {}, .width = size, .height = size};
  c.circle(sx(0), sy(0), grid.boundary_radius * scale, "none", "#888", 1.5);
  for (Eigen::Index i = 0; i < grid.size(); ++i)
    if (!selected[static_cast<std::size_t>(i)])
      c.circle(sx(grid.x(i)), sy(grid.y(i)), 1.5, "#bbb", "none", 0.0);
  const double spacing_r = spacing_factor * turbine.rotor_diameter * scale;
  for (Eigen::Index i = 0; i < grid.size(); ++i) {
    if (!selected[static_cast<std::size_t>(i)]) continue;
    c.circle(sx(grid.x(i)), sy(grid.y(i)), spacing_r, "none", "#d33", 1.0);
    c.circle(sx(grid.x(i)), sy(grid.y(i)), 3.5, "#136", "none", 0.0);
  }
  return c.document();
}

std::string plot_history(const std::vector<IterationRecord>& history) {
  if (history.empty()) throw std::invalid_argument("plot: empty history");

  const double w = 640.0, h = 420.0, ml = 70.0, mb = 45.0, mt = 20.0, mr = 20.0;
  double lo = history.front().aep_gwh, hi = lo;
  for (const auto& r : history) {
    lo = std::min(lo, r.aep_gwh);
    hi = std::max(hi, r.aep_gwh);
  }
  if (hi == lo) {
    hi += 1.0;
    lo -= 1.0;
  }
  const double n = static_cast<double>(history.size());
  auto sx = [&](double i) { return ml + (w - ml - mr) * (n > 1 ? i / (n - 1) : 0.5); };
  auto sy = [&](double v) { return h - mb - (h - mb - mt) * (v - lo) / (hi - lo); };

  Canvas c{.body = {}, .width = w, .height = h};
  c.line(ml, mt, ml, h - mb, "#333");
  c.line(ml, h - mb, w - mr, h - mb, "#333");
  c.text(ml - 60.0, mt + 10.0, fmt("%.1f", hi));
  c.text(ml - 60.0, h - mb, fmt("%.1f", lo));
  c.text(w / 2.0 - 30.0, h - 10.0, "iteration");
  c.text(8.0, mt + 5.0, "AEP [GWh]");

  std::string path = "<polyline fill=\"none\" stroke=\"#136\" stroke-width=\"1.5\" points=\"";
  for (std::size_t i = 0; i < history.size(); ++i) {
    path += num(sx(static_cast<double>(i))) + "," + num(sy(history[i].aep_gwh));
    if (i + 1 < history.size()) path += " ";
  }
  path += "\"/>\n";
  c.body += path;
  return c.document();
}

std::string plot_density_histogram(const Eigen::VectorXd& rho) {
  if (rho.size() == 0) throw std::invalid_argument("plot: empty density vector");

  constexpr int kBins = 20;
  std::array<int, kBins> counts{};
  for (Eigen::Index i = 0; i < rho.size(); ++i) {
    int b = static_cast<int>(rho(i) * kBins);
    counts[std::clamp(b, 0, kBins - 1)] += 1;
  }
  const int peak = *std::max_element(counts.begin(), counts.end());

  const double w = 640.0, h = 420.0, ml = 60.0, mb = 45.0, mt = 20.0, mr = 20.0;
  const double bw = (w - ml - mr) / kBins;
  Canvas c{.body = {}, .width = w, .height = h};
  c.line(ml, mt, ml, h - mb, "#333");
  c.line(ml, h - mb, w - mr, h - mb, "#333");
  for (int b = 0; b < kBins; ++b) {
    const double bh = (h - mb - mt) * counts[b] / std::max(peak, 1);
    c.rect(ml + b * bw + 1.0, h - mb - bh, bw - 2.0, bh, "#136");
  }
  c.text(ml - 10.0, h - mb + 16.0, "0");
  c.text(w - mr - 10.0, h - mb + 16.0, "1");
  c.text(ml - 50.0, mt + 10.0, std::to_string(peak));
  c.text(w / 2.0 - 40.0, h - 10.0, "final density");
  return c.document();
}

std::string plot_flow_field(const FlowField& field, const CandidateGrid& grid,
                            const std::vector<int>& selected, double v_inf) {
  const double size = 640.0;
  const double extent_x = field.x0 + (field.nx - 1) * field.resolution;
  const double scale = size / (extent_x - field.x0 + field.resolution);
  auto sx = [&](double x) { return (x - field.x0 + field.resolution / 2.0) * scale; };
  auto sy = [&](double y) { return size - (y - field.y0 + field.resolution / 2.0) * scale; };

  const double vmin = field.speed.minCoeff();
  Canvas c{.body = {}, .width = size, .height = size};
  const double cell = field.resolution * scale;
  for (Eigen::Index row = 0; row < field.ny; ++row) {
    const double py = field.y0 + row * field.resolution;
    for (Eigen::Index col = 0; col < field.nx; ++col) {
      const double px = field.x0 + col * field.resolution;
      const double t = (field.speed(row, col) - vmin) / std::max(v_inf - vmin, 1e-12);
      c.rect(sx(px) - cell / 2.0, sy(py) - cell / 2.0, cell + 0.5, cell + 0.5, speed_color(t));
    }
  }
  for (Eigen::Index i = 0; i < grid.size(); ++i)
    if (selected[static_cast<std::size_t>(i)])
      c.circle(sx(grid.x(i)), sy(grid.y(i)), 3.0, "black", "white", 0.8);
  c.text(10.0, 20.0, "speed " + fmt("%.2f", vmin) + " - " + fmt("%.2f", v_inf) + " m/s");
  return c.document();
}

}  // namespace wf
