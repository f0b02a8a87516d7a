#include <algorithm>
#include <cstdio>
#include <string>
#include <vector>

#include "rectcolor/errors.hpp"
#include "rectcolor/geometry.hpp"

namespace rectcolor {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v == 0.0 ? 0.0 : v);
  return buf;
}

// Position of v among the sorted distinct point coordinates; values between
// two coordinates land halfway.
class RankAxis {
 public:
  explicit RankAxis(std::vector<Rational> values) : values_(std::move(values)) {
    std::sort(values_.begin(), values_.end());
    values_.erase(std::unique(values_.begin(), values_.end()), values_.end());
  }
  double operator()(const Rational& v) const {
    auto it = std::lower_bound(values_.begin(), values_.end(), v);
    const double i = static_cast<double>(it - values_.begin());
    return it != values_.end() && *it == v ? i : i - 0.5;
  }

 private:
  std::vector<Rational> values_;
};

}  // namespace

std::string emit_svg(const Realization& r, const SvgStyle& style) {
  if (r.points.empty()) throw DomainError("cannot draw an empty realization");
  std::vector<Rational> xs, ys;
  for (const Point2& p : r.points) {
    xs.push_back(p.x);
    ys.push_back(p.y);
  }
  const RankAxis rank_x(std::move(xs));
  const RankAxis rank_y(std::move(ys));
  auto fx = [&](const Rational& v) {
    return (style.rank_coordinates ? rank_x(v) : v.get_d()) * style.scale;
  };
  // SVG y grows downward.
  auto fy = [&](const Rational& v) {
    return -(style.rank_coordinates ? rank_y(v) : v.get_d()) * style.scale;
  };

  double x0 = fx(r.points[0].x), x1 = x0, y0 = fy(r.points[0].y), y1 = y0;
  auto grow = [&](double x, double y) {
    x0 = std::min(x0, x);
    x1 = std::max(x1, x);
    y0 = std::min(y0, y);
    y1 = std::max(y1, y);
  };
  for (const Point2& p : r.points) grow(fx(p.x), fy(p.y));
  for (const Rect& rc : r.rects) {
    grow(fx(rc.x_lo), fy(rc.y_lo));
    grow(fx(rc.x_hi), fy(rc.y_hi));
  }
  const double pad = style.scale;
  x0 -= pad;
  y0 -= pad;
  x1 += pad;
  y1 += pad;

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(x1 - x0) + "\" height=\"" +
         num(y1 - y0) + "\" viewBox=\"" + num(x0) + " " + num(y0) + " " + num(x1 - x0) + " " +
         num(y1 - y0) + "\">\n";
  out += "<g fill=\"none\" stroke=\"#3465a4\" stroke-width=\"" + num(style.scale * 0.04) +
         "\" stroke-opacity=\"0.7\">\n";
  for (std::size_t e = 0; e < r.rects.size(); ++e) {
    const Rect& rc = r.rects[e];
    const double left = fx(rc.x_lo), right = fx(rc.x_hi);
    const double top = fy(rc.y_hi), bottom = fy(rc.y_lo);
    out += "<rect data-edge=\"" + std::to_string(e) + "\" x=\"" + num(left) + "\" y=\"" + num(top) +
           "\" width=\"" + num(right - left) + "\" height=\"" + num(bottom - top) + "\"/>\n";
  }
  out += "</g>\n<g fill=\"#cc0000\">\n";
  for (std::size_t v = 0; v < r.points.size(); ++v) {
    out += "<circle data-vertex=\"" + std::to_string(v) + "\" cx=\"" + num(fx(r.points[v].x)) +
           "\" cy=\"" + num(fy(r.points[v].y)) + "\" r=\"" + num(style.point_radius * style.scale) +
           "\"/>\n";
  }
  out += "</g>\n</svg>\n";
  return out;
}

}  // namespace rectcolor
