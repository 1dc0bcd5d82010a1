#include "ecgi/color_gradient.hpp"

#include <algorithm>
#include <cmath>

namespace ecgi {

namespace {

int clamp_index(int i, int n) noexcept { return std::clamp(i, 0, n - 1); }

// Sums three terms in an order that depends only on the multiset of values,
// so permuting channels never changes a bit of the result. Ordering by
// magnitude also makes the sum odd under a global sign flip.
double canonical_sum(double a, double b, double c) noexcept {
  std::array<double, 3> v{a, b, c};
  std::sort(v.begin(), v.end(), [](double l, double r) {
    const double al = std::abs(l), ar = std::abs(r);
    return al < ar || (al == ar && l < r);
  });
  return (v[0] + v[1]) + v[2];
}

}  // namespace

ChannelDerivatives channel_derivatives(const ColorImage& image) {
  const int w = image.width();
  const int h = image.height();
  ChannelDerivatives d;
  for (int c = 0; c < 3; ++c) {
    const Plane& src = image.plane(c);
    Plane dx(w, h), dy(w, h);
    for (int y = 0; y < h; ++y) {
      const int ym = clamp_index(y - 1, h);
      const int yp = clamp_index(y + 1, h);
      for (int x = 0; x < w; ++x) {
        const int xm = clamp_index(x - 1, w);
        const int xp = clamp_index(x + 1, w);
        // Outer taps are paired before adding the doubled centre tap; the
        // x and y stencils then map onto each other exactly under rotation.
        const double gx = (src(xp, ym) - src(xm, ym)) + (src(xp, yp) - src(xm, yp));
        const double gy = (src(xm, yp) - src(xm, ym)) + (src(xp, yp) - src(xp, ym));
        dx(x, y) = (gx + 2.0 * (src(xp, y) - src(xm, y))) * 0.125;
        dy(x, y) = (gy + 2.0 * (src(x, yp) - src(x, ym))) * 0.125;
      }
    }
    d.dx[c] = std::move(dx);
    d.dy[c] = std::move(dy);
  }
  return d;
}

StructureTensorField structure_tensor(const ChannelDerivatives& d) {
  const int w = d.dx[0].width();
  const int h = d.dx[0].height();
  StructureTensorField t{Plane(w, h), Plane(w, h), Plane(w, h)};
  for (std::size_t i = 0; i < t.gxx.size(); ++i) {
    const double xr = d.dx[0].pixels()[i], xg = d.dx[1].pixels()[i], xb = d.dx[2].pixels()[i];
    const double yr = d.dy[0].pixels()[i], yg = d.dy[1].pixels()[i], yb = d.dy[2].pixels()[i];
    t.gxx.pixels()[i] = canonical_sum(xr * xr, xg * xg, xb * xb);
    t.gyy.pixels()[i] = canonical_sum(yr * yr, yg * yg, yb * yb);
    t.gxy.pixels()[i] = canonical_sum(xr * yr, xg * yg, xb * yb);
  }
  return t;
}

double gradient_direction(double gxx, double gyy, double gxy) noexcept {
  return 0.5 * std::atan2(2.0 * gxy, gxx - gyy);
}

double directional_response(double gxx, double gyy, double gxy, double theta) noexcept {
  return 0.5 * ((gxx + gyy) + (gxx - gyy) * std::cos(2.0 * theta) +
                2.0 * gxy * std::sin(2.0 * theta));
}

double gradient_magnitude(double gxx, double gyy, double gxy) noexcept {
  // cos 2t and sin 2t at t = 0.5 atan2(Y, X) are X/r and Y/r. Using them
  // directly keeps the result exact under the sign flips a 90 degree
  // rotation induces (X -> -X, Y -> -Y).
  const double x = gxx - gyy;
  const double y = 2.0 * gxy;
  const double r = std::hypot(x, y);
  const double cos2t = r > 0.0 ? x / r : 1.0;
  const double sin2t = r > 0.0 ? y / r : 0.0;
  const double trace = gxx + gyy;
  const double swing = x * cos2t + y * sin2t;
  const double at_theta = std::max(0.0, 0.5 * (trace + swing));
  // Orthogonal direction t + pi/2 flips the sign of both trig terms.
  const double at_orthogonal = std::max(0.0, 0.5 * (trace - swing));
  return std::sqrt(std::max(at_theta, at_orthogonal));
}

GradientField gradient_magnitude(const StructureTensorField& tensor) {
  GradientField f(tensor.gxx.width(), tensor.gxx.height());
  for (std::size_t i = 0; i < f.size(); ++i) {
    f.pixels()[i] = gradient_magnitude(tensor.gxx.pixels()[i], tensor.gyy.pixels()[i],
                                       tensor.gxy.pixels()[i]);
  }
  return f;
}

GradientField color_gradient(const ColorImage& image) {
  return gradient_magnitude(structure_tensor(channel_derivatives(image)));
}

}  // namespace ecgi
