// Shared fixtures for the unit and acceptance suites: seeded synthetic
// images and the independent oracles the implementation is checked against.
#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <random>
#include <string>
#include <unistd.h>

#include "ecgi/color_gradient.hpp"
#include "ecgi/imaging.hpp"

namespace ecgi::testing {

inline ColorImage random_image(int w, int h, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::array<Plane, 3> planes{Plane(w, h), Plane(w, h), Plane(w, h)};
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      for (auto& p : planes) p(x, y) = unit(rng);
    }
  }
  return ColorImage::from_planes(planes[0], planes[1], planes[2]);
}

/// k x k mean filter with replicate borders.
inline ColorImage box_blur(const ColorImage& img, int k) {
  const int r = k / 2;
  const int w = img.width();
  const int h = img.height();
  std::array<Plane, 3> out;
  for (int c = 0; c < 3; ++c) {
    out[c] = Plane(w, h);
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        double s = 0.0;
        for (int dy = -r; dy <= r; ++dy) {
          for (int dx = -r; dx <= r; ++dx) {
            s += img.at(std::clamp(x + dx, 0, w - 1), std::clamp(y + dy, 0, h - 1), c);
          }
        }
        out[c](x, y) = std::clamp(s / (k * k), 0.0, 1.0);
      }
    }
  }
  return ColorImage::from_planes(out[0], out[1], out[2]);
}

/// Counter-clockwise quarter turn: out(x, y) = in(w - 1 - y, x).
template <typename T>
Raster<T> rot90(const Raster<T>& in) {
  Raster<T> out(in.height(), in.width());
  for (int y = 0; y < out.height(); ++y) {
    for (int x = 0; x < out.width(); ++x) out(x, y) = in(in.width() - 1 - y, x);
  }
  return out;
}

inline ColorImage rot90(const ColorImage& img) {
  return ColorImage::from_planes(rot90(img.plane(0)), rot90(img.plane(1)), rot90(img.plane(2)));
}

template <typename T>
Raster<T> transpose(const Raster<T>& in) {
  Raster<T> out(in.height(), in.width());
  for (int y = 0; y < out.height(); ++y) {
    for (int x = 0; x < out.width(); ++x) out(x, y) = in(y, x);
  }
  return out;
}

inline ColorImage transpose(const ColorImage& img) {
  return ColorImage::from_planes(transpose(img.plane(0)), transpose(img.plane(1)),
                                 transpose(img.plane(2)));
}

inline ColorImage permute_channels(const ColorImage& img, std::array<int, 3> order) {
  return ColorImage::from_planes(img.plane(order[0]), img.plane(order[1]), img.plane(order[2]));
}

/// Smooth bright background with mild texture and one saturated disc.
/// Luminance of the background stays near 0.75 so the disc rim averages
/// above the default screening threshold.
inline ColorImage textured_with_disc(int w, int h, int cx, int cy, double radius,
                                     std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> noise(-0.01, 0.01);
  std::array<Plane, 3> planes{Plane(w, h), Plane(w, h), Plane(w, h)};
  const std::array<double, 3> base{0.68, 0.61, 0.58};
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const double wave = 0.05 * std::sin(0.35 * x) * std::cos(0.27 * y);
      const bool in_disc = std::hypot(x - cx, y - cy) <= radius;
      for (int c = 0; c < 3; ++c) {
        const double v = in_disc ? 1.0 : base[c] + wave + noise(rng);
        planes[c](x, y) = std::clamp(v, 0.0, 1.0);
      }
    }
  }
  return ColorImage::from_planes(planes[0], planes[1], planes[2]);
}

/// Brute-force maximum of the directional response over `steps` angles
/// k pi / steps, k = 0..steps-1.
inline double brute_force_magnitude(double gxx, double gyy, double gxy, int steps = 1800) {
  const double pi = std::acos(-1.0);
  double best = 0.0;
  for (int k = 0; k < steps; ++k) {
    const double t = k * pi / steps;
    const double r =
        0.5 * ((gxx + gyy) + (gxx - gyy) * std::cos(2 * t) + 2 * gxy * std::sin(2 * t));
    best = std::max(best, r);
  }
  return std::sqrt(best);
}

/// Student-t density.
inline long double t_density(long double s, long double df) {
  const long double pi = std::acos(-1.0L);
  const long double log_norm = std::lgamma((df + 1) / 2) - std::lgamma(df / 2) -
                               0.5L * std::log(df * pi);
  return std::exp(log_norm - (df + 1) / 2 * std::log1p(s * s / df));
}

/// Two-tailed p by Gauss-Legendre quadrature of the density over [0, |t|]:
/// p = 1 - 2 * integral. 64 panels of 20-point rules, long double.
inline double t_two_tailed_by_quadrature(double t, double df) {
  static constexpr std::array<long double, 10> kNodes{
      0.0765265211334973337546404093988382L, 0.2277858511416450780804961953685746L,
      0.3737060887154195606725481770249272L, 0.5108670019508270980043640509552510L,
      0.6360536807265150254528366962262859L, 0.7463319064601507926143050703556416L,
      0.8391169718222188233945290617015207L, 0.9122344282513259058677524412032981L,
      0.9639719272779137912676661311972772L, 0.9931285991850949247861223884713203L};
  static constexpr std::array<long double, 10> kWeights{
      0.1527533871307258506980843319550976L, 0.1491729864726037467878287370019694L,
      0.1420961093183820513292983250671649L, 0.1316886384491766268984944997481631L,
      0.1181945319615184173123773777113823L, 0.1019301198172404350367501354803499L,
      0.0832767415767047487247581432220463L, 0.0626720483341090635695065351870416L,
      0.0406014298003869413310399522749321L, 0.0176140071391521183118619623518528L};
  const long double upper = std::fabs(static_cast<long double>(t));
  if (upper == 0) return 1.0;
  constexpr int kPanels = 64;
  const long double hw = upper / kPanels / 2;
  long double integral = 0;
  for (int p = 0; p < kPanels; ++p) {
    const long double mid = (2 * p + 1) * hw;
    for (std::size_t i = 0; i < kNodes.size(); ++i) {
      integral += kWeights[i] * (t_density(mid - hw * kNodes[i], df) +
                                 t_density(mid + hw * kNodes[i], df));
    }
  }
  integral *= hw;
  return static_cast<double>(1 - 2 * integral);
}

/// Temporary directory removed on destruction.
class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("ecgi_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

}  // namespace ecgi::testing
