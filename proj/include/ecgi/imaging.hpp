#pragma once

#include <array>
#include <filesystem>
#include <span>

#include "ecgi/raster.hpp"

namespace ecgi {

/// Smallest edge length accepted anywhere in the pipeline (3x3 stencil).
inline constexpr int kMinImageSide = 3;

using Plane = Raster<double>;
using LuminancePlane = Raster<double>;

/// RGB image with channel values normalized to [0, 1].
///
/// Instances are only created through the checked factories, so every live
/// object satisfies the range and minimum-size invariants.
class ColorImage {
 public:
  static constexpr int kRed = 0;
  static constexpr int kGreen = 1;
  static constexpr int kBlue = 2;

  /// Throws TooSmall, DimensionMismatch or InvalidArgument (value outside [0,1]).
  static ColorImage from_planes(Plane red, Plane green, Plane blue);

  /// Interleaved RGBRGB... samples in row-major order.
  static ColorImage from_interleaved(int width, int height, std::span<const double> rgb);

  static ColorImage filled(int width, int height, double red, double green, double blue);

  int width() const noexcept { return planes_[0].width(); }
  int height() const noexcept { return planes_[0].height(); }

  const Plane& plane(int channel) const noexcept { return planes_[channel]; }
  double at(int x, int y, int channel) const noexcept { return planes_[channel](x, y); }

  bool operator==(const ColorImage&) const = default;

 private:
  explicit ColorImage(std::array<Plane, 3> planes) : planes_(std::move(planes)) {}

  std::array<Plane, 3> planes_;
};

struct RoiRect {
  int x = 0;
  int y = 0;
  int w = 0;
  int h = 0;

  bool operator==(const RoiRect&) const = default;
};

/// Decodes a PNG, JPEG or BMP file. 8-bit codes map to v/255, 16-bit codes
/// to v/65535. Alpha is dropped; grayscale input is rejected.
ColorImage load_image(const std::filesystem::path& path);

/// Throws RoiOutOfBounds if the rectangle leaves the image, TooSmall if it is
/// narrower than the stencil.
ColorImage crop_roi(const ColorImage& image, const RoiRect& roi);

/// Rec. 601 luma: 0.299 R + 0.587 G + 0.114 B.
LuminancePlane to_luminance(const ColorImage& image);

}  // namespace ecgi
