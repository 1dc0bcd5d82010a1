#pragma once

#include <cstdint>
#include <vector>

#include "ecgi/color_gradient.hpp"
#include "ecgi/imaging.hpp"
#include "ecgi/raster.hpp"

namespace ecgi {

/// Tuning of the specular-highlight detector.
struct HighlightParams {
  double validity_threshold = 0.2;  ///< region pixels must exceed this gradient
  int area_min = 5;
  int area_max = 200;
  int mser_delta = 5;               ///< gray levels on the 8-bit quantized field
  double mser_max_variation = 0.25;
  int closing_radius = 1;           ///< square element of side 2r+1
  double luminance_threshold = 0.8; ///< components at or above this mean are kept

  /// Throws InvalidArgument when a field is out of range. A luminance
  /// threshold of 0 is accepted and keeps every component.
  void validate() const;

  bool operator==(const HighlightParams&) const = default;
};

/// Binary raster; nonzero marks a light-reflecting pixel.
using HighlightMask = Raster<std::uint8_t>;

struct Pixel {
  int x = 0;
  int y = 0;
  bool operator==(const Pixel&) const = default;
};

/// A connected pixel set, sorted in raster order.
using PixelRegion = std::vector<Pixel>;

struct BoundingBox {
  int x_min = 0;
  int y_min = 0;
  int x_max = 0;
  int y_max = 0;
};

struct RegionProperties {
  int id = 0;
  int area = 0;
  BoundingBox bbox;
  double centroid_x = 0.0;
  double centroid_y = 0.0;
  double mean_gradient = 0.0;
  double mean_luminance = 0.0;
  bool kept = false;
};

struct ScreeningResult {
  HighlightMask mask;
  std::vector<RegionProperties> regions;
};

/// Clamp to [0, 1], scale by 255, round half up.
Raster<std::uint8_t> quantize_to_u8(const GradientField& field);

/// Bright maximally stable extremal regions of the 8-bit quantized field,
/// restricted to area in [area_min, area_max] and to regions whose every
/// pixel has an unquantized gradient above validity_threshold.
std::vector<PixelRegion> detect_mser_regions(const GradientField& field,
                                             const HighlightParams& params);

HighlightMask build_mask(const std::vector<PixelRegion>& regions, int width, int height);

/// Dilation followed by erosion with a (2r+1)^2 square. The mask is treated
/// as embedded in an all-false plane, so closing is extensive and idempotent.
HighlightMask morphological_close(const HighlightMask& mask, int radius);

/// Labels 8-connected components and keeps those whose mean luminance
/// reaches the threshold. Properties of every component are returned.
ScreeningResult screen_components(const HighlightMask& mask, const GradientField& field,
                                  const LuminancePlane& luminance,
                                  const HighlightParams& params);

/// Mean of the gradient over pixels with 0 < F < upper, or 0 if none.
double complemental_value(const GradientField& field, double upper = 0.2);

/// Replaces masked pixels by c. Throws DimensionMismatch.
GradientField apply_mask(const GradientField& field, const HighlightMask& mask, double c);

/// detect -> rasterize -> close -> screen.
ScreeningResult detect_highlights(const GradientField& field, const LuminancePlane& luminance,
                                  const HighlightParams& params);

}  // namespace ecgi
