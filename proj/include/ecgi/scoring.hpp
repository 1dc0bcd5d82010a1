#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "ecgi/color_gradient.hpp"
#include "ecgi/highlight.hpp"
#include "ecgi/imaging.hpp"

namespace ecgi {

inline constexpr int kPmfBins = 256;

/// Normalized 256-bin histogram over the fixed range [0, range_max].
struct GradientPmf {
  std::array<double, kPmfBins> bins{};
  double range_max = 1.0;

  double left_edge(int bin) const noexcept { return range_max * bin / kPmfBins; }
};

/// Bin of value v is min(floor(clamp(v, 0, range_max) / range_max * 256), 255).
/// Throws EmptyImage for a zero-pixel field.
GradientPmf quantize(const GradientField& field, double range_max = 1.0);

/// Shannon entropy in bits, 0 log 0 = 0. Throws InvalidPmf when a bin is
/// negative or the bins do not sum to 1 within 1e-6.
double entropy(std::span<const double> pmf);
double entropy(const GradientPmf& pmf);

struct EcgiOptions {
  HighlightParams highlight;
  double quant_max = 1.0;
  bool suppress_highlights = true;

  bool operator==(const EcgiOptions&) const = default;
};

struct EcgiResult {
  double score = 0.0;
  GradientPmf pmf;
  double complemental_value = 0.0;
  std::size_t mask_pixel_count = 0;
  EcgiOptions options;

  // Intermediates, kept for debug dumps.
  GradientField gradient;
  GradientField final_gradient;
  HighlightMask mask;
  std::vector<RegionProperties> regions;
};

/// Full pipeline: color gradient, highlight suppression, 256-bin entropy.
EcgiResult ecgi_score(const ColorImage& image, const EcgiOptions& options = {});

}  // namespace ecgi
