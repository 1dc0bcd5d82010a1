#include "ecgi/scoring.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/core.h>

#include "ecgi/error.hpp"

namespace ecgi {

GradientPmf quantize(const GradientField& field, double range_max) {
  if (field.empty()) throw Error(ErrorCode::EmptyImage, "gradient field has no pixels");
  if (!(range_max > 0.0)) {
    throw Error(ErrorCode::InvalidArgument,
                fmt::format("quantization range {} must be positive", range_max));
  }
  std::array<std::size_t, kPmfBins> counts{};
  for (double v : field.pixels()) {
    const double unit = std::clamp(v, 0.0, range_max) / range_max;
    const auto bin = std::min(static_cast<int>(std::floor(unit * kPmfBins)), kPmfBins - 1);
    ++counts[bin];
  }
  GradientPmf pmf;
  pmf.range_max = range_max;
  const double total = static_cast<double>(field.size());
  for (int n = 0; n < kPmfBins; ++n) pmf.bins[n] = static_cast<double>(counts[n]) / total;
  return pmf;
}

double entropy(std::span<const double> pmf) {
  double sum = 0.0;
  for (double p : pmf) {
    if (!(p >= 0.0)) throw Error(ErrorCode::InvalidPmf, fmt::format("negative bin {}", p));
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-6) {
    throw Error(ErrorCode::InvalidPmf, fmt::format("bins sum to {}", sum));
  }
  double h = 0.0;
  for (double p : pmf) {
    if (p > 0.0) h -= p * std::log2(p);
  }
  return h;
}

double entropy(const GradientPmf& pmf) { return entropy(std::span<const double>(pmf.bins)); }

EcgiResult ecgi_score(const ColorImage& image, const EcgiOptions& options) {
  options.highlight.validate();

  EcgiResult result;
  result.options = options;
  result.gradient = color_gradient(image);
  result.complemental_value =
      complemental_value(result.gradient, options.highlight.validity_threshold);

  if (options.suppress_highlights) {
    ScreeningResult screened =
        detect_highlights(result.gradient, to_luminance(image), options.highlight);
    result.mask = std::move(screened.mask);
    result.regions = std::move(screened.regions);
  } else {
    result.mask = HighlightMask(image.width(), image.height(), 0);
  }
  result.mask_pixel_count = static_cast<std::size_t>(
      std::count_if(result.mask.pixels().begin(), result.mask.pixels().end(),
                    [](std::uint8_t m) { return m != 0; }));

  result.final_gradient = apply_mask(result.gradient, result.mask, result.complemental_value);
  result.pmf = quantize(result.final_gradient, options.quant_max);
  result.score = entropy(result.pmf);
  return result;
}

}  // namespace ecgi
