#include "ecgi/highlight.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include <fmt/core.h>

#include "ecgi/error.hpp"

namespace ecgi {

void HighlightParams::validate() const {
  auto fail = [](const std::string& what) { throw Error(ErrorCode::InvalidArgument, what); };
  if (!(validity_threshold > 0.0 && validity_threshold <= 1.0)) {
    fail(fmt::format("validity threshold {} outside (0, 1]", validity_threshold));
  }
  if (area_min <= 0 || area_min > area_max) {
    fail(fmt::format("area range [{}, {}] is invalid", area_min, area_max));
  }
  if (mser_delta < 1) fail(fmt::format("mser delta {} < 1", mser_delta));
  if (!(mser_max_variation >= 0.0)) {
    fail(fmt::format("mser max variation {} < 0", mser_max_variation));
  }
  if (closing_radius < 0) fail(fmt::format("closing radius {} < 0", closing_radius));
  if (!(luminance_threshold >= 0.0 && luminance_threshold <= 1.0)) {
    fail(fmt::format("luminance threshold {} outside [0, 1]", luminance_threshold));
  }
}

HighlightMask build_mask(const std::vector<PixelRegion>& regions, int width, int height) {
  HighlightMask mask(width, height, 0);
  for (const PixelRegion& region : regions) {
    for (const Pixel& p : region) {
      if (p.x < 0 || p.y < 0 || p.x >= width || p.y >= height) {
        throw Error(ErrorCode::DimensionMismatch,
                    fmt::format("region pixel ({}, {}) outside {}x{}", p.x, p.y, width, height));
      }
      mask(p.x, p.y) = 1;
    }
  }
  return mask;
}

namespace {

// Separable square max (dilate) or min (erode); samples outside the raster
// count as false.
HighlightMask square_filter(const HighlightMask& in, int radius, bool dilate) {
  const int w = in.width();
  const int h = in.height();
  auto pick = [&](bool acc, bool v) { return dilate ? (acc || v) : (acc && v); };
  HighlightMask rows(w, h, 0);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      bool acc = !dilate;
      for (int k = -radius; k <= radius; ++k) {
        const int xx = x + k;
        acc = pick(acc, xx >= 0 && xx < w && in(xx, y) != 0);
      }
      rows(x, y) = acc ? 1 : 0;
    }
  }
  HighlightMask out(w, h, 0);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      bool acc = !dilate;
      for (int k = -radius; k <= radius; ++k) {
        const int yy = y + k;
        acc = pick(acc, yy >= 0 && yy < h && rows(x, yy) != 0);
      }
      out(x, y) = acc ? 1 : 0;
    }
  }
  return out;
}

}  // namespace

HighlightMask morphological_close(const HighlightMask& mask, int radius) {
  if (radius < 0) throw Error(ErrorCode::InvalidArgument, "closing radius must be >= 0");
  if (radius == 0) return mask;

  // Work on a copy padded by `radius` so the dilation can spill past the
  // border; every erosion window of an original pixel then stays inside.
  const int pw = mask.width() + 2 * radius;
  const int ph = mask.height() + 2 * radius;
  HighlightMask padded(pw, ph, 0);
  for (int y = 0; y < mask.height(); ++y) {
    for (int x = 0; x < mask.width(); ++x) padded(x + radius, y + radius) = mask(x, y) ? 1 : 0;
  }
  const HighlightMask closed =
      square_filter(square_filter(padded, radius, true), radius, false);

  HighlightMask out(mask.width(), mask.height(), 0);
  for (int y = 0; y < mask.height(); ++y) {
    for (int x = 0; x < mask.width(); ++x) out(x, y) = closed(x + radius, y + radius);
  }
  return out;
}

ScreeningResult screen_components(const HighlightMask& mask, const GradientField& field,
                                  const LuminancePlane& luminance,
                                  const HighlightParams& params) {
  if (!mask.same_shape(field) || !mask.same_shape(luminance)) {
    throw Error(ErrorCode::DimensionMismatch, "mask, gradient and luminance differ in size");
  }
  const int w = mask.width();
  const int h = mask.height();
  ScreeningResult result{HighlightMask(w, h, 0), {}};

  Raster<int> labels(w, h, -1);
  std::vector<std::vector<int>> members;
  std::vector<int> stack;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (!mask(x, y) || labels(x, y) != -1) continue;
      const int id = static_cast<int>(members.size());
      members.emplace_back();
      labels(x, y) = id;
      stack.push_back(static_cast<int>(labels.index(x, y)));
      while (!stack.empty()) {
        const int p = stack.back();
        stack.pop_back();
        members[id].push_back(p);
        const int px = p % w;
        const int py = p / w;
        for (int dy = -1; dy <= 1; ++dy) {
          for (int dx = -1; dx <= 1; ++dx) {
            const int nx = px + dx;
            const int ny = py + dy;
            if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
            if (!mask(nx, ny) || labels(nx, ny) != -1) continue;
            labels(nx, ny) = id;
            stack.push_back(static_cast<int>(labels.index(nx, ny)));
          }
        }
      }
    }
  }

  for (std::size_t id = 0; id < members.size(); ++id) {
    auto& pix = members[id];
    std::sort(pix.begin(), pix.end());
    RegionProperties props;
    props.id = static_cast<int>(id);
    props.area = static_cast<int>(pix.size());
    props.bbox = {w, h, -1, -1};
    double sx = 0.0, sy = 0.0, sg = 0.0, sl = 0.0;
    for (int p : pix) {
      const int x = p % w;
      const int y = p / w;
      props.bbox.x_min = std::min(props.bbox.x_min, x);
      props.bbox.y_min = std::min(props.bbox.y_min, y);
      props.bbox.x_max = std::max(props.bbox.x_max, x);
      props.bbox.y_max = std::max(props.bbox.y_max, y);
      sx += x;
      sy += y;
      sg += field.pixels()[p];
      sl += luminance.pixels()[p];
    }
    const double n = static_cast<double>(pix.size());
    props.centroid_x = sx / n;
    props.centroid_y = sy / n;
    props.mean_gradient = sg / n;
    props.mean_luminance = sl / n;
    props.kept = props.mean_luminance >= params.luminance_threshold;
    if (props.kept) {
      for (int p : pix) result.mask.pixels()[p] = 1;
    }
    result.regions.push_back(props);
  }
  return result;
}

double complemental_value(const GradientField& field, double upper) {
  double sum = 0.0;
  std::size_t count = 0;
  for (double v : field.pixels()) {
    if (v > 0.0 && v < upper) {
      sum += v;
      ++count;
    }
  }
  return count == 0 ? 0.0 : sum / static_cast<double>(count);
}

GradientField apply_mask(const GradientField& field, const HighlightMask& mask, double c) {
  if (!field.same_shape(mask)) {
    throw Error(ErrorCode::DimensionMismatch,
                fmt::format("mask {}x{} does not match gradient {}x{}", mask.width(),
                            mask.height(), field.width(), field.height()));
  }
  if (!(c >= 0.0)) throw Error(ErrorCode::InvalidArgument, "complemental value must be >= 0");
  GradientField out = field;
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (mask.pixels()[i]) out.pixels()[i] = c;
  }
  return out;
}

ScreeningResult detect_highlights(const GradientField& field, const LuminancePlane& luminance,
                                  const HighlightParams& params) {
  params.validate();
  const auto regions = detect_mser_regions(field, params);
  const HighlightMask raw = build_mask(regions, field.width(), field.height());
  const HighlightMask closed = morphological_close(raw, params.closing_radius);
  return screen_components(closed, field, luminance, params);
}

}  // namespace ecgi
