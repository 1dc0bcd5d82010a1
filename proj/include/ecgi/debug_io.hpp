#pragma once

#include <cstdint>
#include <filesystem>
#include <ostream>
#include <vector>

#include "ecgi/color_gradient.hpp"
#include "ecgi/highlight.hpp"
#include "ecgi/imaging.hpp"
#include "ecgi/scoring.hpp"

namespace ecgi {

/// Raw float32 dump, row-major, little-endian, no header.
void write_raster_f32(const std::filesystem::path& path, const GradientField& field);

/// 8-bit preview of a gradient: clamp to [0, 1], x255, round half up.
Raster<std::uint8_t> gradient_preview(const GradientField& field);

/// Mask as 0/255 gray.
Raster<std::uint8_t> mask_preview(const HighlightMask& mask);

void write_gray_png(const std::filesystem::path& path, const Raster<std::uint8_t>& gray);

/// 8-bit RGB PNG (or any format OpenCV infers from the extension).
/// Channels are rounded half up from [0, 1] to 0..255.
void write_color_image(const std::filesystem::path& path, const ColorImage& image);

/// 16-bit RGB PNG.
void write_color_png16(const std::filesystem::path& path, const ColorImage& image);

/// 256 rows: bin_index <TAB> bin_left_edge <TAB> probability.
void write_pmf_tsv(std::ostream& out, const GradientPmf& pmf);

/// id,area,bbox_x_min,bbox_y_min,bbox_x_max,bbox_y_max,centroid_x,centroid_y,
/// mean_gradient,mean_luminance,kept  (with a header row)
void write_regions_csv(std::ostream& out, const std::vector<RegionProperties>& regions);

}  // namespace ecgi
