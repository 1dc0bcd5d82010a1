#include "ecgi/debug_io.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>

#include <fmt/core.h>
#include <fmt/ostream.h>
#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>

#include "ecgi/error.hpp"

namespace ecgi {

namespace {

std::uint8_t to_u8(double v) {
  return static_cast<std::uint8_t>(std::floor(std::clamp(v, 0.0, 1.0) * 255.0 + 0.5));
}

void write_mat(const std::filesystem::path& path, const cv::Mat& mat) {
  bool ok = false;
  try {
    ok = cv::imwrite(path.string(), mat);
  } catch (const cv::Exception& e) {
    throw Error(ErrorCode::UnreadableFile, fmt::format("cannot write {}: {}", path.string(), e.what()));
  }
  if (!ok) throw Error(ErrorCode::UnreadableFile, fmt::format("cannot write {}", path.string()));
}

}  // namespace

void write_raster_f32(const std::filesystem::path& path, const GradientField& field) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::UnreadableFile, fmt::format("cannot write {}", path.string()));
  for (double v : field.pixels()) {
    const auto f = static_cast<float>(v);
    auto bits = std::bit_cast<std::uint32_t>(f);
    if constexpr (std::endian::native == std::endian::big) {
      bits = ((bits & 0xffu) << 24) | ((bits & 0xff00u) << 8) | ((bits >> 8) & 0xff00u) |
             (bits >> 24);
    }
    char bytes[4];
    std::memcpy(bytes, &bits, 4);
    out.write(bytes, 4);
  }
  if (!out) throw Error(ErrorCode::UnreadableFile, fmt::format("short write to {}", path.string()));
}

Raster<std::uint8_t> gradient_preview(const GradientField& field) {
  Raster<std::uint8_t> out(field.width(), field.height());
  for (std::size_t i = 0; i < out.size(); ++i) out.pixels()[i] = to_u8(field.pixels()[i]);
  return out;
}

Raster<std::uint8_t> mask_preview(const HighlightMask& mask) {
  Raster<std::uint8_t> out(mask.width(), mask.height());
  for (std::size_t i = 0; i < out.size(); ++i) out.pixels()[i] = mask.pixels()[i] ? 255 : 0;
  return out;
}

void write_gray_png(const std::filesystem::path& path, const Raster<std::uint8_t>& gray) {
  cv::Mat mat(gray.height(), gray.width(), CV_8UC1);
  for (int y = 0; y < gray.height(); ++y) {
    for (int x = 0; x < gray.width(); ++x) mat.at<std::uint8_t>(y, x) = gray(x, y);
  }
  write_mat(path, mat);
}

void write_color_image(const std::filesystem::path& path, const ColorImage& image) {
  cv::Mat mat(image.height(), image.width(), CV_8UC3);
  for (int y = 0; y < image.height(); ++y) {
    for (int x = 0; x < image.width(); ++x) {
      auto& px = mat.at<cv::Vec3b>(y, x);
      px[0] = to_u8(image.at(x, y, ColorImage::kBlue));
      px[1] = to_u8(image.at(x, y, ColorImage::kGreen));
      px[2] = to_u8(image.at(x, y, ColorImage::kRed));
    }
  }
  write_mat(path, mat);
}

void write_color_png16(const std::filesystem::path& path, const ColorImage& image) {
  cv::Mat mat(image.height(), image.width(), CV_16UC3);
  auto to_u16 = [](double v) {
    return static_cast<std::uint16_t>(std::floor(std::clamp(v, 0.0, 1.0) * 65535.0 + 0.5));
  };
  for (int y = 0; y < image.height(); ++y) {
    for (int x = 0; x < image.width(); ++x) {
      auto& px = mat.at<cv::Vec3w>(y, x);
      px[0] = to_u16(image.at(x, y, ColorImage::kBlue));
      px[1] = to_u16(image.at(x, y, ColorImage::kGreen));
      px[2] = to_u16(image.at(x, y, ColorImage::kRed));
    }
  }
  write_mat(path, mat);
}

void write_pmf_tsv(std::ostream& out, const GradientPmf& pmf) {
  for (int n = 0; n < kPmfBins; ++n) {
    fmt::print(out, "{}\t{:.6f}\t{:.12f}\n", n, pmf.left_edge(n), pmf.bins[n]);
  }
}

void write_regions_csv(std::ostream& out, const std::vector<RegionProperties>& regions) {
  out << "id,area,bbox_x_min,bbox_y_min,bbox_x_max,bbox_y_max,centroid_x,centroid_y,"
         "mean_gradient,mean_luminance,kept\n";
  for (const RegionProperties& r : regions) {
    fmt::print(out, "{},{},{},{},{},{},{:.4f},{:.4f},{:.6f},{:.6f},{}\n", r.id, r.area,
               r.bbox.x_min, r.bbox.y_min, r.bbox.x_max, r.bbox.y_max, r.centroid_x,
               r.centroid_y, r.mean_gradient, r.mean_luminance, r.kept ? 1 : 0);
  }
}

}  // namespace ecgi
