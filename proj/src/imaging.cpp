#include "ecgi/imaging.hpp"

#include <algorithm>
#include <fstream>
#include <string>

#include <fmt/core.h>
#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>

#include "ecgi/error.hpp"

namespace ecgi {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::UnreadableFile: return "UnreadableFile";
    case ErrorCode::UnsupportedFormat: return "UnsupportedFormat";
    case ErrorCode::TooSmall: return "TooSmall";
    case ErrorCode::RoiOutOfBounds: return "RoiOutOfBounds";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::EmptyImage: return "EmptyImage";
    case ErrorCode::InvalidPmf: return "InvalidPmf";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::TooFewSamples: return "TooFewSamples";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::MalformedManifest: return "MalformedManifest";
  }
  return "Unknown";
}

namespace {

void require_min_size(int width, int height) {
  if (width < kMinImageSide || height < kMinImageSide) {
    throw Error(ErrorCode::TooSmall,
                fmt::format("image is {}x{}, minimum is {}x{}", width, height, kMinImageSide,
                            kMinImageSide));
  }
}

}  // namespace

ColorImage ColorImage::from_planes(Plane red, Plane green, Plane blue) {
  if (!red.same_shape(green) || !red.same_shape(blue)) {
    throw Error(ErrorCode::DimensionMismatch, "color planes differ in size");
  }
  require_min_size(red.width(), red.height());
  for (const Plane* plane : {&red, &green, &blue}) {
    for (double v : plane->pixels()) {
      if (!(v >= 0.0 && v <= 1.0)) {
        throw Error(ErrorCode::InvalidArgument,
                    fmt::format("channel value {} outside [0, 1]", v));
      }
    }
  }
  return ColorImage({std::move(red), std::move(green), std::move(blue)});
}

ColorImage ColorImage::from_interleaved(int width, int height, std::span<const double> rgb) {
  if (width < 0 || height < 0 ||
      rgb.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height) * 3) {
    throw Error(ErrorCode::DimensionMismatch, "interleaved buffer does not match dimensions");
  }
  Plane r(width, height), g(width, height), b(width, height);
  for (std::size_t i = 0; i < r.size(); ++i) {
    r.pixels()[i] = rgb[3 * i];
    g.pixels()[i] = rgb[3 * i + 1];
    b.pixels()[i] = rgb[3 * i + 2];
  }
  return from_planes(std::move(r), std::move(g), std::move(b));
}

ColorImage ColorImage::filled(int width, int height, double red, double green, double blue) {
  return from_planes(Plane(width, height, red), Plane(width, height, green),
                     Plane(width, height, blue));
}

ColorImage load_image(const std::filesystem::path& path) {
  {
    std::ifstream probe(path, std::ios::binary);
    if (!probe || std::filesystem::is_directory(path)) {
      throw Error(ErrorCode::UnreadableFile, fmt::format("cannot read {}", path.string()));
    }
  }

  cv::Mat mat;
  try {
    mat = cv::imread(path.string(), cv::IMREAD_UNCHANGED);
  } catch (const cv::Exception& e) {
    throw Error(ErrorCode::UnsupportedFormat, fmt::format("{}: {}", path.string(), e.what()));
  }
  if (mat.empty()) {
    throw Error(ErrorCode::UnsupportedFormat, fmt::format("{}: cannot decode image", path.string()));
  }
  if (mat.channels() < 3) {
    throw Error(ErrorCode::UnsupportedFormat,
                fmt::format("{}: {} channel(s), RGB required", path.string(), mat.channels()));
  }

  double scale = 0.0;
  switch (mat.depth()) {
    case CV_8U: scale = 255.0; break;
    case CV_16U: scale = 65535.0; break;
    default:
      throw Error(ErrorCode::UnsupportedFormat,
                  fmt::format("{}: only 8- and 16-bit samples are supported", path.string()));
  }
  require_min_size(mat.cols, mat.rows);

  // OpenCV stores BGR(A).
  const int channels = mat.channels();
  Plane r(mat.cols, mat.rows), g(mat.cols, mat.rows), b(mat.cols, mat.rows);
  for (int y = 0; y < mat.rows; ++y) {
    for (int x = 0; x < mat.cols; ++x) {
      auto sample = [&](int c) -> double {
        if (mat.depth() == CV_8U) return mat.ptr<std::uint8_t>(y)[x * channels + c];
        return mat.ptr<std::uint16_t>(y)[x * channels + c];
      };
      b(x, y) = sample(0) / scale;
      g(x, y) = sample(1) / scale;
      r(x, y) = sample(2) / scale;
    }
  }
  return ColorImage::from_planes(std::move(r), std::move(g), std::move(b));
}

ColorImage crop_roi(const ColorImage& image, const RoiRect& roi) {
  if (roi.x < 0 || roi.y < 0 || roi.w < 0 || roi.h < 0 ||
      static_cast<long long>(roi.x) + roi.w > image.width() ||
      static_cast<long long>(roi.y) + roi.h > image.height()) {
    throw Error(ErrorCode::RoiOutOfBounds,
                fmt::format("roi ({},{},{},{}) exceeds {}x{} image", roi.x, roi.y, roi.w, roi.h,
                            image.width(), image.height()));
  }
  require_min_size(roi.w, roi.h);

  std::array<Plane, 3> out;
  for (int c = 0; c < 3; ++c) {
    out[c] = Plane(roi.w, roi.h);
    const Plane& src = image.plane(c);
    for (int j = 0; j < roi.h; ++j) {
      for (int i = 0; i < roi.w; ++i) {
        out[c](i, j) = src(roi.x + i, roi.y + j);
      }
    }
  }
  return ColorImage::from_planes(std::move(out[0]), std::move(out[1]), std::move(out[2]));
}

LuminancePlane to_luminance(const ColorImage& image) {
  LuminancePlane lum(image.width(), image.height());
  const auto r = image.plane(ColorImage::kRed).pixels();
  const auto g = image.plane(ColorImage::kGreen).pixels();
  const auto b = image.plane(ColorImage::kBlue).pixels();
  auto out = lum.pixels();
  for (std::size_t i = 0; i < out.size(); ++i) {
    // Integer weights keep white at exactly 1 and pure primaries exact.
    out[i] = std::min(1.0, (299.0 * r[i] + 587.0 * g[i] + 114.0 * b[i]) / 1000.0);
  }
  return lum;
}

}  // namespace ecgi
