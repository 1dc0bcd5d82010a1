#pragma once

#include <array>

#include "ecgi/imaging.hpp"
#include "ecgi/raster.hpp"

namespace ecgi {

/// Per-channel first derivatives. dx[c] / dy[c] hold the horizontal and
/// vertical derivative of channel c (R, G, B order).
struct ChannelDerivatives {
  std::array<Plane, 3> dx;
  std::array<Plane, 3> dy;
};

/// Entries of the 2x2 color structure tensor at every pixel.
struct StructureTensorField {
  Plane gxx;
  Plane gyy;
  Plane gxy;
};

/// Color-gradient magnitude per pixel (non-negative).
using GradientField = Raster<double>;

/// 3x3 Sobel derivatives scaled by 1/8 with replicate padding, so every
/// value stays in [-1, 1] for channels in [0, 1].
ChannelDerivatives channel_derivatives(const ColorImage& image);

/// gxx = sum_c dx_c^2, gyy = sum_c dy_c^2, gxy = sum_c dx_c dy_c.
StructureTensorField structure_tensor(const ChannelDerivatives& d);

/// Direction of maximal change, 0.5 * atan2(2 gxy, gxx - gyy).
double gradient_direction(double gxx, double gyy, double gxy) noexcept;

/// Squared directional response 0.5 [(gxx+gyy) + (gxx-gyy) cos 2t + 2 gxy sin 2t].
double directional_response(double gxx, double gyy, double gxy, double theta) noexcept;

/// Gradient magnitude for one tensor. Evaluates the directional response at
/// the closed-form angle and at the orthogonal angle and keeps the larger
/// one, since the closed form may land on the minimizing direction.
double gradient_magnitude(double gxx, double gyy, double gxy) noexcept;

GradientField gradient_magnitude(const StructureTensorField& tensor);

/// Full derivative -> tensor -> magnitude chain.
GradientField color_gradient(const ColorImage& image);

}  // namespace ecgi
