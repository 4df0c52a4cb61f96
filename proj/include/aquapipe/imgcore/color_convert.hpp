/**
 * @file color_convert.hpp
 * @brief Color-space conversions between the ImageBuffer tags
 *
 * Conversion graph (all other pairs route through SRGB / LINEAR_RGB):
 *   SRGB <-> LINEAR_RGB   IEC 61966-2-1 transfer curve
 *   SRGB <-> HSV          on gamma-encoded values, H in [0,1)
 *   SRGB <-> GRAY         Rec.601 luma out, channel replication in
 *   LINEAR_RGB <-> CIELAB via XYZ with the D65 white point
 * GRAY can only be expanded to SRGB or LINEAR_RGB.
 */
#pragma once

#include <aquapipe/imgcore/image.hpp>

#include <array>

namespace aquapipe {

using Rgb = std::array<double, 3>;
using Lab = std::array<double, 3>;
using Hsv = std::array<double, 3>;

/// Converts `img` into `target`. Identity when the spaces match.
/// Results are clamped to the target's range (out-of-gamut Lab -> RGB).
ImageBuffer convert(const ImageBuffer& img, ColorSpace target);

/// Rec.601 luma of gamma-encoded RGB.
double luma(double r, double g, double b) noexcept;
/// Luma plane of an SRGB image (or the plane itself for GRAY).
RealPlane luminance_plane(const ImageBuffer& img);

double srgb_to_linear(double v) noexcept;
double linear_to_srgb(double v) noexcept;

Hsv srgb_to_hsv(const Rgb& rgb) noexcept;
Rgb hsv_to_srgb(const Hsv& hsv) noexcept;

Lab linear_to_lab(const Rgb& rgb) noexcept;
Rgb lab_to_linear(const Lab& lab) noexcept;

/// Unclamped sRGB -> CIELAB of one pixel.
Lab srgb_to_lab(const Rgb& rgb) noexcept;
/// CIELAB -> sRGB of one pixel, clamped to [0,1].
Rgb lab_to_srgb(const Lab& lab) noexcept;

}  // namespace aquapipe
