/**
 * @file spatial.hpp
 * @brief Spatial-domain smoothing: Gaussian, bilateral, guided, box
 *
 * All windowed filters use half-sample symmetric reflection at the borders
 * (see reflect_index). Image-level functions filter each channel
 * independently and clamp the result to the buffer's range.
 */
#pragma once

#include <aquapipe/imgcore/image.hpp>

#include <vector>

namespace aquapipe::filt {

/// Normalized 1-D Gaussian taps for offsets [-r, r], r = ceil(3*sigma).
std::vector<double> gaussian_kernel(double sigma);

/// Continuous 2-D Gaussian density 1/(2 pi s^2) exp(-(x^2+y^2)/(2 s^2)).
double gaussian_density(double x, double y, double sigma) noexcept;

RealPlane gaussian_blur(const RealPlane& plane, double sigma);
ImageBuffer gaussian_filter(const ImageBuffer& img, double sigma);

/// Mean over the (2r+1)^2 reflected window around every pixel.
RealPlane box_mean(const RealPlane& plane, int radius);

/**
 * Bilateral filter of one plane. Window radius ceil(3*sigma_s), Gaussian
 * spatial and range weights. When `mask` is non-null only pixels with a
 * non-zero mask entry are filtered; the rest copy the input.
 */
RealPlane bilateral_plane(const RealPlane& plane, double sigma_s, double sigma_r,
                          const std::vector<unsigned char>* mask = nullptr);
ImageBuffer bilateral_filter(const ImageBuffer& img, double sigma_s, double sigma_r);

/// Guided filter of one plane by one guide plane (local linear model).
RealPlane guided_plane(const RealPlane& src, const RealPlane& guide, int radius, double eps);

/**
 * Guided filter. `guide` must match `img` in size and have either one
 * channel (shared by every image channel) or the same channel count
 * (channel-wise guidance).
 */
ImageBuffer guided_filter(const ImageBuffer& img, const ImageBuffer& guide, int radius, double eps);

}  // namespace aquapipe::filt
