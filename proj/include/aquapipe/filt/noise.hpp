/**
 * @file noise.hpp
 * @brief Local noise-energy estimation
 */
#pragma once

#include <aquapipe/imgcore/image.hpp>

#include <span>

namespace aquapipe::filt {

/// Per-pixel local population variance and the window radius that produced it.
struct NoiseMap {
    RealPlane energy;
    int radius = 0;
};

/**
 * Local variance over the (2r+1)^2 reflected window at every pixel. For
 * multi-channel images the per-channel variances are averaged.
 * Constant images give exactly zero.
 */
NoiseMap estimate_noise(const ImageBuffer& img, int radius);

/// Robust noise deviation median(|d|) / 0.6745 of a detail band.
double mad_sigma(std::span<const double> detail);

}  // namespace aquapipe::filt
