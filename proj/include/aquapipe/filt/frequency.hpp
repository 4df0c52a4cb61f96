/**
 * @file frequency.hpp
 * @brief 2-D DFT and Gaussian frequency-domain filters
 */
#pragma once

#include <aquapipe/imgcore/image.hpp>

#include <complex>
#include <vector>

namespace aquapipe::filt {

/// Row-major DFT coefficients: coeffs[v * width + u], u along x.
struct FrequencySpectrum {
    int width = 0;
    int height = 0;
    std::vector<std::complex<double>> coeffs;

    const std::complex<double>& at(int v, int u) const { return coeffs[static_cast<std::size_t>(v) * width + u]; }
    std::complex<double>& at(int v, int u) { return coeffs[static_cast<std::size_t>(v) * width + u]; }
};

/// Unnormalized forward transform, F(u,v) = sum I(x,y) exp(-j 2 pi (ux/W + vy/H)).
FrequencySpectrum dft_forward(const RealPlane& plane);
/// Forward transform of a single-channel image.
FrequencySpectrum dft_forward(const ImageBuffer& img);

/// Real part of the 1/(W*H)-normalized inverse transform.
RealPlane dft_inverse_real(const FrequencySpectrum& spec);
/// Inverse transform as a GRAY image, clamped to [0,1].
ImageBuffer dft_inverse(const FrequencySpectrum& spec);

/**
 * Gaussian high-pass transfer value H = 1 - exp(-D^2 / (2 D0^2)) at bin
 * (u, v), where D is the distance to DC on the centered spectrum and
 * D0 = cutoff * min(W, H) / 2.
 */
double highpass_response(int u, int v, int width, int height, double cutoff) noexcept;

/// Gaussian high-pass of a plane; the DC term is removed (zero-mean result).
RealPlane highpass_plane(const RealPlane& plane, double cutoff);
/// Complementary Gaussian low-pass, transfer 1 - H.
RealPlane lowpass_plane(const RealPlane& plane, double cutoff);

/**
 * Gaussian high-pass per channel with the input mean added back, then
 * clamped. cutoff is a fraction of the Nyquist radius, in (0,1).
 */
ImageBuffer highpass_filter(const ImageBuffer& img, double cutoff);
/// Gaussian low-pass per channel (the high-pass complement), clamped.
ImageBuffer lowpass_filter(const ImageBuffer& img, double cutoff);

}  // namespace aquapipe::filt
