// Brute-force reference implementations used to check the fast paths.
// Everything here is written from the defining formulas, window by window,
// and shares no code with the library beyond the raster types.
#pragma once

#include <aquapipe/imgcore/image.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

namespace aquapipe::oracle {

inline int mirror(int i, int n) {
    // Half-sample symmetric reflection by repeated folding.
    if (n == 1) return 0;
    while (i < 0 || i >= n) i = i < 0 ? -i - 1 : 2 * n - 1 - i;
    return i;
}

inline double sample(const RealPlane& p, int y, int x) { return p.at(mirror(y, p.height), mirror(x, p.width)); }

/// Dense 2-D convolution with the discretized, truncated, renormalized Gaussian.
inline RealPlane dense_gaussian(const RealPlane& p, double sigma) {
    const int r = static_cast<int>(std::ceil(3 * sigma));
    double norm = 0;
    for (int dy = -r; dy <= r; ++dy)
        for (int dx = -r; dx <= r; ++dx) norm += std::exp(-(dx * dx + dy * dy) / (2 * sigma * sigma));
    RealPlane out(p.width, p.height);
    for (int y = 0; y < p.height; ++y)
        for (int x = 0; x < p.width; ++x) {
            double acc = 0;
            for (int dy = -r; dy <= r; ++dy)
                for (int dx = -r; dx <= r; ++dx)
                    acc += std::exp(-(dx * dx + dy * dy) / (2 * sigma * sigma)) * sample(p, y + dy, x + dx);
            out.at(y, x) = acc / norm;
        }
    return out;
}

inline RealPlane dense_bilateral(const RealPlane& p, double ss, double sr) {
    const int r = static_cast<int>(std::ceil(3 * ss));
    RealPlane out(p.width, p.height);
    for (int y = 0; y < p.height; ++y)
        for (int x = 0; x < p.width; ++x) {
            const double c = p.at(y, x);
            double num = 0, den = 0;
            for (int dy = -r; dy <= r; ++dy)
                for (int dx = -r; dx <= r; ++dx) {
                    const double v = sample(p, y + dy, x + dx);
                    const double w = std::exp(-(dx * dx + dy * dy) / (2 * ss * ss)) *
                                     std::exp(-(v - c) * (v - c) / (2 * sr * sr));
                    num += w * v;
                    den += w;
                }
            out.at(y, x) = num / den;
        }
    return out;
}

inline double window_mean(const RealPlane& p, int y, int x, int r) {
    double s = 0;
    for (int dy = -r; dy <= r; ++dy)
        for (int dx = -r; dx <= r; ++dx) s += sample(p, y + dy, x + dx);
    return s / ((2 * r + 1) * (2 * r + 1));
}

/// Local population variance, two-pass per window.
inline RealPlane sliding_variance(const RealPlane& p, int r) {
    RealPlane out(p.width, p.height);
    for (int y = 0; y < p.height; ++y)
        for (int x = 0; x < p.width; ++x) {
            const double mu = window_mean(p, y, x, r);
            double s = 0;
            for (int dy = -r; dy <= r; ++dy)
                for (int dx = -r; dx <= r; ++dx) {
                    const double d = sample(p, y + dy, x + dx) - mu;
                    s += d * d;
                }
            out.at(y, x) = s / ((2 * r + 1) * (2 * r + 1));
        }
    return out;
}

/// Guided filter evaluated window by window (two-pass covariance per window).
inline RealPlane sliding_guided(const RealPlane& src, const RealPlane& guide, int r, double eps) {
    const int w = src.width, h = src.height;
    RealPlane a(w, h), b(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            const double mg = window_mean(guide, y, x, r), ms = window_mean(src, y, x, r);
            double cov = 0, var = 0;
            for (int dy = -r; dy <= r; ++dy)
                for (int dx = -r; dx <= r; ++dx) {
                    const double g = sample(guide, y + dy, x + dx) - mg;
                    cov += g * (sample(src, y + dy, x + dx) - ms);
                    var += g * g;
                }
            const double n = (2 * r + 1) * (2 * r + 1);
            a.at(y, x) = (cov / n) / (var / n + eps);
            b.at(y, x) = ms - a.at(y, x) * mg;
        }
    RealPlane out(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) out.at(y, x) = window_mean(a, y, x, r) * guide.at(y, x) + window_mean(b, y, x, r);
    return out;
}

/// O(N^2) DFT straight from the definition.
inline std::vector<std::complex<double>> naive_dft(const RealPlane& p) {
    const int W = p.width, H = p.height;
    std::vector<std::complex<double>> out(static_cast<std::size_t>(W) * H);
    for (int v = 0; v < H; ++v)
        for (int u = 0; u < W; ++u) {
            std::complex<double> acc = 0;
            for (int y = 0; y < H; ++y)
                for (int x = 0; x < W; ++x) {
                    const double ang = -2 * std::numbers::pi * (static_cast<double>(u) * x / W + static_cast<double>(v) * y / H);
                    acc += p.at(y, x) * std::complex<double>(std::cos(ang), std::sin(ang));
                }
            out[static_cast<std::size_t>(v) * W + u] = acc;
        }
    return out;
}

/// min over channels, then min over the reflected (2r+1)^2 patch.
inline RealPlane brute_dark_channel(const ImageBuffer& img, int r) {
    RealPlane out(img.width(), img.height());
    for (int y = 0; y < img.height(); ++y)
        for (int x = 0; x < img.width(); ++x) {
            double m = 1e300;
            for (int dy = -r; dy <= r; ++dy)
                for (int dx = -r; dx <= r; ++dx)
                    for (int c = 0; c < img.channels(); ++c)
                        m = std::min(m, img.at(c, mirror(y + dy, img.height()), mirror(x + dx, img.width())));
            out.at(y, x) = m;
        }
    return out;
}

/// Histogram-equalization level map from explicit counting: level k maps to
/// (number of samples with level <= k) / N.
inline std::vector<double> cdf_map(const std::vector<int>& levels) {
    std::vector<double> map(256);
    for (int k = 0; k < 256; ++k) {
        long count = 0;
        for (int l : levels) count += l <= k;
        map[k] = static_cast<double>(count) / static_cast<double>(levels.size());
    }
    return map;
}

}  // namespace aquapipe::oracle
