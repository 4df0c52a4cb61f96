/**
 * @file illum.cpp
 * @brief Histogram, gamma, Retinex and hybrid illumination operators
 */

#include <aquapipe/illum.hpp>

#include <aquapipe/filt/spatial.hpp>
#include <aquapipe/imgcore/color_convert.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace aquapipe::illum {

namespace {

void require_scale_weights(const std::vector<double>& sigmas, const std::vector<double>& weights,
                           const char* who) {
    if (sigmas.empty()) throw PreconditionError(std::string(who) + ": at least one scale is required");
    if (sigmas.size() != weights.size()) {
        throw PreconditionError(std::string(who) + ": scales and weights differ in length");
    }
    for (double s : sigmas) {
        if (!(s > 0.0)) throw PreconditionError(std::string(who) + ": scales must be positive");
    }
    const double sum = std::accumulate(weights.begin(), weights.end(), 0.0);
    if (std::abs(sum - 1.0) > 1e-9) throw PreconditionError(std::string(who) + ": weights must sum to 1");
}

RealPlane apply_map(std::span<const double> samples, int w, int h, const LevelMap& map) {
    RealPlane out(w, h);
    for (std::size_t i = 0; i < out.size(); ++i) out.data[i] = map[quantize_level(samples[i])];
    return out;
}

// Tile t of `count` covers [t*n/count, (t+1)*n/count).
int tile_start(int t, int n, int count) { return static_cast<int>(static_cast<long>(t) * n / count); }

struct Neighbours {
    int lo, hi;
    double w;  // weight of hi
};

// Locates the two tile centers that bracket `pos` (clamped at the edges).
Neighbours bracket(int pos, const std::vector<double>& centers) {
    const int count = static_cast<int>(centers.size());
    if (pos <= centers.front()) return {0, 0, 0.0};
    if (pos >= centers.back()) return {count - 1, count - 1, 0.0};
    int lo = 0;
    while (lo + 1 < count && centers[lo + 1] <= pos) ++lo;
    const double w = (pos - centers[lo]) / (centers[lo + 1] - centers[lo]);
    return {lo, lo + 1, w};
}

RealPlane clahe_plane(const RealPlane& plane, const ClaheParams& p) {
    const int w = plane.width, h = plane.height;
    const int rows = p.tile_rows, cols = p.tile_cols;

    std::vector<LevelMap> maps(static_cast<std::size_t>(rows) * cols);
    std::vector<double> cy(rows), cx(cols);
    for (int r = 0; r < rows; ++r) cy[r] = (tile_start(r, h, rows) + tile_start(r + 1, h, rows) - 1) / 2.0;
    for (int c = 0; c < cols; ++c) cx[c] = (tile_start(c, w, cols) + tile_start(c + 1, w, cols) - 1) / 2.0;

    for (int r = 0; r < rows; ++r) {
        const int y0 = tile_start(r, h, rows), y1 = tile_start(r + 1, h, rows);
        for (int c = 0; c < cols; ++c) {
            const int x0 = tile_start(c, w, cols), x1 = tile_start(c + 1, w, cols);
            Histogram::Bins bins{};
            for (int y = y0; y < y1; ++y)
                for (int x = x0; x < x1; ++x) ++bins[quantize_level(plane.at(y, x))];
            const auto n = static_cast<std::uint64_t>(y1 - y0) * static_cast<std::uint64_t>(x1 - x0);
            const double clip = p.clip_threshold * static_cast<double>(n) / kLevels;
            maps[static_cast<std::size_t>(r) * cols + c] = clipped_equalization_map(bins, n, clip);
        }
    }

    RealPlane out(w, h);
    for (int y = 0; y < h; ++y) {
        const Neighbours ny = bracket(y, cy);
        for (int x = 0; x < w; ++x) {
            const Neighbours nx = bracket(x, cx);
            const int k = quantize_level(plane.at(y, x));
            const auto& m00 = maps[static_cast<std::size_t>(ny.lo) * cols + nx.lo];
            const auto& m01 = maps[static_cast<std::size_t>(ny.lo) * cols + nx.hi];
            const auto& m10 = maps[static_cast<std::size_t>(ny.hi) * cols + nx.lo];
            const auto& m11 = maps[static_cast<std::size_t>(ny.hi) * cols + nx.hi];
            const double top = m00[k] * (1.0 - nx.w) + m01[k] * nx.w;
            const double bottom = m10[k] * (1.0 - nx.w) + m11[k] * nx.w;
            out.at(y, x) = top * (1.0 - ny.w) + bottom * ny.w;
        }
    }
    return out;
}

double mean_luminance(const ImageBuffer& img) {
    return mean_of(luminance_plane(img).data);
}

}  // namespace

void ClaheParams::validate() const {
    if (!(clip_threshold > 0.0)) throw PreconditionError("clahe: clip threshold must be positive");
    if (tile_rows < 1 || tile_cols < 1) throw PreconditionError("clahe: tile grid must be at least 1x1");
}

void MsrParams::validate() const {
    require_scale_weights(sigmas, weights, "msr");
    if (!(log_floor > 0.0)) throw PreconditionError("msr: log floor must be positive");
}

void HybridIllumParams::validate() const {
    require_scale_weights(local_sigmas, local_weights, "hybrid_illumination");
    if (alpha_mode == AlphaMode::FIXED && !(alpha >= 0.0 && alpha <= 1.0)) {
        throw PreconditionError("hybrid_illumination: fixed alpha must lie in [0,1]");
    }
    if (!(alpha_min >= 0.0 && alpha_min <= alpha_max && alpha_max <= 1.0)) {
        throw PreconditionError("hybrid_illumination: need 0 <= alpha_min <= alpha_max <= 1");
    }
    if (gamma_override && !(*gamma_override > 0.0)) {
        throw PreconditionError("hybrid_illumination: gamma override must be positive");
    }
}

LevelMap equalization_map(const Histogram::Bins& bins, std::uint64_t total) {
    LevelMap map{};
    std::uint64_t cum = 0;
    for (int k = 0; k < kLevels; ++k) {
        cum += bins[k];
        map[k] = static_cast<double>(cum) / static_cast<double>(total);
    }
    return map;
}

LevelMap clipped_equalization_map(const Histogram::Bins& bins, std::uint64_t total, double clip_count) {
    std::array<double, kLevels> clipped{};
    double excess = 0.0;
    for (int k = 0; k < kLevels; ++k) {
        const auto v = static_cast<double>(bins[k]);
        clipped[k] = std::min(v, clip_count);
        excess += v - clipped[k];
    }
    if (excess > 0.0) {
        const double share = excess / kLevels;
        for (double& v : clipped) v += share;
    }
    LevelMap map{};
    double cum = 0.0;
    for (int k = 0; k < kLevels; ++k) {
        cum += clipped[k];
        map[k] = std::min(1.0, cum / static_cast<double>(total));
    }
    return map;
}

ImageBuffer hist_equalize(const ImageBuffer& img) {
    img.require_valid("hist_equalize");
    ImageBuffer out(img.width(), img.height(), img.space());
    for (int c = 0; c < img.channels(); ++c) {
        const LevelMap map = equalization_map(histogram_of(img.plane(c)), img.pixel_count());
        out.set_plane(c, apply_map(img.plane(c), img.width(), img.height(), map));
    }
    return out;
}

ImageBuffer clahe(const ImageBuffer& img, const ClaheParams& p) {
    p.validate();
    if (p.tile_rows > img.height() || p.tile_cols > img.width()) {
        throw PreconditionError("clahe: tile grid " + std::to_string(p.tile_rows) + "x" +
                                std::to_string(p.tile_cols) + " is finer than the image");
    }
    if (img.channels() == 1) {
        ImageBuffer out(img.width(), img.height(), img.space());
        out.set_plane(0, clahe_plane(img.plane_copy(0), p));
        out.clamp_to_range();
        return out;
    }
    ImageBuffer hsv = convert(img, ColorSpace::HSV);
    hsv.set_plane(2, clahe_plane(hsv.plane_copy(2), p));
    hsv.clamp_to_range();
    return convert(hsv, img.space());
}

double gamma_for_mean(double mean, bool invert) {
    if (!(mean > 0.0 && mean < 1.0)) {
        throw DegenerateInputError("adaptive_gamma: mean luminance must lie strictly inside (0,1), got " +
                                   std::to_string(mean));
    }
    return invert ? std::log(0.5) / std::log(mean) : std::log(mean) / std::log(0.5);
}

GammaResult adaptive_gamma(const ImageBuffer& img, bool invert) {
    img.require_valid("adaptive_gamma");
    GammaResult r;
    r.gamma = gamma_for_mean(mean_luminance(img), invert);
    r.image = img;
    for (double& v : r.image.samples()) v = std::pow(v, r.gamma);
    return r;
}

std::vector<RealPlane> msr_reflectance(const ImageBuffer& img, const MsrParams& p) {
    p.validate();
    std::vector<RealPlane> out;
    for (int c = 0; c < img.channels(); ++c) {
        const RealPlane src = img.plane_copy(c);
        RealPlane r(src.width, src.height);
        for (std::size_t s = 0; s < p.sigmas.size(); ++s) {
            const RealPlane blurred = filt::gaussian_blur(src, p.sigmas[s]);
            for (std::size_t i = 0; i < r.size(); ++i) {
                r.data[i] += p.weights[s] * (std::log(src.data[i] + p.log_floor) -
                                             std::log(blurred.data[i] + p.log_floor));
            }
        }
        out.push_back(std::move(r));
    }
    return out;
}

ImageBuffer msr(const ImageBuffer& img, const MsrParams& p) {
    img.require_valid("msr");
    const auto refl = msr_reflectance(img, p);
    ImageBuffer out(img.width(), img.height(), img.space());
    for (int c = 0; c < img.channels(); ++c) {
        const auto [lo, hi] = std::minmax_element(refl[c].data.begin(), refl[c].data.end());
        const double range = *hi - *lo;
        auto dst = out.plane(c);
        for (std::size_t i = 0; i < dst.size(); ++i) {
            dst[i] = range > 1e-12 ? (refl[c].data[i] - *lo) / range : 0.0;
        }
    }
    out.clamp_to_range();
    return out;
}

double auto_alpha(double luminance_std, const HybridIllumParams& p) noexcept {
    return std::clamp(1.0 - p.alpha_slope * luminance_std, p.alpha_min, p.alpha_max);
}

HybridLuminance hybrid_luminance(const ImageBuffer& img, const HybridIllumParams& p) {
    p.validate();
    HybridLuminance L;
    L.input = luminance_plane(img);
    const double mean = mean_of(L.input.data);
    L.gamma = p.gamma_override ? *p.gamma_override : gamma_for_mean(mean, p.invert_gamma);

    if (p.alpha_mode == AlphaMode::FIXED) {
        L.alpha = p.alpha;
    } else {
        double ss = 0.0;
        for (double v : L.input.data) ss += (v - mean) * (v - mean);
        L.alpha = auto_alpha(std::sqrt(ss / static_cast<double>(L.input.size())), p);
    }

    L.global = L.input;
    for (double& v : L.global.data) v = std::pow(v, L.gamma);

    L.local = RealPlane(L.input.width, L.input.height);
    for (std::size_t s = 0; s < p.local_sigmas.size(); ++s) {
        const RealPlane blurred = filt::gaussian_blur(L.input, p.local_sigmas[s]);
        for (std::size_t i = 0; i < blurred.size(); ++i) L.local.data[i] += p.local_weights[s] * blurred.data[i];
    }

    L.blended = RealPlane(L.input.width, L.input.height);
    for (std::size_t i = 0; i < L.blended.size(); ++i) {
        L.blended.data[i] = L.alpha * L.global.data[i] + (1.0 - L.alpha) * L.local.data[i];
    }
    return L;
}

HybridResult hybrid_illumination(const ImageBuffer& img, const HybridIllumParams& p) {
    require_rgb(img, "hybrid_illumination");
    if (img.space() != ColorSpace::SRGB) throw PreconditionError("hybrid_illumination: expected SRGB input");
    img.require_valid("hybrid_illumination");

    const HybridLuminance L = hybrid_luminance(img, p);
    ImageBuffer out(img.width(), img.height(), ColorSpace::SRGB);
    for (int c = 0; c < 3; ++c) {
        auto src = img.plane(c);
        auto dst = out.plane(c);
        for (std::size_t i = 0; i < dst.size(); ++i) {
            const double y = L.input.data[i];
            dst[i] = y > 1e-6 ? src[i] * (L.blended.data[i] / y) : L.blended.data[i];
        }
    }
    out.clamp_to_range();
    return {std::move(out), L.alpha, L.gamma};
}

}  // namespace aquapipe::illum
