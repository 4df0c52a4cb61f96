/**
 * @file spatial.cpp
 * @brief Spatial-domain filters
 */

#include <aquapipe/filt/spatial.hpp>
#include <aquapipe/imgcore/border.hpp>

#include <cmath>
#include <numbers>
#include <string>

namespace aquapipe::filt {

namespace {

// Copy of `p` extended by `r` reflected samples on every side.
RealPlane pad_reflect(const RealPlane& p, int r) {
    RealPlane out(p.width + 2 * r, p.height + 2 * r);
    for (int y = 0; y < out.height; ++y) {
        const int sy = reflect_index(y - r, p.height);
        for (int x = 0; x < out.width; ++x) out.at(y, x) = p.at(sy, reflect_index(x - r, p.width));
    }
    return out;
}

void require_positive(double v, const char* who, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw PreconditionError(std::string(who) + ": " + what + " must be positive and finite");
    }
}

}  // namespace

double gaussian_density(double x, double y, double sigma) noexcept {
    const double s2 = sigma * sigma;
    return std::exp(-(x * x + y * y) / (2.0 * s2)) / (2.0 * std::numbers::pi * s2);
}

std::vector<double> gaussian_kernel(double sigma) {
    require_positive(sigma, "gaussian_kernel", "sigma");
    const int r = static_cast<int>(std::ceil(3.0 * sigma));
    std::vector<double> k(2 * r + 1);
    double sum = 0.0;
    for (int i = -r; i <= r; ++i) {
        k[i + r] = std::exp(-(i * i) / (2.0 * sigma * sigma));
        sum += k[i + r];
    }
    for (double& v : k) v /= sum;
    return k;
}

RealPlane gaussian_blur(const RealPlane& plane, double sigma) {
    const auto k = gaussian_kernel(sigma);
    const int r = static_cast<int>(k.size() / 2);
    const int w = plane.width, h = plane.height;

    // Horizontal pass into a buffer that keeps r reflected rows above/below.
    RealPlane horiz(w, h + 2 * r);
    std::vector<int> xs(w + 2 * r);
    for (int i = 0; i < w + 2 * r; ++i) xs[i] = reflect_index(i - r, w);
    for (int y = 0; y < h + 2 * r; ++y) {
        const double* row = &plane.data[static_cast<std::size_t>(reflect_index(y - r, h)) * w];
        double* dst = &horiz.data[static_cast<std::size_t>(y) * w];
        for (int x = 0; x < w; ++x) {
            double acc = 0.0;
            const int* xi = &xs[x];
            for (int t = 0; t <= 2 * r; ++t) acc += k[t] * row[xi[t]];
            dst[x] = acc;
        }
    }

    RealPlane out(w, h);
    for (int y = 0; y < h; ++y) {
        double* dst = &out.data[static_cast<std::size_t>(y) * w];
        for (int t = 0; t <= 2 * r; ++t) {
            const double kt = k[t];
            const double* src = &horiz.data[static_cast<std::size_t>(y + t) * w];
            for (int x = 0; x < w; ++x) dst[x] += kt * src[x];
        }
    }
    return out;
}

ImageBuffer gaussian_filter(const ImageBuffer& img, double sigma) {
    require_positive(sigma, "gaussian_filter", "sigma");
    return map_planes(img, [&](const RealPlane& p) { return gaussian_blur(p, sigma); });
}

RealPlane box_mean(const RealPlane& plane, int radius) {
    if (radius < 0) throw PreconditionError("box_mean: radius must be >= 0");
    const RealPlane pad = pad_reflect(plane, radius);
    const int w = plane.width, h = plane.height, n = 2 * radius + 1;

    // Column sums over n padded rows, then row sums over n columns.
    RealPlane cols(pad.width, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < pad.width; ++x) {
            double acc = 0.0;
            for (int t = 0; t < n; ++t) acc += pad.at(y + t, x);
            cols.at(y, x) = acc;
        }
    }
    RealPlane out(w, h);
    const double inv = 1.0 / (static_cast<double>(n) * n);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double acc = 0.0;
            for (int t = 0; t < n; ++t) acc += cols.at(y, x + t);
            out.at(y, x) = acc * inv;
        }
    }
    return out;
}

RealPlane bilateral_plane(const RealPlane& plane, double sigma_s, double sigma_r,
                          const std::vector<unsigned char>* mask) {
    require_positive(sigma_s, "bilateral_filter", "sigma_s");
    require_positive(sigma_r, "bilateral_filter", "sigma_r");
    const int r = static_cast<int>(std::ceil(3.0 * sigma_s));
    const int n = 2 * r + 1;
    const RealPlane pad = pad_reflect(plane, r);

    std::vector<double> spatial(static_cast<std::size_t>(n) * n);
    for (int dy = -r; dy <= r; ++dy)
        for (int dx = -r; dx <= r; ++dx)
            spatial[(dy + r) * n + (dx + r)] = std::exp(-(dx * dx + dy * dy) / (2.0 * sigma_s * sigma_s));
    const double range_k = -1.0 / (2.0 * sigma_r * sigma_r);

    RealPlane out = plane;
    for (int y = 0; y < plane.height; ++y) {
        for (int x = 0; x < plane.width; ++x) {
            const std::size_t idx = static_cast<std::size_t>(y) * plane.width + x;
            if (mask && !(*mask)[idx]) continue;
            const double center = plane.data[idx];
            double num = 0.0, den = 0.0;
            for (int dy = 0; dy < n; ++dy) {
                const double* row = &pad.data[static_cast<std::size_t>(y + dy) * pad.width + x];
                const double* sw = &spatial[static_cast<std::size_t>(dy) * n];
                for (int dx = 0; dx < n; ++dx) {
                    const double d = row[dx] - center;
                    const double wgt = sw[dx] * std::exp(range_k * d * d);
                    num += wgt * row[dx];
                    den += wgt;
                }
            }
            out.data[idx] = num / den;
        }
    }
    return out;
}

ImageBuffer bilateral_filter(const ImageBuffer& img, double sigma_s, double sigma_r) {
    require_positive(sigma_s, "bilateral_filter", "sigma_s");
    require_positive(sigma_r, "bilateral_filter", "sigma_r");
    return map_planes(img, [&](const RealPlane& p) { return bilateral_plane(p, sigma_s, sigma_r); });
}

RealPlane guided_plane(const RealPlane& src, const RealPlane& guide, int radius, double eps) {
    if (!src.same_shape(guide)) throw PreconditionError("guided_filter: guide and image dimensions differ");
    if (radius < 1) throw PreconditionError("guided_filter: radius must be >= 1");
    require_positive(eps, "guided_filter", "eps");

    const std::size_t n = src.size();
    RealPlane gg(src.width, src.height), gs(src.width, src.height);
    for (std::size_t i = 0; i < n; ++i) {
        gg.data[i] = guide.data[i] * guide.data[i];
        gs.data[i] = guide.data[i] * src.data[i];
    }
    const RealPlane mean_g = box_mean(guide, radius);
    const RealPlane mean_s = box_mean(src, radius);
    const RealPlane corr_gg = box_mean(gg, radius);
    const RealPlane corr_gs = box_mean(gs, radius);

    RealPlane a(src.width, src.height), b(src.width, src.height);
    for (std::size_t i = 0; i < n; ++i) {
        const double var_g = corr_gg.data[i] - mean_g.data[i] * mean_g.data[i];
        const double cov_gs = corr_gs.data[i] - mean_g.data[i] * mean_s.data[i];
        a.data[i] = cov_gs / (var_g + eps);
        b.data[i] = mean_s.data[i] - a.data[i] * mean_g.data[i];
    }
    const RealPlane mean_a = box_mean(a, radius);
    const RealPlane mean_b = box_mean(b, radius);
    RealPlane out(src.width, src.height);
    for (std::size_t i = 0; i < n; ++i) out.data[i] = mean_a.data[i] * guide.data[i] + mean_b.data[i];
    return out;
}

ImageBuffer guided_filter(const ImageBuffer& img, const ImageBuffer& guide, int radius, double eps) {
    if (img.width() != guide.width() || img.height() != guide.height()) {
        throw PreconditionError("guided_filter: guide and image dimensions differ");
    }
    if (guide.channels() != 1 && guide.channels() != img.channels()) {
        throw PreconditionError("guided_filter: guide must have 1 channel or match the image");
    }
    ImageBuffer out(img.width(), img.height(), img.space());
    for (int c = 0; c < img.channels(); ++c) {
        const int gc = guide.channels() == 1 ? 0 : c;
        out.set_plane(c, guided_plane(img.plane_copy(c), guide.plane_copy(gc), radius, eps));
    }
    out.clamp_to_range();
    return out;
}

}  // namespace aquapipe::filt
