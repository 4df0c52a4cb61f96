/**
 * @file metrics.cpp
 * @brief Image quality metrics
 */

#include <aquapipe/metrics.hpp>

#include <aquapipe/imgcore/border.hpp>
#include <aquapipe/imgcore/color_convert.hpp>
#include <aquapipe/imgcore/stats.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

namespace aquapipe::metrics {

namespace {

constexpr double kScale = 255.0;

void require_blocks(const ImageBuffer& img, const char* who) {
    if (img.width() < kBlock || img.height() < kBlock) {
        throw PreconditionError(std::string(who) + ": image must be at least 8x8");
    }
}

// Alpha-trimmed mean: drop ceil(aL*K) smallest and floor(aR*K) largest.
double trimmed_mean(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const auto k = v.size();
    const auto lo = static_cast<std::size_t>(std::ceil(kTrimLow * static_cast<double>(k)));
    const auto hi = static_cast<std::size_t>(std::floor(kTrimHigh * static_cast<double>(k)));
    double s = 0.0;
    for (std::size_t i = lo; i < k - hi; ++i) s += v[i];
    return s / static_cast<double>(k - hi - lo);
}

double spread_about(const std::vector<double>& v, double mu) {
    double s = 0.0;
    for (double x : v) s += (x - mu) * (x - mu);
    return s / static_cast<double>(v.size());
}

// Sobel gradient magnitude with reflect borders.
RealPlane sobel_magnitude(const RealPlane& p) {
    const int w = p.width, h = p.height;
    auto at = [&](int y, int x) { return p.at(reflect_index(y, h), reflect_index(x, w)); };
    RealPlane out(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            const double gx = (at(y - 1, x + 1) + 2.0 * at(y, x + 1) + at(y + 1, x + 1)) -
                              (at(y - 1, x - 1) + 2.0 * at(y, x - 1) + at(y + 1, x - 1));
            const double gy = (at(y + 1, x - 1) + 2.0 * at(y + 1, x) + at(y + 1, x + 1)) -
                              (at(y - 1, x - 1) + 2.0 * at(y - 1, x) + at(y - 1, x + 1));
            out.at(y, x) = std::hypot(gx, gy);
        }
    return out;
}

// Measure of enhancement: (2 / blocks) sum log(max / min), skipping blocks with a zero extreme.
double eme(const RealPlane& p) {
    const int bx = p.width / kBlock, by = p.height / kBlock;
    double val = 0.0;
    for (int j = 0; j < by; ++j)
        for (int i = 0; i < bx; ++i) {
            double mx = -INFINITY, mn = INFINITY;
            for (int y = j * kBlock; y < (j + 1) * kBlock; ++y)
                for (int x = i * kBlock; x < (i + 1) * kBlock; ++x) {
                    mx = std::max(mx, p.at(y, x));
                    mn = std::min(mn, p.at(y, x));
                }
            if (mn > 0.0 && mx > 0.0) val += std::log(mx / mn);
        }
    return 2.0 / (bx * by) * val;
}

double percentile(const std::vector<double>& sorted, double pct) {
    const double pos = pct / 100.0 * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

RealPlane single_plane(const ImageBuffer& img, const char* who) {
    if (img.channels() != 1) throw PreconditionError(std::string(who) + ": expected a single-channel image");
    return img.plane_copy(0);
}

}  // namespace

double uicm(const ImageBuffer& img) {
    require_rgb(img, "uicm");
    const auto n = img.pixel_count();
    std::vector<double> rg(n), yb(n);
    auto r = img.plane(0), g = img.plane(1), b = img.plane(2);
    for (std::size_t i = 0; i < n; ++i) {
        rg[i] = kScale * (r[i] - g[i]);
        yb[i] = kScale * ((r[i] + g[i]) / 2.0 - b[i]);
    }
    const double mu_rg = trimmed_mean(rg), mu_yb = trimmed_mean(yb);
    const double s2 = spread_about(rg, mu_rg) + spread_about(yb, mu_yb);
    return -0.0268 * std::sqrt(mu_rg * mu_rg + mu_yb * mu_yb) + 0.1586 * std::sqrt(s2);
}

double uism(const ImageBuffer& img) {
    require_rgb(img, "uism");
    require_blocks(img, "uism");
    constexpr double lambda[3] = {0.299, 0.587, 0.114};
    double total = 0.0;
    for (int c = 0; c < 3; ++c) {
        RealPlane ch = img.plane_copy(c);
        for (double& v : ch.data) v *= kScale;
        RealPlane edge = sobel_magnitude(ch);
        const double mx = *std::max_element(edge.data.begin(), edge.data.end());
        if (!(mx > 0.0)) continue;  // flat channel: no edges, EME 0
        for (std::size_t i = 0; i < edge.size(); ++i) edge.data[i] = edge.data[i] * (kScale / mx) * ch.data[i];
        total += lambda[c] * eme(edge);
    }
    return total;
}

double uiconm(const ImageBuffer& img) {
    require_rgb(img, "uiconm");
    require_blocks(img, "uiconm");
    const int bx = img.width() / kBlock, by = img.height() / kBlock;
    double val = 0.0;
    for (int j = 0; j < by; ++j)
        for (int i = 0; i < bx; ++i) {
            double mx = -INFINITY, mn = INFINITY;
            for (int c = 0; c < 3; ++c)
                for (int y = j * kBlock; y < (j + 1) * kBlock; ++y)
                    for (int x = i * kBlock; x < (i + 1) * kBlock; ++x) {
                        mx = std::max(mx, kScale * img.at(c, y, x));
                        mn = std::min(mn, kScale * img.at(c, y, x));
                    }
            const double top = mx - mn, bot = mx + mn;
            if (top > 0.0 && bot > 0.0) val += (top / bot) * std::log(top / bot);
        }
    return -val / (bx * by);
}

UiqmComponents uiqm_components(const ImageBuffer& img) { return {uicm(img), uism(img), uiconm(img)}; }

double uiqm(const UiqmComponents& comp, const UiqmCoefficients& c) noexcept {
    return c.c1 * comp.uicm + c.c2 * comp.uism + c.c3 * comp.uiconm;
}

double uiqm(const ImageBuffer& img, const UiqmCoefficients& c) { return uiqm(uiqm_components(img), c); }

UciqeComponents uciqe_components(const ImageBuffer& img) {
    require_rgb(img, "uciqe");
    const auto n = img.pixel_count();
    std::vector<double> lum(n), chroma(n);
    double sat = 0.0;
    auto r = img.plane(0), g = img.plane(1), b = img.plane(2);
    for (std::size_t i = 0; i < n; ++i) {
        const Lab lab = srgb_to_lab({r[i], g[i], b[i]});
        lum[i] = lab[0];
        chroma[i] = std::hypot(lab[1], lab[2]);
        const double denom = std::hypot(chroma[i], lab[0]);
        sat += denom > 0.0 ? chroma[i] / denom : 0.0;
    }
    UciqeComponents out;
    // Chroma is put on the same unit scale as con_l (Lab units / 100).
    const double mc = mean_of(chroma);
    out.sigma_c = std::sqrt(spread_about(chroma, mc)) / 100.0;
    std::sort(lum.begin(), lum.end());
    out.con_l = (percentile(lum, 99.0) - percentile(lum, 1.0)) / 100.0;
    out.mu_c = sat / static_cast<double>(n);
    return out;
}

double uciqe(const UciqeComponents& comp, const UciqeCoefficients& c) noexcept {
    return c.c1 * comp.sigma_c + c.c2 * comp.con_l + c.c3 * comp.mu_c;
}

double uciqe(const ImageBuffer& img, const UciqeCoefficients& c) { return uciqe(uciqe_components(img), c); }

double ssim(const ImageBuffer& xi, const ImageBuffer& yi) {
    const RealPlane x = single_plane(xi, "ssim"), y = single_plane(yi, "ssim");
    if (!x.same_shape(y)) throw PreconditionError("ssim: image dimensions differ");
    constexpr double C1 = 0.01 * 0.01, C2 = 0.03 * 0.03;
    constexpr int lo = -(kBlock / 2 - 1), hi = kBlock / 2;  // -3..4
    constexpr double n = kBlock * kBlock;
    const int w = x.width, h = x.height;

    double wx[kBlock * kBlock], wy[kBlock * kBlock];
    double total = 0.0;
    for (int r = 0; r < h; ++r)
        for (int c = 0; c < w; ++c) {
            int k = 0;
            double mx = 0.0, my = 0.0;
            for (int dy = lo; dy <= hi; ++dy) {
                const int yy = reflect_index(r + dy, h);
                for (int dx = lo; dx <= hi; ++dx, ++k) {
                    const int xx = reflect_index(c + dx, w);
                    wx[k] = x.at(yy, xx);
                    wy[k] = y.at(yy, xx);
                    mx += wx[k];
                    my += wy[k];
                }
            }
            mx /= n;
            my /= n;
            double vx = 0.0, vy = 0.0, cov = 0.0;
            for (k = 0; k < kBlock * kBlock; ++k) {
                vx += (wx[k] - mx) * (wx[k] - mx);
                vy += (wy[k] - my) * (wy[k] - my);
                cov += (wx[k] - mx) * (wy[k] - my);
            }
            vx /= n;
            vy /= n;
            cov /= n;
            total += ((2.0 * mx * my + C1) * (2.0 * cov + C2)) / ((mx * mx + my * my + C1) * (vx + vy + C2));
        }
    return total / (static_cast<double>(w) * h);
}

double delta_e76(const ImageBuffer& img, const ImageBuffer& ref) {
    require_rgb(img, "delta_e76");
    require_rgb(ref, "delta_e76");
    if (!img.same_shape(ref)) throw PreconditionError("delta_e76: image dimensions differ");
    double total = 0.0;
    for (std::size_t i = 0; i < img.pixel_count(); ++i) {
        const Lab a = srgb_to_lab({img.plane(0)[i], img.plane(1)[i], img.plane(2)[i]});
        const Lab b = srgb_to_lab({ref.plane(0)[i], ref.plane(1)[i], ref.plane(2)[i]});
        total += std::sqrt((a[0] - b[0]) * (a[0] - b[0]) + (a[1] - b[1]) * (a[1] - b[1]) + (a[2] - b[2]) * (a[2] - b[2]));
    }
    return total / static_cast<double>(img.pixel_count());
}

std::array<double, 3> channel_proportions(const ImageBuffer& img) {
    require_rgb(img, "channel_proportions");
    const double m[3] = {mean_of(img.plane(0)), mean_of(img.plane(1)), mean_of(img.plane(2))};
    const double sum = m[0] + m[1] + m[2];
    if (!(sum > 0.0)) throw DegenerateInputError("channel_proportions: image is black");
    return {100.0 * m[0] / sum, 100.0 * m[1] / sum, 100.0 * m[2] / sum};
}

MetricReport evaluate(const ImageBuffer& img, const ImageBuffer* ref, const MetricCoefficients& c) {
    MetricReport rep;
    const UiqmComponents q = uiqm_components(img);
    rep.uicm = q.uicm;
    rep.uism = q.uism;
    rep.uiconm = q.uiconm;
    rep.uiqm = uiqm(q, c.uiqm);
    rep.uciqe = uciqe(img, c.uciqe);
    rep.channel_proportions = channel_proportions(img);
    if (ref != nullptr) {
        if (!img.same_shape(*ref)) throw PreconditionError("evaluate: reference dimensions differ");
        const auto to_gray = [](const ImageBuffer& im) {
            ImageBuffer g(im.width(), im.height(), ColorSpace::GRAY);
            g.set_plane(0, luminance_plane(im));
            return g;
        };
        rep.ssim = ssim(to_gray(img), to_gray(*ref));
        rep.delta_e76 = delta_e76(img, *ref);
    }
    return rep;
}

}  // namespace aquapipe::metrics
