/**
 * @file priors.cpp
 * @brief Dark-channel and red-channel priors
 */

#include <aquapipe/priors.hpp>

#include <aquapipe/imgcore/stats.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace aquapipe::priors {

namespace {

// Running 1-D minimum over [i-r, i+r] clipped to the line. A reflected
// window only repeats samples already inside the clipped one, so the two
// minima agree.
void min_filter_line(const double* src, double* dst, int n, std::ptrdiff_t stride, int r) {
    for (int i = 0; i < n; ++i) {
        const int lo = std::max(0, i - r), hi = std::min(n - 1, i + r);
        double m = src[lo * stride];
        for (int j = lo + 1; j <= hi; ++j) m = std::min(m, src[j * stride]);
        dst[i * stride] = m;
    }
}

RealPlane min_filter(const RealPlane& p, int r) {
    if (r == 0) return p;
    RealPlane tmp(p.width, p.height), out(p.width, p.height);
    for (int y = 0; y < p.height; ++y) {
        const std::size_t off = static_cast<std::size_t>(y) * p.width;
        min_filter_line(&p.data[off], &tmp.data[off], p.width, 1, r);
    }
    for (int x = 0; x < p.width; ++x) min_filter_line(&tmp.data[x], &out.data[x], p.height, p.width, r);
    return out;
}

}  // namespace

void DcpParams::validate() const {
    if (patch_radius < 0) throw PreconditionError("dcp: patch radius must be >= 0");
    if (!(omega > 0.0 && omega <= 1.0)) throw PreconditionError("dcp: omega must lie in (0,1]");
    if (!(t_floor > 0.0 && t_floor < 1.0)) throw PreconditionError("dcp: t_floor must lie in (0,1)");
    if (!(airlight_percentile > 0.0 && airlight_percentile <= 0.05)) {
        throw PreconditionError("dcp: airlight percentile must lie in (0, 0.05]");
    }
}

void MudcpParams::validate() const {
    if (radii.empty()) throw PreconditionError("mudcp: at least one scale is required");
    if (radii.size() != weights.size()) throw PreconditionError("mudcp: radii and weights differ in length");
    for (int r : radii) {
        if (r < 0) throw PreconditionError("mudcp: radii must be >= 0");
    }
    for (double w : weights) {
        if (w < 0.0) throw PreconditionError("mudcp: weights must be non-negative");
    }
    if (std::abs(std::accumulate(weights.begin(), weights.end(), 0.0) - 1.0) > 1e-9) {
        throw PreconditionError("mudcp: weights must sum to 1");
    }
}

RealPlane dark_channel(const ImageBuffer& img, int radius) {
    require_rgb(img, "dark_channel");
    if (radius < 0) throw PreconditionError("dark_channel: radius must be >= 0");
    RealPlane chan_min(img.width(), img.height());
    auto r = img.plane(0), g = img.plane(1), b = img.plane(2);
    for (std::size_t i = 0; i < chan_min.size(); ++i) chan_min.data[i] = std::min({r[i], g[i], b[i]});
    return min_filter(chan_min, radius);
}

AtmosphericLight estimate_airlight(const ImageBuffer& img, const RealPlane& dark, double percentile) {
    require_rgb(img, "estimate_airlight");
    if (dark.width != img.width() || dark.height != img.height()) {
        throw PreconditionError("estimate_airlight: dark channel and image dimensions differ");
    }
    if (!(percentile > 0.0 && percentile <= 0.05)) {
        throw PreconditionError("estimate_airlight: percentile must lie in (0, 0.05]");
    }
    const std::size_t n = dark.size();
    const auto count = std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(percentile * n)));

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    const auto brighter = [&](std::size_t a, std::size_t b) {
        return dark.data[a] != dark.data[b] ? dark.data[a] > dark.data[b] : a < b;
    };
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(count), order.end(), brighter);

    AtmosphericLight A;
    for (int c = 0; c < 3; ++c) {
        auto p = img.plane(c);
        double s = 0.0;
        for (std::size_t k = 0; k < count; ++k) s += p[order[k]];
        A.a[c] = std::clamp(s / static_cast<double>(count), 0.0, 1.0);
    }
    return A;
}

TransmissionMap transmission(const RealPlane& dark, double omega, double t_floor) {
    if (!(omega > 0.0 && omega <= 1.0)) throw PreconditionError("transmission: omega must lie in (0,1]");
    if (!(t_floor > 0.0 && t_floor < 1.0)) throw PreconditionError("transmission: t_floor must lie in (0,1)");
    TransmissionMap tm{RealPlane(dark.width, dark.height), t_floor};
    for (std::size_t i = 0; i < dark.size(); ++i) {
        tm.t.data[i] = std::clamp(1.0 - omega * dark.data[i], t_floor, 1.0);
    }
    return tm;
}

ImageBuffer restore(const ImageBuffer& img, const TransmissionMap& t, const AtmosphericLight& A) {
    require_rgb(img, "restore");
    if (t.t.width != img.width() || t.t.height != img.height()) {
        throw PreconditionError("restore: transmission map and image dimensions differ");
    }
    ImageBuffer out(img.width(), img.height(), img.space());
    for (int c = 0; c < 3; ++c) {
        auto src = img.plane(c);
        auto dst = out.plane(c);
        for (std::size_t i = 0; i < dst.size(); ++i) {
            const double ti = std::max(t.t.data[i], t.floor);
            // (I - A) + A does not round-trip in floating point; a clear pixel is returned as is.
            dst[i] = ti == 1.0 ? src[i] : (src[i] - A.a[c]) / ti + A.a[c];
        }
    }
    out.clamp_to_range();
    return out;
}

RealPlane mudcp_dark(const ImageBuffer& img, const std::vector<int>& radii, const std::vector<double>& weights) {
    MudcpParams{radii, weights}.validate();
    if (radii.size() == 1) return dark_channel(img, radii[0]);
    RealPlane acc(img.width(), img.height());
    for (std::size_t s = 0; s < radii.size(); ++s) {
        const RealPlane d = dark_channel(img, radii[s]);
        for (std::size_t i = 0; i < acc.size(); ++i) acc.data[i] += weights[s] * d.data[i];
    }
    return acc;
}

ImageBuffer restore_from_dark(const ImageBuffer& img, const RealPlane& dark, const DcpParams& p) {
    p.validate();
    const AtmosphericLight A = estimate_airlight(img, dark, p.airlight_percentile);
    return restore(img, transmission(dark, p.omega, p.t_floor), A);
}

ImageBuffer dcp_restore(const ImageBuffer& img, const DcpParams& p) {
    p.validate();
    return restore_from_dark(img, dark_channel(img, p.patch_radius), p);
}

ImageBuffer mudcp_restore(const ImageBuffer& img, const DcpParams& p, const MudcpParams& m) {
    p.validate();
    return restore_from_dark(img, mudcp_dark(img, m.radii, m.weights), p);
}

double adaptive_rcp_lambda(const ImageBuffer& img) {
    require_rgb(img, "rcp_compensate");
    const ChannelStats s = channel_stats(img);
    const double ref = std::max(s.mean[1], s.mean[2]);
    if (!(ref > 0.0)) return 0.0;
    return std::clamp(1.0 - s.mean[0] / ref, 0.0, 1.0);
}

ImageBuffer rcp_compensate(const ImageBuffer& img, std::optional<double> lambda) {
    require_rgb(img, "rcp_compensate");
    const double l = lambda ? *lambda : adaptive_rcp_lambda(img);
    if (!std::isfinite(l)) throw PreconditionError("rcp_compensate: lambda must be finite");
    ImageBuffer out = img;
    auto r = out.plane(0);
    auto g = img.plane(1), b = img.plane(2);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = std::clamp(r[i] + l * (g[i] - b[i]), 0.0, 1.0);
    return out;
}

}  // namespace aquapipe::priors
