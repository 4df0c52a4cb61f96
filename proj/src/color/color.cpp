/**
 * @file color.cpp
 * @brief Scene-adaptive color correction and white balance
 */

#include <aquapipe/color.hpp>

#include <aquapipe/imgcore/stats.hpp>

#include <algorithm>
#include <cmath>
#include <set>

namespace aquapipe::color {

namespace {

constexpr double kSumTol = 1e-9;

double lab_distance(const Lab& a, const Lab& b) noexcept {
    return std::sqrt((a[0] - b[0]) * (a[0] - b[0]) + (a[1] - b[1]) * (a[1] - b[1]) + (a[2] - b[2]) * (a[2] - b[2]));
}

}  // namespace

void AttenuationProfile::validate() const {
    for (double e : eta) {
        if (!(e >= 0.0)) throw PreconditionError("attenuation profile: ratios must be non-negative");
    }
    if (std::abs(eta[0] + eta[1] + eta[2] - 1.0) > kSumTol) {
        throw PreconditionError("attenuation profile: ratios must sum to 1");
    }
}

void WaterTypeProfile::validate() const {
    if (name.empty()) throw PreconditionError("water type: name must not be empty");
    try {
        reference.validate();
    } catch (const PreconditionError& e) {
        throw PreconditionError("water type '" + name + "': " + e.what());
    }
    for (double w : weights) {
        if (!(w >= 0.0)) throw PreconditionError("water type '" + name + "': fusion weights must be non-negative");
    }
    if (std::abs(weights[0] + weights[1] + weights[2] - 1.0) > kSumTol) {
        throw PreconditionError("water type '" + name + "': fusion weights must sum to 1");
    }
}

WaterTypeTable WaterTypeTable::defaults() {
    return WaterTypeTable{{
        {"clear", {{0.33, 0.34, 0.33}}, {0.2, 0.4, 0.4}},
        {"green-coastal", {{0.20, 0.45, 0.35}}, {0.5, 0.2, 0.3}},
        {"deep-blue", {{0.15, 0.35, 0.50}}, {0.6, 0.1, 0.3}},
        {"turbid", {{0.28, 0.40, 0.32}}, {0.3, 0.3, 0.4}},
    }};
}

void WaterTypeTable::validate() const {
    if (profiles.empty()) throw PreconditionError("water type table: at least one profile is required");
    std::set<std::string> names;
    for (const auto& p : profiles) {
        p.validate();
        if (!names.insert(p.name).second) throw PreconditionError("water type table: duplicate name '" + p.name + "'");
    }
}

void PerceptualBalanceParams::validate() const {
    if (!(target_delta_e >= 0.0)) throw PreconditionError("perceptual balance: target dE must be >= 0");
    if (!(beta > 0.0 && beta <= 1.0)) throw PreconditionError("perceptual balance: beta must lie in (0,1]");
    if (max_iters < 1) throw PreconditionError("perceptual balance: max_iters must be >= 1");
    if (!(tolerance >= 0.0)) throw PreconditionError("perceptual balance: tolerance must be >= 0");
    for (double v : reference) {
        if (!std::isfinite(v)) throw PreconditionError("perceptual balance: reference must be finite");
    }
}

AttenuationProfile estimate_attenuation(const ImageBuffer& img) {
    require_rgb(img, "estimate_attenuation");
    std::array<double, 3> mu{};
    for (int c = 0; c < 3; ++c) mu[c] = mean_of(img.plane(c));
    const double sum = mu[0] + mu[1] + mu[2];
    if (!(sum > 0.0)) throw DegenerateInputError("estimate_attenuation: image is black");
    return AttenuationProfile{{mu[0] / sum, mu[1] / sum, mu[2] / sum}};
}

double l1_distance(const AttenuationProfile& a, const AttenuationProfile& b) noexcept {
    return std::abs(a.eta[0] - b.eta[0]) + std::abs(a.eta[1] - b.eta[1]) + std::abs(a.eta[2] - b.eta[2]);
}

const WaterTypeProfile& classify_water_type(const AttenuationProfile& eta, const WaterTypeTable& table, WtiMode mode) {
    if (table.profiles.empty()) throw PreconditionError("classify_water_type: empty table");
    std::size_t best = 0;
    double best_d = l1_distance(eta, table.profiles[0].reference);
    for (std::size_t i = 1; i < table.profiles.size(); ++i) {
        const double d = l1_distance(eta, table.profiles[i].reference);
        if (mode == WtiMode::NEAREST ? d < best_d : d > best_d) {
            best = i;
            best_d = d;
        }
    }
    return table.profiles[best];
}

FusionBranches compute_branches(const ImageBuffer& img, const FusionParams& p) {
    require_rgb(img, "fuse_priors");
    return FusionBranches{
        priors::rcp_compensate(img, p.rcp_lambda),
        priors::dcp_restore(img, p.dcp),
        priors::mudcp_restore(img, p.dcp, p.mudcp),
    };
}

ImageBuffer blend_branches(const FusionBranches& b, const std::array<double, 3>& w) {
    if (!b.rcp.same_shape(b.dcp) || !b.rcp.same_shape(b.mudcp)) {
        throw PreconditionError("blend_branches: branch images differ in shape");
    }
    ImageBuffer out(b.rcp.width(), b.rcp.height(), b.rcp.space());
    auto o = out.samples();
    auto r = b.rcp.samples(), d = b.dcp.samples(), m = b.mudcp.samples();
    for (std::size_t i = 0; i < o.size(); ++i) o[i] = w[0] * r[i] + w[1] * d[i] + w[2] * m[i];
    out.clamp_to_range();
    return out;
}

ImageBuffer fuse_priors(const ImageBuffer& img, const WaterTypeProfile& profile, const FusionParams& p) {
    profile.validate();
    return blend_branches(compute_branches(img, p), profile.weights);
}

std::array<double, 3> gray_world_gains(const ImageBuffer& img) {
    require_rgb(img, "gray_world");
    std::array<double, 3> mu{};
    for (int c = 0; c < 3; ++c) {
        mu[c] = mean_of(img.plane(c));
        if (!(mu[c] > 0.0)) throw DegenerateInputError("gray_world: channel " + std::to_string(c) + " has zero mean");
    }
    const double gray = (mu[0] + mu[1] + mu[2]) / 3.0;
    return {gray / mu[0], gray / mu[1], gray / mu[2]};
}

ImageBuffer gray_world(const ImageBuffer& img) {
    const auto g = gray_world_gains(img);
    ImageBuffer out = img;
    for (int c = 0; c < 3; ++c)
        for (double& v : out.plane(c)) v *= g[c];
    out.clamp_to_range();
    return out;
}

ImageBuffer histogram_match(const ImageBuffer& img, const ImageBuffer& ref) {
    if (img.channels() != ref.channels()) throw PreconditionError("histogram_match: channel counts differ");
    const Histogram hs = compute_histogram(img);
    const Histogram hr = compute_histogram(ref);
    const std::uint64_t ns = hs.total, nr = hr.total;

    ImageBuffer out(img.width(), img.height(), img.space());
    for (int c = 0; c < img.channels(); ++c) {
        // Compare cum_r/nr >= cum_s/ns as integers to keep ties exact.
        std::array<int, kLevels> map{};
        std::uint64_t cs = 0, cr = hr.channels[c][0];
        int j = 0;
        for (int k = 0; k < kLevels; ++k) {
            cs += hs.channels[c][k];
            while (j < kLevels - 1 && cr * ns < cs * nr) cr += hr.channels[c][++j];
            map[k] = j;
        }
        auto src = img.plane(c);
        auto dst = out.plane(c);
        for (std::size_t i = 0; i < src.size(); ++i) dst[i] = map[quantize_level(src[i])] / 255.0;
    }
    return out;
}

Lab lab_mean(const ImageBuffer& img) {
    require_rgb(img, "lab_mean");
    Lab acc{};
    auto r = img.plane(0), g = img.plane(1), b = img.plane(2);
    for (std::size_t i = 0; i < r.size(); ++i) {
        const Lab l = srgb_to_lab({r[i], g[i], b[i]});
        for (int k = 0; k < 3; ++k) acc[k] += l[k];
    }
    for (double& v : acc) v /= static_cast<double>(r.size());
    return acc;
}

BalanceResult perceptual_balance_detailed(const ImageBuffer& img, const PerceptualBalanceParams& p) {
    require_rgb(img, "perceptual_balance");
    p.validate();

    Lab mean = lab_mean(img);
    Lab shift{};
    double de = lab_distance(mean, p.reference);
    BalanceResult res{img, de, de, 0};

    while (res.iterations < p.max_iters && std::abs(de - p.target_delta_e) > p.tolerance && de > 0.0) {
        const double step = p.beta * (de - p.target_delta_e);
        for (int k = 0; k < 3; ++k) {
            const double d = step * (p.reference[k] - mean[k]) / de;
            mean[k] += d;
            shift[k] += d;
        }
        de = lab_distance(mean, p.reference);
        ++res.iterations;
    }
    res.final_delta_e = de;
    if (res.iterations == 0) return res;

    ImageBuffer& out = res.image;
    auto r = out.plane(0), g = out.plane(1), b = out.plane(2);
    for (std::size_t i = 0; i < r.size(); ++i) {
        Lab l = srgb_to_lab({r[i], g[i], b[i]});
        for (int k = 0; k < 3; ++k) l[k] += shift[k];
        const Rgb o = lab_to_srgb(l);
        r[i] = o[0];
        g[i] = o[1];
        b[i] = o[2];
    }
    return res;
}

ImageBuffer perceptual_balance(const ImageBuffer& img, const PerceptualBalanceParams& p) {
    return perceptual_balance_detailed(img, p).image;
}

ImageBuffer hsv_adjust(const ImageBuffer& img, double sat_gain, double val_gain) {
    require_rgb(img, "hsv_adjust");
    if (!(sat_gain >= 0.0 && std::isfinite(sat_gain)) || !(val_gain >= 0.0 && std::isfinite(val_gain))) {
        throw PreconditionError("hsv_adjust: gains must be finite and non-negative");
    }
    ImageBuffer out = img;
    auto r = out.plane(0), g = out.plane(1), b = out.plane(2);
    for (std::size_t i = 0; i < r.size(); ++i) {
        Hsv h = srgb_to_hsv({r[i], g[i], b[i]});
        h[1] = std::clamp(h[1] * sat_gain, 0.0, 1.0);
        h[2] = std::clamp(h[2] * val_gain, 0.0, 1.0);
        const Rgb o = hsv_to_srgb(h);
        r[i] = o[0];
        g[i] = o[1];
        b[i] = o[2];
    }
    out.clamp_to_range();
    return out;
}

}  // namespace aquapipe::color
