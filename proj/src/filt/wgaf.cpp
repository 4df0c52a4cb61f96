#include <aquapipe/filt/frequency.hpp>
#include <aquapipe/filt/spatial.hpp>
#include <aquapipe/filt/wavelet.hpp>
#include <aquapipe/filt/wgaf.hpp>
#include <aquapipe/imgcore/color_convert.hpp>

#include <algorithm>
#include <cmath>

namespace aquapipe::filt {

void WgafParams::validate() const {
    if (!(t1 > 0.0 && t1 < t2)) throw PreconditionError("wgaf: thresholds must satisfy 0 < t1 < t2");
    if (window_radius < 1) throw PreconditionError("wgaf: window_radius must be >= 1");
    if (!(bilateral_sigma_s > 0.0) || !(bilateral_sigma_r > 0.0)) {
        throw PreconditionError("wgaf: bilateral sigmas must be positive");
    }
    if (!(highpass_cutoff > 0.0 && highpass_cutoff < 1.0)) {
        throw PreconditionError("wgaf: highpass_cutoff must lie in (0,1)");
    }
}

ImageBuffer wgaf_frequency_branch(const ImageBuffer& img, const WgafParams& p) {
    return p.literal_highpass ? highpass_filter(img, p.highpass_cutoff) : lowpass_filter(img, p.highpass_cutoff);
}

WgafResult wgaf_filter(const ImageBuffer& img, const WgafParams& p) {
    p.validate();
    WgafResult result;

    const RealPlane lum = luminance_plane(img);
    if (lum.width >= 2 && lum.height >= 2) {
        const auto band = wavelet_decompose(lum, 1);
        result.wavelet_sigma = mad_sigma(band.levels[0].diagonal.data);
    }
    const double floor = result.wavelet_sigma * result.wavelet_sigma;

    RealPlane energy = estimate_noise(img, p.window_radius).energy;
    for (double& e : energy.data) e = std::max(e, floor);

    const std::size_t n = energy.size();
    std::vector<unsigned char> needs_spatial(n, 0);
    std::size_t low = 0, high = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double e = energy.data[i];
        if (e < p.t1) ++low;
        if (e >= p.t2) ++high;
        needs_spatial[i] = e < p.t2 ? 1 : 0;
    }
    const double total = static_cast<double>(n);
    result.branches = {low / total, (n - low - high) / total, high / total};

    const bool any_frequency = low < n;
    const bool any_spatial = high < n;
    ImageBuffer freq;
    if (any_frequency) freq = wgaf_frequency_branch(img, p);

    ImageBuffer out(img.width(), img.height(), img.space());
    for (int c = 0; c < img.channels(); ++c) {
        RealPlane spatial;
        if (any_spatial) spatial = bilateral_plane(img.plane_copy(c), p.bilateral_sigma_s, p.bilateral_sigma_r, &needs_spatial);
        auto dst = out.plane(c);
        for (std::size_t i = 0; i < n; ++i) {
            const double e = energy.data[i];
            if (e < p.t1) {
                dst[i] = spatial.data[i];
            } else if (e >= p.t2) {
                dst[i] = freq.plane(c)[i];
            } else {
                const double w = (e - p.t1) / (p.t2 - p.t1);
                dst[i] = (1.0 - w) * spatial.data[i] + w * freq.plane(c)[i];
            }
        }
    }
    out.clamp_to_range();
    result.image = std::move(out);
    return result;
}

ImageBuffer wgaf_denoise(const ImageBuffer& img, const WgafParams& p) {
    return wgaf_filter(img, p).image;
}

}  // namespace aquapipe::filt
