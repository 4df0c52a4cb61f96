#include <aquapipe/imgcore/stats.hpp>

#include <algorithm>
#include <cmath>

namespace aquapipe {

int quantize_level(double sample) noexcept {
    const double q = std::floor(sample * 255.0 + 0.5);
    if (!(q >= 0.0)) return 0;
    return q > 255.0 ? 255 : static_cast<int>(q);
}

Histogram::Bins histogram_of(std::span<const double> samples) {
    Histogram::Bins bins{};
    for (double v : samples) ++bins[quantize_level(v)];
    return bins;
}

Histogram compute_histogram(const ImageBuffer& img) {
    Histogram h;
    h.total = img.pixel_count();
    h.channels.reserve(img.channels());
    for (int c = 0; c < img.channels(); ++c) h.channels.push_back(histogram_of(img.plane(c)));
    return h;
}

double mean_of(std::span<const double> values) noexcept {
    if (values.empty()) return 0.0;
    double sum = 0.0;
    for (double v : values) sum += v;
    return sum / static_cast<double>(values.size());
}

ChannelStats channel_stats(const ImageBuffer& img) {
    ChannelStats s;
    const auto n = static_cast<double>(img.pixel_count());
    for (int c = 0; c < img.channels(); ++c) {
        auto p = img.plane(c);
        const double mu = mean_of(p);
        double ss = 0.0;
        for (double v : p) ss += (v - mu) * (v - mu);
        const auto [lo, hi] = std::minmax_element(p.begin(), p.end());
        s.mean.push_back(mu);
        s.variance.push_back(ss / n);
        // Rounding in the mean can place it an ulp outside [min, max] on constant planes.
        s.min.push_back(*lo);
        s.max.push_back(*hi);
        s.mean.back() = std::clamp(mu, *lo, *hi);
    }
    return s;
}

}  // namespace aquapipe
