#include <aquapipe/filt/noise.hpp>
#include <aquapipe/imgcore/border.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

namespace aquapipe::filt {

namespace {

// Variance is accumulated from deviations against the window's center
// sample, so a constant window sums exact zeros.
void accumulate_local_variance(std::span<const double> plane, int w, int h, int r, RealPlane& acc) {
    const int n = 2 * r + 1;
    const double count = static_cast<double>(n) * n;
    std::vector<int> xs(w + 2 * r), ys(h + 2 * r);
    for (int i = 0; i < w + 2 * r; ++i) xs[i] = reflect_index(i - r, w);
    for (int i = 0; i < h + 2 * r; ++i) ys[i] = reflect_index(i - r, h);

    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const double center = plane[static_cast<std::size_t>(y) * w + x];
            double s1 = 0.0, s2 = 0.0;
            for (int dy = 0; dy < n; ++dy) {
                const double* row = &plane[static_cast<std::size_t>(ys[y + dy]) * w];
                for (int dx = 0; dx < n; ++dx) {
                    const double d = row[xs[x + dx]] - center;
                    s1 += d;
                    s2 += d * d;
                }
            }
            const double m = s1 / count;
            acc.at(y, x) += std::max(0.0, s2 / count - m * m);
        }
    }
}

}  // namespace

NoiseMap estimate_noise(const ImageBuffer& img, int radius) {
    if (radius < 1) throw PreconditionError("estimate_noise: radius must be >= 1");
    NoiseMap map{RealPlane(img.width(), img.height()), radius};
    for (int c = 0; c < img.channels(); ++c) {
        accumulate_local_variance(img.plane(c), img.width(), img.height(), radius, map.energy);
    }
    if (img.channels() > 1) {
        for (double& v : map.energy.data) v /= img.channels();
    }
    return map;
}

double mad_sigma(std::span<const double> detail) {
    if (detail.empty()) return 0.0;
    std::vector<double> mags(detail.size());
    std::transform(detail.begin(), detail.end(), mags.begin(), [](double v) { return std::abs(v); });
    const auto mid = mags.begin() + static_cast<std::ptrdiff_t>(mags.size() / 2);
    std::nth_element(mags.begin(), mid, mags.end());
    double med = *mid;
    if (mags.size() % 2 == 0) med = 0.5 * (med + *std::max_element(mags.begin(), mid));
    return med / 0.6745;
}

}  // namespace aquapipe::filt
