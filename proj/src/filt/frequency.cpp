/**
 * @file frequency.cpp
 * @brief DFT via FFTW and Gaussian transfer functions
 */

#include <aquapipe/filt/frequency.hpp>
#include <aquapipe/imgcore/stats.hpp>

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <memory>
#include <mutex>

namespace aquapipe::filt {

namespace {

// FFTW's planner is not reentrant; execution of a finished plan is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

struct FftwFree {
    void operator()(fftw_complex* p) const noexcept { fftw_free(p); }
};
using FftwBuffer = std::unique_ptr<fftw_complex[], FftwFree>;

FftwBuffer make_buffer(std::size_t n) {
    auto* p = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n));
    if (!p) throw std::bad_alloc();
    return FftwBuffer(p);
}

// Out-of-place 2-D complex transform of `data` (row-major height x width).
std::vector<std::complex<double>> transform(const std::vector<std::complex<double>>& data, int width,
                                            int height, int sign) {
    const std::size_t n = data.size();
    FftwBuffer in = make_buffer(n);
    FftwBuffer out = make_buffer(n);
    fftw_plan plan;
    {
        std::lock_guard lock(planner_mutex());
        plan = fftw_plan_dft_2d(height, width, in.get(), out.get(), sign, FFTW_ESTIMATE);
    }
    if (!plan) throw Error("dft: FFTW planning failed");
    std::memcpy(in.get(), data.data(), sizeof(fftw_complex) * n);
    fftw_execute(plan);
    {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(plan);
    }
    std::vector<std::complex<double>> result(n);
    std::memcpy(static_cast<void*>(result.data()), out.get(), sizeof(fftw_complex) * n);
    return result;
}

void require_cutoff(double cutoff, const char* who) {
    if (!(cutoff > 0.0 && cutoff < 1.0)) {
        throw PreconditionError(std::string(who) + ": cutoff must lie in (0,1)");
    }
}

RealPlane apply_transfer(const RealPlane& plane, double cutoff, bool highpass) {
    FrequencySpectrum spec = dft_forward(plane);
    for (int v = 0; v < spec.height; ++v) {
        for (int u = 0; u < spec.width; ++u) {
            const double h = highpass_response(u, v, spec.width, spec.height, cutoff);
            spec.at(v, u) *= highpass ? h : 1.0 - h;
        }
    }
    return dft_inverse_real(spec);
}

}  // namespace

FrequencySpectrum dft_forward(const RealPlane& plane) {
    FrequencySpectrum spec;
    spec.width = plane.width;
    spec.height = plane.height;
    std::vector<std::complex<double>> data(plane.data.begin(), plane.data.end());
    spec.coeffs = transform(data, plane.width, plane.height, FFTW_FORWARD);
    return spec;
}

FrequencySpectrum dft_forward(const ImageBuffer& img) {
    if (img.channels() != 1) throw PreconditionError("dft_forward: expected a single-channel image");
    return dft_forward(img.plane_copy(0));
}

RealPlane dft_inverse_real(const FrequencySpectrum& spec) {
    const auto raw = transform(spec.coeffs, spec.width, spec.height, FFTW_BACKWARD);
    RealPlane out(spec.width, spec.height);
    const double scale = 1.0 / (static_cast<double>(spec.width) * spec.height);
    for (std::size_t i = 0; i < raw.size(); ++i) out.data[i] = raw[i].real() * scale;
    return out;
}

ImageBuffer dft_inverse(const FrequencySpectrum& spec) {
    ImageBuffer out(spec.width, spec.height, ColorSpace::GRAY);
    out.set_plane(0, dft_inverse_real(spec));
    out.clamp_to_range();
    return out;
}

double highpass_response(int u, int v, int width, int height, double cutoff) noexcept {
    const double du = std::min(u, width - u);
    const double dv = std::min(v, height - v);
    const double d0 = cutoff * std::min(width, height) / 2.0;
    return 1.0 - std::exp(-(du * du + dv * dv) / (2.0 * d0 * d0));
}

RealPlane highpass_plane(const RealPlane& plane, double cutoff) {
    require_cutoff(cutoff, "highpass_filter");
    return apply_transfer(plane, cutoff, true);
}

RealPlane lowpass_plane(const RealPlane& plane, double cutoff) {
    require_cutoff(cutoff, "lowpass_filter");
    return apply_transfer(plane, cutoff, false);
}

ImageBuffer highpass_filter(const ImageBuffer& img, double cutoff) {
    require_cutoff(cutoff, "highpass_filter");
    return map_planes(img, [&](const RealPlane& p) {
        RealPlane hp = highpass_plane(p, cutoff);
        const double dc = mean_of(p.data);
        for (double& v : hp.data) v += dc;
        return hp;
    });
}

ImageBuffer lowpass_filter(const ImageBuffer& img, double cutoff) {
    require_cutoff(cutoff, "lowpass_filter");
    return map_planes(img, [&](const RealPlane& p) { return lowpass_plane(p, cutoff); });
}

}  // namespace aquapipe::filt
