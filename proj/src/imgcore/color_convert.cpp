/**
 * @file color_convert.cpp
 * @brief Color-space conversion implementation
 */

#include <aquapipe/imgcore/color_convert.hpp>

#include <algorithm>
#include <cmath>
#include <string>

namespace aquapipe {

namespace {

// sRGB primaries, D65.
constexpr double kRgbToXyz[3][3] = {
    {0.4124564, 0.3575761, 0.1804375},
    {0.2126729, 0.7151522, 0.0721750},
    {0.0193339, 0.1191920, 0.9503041},
};

// Exact inverse of kRgbToXyz (computed once, keeps the Lab round trip tight).
struct Inverse3 {
    double m[3][3];
    Inverse3() {
        const auto& a = kRgbToXyz;
        const double det = a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
                           a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
                           a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
        m[0][0] = (a[1][1] * a[2][2] - a[1][2] * a[2][1]) / det;
        m[0][1] = (a[0][2] * a[2][1] - a[0][1] * a[2][2]) / det;
        m[0][2] = (a[0][1] * a[1][2] - a[0][2] * a[1][1]) / det;
        m[1][0] = (a[1][2] * a[2][0] - a[1][0] * a[2][2]) / det;
        m[1][1] = (a[0][0] * a[2][2] - a[0][2] * a[2][0]) / det;
        m[1][2] = (a[0][2] * a[1][0] - a[0][0] * a[1][2]) / det;
        m[2][0] = (a[1][0] * a[2][1] - a[1][1] * a[2][0]) / det;
        m[2][1] = (a[0][1] * a[2][0] - a[0][0] * a[2][1]) / det;
        m[2][2] = (a[0][0] * a[1][1] - a[0][1] * a[1][0]) / det;
    }
};

const Inverse3& xyz_to_rgb() {
    static const Inverse3 inv;
    return inv;
}

// White point = XYZ of linear (1,1,1), so sRGB white maps to exactly L=100, a=b=0.
constexpr double kWhiteX = 0.4124564 + 0.3575761 + 0.1804375;
constexpr double kWhiteY = 0.2126729 + 0.7151522 + 0.0721750;
constexpr double kWhiteZ = 0.0193339 + 0.1191920 + 0.9503041;

constexpr double kDelta = 6.0 / 29.0;

double lab_f(double t) {
    return t > kDelta * kDelta * kDelta ? std::cbrt(t) : t / (3.0 * kDelta * kDelta) + 4.0 / 29.0;
}

double lab_f_inv(double t) {
    return t > kDelta ? t * t * t : 3.0 * kDelta * kDelta * (t - 4.0 / 29.0);
}

ImageBuffer map_pixels(const ImageBuffer& img, ColorSpace target, auto&& fn) {
    ImageBuffer out(img.width(), img.height(), target);
    const std::size_t n = img.pixel_count();
    auto s0 = img.plane(0), s1 = img.plane(1), s2 = img.plane(2);
    auto d0 = out.plane(0), d1 = out.plane(1), d2 = out.plane(2);
    for (std::size_t i = 0; i < n; ++i) {
        const auto r = fn(std::array<double, 3>{s0[i], s1[i], s2[i]});
        d0[i] = r[0];
        d1[i] = r[1];
        d2[i] = r[2];
    }
    out.clamp_to_range();
    return out;
}

// Brings any 3-channel buffer to SRGB.
ImageBuffer to_srgb(const ImageBuffer& img) {
    switch (img.space()) {
        case ColorSpace::SRGB:
            return img;
        case ColorSpace::LINEAR_RGB:
            return map_pixels(img, ColorSpace::SRGB, [](const Rgb& p) {
                return Rgb{linear_to_srgb(p[0]), linear_to_srgb(p[1]), linear_to_srgb(p[2])};
            });
        case ColorSpace::HSV:
            return map_pixels(img, ColorSpace::SRGB, [](const Hsv& p) { return hsv_to_srgb(p); });
        case ColorSpace::CIELAB:
            return map_pixels(img, ColorSpace::SRGB, [](const Lab& p) { return lab_to_srgb(p); });
        case ColorSpace::GRAY: {
            ImageBuffer out(img.width(), img.height(), ColorSpace::SRGB);
            for (int c = 0; c < 3; ++c) {
                std::copy(img.plane(0).begin(), img.plane(0).end(), out.plane(c).begin());
            }
            return out;
        }
    }
    return img;
}

}  // namespace

double srgb_to_linear(double v) noexcept {
    return v <= 0.04045 ? v / 12.92 : std::pow((v + 0.055) / 1.055, 2.4);
}

double linear_to_srgb(double v) noexcept {
    return v <= 0.0031308 ? v * 12.92 : 1.055 * std::pow(v, 1.0 / 2.4) - 0.055;
}

double luma(double r, double g, double b) noexcept {
    return 0.299 * r + 0.587 * g + 0.114 * b;
}

RealPlane luminance_plane(const ImageBuffer& img) {
    if (img.channels() == 1) return img.plane_copy(0);
    if (img.space() != ColorSpace::SRGB) return luminance_plane(convert(img, ColorSpace::SRGB));
    RealPlane y(img.width(), img.height());
    auto r = img.plane(0), g = img.plane(1), b = img.plane(2);
    for (std::size_t i = 0; i < y.size(); ++i) y.data[i] = std::clamp(luma(r[i], g[i], b[i]), 0.0, 1.0);
    return y;
}

Hsv srgb_to_hsv(const Rgb& p) noexcept {
    const double r = p[0], g = p[1], b = p[2];
    const double mx = std::max({r, g, b});
    const double mn = std::min({r, g, b});
    const double delta = mx - mn;
    double h = 0.0;
    if (delta > 0.0) {
        if (mx == r) {
            h = (g - b) / delta;
            if (h < 0.0) h += 6.0;
        } else if (mx == g) {
            h = (b - r) / delta + 2.0;
        } else {
            h = (r - g) / delta + 4.0;
        }
        h /= 6.0;
        if (h >= 1.0) h -= 1.0;
    }
    const double s = mx > 0.0 ? delta / mx : 0.0;
    return {h, s, mx};
}

Rgb hsv_to_srgb(const Hsv& p) noexcept {
    const double h6 = p[0] * 6.0;
    const double s = p[1], v = p[2];
    const double sector = std::floor(h6);
    const double f = h6 - sector;
    const double a = v * (1.0 - s);
    const double b = v * (1.0 - s * f);
    const double c = v * (1.0 - s * (1.0 - f));
    switch (static_cast<int>(sector) % 6) {
        case 0: return {v, c, a};
        case 1: return {b, v, a};
        case 2: return {a, v, c};
        case 3: return {a, b, v};
        case 4: return {c, a, v};
        default: return {v, a, b};
    }
}

Lab linear_to_lab(const Rgb& p) noexcept {
    const double x = kRgbToXyz[0][0] * p[0] + kRgbToXyz[0][1] * p[1] + kRgbToXyz[0][2] * p[2];
    const double y = kRgbToXyz[1][0] * p[0] + kRgbToXyz[1][1] * p[1] + kRgbToXyz[1][2] * p[2];
    const double z = kRgbToXyz[2][0] * p[0] + kRgbToXyz[2][1] * p[1] + kRgbToXyz[2][2] * p[2];
    const double fx = lab_f(x / kWhiteX);
    const double fy = lab_f(y / kWhiteY);
    const double fz = lab_f(z / kWhiteZ);
    return {116.0 * fy - 16.0, 500.0 * (fx - fy), 200.0 * (fy - fz)};
}

Rgb lab_to_linear(const Lab& p) noexcept {
    const double fy = (p[0] + 16.0) / 116.0;
    const double fx = fy + p[1] / 500.0;
    const double fz = fy - p[2] / 200.0;
    const double x = kWhiteX * lab_f_inv(fx);
    const double y = kWhiteY * lab_f_inv(fy);
    const double z = kWhiteZ * lab_f_inv(fz);
    const auto& m = xyz_to_rgb().m;
    return {m[0][0] * x + m[0][1] * y + m[0][2] * z,
            m[1][0] * x + m[1][1] * y + m[1][2] * z,
            m[2][0] * x + m[2][1] * y + m[2][2] * z};
}

Lab srgb_to_lab(const Rgb& p) noexcept {
    return linear_to_lab({srgb_to_linear(p[0]), srgb_to_linear(p[1]), srgb_to_linear(p[2])});
}

Rgb lab_to_srgb(const Lab& p) noexcept {
    const Rgb lin = lab_to_linear(p);
    Rgb out;
    for (int c = 0; c < 3; ++c) out[c] = std::clamp(linear_to_srgb(std::clamp(lin[c], 0.0, 1.0)), 0.0, 1.0);
    return out;
}

ImageBuffer convert(const ImageBuffer& img, ColorSpace target) {
    if (img.space() == target) return img;
    if (img.space() == ColorSpace::GRAY && target != ColorSpace::SRGB &&
        target != ColorSpace::LINEAR_RGB) {
        throw PreconditionError("convert: GRAY -> " + std::string(to_string(target)) +
                                " is not supported");
    }

    const ImageBuffer srgb = to_srgb(img);
    switch (target) {
        case ColorSpace::SRGB:
            return srgb;
        case ColorSpace::LINEAR_RGB:
            if (img.space() == ColorSpace::CIELAB) {
                return map_pixels(img, ColorSpace::LINEAR_RGB, [](const Lab& p) { return lab_to_linear(p); });
            }
            return map_pixels(srgb, ColorSpace::LINEAR_RGB, [](const Rgb& p) {
                return Rgb{srgb_to_linear(p[0]), srgb_to_linear(p[1]), srgb_to_linear(p[2])};
            });
        case ColorSpace::HSV:
            return map_pixels(srgb, ColorSpace::HSV, [](const Rgb& p) { return srgb_to_hsv(p); });
        case ColorSpace::CIELAB:
            if (img.space() == ColorSpace::LINEAR_RGB) {
                return map_pixels(img, ColorSpace::CIELAB, [](const Rgb& p) { return linear_to_lab(p); });
            }
            return map_pixels(srgb, ColorSpace::CIELAB, [](const Rgb& p) { return srgb_to_lab(p); });
        case ColorSpace::GRAY: {
            ImageBuffer out(img.width(), img.height(), ColorSpace::GRAY);
            out.set_plane(0, luminance_plane(srgb));
            return out;
        }
    }
    throw PreconditionError("convert: unsupported target space");
}

}  // namespace aquapipe
