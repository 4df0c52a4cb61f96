/**
 * @file image.cpp
 * @brief ImageBuffer / RealPlane implementation
 */

#include <aquapipe/imgcore/image.hpp>

#include <algorithm>
#include <cmath>
#include <string>

namespace aquapipe {

std::string_view to_string(ColorSpace space) {
    switch (space) {
        case ColorSpace::SRGB: return "SRGB";
        case ColorSpace::LINEAR_RGB: return "LINEAR_RGB";
        case ColorSpace::GRAY: return "GRAY";
        case ColorSpace::HSV: return "HSV";
        case ColorSpace::CIELAB: return "CIELAB";
    }
    return "?";
}

int channels_for(ColorSpace space) {
    return space == ColorSpace::GRAY ? 1 : 3;
}

RealPlane::RealPlane(int w, int h, double fill) : width(w), height(h) {
    if (w < 0 || h < 0) throw PreconditionError("RealPlane: negative dimensions");
    data.assign(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), fill);
}

ImageBuffer::ImageBuffer(int width, int height, ColorSpace space, double fill)
    : width_(width), height_(height), channels_(channels_for(space)), space_(space) {
    if (width <= 0 || height <= 0) {
        throw PreconditionError("ImageBuffer: dimensions must be positive, got " +
                                std::to_string(width) + "x" + std::to_string(height));
    }
    samples_.assign(pixel_count() * static_cast<std::size_t>(channels_), fill);
}

ImageBuffer ImageBuffer::from_planes(std::span<const RealPlane> planes, ColorSpace space) {
    if (static_cast<int>(planes.size()) != channels_for(space)) {
        throw PreconditionError("ImageBuffer::from_planes: plane count does not match " +
                                std::string(to_string(space)));
    }
    ImageBuffer out(planes[0].width, planes[0].height, space);
    for (int c = 0; c < out.channels_; ++c) out.set_plane(c, planes[c]);
    return out;
}

std::span<const double> ImageBuffer::plane(int c) const {
    return std::span<const double>(samples_).subspan(static_cast<std::size_t>(c) * pixel_count(),
                                                     pixel_count());
}

std::span<double> ImageBuffer::plane(int c) {
    return std::span<double>(samples_).subspan(static_cast<std::size_t>(c) * pixel_count(),
                                               pixel_count());
}

RealPlane ImageBuffer::plane_copy(int c) const {
    RealPlane p;
    p.width = width_;
    p.height = height_;
    auto src = plane(c);
    p.data.assign(src.begin(), src.end());
    return p;
}

void ImageBuffer::set_plane(int c, const RealPlane& p) {
    if (p.width != width_ || p.height != height_) {
        throw PreconditionError("ImageBuffer::set_plane: shape mismatch");
    }
    std::copy(p.data.begin(), p.data.end(), plane(c).begin());
}

ImageBuffer ImageBuffer::retagged(ColorSpace space) const {
    if (channels_for(space) != channels_) {
        throw PreconditionError("ImageBuffer::retagged: channel count mismatch");
    }
    ImageBuffer out = *this;
    out.space_ = space;
    return out;
}

namespace {

struct Range {
    double lo, hi;
};

Range range_of(ColorSpace space, int channel) {
    if (space != ColorSpace::CIELAB) return {0.0, 1.0};
    return channel == 0 ? Range{0.0, 100.0} : Range{-128.0, 127.0};
}

}  // namespace

bool ImageBuffer::is_valid() const noexcept {
    if (samples_.empty()) return false;
    for (int c = 0; c < channels_; ++c) {
        const Range r = range_of(space_, c);
        for (double v : plane(c)) {
            if (!std::isfinite(v) || v < r.lo || v > r.hi) return false;
        }
    }
    return true;
}

void ImageBuffer::require_valid(std::string_view who) const {
    if (!is_valid()) {
        throw PreconditionError(std::string(who) +
                                ": buffer has non-finite or out-of-range samples");
    }
}

void ImageBuffer::clamp_to_range() noexcept {
    for (int c = 0; c < channels_; ++c) {
        const Range r = range_of(space_, c);
        for (double& v : plane(c)) v = std::clamp(v, r.lo, r.hi);
    }
}

void require_rgb(const ImageBuffer& img, std::string_view who) {
    if (img.channels() != 3) {
        throw PreconditionError(std::string(who) + ": expected a 3-channel image");
    }
}

}  // namespace aquapipe
