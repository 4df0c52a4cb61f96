#include <aquapipe/filt/wavelet.hpp>

#include <string>

namespace aquapipe::filt {

namespace {

struct Bands {
    RealPlane approx, horizontal, vertical, diagonal;
};

Bands haar_analysis(const RealPlane& p) {
    const int hw = (p.width + 1) / 2, hh = (p.height + 1) / 2;
    Bands b{RealPlane(hw, hh), RealPlane(hw, hh), RealPlane(hw, hh), RealPlane(hw, hh)};
    auto sample = [&](int y, int x) { return p.at(std::min(y, p.height - 1), std::min(x, p.width - 1)); };
    for (int y = 0; y < hh; ++y) {
        for (int x = 0; x < hw; ++x) {
            const double a = sample(2 * y, 2 * x), bb = sample(2 * y, 2 * x + 1);
            const double c = sample(2 * y + 1, 2 * x), d = sample(2 * y + 1, 2 * x + 1);
            b.approx.at(y, x) = (a + bb + c + d) / 2.0;
            b.horizontal.at(y, x) = (a + bb - c - d) / 2.0;
            b.vertical.at(y, x) = (a - bb + c - d) / 2.0;
            b.diagonal.at(y, x) = (a - bb - c + d) / 2.0;
        }
    }
    return b;
}

RealPlane haar_synthesis(const RealPlane& approx, const WaveletPyramid::Level& lv) {
    RealPlane out(lv.source_width, lv.source_height);
    for (int y = 0; y < approx.height; ++y) {
        for (int x = 0; x < approx.width; ++x) {
            const double s = approx.at(y, x), h = lv.horizontal.at(y, x);
            const double v = lv.vertical.at(y, x), d = lv.diagonal.at(y, x);
            const double px[2][2] = {{(s + h + v + d) / 2.0, (s + h - v - d) / 2.0},
                                     {(s - h + v - d) / 2.0, (s - h - v + d) / 2.0}};
            for (int dy = 0; dy < 2; ++dy) {
                for (int dx = 0; dx < 2; ++dx) {
                    const int oy = 2 * y + dy, ox = 2 * x + dx;
                    if (oy < out.height && ox < out.width) out.at(oy, ox) = px[dy][dx];
                }
            }
        }
    }
    return out;
}

}  // namespace

WaveletPyramid::Channel wavelet_decompose(const RealPlane& plane, int levels) {
    if (levels < 1) throw PreconditionError("wavelet_decompose: levels must be >= 1");
    WaveletPyramid::Channel ch;
    RealPlane current = plane;
    for (int l = 0; l < levels; ++l) {
        if (current.width < 2 || current.height < 2) {
            throw PreconditionError("wavelet_decompose: " + std::to_string(levels) +
                                    " levels is too many for a " + std::to_string(plane.width) + "x" +
                                    std::to_string(plane.height) + " image");
        }
        Bands b = haar_analysis(current);
        ch.levels.push_back({std::move(b.horizontal), std::move(b.vertical), std::move(b.diagonal),
                             current.width, current.height});
        current = std::move(b.approx);
    }
    ch.approximation = std::move(current);
    return ch;
}

RealPlane wavelet_reconstruct(const WaveletPyramid::Channel& channel) {
    RealPlane current = channel.approximation;
    for (auto it = channel.levels.rbegin(); it != channel.levels.rend(); ++it) {
        current = haar_synthesis(current, *it);
    }
    return current;
}

WaveletPyramid wavelet_decompose(const ImageBuffer& img, int levels) {
    WaveletPyramid p;
    p.space = img.space();
    for (int c = 0; c < img.channels(); ++c) p.channels.push_back(wavelet_decompose(img.plane_copy(c), levels));
    return p;
}

ImageBuffer wavelet_reconstruct(const WaveletPyramid& pyramid) {
    std::vector<RealPlane> planes;
    for (const auto& ch : pyramid.channels) planes.push_back(wavelet_reconstruct(ch));
    ImageBuffer out = ImageBuffer::from_planes(planes, pyramid.space);
    out.clamp_to_range();
    return out;
}

}  // namespace aquapipe::filt
