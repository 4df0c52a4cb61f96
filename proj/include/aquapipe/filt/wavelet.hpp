/**
 * @file wavelet.hpp
 * @brief Multi-level orthonormal 2-D wavelet pyramid
 */
#pragma once

#include <aquapipe/imgcore/image.hpp>

#include <vector>

namespace aquapipe::filt {

enum class WaveletBasis { HAAR };

/**
 * Subband decomposition of every channel of an image.
 *
 * For a 2x2 block {a b; c d} one Haar level produces
 *   approximation (a+b+c+d)/2, horizontal (a+b-c-d)/2,
 *   vertical (a-b+c-d)/2, diagonal (a-b-c+d)/2.
 * Odd-sized inputs are padded by repeating the last row/column before
 * analysis; the pre-padding size is kept per level so synthesis crops it.
 */
struct WaveletPyramid {
    struct Level {
        RealPlane horizontal, vertical, diagonal;
        int source_width = 0;   ///< plane width before padding at this level
        int source_height = 0;
    };
    struct Channel {
        std::vector<Level> levels;  ///< finest first
        RealPlane approximation;    ///< coarsest approximation band
    };

    WaveletBasis basis = WaveletBasis::HAAR;
    ColorSpace space = ColorSpace::GRAY;
    std::vector<Channel> channels;

    int level_count() const { return channels.empty() ? 0 : static_cast<int>(channels[0].levels.size()); }
};

/// Analysis of one plane. Throws PreconditionError when levels < 1 or a
/// level would start from a plane narrower than 2 samples.
WaveletPyramid::Channel wavelet_decompose(const RealPlane& plane, int levels);
RealPlane wavelet_reconstruct(const WaveletPyramid::Channel& channel);

WaveletPyramid wavelet_decompose(const ImageBuffer& img, int levels);
/// Perfect-reconstruction synthesis (result clamped to the space's range).
ImageBuffer wavelet_reconstruct(const WaveletPyramid& pyramid);

}  // namespace aquapipe::filt
