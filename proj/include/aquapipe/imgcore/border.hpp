/**
 * @file border.hpp
 * @brief Border extension shared by the windowed filters
 */
#pragma once

namespace aquapipe {

/**
 * Maps an out-of-range index onto [0, n) by half-sample symmetric
 * reflection (... c b a | a b c | c b a ...). Works for any offset,
 * including windows wider than the image, and for n == 1.
 */
constexpr int reflect_index(int i, int n) noexcept {
    if (n == 1) return 0;
    const int period = 2 * n;
    int m = i % period;
    if (m < 0) m += period;
    return m < n ? m : period - 1 - m;
}

}  // namespace aquapipe
