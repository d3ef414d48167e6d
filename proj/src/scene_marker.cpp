#include "wzp/scene_marker.hpp"

#include <cmath>

namespace wzp::marker {

std::array<double, 3> sample_mean(const Image& frame) {
    if (frame.channels != 3 || frame.height < 2 || frame.width < 2) {
        return {-1.0, -1.0, -1.0};
    }
    const int side = sample_side(frame.height);
    const int y0 = frame.height - side;
    const int x0 = frame.width - side;
    if (y0 < 0 || x0 < 0) return {-1.0, -1.0, -1.0};

    std::array<double, 3> sum{0.0, 0.0, 0.0};
    for (int y = y0; y < frame.height; ++y) {
        for (int x = x0; x < frame.width; ++x) {
            for (int c = 0; c < 3; ++c) sum[c] += frame.at(y, x, c);
        }
    }
    const double count = static_cast<double>(side) * side;
    return {sum[0] / count, sum[1] / count, sum[2] / count};
}

int decode(const std::array<double, 3>& mean, int num_classes) {
    if (mean[0] < 0.0) return -1;
    const auto close_to = [&](const std::array<std::uint8_t, 3>& color) {
        for (int c = 0; c < 3; ++c) {
            if (std::abs(mean[c] - color[c]) > kMatchTolerance) return false;
        }
        return true;
    };
    for (int k = 0; k < num_classes && k < kMaxClasses; ++k) {
        if (close_to(kClassColors[static_cast<std::size_t>(k)])) return k;
    }
    if (close_to(kAmbiguityColor)) return num_classes;
    return -1;
}

}  // namespace wzp::marker
