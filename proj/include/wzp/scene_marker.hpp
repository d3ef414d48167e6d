#pragma once

#include <array>
#include <cstdint>

#include "wzp/errors.hpp"
#include "wzp/image.hpp"

// Scene-class marker convention shared by the synthetic generator and the
// probe classifier: a solid-color square flush in the bottom-right corner of
// every frame, encoding the frame's class through a fixed color table. An
// ambiguous frame carries the white ambiguity color instead.
namespace wzp::marker {

inline constexpr int kMaxClasses = 8;
inline constexpr std::array<std::uint8_t, 3> kAmbiguityColor{255, 255, 255};

inline constexpr std::array<std::array<std::uint8_t, 3>, kMaxClasses> kClassColors{{
    {200, 0, 0},
    {0, 200, 0},
    {0, 0, 200},
    {200, 200, 0},
    {200, 0, 200},
    {0, 200, 200},
    {255, 128, 0},
    {128, 0, 255},
}};

// How much a sampled mean may deviate (per channel) and still count as a hit.
inline constexpr int kMatchTolerance = 50;

// Marker square side when rendering into a frame of the given height.
inline int render_side(int frame_height) {
    const int side = frame_height / 8;
    return side < 8 ? 8 : side;
}

// Patch side the probe samples from a preprocessed frame. Small relative to
// the rendered marker so that cropping and rescaling keep it inside.
inline int sample_side(int frame_height) {
    const int side = frame_height / 20;
    return side < 2 ? 2 : side;
}

inline std::array<std::uint8_t, 3> class_color(int class_index) {
    if (class_index < 0 || class_index >= kMaxClasses) {
        throw ParameterError("scene marker supports at most " + std::to_string(kMaxClasses) +
                             " classes, got index " + std::to_string(class_index));
    }
    return kClassColors[static_cast<std::size_t>(class_index)];
}

// Mean color of the bottom-right sample patch of a frame.
std::array<double, 3> sample_mean(const Image& frame);

// Decodes a sampled mean against the color table for k classes. Returns the
// class index, k for the ambiguity color, or -1 when nothing is close enough.
int decode(const std::array<double, 3>& mean, int num_classes);

}  // namespace wzp::marker
