#pragma once

namespace wzp {

struct Rect {
    int x = 0;
    int y = 0;
    int w = 0;
    int h = 0;

    bool operator==(const Rect&) const = default;

    bool inside(int frame_width, int frame_height) const {
        return x >= 0 && y >= 0 && w > 0 && h > 0 && x + w <= frame_width && y + h <= frame_height;
    }
};

}  // namespace wzp
