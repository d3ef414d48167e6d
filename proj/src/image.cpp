#include "wzp/image.hpp"

#include <cstring>

namespace wzp {

bool image_is_binary(const Image& img) {
    if (img.channels != 1) return false;
    for (std::uint8_t v : img.data) {
        if (v != 0 && v != 255) return false;
    }
    return true;
}

Image ImageStack::image(int i) const {
    Image out(height, width, channels);
    std::memcpy(out.data.data(), frame(i), frame_bytes());
    return out;
}

void ImageStack::set_frame(int i, const Image& img) {
    if (img.height != height || img.width != width || img.channels != channels) {
        throw ShapeError("set_frame: image shape does not match stack shape");
    }
    std::memcpy(frame(i), img.data.data(), frame_bytes());
}

ImageStack ImageStack::from_images(const std::vector<Image>& images) {
    if (images.empty()) return {};
    const Image& first = images.front();
    ImageStack stack(static_cast<int>(images.size()), first.height, first.width, first.channels);
    for (std::size_t i = 0; i < images.size(); ++i) {
        if (!images[i].same_shape(first)) {
            throw ShapeError("from_images: image " + std::to_string(i) + " has a different shape");
        }
        std::memcpy(stack.frame(static_cast<int>(i)), images[i].data.data(), stack.frame_bytes());
    }
    return stack;
}

}  // namespace wzp
