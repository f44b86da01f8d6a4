#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "shapecell/errors.hpp"

namespace shapecell::imaging {

// H x W x C float image, row-major, channel-last, values in [0, 1].
// C is 1 (gray), 3 (RGB) or 4 (CMYK).
class Image {
public:
    Image() = default;
    Image(int height, int width, int channels, float fill = 0.0f)
        : height_(height), width_(width), channels_(channels),
          data_(static_cast<std::size_t>(height) * width * channels, fill) {
        if (height < 1 || width < 1) throw InvalidInputError("Image: dimensions must be positive");
        if (channels != 1 && channels != 3 && channels != 4)
            throw InvalidInputError("Image: channels must be 1, 3 or 4, got " + std::to_string(channels));
    }

    int height() const { return height_; }
    int width() const { return width_; }
    int channels() const { return channels_; }

    float& at(int y, int x, int c) {
        return data_[(static_cast<std::size_t>(y) * width_ + x) * channels_ + c];
    }
    float at(int y, int x, int c) const {
        return data_[(static_cast<std::size_t>(y) * width_ + x) * channels_ + c];
    }

    std::vector<float>& data() { return data_; }
    const std::vector<float>& data() const { return data_; }

private:
    int height_ = 0;
    int width_ = 0;
    int channels_ = 0;
    std::vector<float> data_;
};

// H x W scalar map. Values may be negative before rescaling.
class GrayMap {
public:
    GrayMap() = default;
    GrayMap(int height, int width, float fill = 0.0f)
        : height_(height), width_(width), data_(static_cast<std::size_t>(height) * width, fill) {
        if (height < 1 || width < 1) throw InvalidInputError("GrayMap: dimensions must be positive");
    }

    int height() const { return height_; }
    int width() const { return width_; }

    float& at(int y, int x) { return data_[static_cast<std::size_t>(y) * width_ + x]; }
    float at(int y, int x) const { return data_[static_cast<std::size_t>(y) * width_ + x]; }

    std::vector<float>& data() { return data_; }
    const std::vector<float>& data() const { return data_; }

private:
    int height_ = 0;
    int width_ = 0;
    std::vector<float> data_;
};

// H x W boolean grid stored as 0/1 bytes.
class Mask {
public:
    Mask() = default;
    Mask(int height, int width, bool fill = false)
        : height_(height), width_(width),
          data_(static_cast<std::size_t>(height) * width, fill ? 1 : 0) {
        if (height < 1 || width < 1) throw InvalidInputError("Mask: dimensions must be positive");
    }

    int height() const { return height_; }
    int width() const { return width_; }

    bool at(int y, int x) const { return data_[static_cast<std::size_t>(y) * width_ + x] != 0; }
    void set(int y, int x, bool v) { data_[static_cast<std::size_t>(y) * width_ + x] = v ? 1 : 0; }

    std::vector<std::uint8_t>& data() { return data_; }
    const std::vector<std::uint8_t>& data() const { return data_; }

    std::int64_t foreground_count() const {
        std::int64_t n = 0;
        for (auto v : data_) n += (v != 0);
        return n;
    }

    bool operator==(const Mask& other) const {
        return height_ == other.height_ && width_ == other.width_ && data_ == other.data_;
    }

private:
    int height_ = 0;
    int width_ = 0;
    std::vector<std::uint8_t> data_;
};

inline void require_same_size(const Mask& a, const Mask& b, const char* what) {
    if (a.height() != b.height() || a.width() != b.width())
        throw InvalidInputError(std::string(what) + ": mask dimensions differ (" +
                                std::to_string(a.height()) + "x" + std::to_string(a.width()) + " vs " +
                                std::to_string(b.height()) + "x" + std::to_string(b.width()) + ")");
}

}  // namespace shapecell::imaging
