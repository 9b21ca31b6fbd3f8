#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

namespace slicetour {

struct Rgba {
    std::uint8_t r = 0, g = 0, b = 0, a = 255;

    bool operator==(const Rgba&) const = default;
    std::uint32_t packed() const {
        return (std::uint32_t{r} << 24) | (std::uint32_t{g} << 16) | (std::uint32_t{b} << 8) | a;
    }
};

// 8-bit RGBA raster, row-major, origin at the top-left.
class Image {
public:
    Image(int width, int height, Rgba fill = {255, 255, 255, 255});

    int width() const { return width_; }
    int height() const { return height_; }

    Rgba at(int x, int y) const;
    // Silently ignores pixels outside the canvas.
    void set(int x, int y, Rgba c);
    void fill_disc(double cx, double cy, double radius, Rgba c);
    void draw_line(int x0, int y0, int x1, int y1, Rgba c);

    const std::vector<std::uint8_t>& bytes() const { return pixels_; }

    bool operator==(const Image&) const = default;

private:
    int width_;
    int height_;
    std::vector<std::uint8_t> pixels_;
};

// PNG encoding through libpng; output depends only on the pixels.
std::vector<std::uint8_t> encode_png(const Image& image);
void write_png(const std::filesystem::path& path, const Image& image);

} // namespace slicetour
