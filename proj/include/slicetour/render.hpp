#pragma once

#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "slicetour/gif.hpp"
#include "slicetour/image.hpp"
#include "slicetour/slicer.hpp"

namespace slicetour {

// Out-of-slice glyph: a single grey pixel, or nothing at all.
enum class OutGlyph { Dot, Hidden };

struct RenderStyle {
    double in_radius = 2.0;  // filled disc, px
    OutGlyph out_glyph = OutGlyph::Dot;
    Rgba background{255, 255, 255, 255};
    Rgba in_color{0, 0, 0, 255};
    Rgba out_color{102, 102, 102, 255};  // 40% grey
    Rgba axis_color{64, 64, 64, 255};
    Rgba axis_circle_color{200, 200, 200, 255};
    std::vector<Rgba> group_palette = default_palette();
    double half_range = 1.0;  // data units mapped to half the canvas
    int width = 400;
    int height = 400;
    bool show_axes = true;

    static std::vector<Rgba> default_palette();

    // Throws DomainError unless half_range > 0 and the canvas is at least 64x64.
    void validate() const;

    // Every colour render_frame can produce; used as the GIF palette.
    std::vector<Rgba> colors() const;
};

// Group index per row from string labels: distinct labels in sorted order get
// 0, 1, 2, ...; empty input gives an empty result.
std::vector<int> group_indices(const std::vector<std::string>& labels);

// Canvas mapping: x_px = (x / half_range) * (width / 2) + width / 2, with
// the y axis pointing up. Out-slice glyphs are drawn first so no in-slice
// point is ever covered. `groups`, if non-empty, selects the palette colour of
// each in-slice point.
Image render_frame(const SliceView& view, const RenderStyle& style,
                   std::span<const int> groups = {},
                   std::span<const std::string> axis_labels = {});

enum class AnimationFormat { Gif, PngFrames };

// Chooses Gif for a ".gif" path and PngFrames (a directory) otherwise.
AnimationFormat animation_format_for(const std::filesystem::path& out);

// Streams frames to disk one at a time. PngFrames writes
// out/frame_0000.png, out/frame_0001.png, ... so lexicographic order is
// temporal order.
class AnimationWriter {
public:
    AnimationWriter(std::filesystem::path out, AnimationFormat format, const RenderStyle& style,
                    double fps);
    ~AnimationWriter();

    AnimationWriter(const AnimationWriter&) = delete;
    AnimationWriter& operator=(const AnimationWriter&) = delete;

    void add(const Image& frame);
    // Throws DomainError if no frame was added.
    void finish();

    std::size_t frame_count() const { return frames_; }

private:
    void flush_gif();

    std::filesystem::path out_;
    AnimationFormat format_;
    std::size_t frames_ = 0;
    bool finished_ = false;
    std::optional<GifEncoder> gif_;
    std::ofstream gif_file_;
};

std::string frame_file_name(std::size_t index);

void render_animation(std::span<const SliceView> views, const RenderStyle& style,
                      const std::filesystem::path& out, double fps,
                      std::optional<AnimationFormat> format = std::nullopt,
                      std::span<const int> groups = {},
                      std::span<const std::string> axis_labels = {});

} // namespace slicetour
