#include "slicetour/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>

#include "slicetour/error.hpp"
#include "slicetour/font.hpp"

namespace slicetour {

std::vector<Rgba> RenderStyle::default_palette() {
    // Okabe-Ito, minus black (reserved for ungrouped in-slice points)
    return {{230, 159, 0, 255},  {86, 180, 233, 255}, {0, 158, 115, 255}, {240, 228, 66, 255},
            {0, 114, 178, 255},  {213, 94, 0, 255},   {204, 121, 167, 255}};
}

void RenderStyle::validate() const {
    if (!(half_range > 0.0) || !std::isfinite(half_range)) {
        throw DomainError("half_range must be positive");
    }
    if (width < 64 || height < 64) throw DomainError("canvas must be at least 64x64");
    if (!(in_radius > 0.0)) throw DomainError("in-slice glyph radius must be positive");
}

std::vector<Rgba> RenderStyle::colors() const {
    std::vector<Rgba> all{background, out_color, in_color, axis_color, axis_circle_color};
    all.insert(all.end(), group_palette.begin(), group_palette.end());
    std::vector<Rgba> unique;
    for (const Rgba& c : all) {
        if (std::find(unique.begin(), unique.end(), c) == unique.end()) unique.push_back(c);
    }
    return unique;
}

std::vector<int> group_indices(const std::vector<std::string>& labels) {
    std::map<std::string, int> ids;
    for (const auto& l : labels) ids.emplace(l, 0);
    int next = 0;
    for (auto& [label, id] : ids) id = next++;
    std::vector<int> out;
    out.reserve(labels.size());
    for (const auto& l : labels) out.push_back(ids.at(l));
    return out;
}

namespace {

void draw_axes(Image& img, const Frame& basis, const RenderStyle& style,
               std::span<const std::string> labels) {
    const double r = 0.1 * std::min(style.width, style.height);
    const double cx = 8 + r;
    const double cy = style.height - 8 - r;
    constexpr int kSegments = 64;
    for (int i = 0; i < kSegments; ++i) {
        const double a0 = 2 * std::numbers::pi * i / kSegments;
        const double a1 = 2 * std::numbers::pi * (i + 1) / kSegments;
        img.draw_line(static_cast<int>(std::lround(cx + r * std::cos(a0))),
                      static_cast<int>(std::lround(cy - r * std::sin(a0))),
                      static_cast<int>(std::lround(cx + r * std::cos(a1))),
                      static_cast<int>(std::lround(cy - r * std::sin(a1))), style.axis_circle_color);
    }
    for (int j = 0; j < basis.p(); ++j) {
        const double ex = cx + r * basis.matrix()(j, 0);
        const double ey = cy - r * basis.matrix()(j, 1);
        img.draw_line(static_cast<int>(std::lround(cx)), static_cast<int>(std::lround(cy)),
                      static_cast<int>(std::lround(ex)), static_cast<int>(std::lround(ey)),
                      style.axis_color);
        if (j < static_cast<int>(labels.size())) {
            const double lx = ex + (ex >= cx ? 2 : -2 - kGlyphAdvance * static_cast<double>(labels[j].size()));
            const double ly = ey - kGlyphHeight / 2.0;
            draw_text(img, static_cast<int>(std::lround(lx)), static_cast<int>(std::lround(ly)),
                      labels[static_cast<std::size_t>(j)], style.axis_color);
        }
    }
}

} // namespace

Image render_frame(const SliceView& view, const RenderStyle& style, std::span<const int> groups,
                   std::span<const std::string> axis_labels) {
    style.validate();
    if (view.projected.cols() < 2) throw DimensionMismatch("rendering needs 2-D projections");
    const auto n = static_cast<std::size_t>(view.projected.rows());
    if (!groups.empty() && groups.size() != n) {
        throw DimensionMismatch("group count does not match point count");
    }
    Image img(style.width, style.height, style.background);
    if (style.show_axes && view.basis.d() >= 2) draw_axes(img, view.basis, style, axis_labels);

    const double sx = style.width / 2.0 / style.half_range;
    const double sy = style.height / 2.0 / style.half_range;
    const auto to_px = [&](std::size_t i) {
        const double x = view.projected(static_cast<Eigen::Index>(i), 0) * sx + style.width / 2.0;
        const double y = style.height / 2.0 - view.projected(static_cast<Eigen::Index>(i), 1) * sy;
        return std::pair{x, y};
    };

    if (style.out_glyph == OutGlyph::Dot) {
        for (std::size_t i = 0; i < n; ++i) {
            if (view.inside[i]) continue;
            const auto [x, y] = to_px(i);
            if (x < 0 || y < 0) continue;
            img.set(static_cast<int>(x), static_cast<int>(y), style.out_color);
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (!view.inside[i]) continue;
        const auto [x, y] = to_px(i);
        Rgba c = style.in_color;
        if (!groups.empty() && !style.group_palette.empty()) {
            c = style.group_palette[static_cast<std::size_t>(groups[i]) % style.group_palette.size()];
        }
        img.fill_disc(x, y, style.in_radius, c);
    }
    return img;
}

AnimationFormat animation_format_for(const std::filesystem::path& out) {
    auto ext = out.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    return ext == ".gif" ? AnimationFormat::Gif : AnimationFormat::PngFrames;
}

std::string frame_file_name(std::size_t index) {
    char name[32];
    std::snprintf(name, sizeof name, "frame_%04zu.png", index);
    return name;
}

AnimationWriter::AnimationWriter(std::filesystem::path out, AnimationFormat format,
                                 const RenderStyle& style, double fps)
    : out_(std::move(out)), format_(format) {
    style.validate();
    const int delay = gif_delay_for_fps(fps);
    if (format_ == AnimationFormat::Gif) {
        gif_.emplace(style.width, style.height, style.colors(), delay);
        gif_file_.open(out_, std::ios::binary | std::ios::trunc);
        if (!gif_file_) throw IoError("cannot write " + out_.string());
    } else {
        std::error_code ec;
        std::filesystem::create_directories(out_, ec);
        if (ec) throw IoError("cannot create directory " + out_.string() + ": " + ec.message());
    }
}

AnimationWriter::~AnimationWriter() = default;

void AnimationWriter::flush_gif() {
    const auto bytes = gif_->take_bytes();
    gif_file_.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!gif_file_) throw IoError("write failed for " + out_.string());
}

void AnimationWriter::add(const Image& frame) {
    if (finished_) throw DomainError("animation already finished");
    if (format_ == AnimationFormat::Gif) {
        gif_->add_frame(frame);
        flush_gif();
    } else {
        write_png(out_ / frame_file_name(frames_), frame);
    }
    ++frames_;
}

void AnimationWriter::finish() {
    if (finished_) return;
    if (frames_ == 0) throw DomainError("animation has no frames");
    if (format_ == AnimationFormat::Gif) {
        gif_->finish();
        flush_gif();
        gif_file_.close();
        if (!gif_file_) throw IoError("write failed for " + out_.string());
    }
    finished_ = true;
}

void render_animation(std::span<const SliceView> views, const RenderStyle& style,
                      const std::filesystem::path& out, double fps,
                      std::optional<AnimationFormat> format, std::span<const int> groups,
                      std::span<const std::string> axis_labels) {
    if (views.empty()) throw DomainError("render_animation needs at least one view");
    AnimationWriter writer(out, format.value_or(animation_format_for(out)), style, fps);
    for (const auto& view : views) writer.add(render_frame(view, style, groups, axis_labels));
    writer.finish();
}

} // namespace slicetour
