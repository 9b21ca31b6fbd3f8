#include "doctest.h"

#include <array>
#include <fstream>
#include <iterator>

#include "slicetour/error.hpp"
#include "slicetour/font.hpp"
#include "slicetour/render.hpp"
#include "support.hpp"

using namespace slicetour;

namespace {

// Straightforward GIF decoder used as an oracle against the encoder.
struct DecodedGif {
    int width = 0;
    int height = 0;
    std::vector<Rgba> palette;
    bool loops = false;
    std::vector<int> delays;
    std::vector<std::vector<std::uint8_t>> frames;
};

std::vector<std::uint8_t> lzw_decode(const std::vector<std::uint8_t>& data, int min_code_size,
                                     std::size_t expected) {
    const int clear = 1 << min_code_size;
    const int eoi = clear + 1;
    std::vector<std::vector<std::uint8_t>> dict;
    auto reset = [&] {
        dict.assign(static_cast<std::size_t>(clear + 2), {});
        for (int i = 0; i < clear; ++i) dict[static_cast<std::size_t>(i)] = {static_cast<std::uint8_t>(i)};
    };
    reset();
    int size = min_code_size + 1;
    std::size_t bitpos = 0;
    auto read = [&]() {
        int code = 0;
        for (int b = 0; b < size; ++b, ++bitpos) {
            const std::size_t byte = bitpos / 8;
            REQUIRE(byte < data.size());
            code |= ((data[byte] >> (bitpos % 8)) & 1) << b;
        }
        return code;
    };
    std::vector<std::uint8_t> out;
    int prev = -1;
    for (;;) {
        const int code = read();
        if (code == clear) {
            reset();
            size = min_code_size + 1;
            prev = -1;
            continue;
        }
        if (code == eoi) break;
        std::vector<std::uint8_t> entry;
        if (code < static_cast<int>(dict.size())) {
            entry = dict[static_cast<std::size_t>(code)];
            if (prev >= 0 && dict.size() < 4096) {
                auto added = dict[static_cast<std::size_t>(prev)];
                added.push_back(entry[0]);
                dict.push_back(added);
            }
        } else {
            REQUIRE(prev >= 0);
            REQUIRE(code == static_cast<int>(dict.size()));
            entry = dict[static_cast<std::size_t>(prev)];
            entry.push_back(entry[0]);
            dict.push_back(entry);
        }
        out.insert(out.end(), entry.begin(), entry.end());
        prev = code;
        if (static_cast<int>(dict.size()) == (1 << size) && size < 12) ++size;
    }
    CHECK(out.size() == expected);
    return out;
}

DecodedGif decode_gif(const std::vector<std::uint8_t>& b) {
    DecodedGif g;
    std::size_t pos = 0;
    auto u8 = [&] {
        REQUIRE(pos < b.size());
        return b[pos++];
    };
    auto u16 = [&] {
        const int lo = u8();
        return lo | (u8() << 8);
    };
    REQUIRE(b.size() > 13);
    REQUIRE(std::string(b.begin(), b.begin() + 6) == "GIF89a");
    pos = 6;
    g.width = u16();
    g.height = u16();
    const int flags = u8();
    u8();
    u8();
    REQUIRE((flags & 0x80) != 0);
    const int colors = 1 << ((flags & 7) + 1);
    for (int i = 0; i < colors; ++i) {
        const std::uint8_t r = u8(), gr = u8(), bl = u8();
        g.palette.push_back({r, gr, bl, 255});
    }
    int pending_delay = -1;
    auto sub_blocks = [&] {
        std::vector<std::uint8_t> data;
        for (int len = u8(); len != 0; len = u8()) {
            for (int i = 0; i < len; ++i) data.push_back(u8());
        }
        return data;
    };
    for (;;) {
        const int tag = u8();
        if (tag == 0x3b) break;
        if (tag == 0x21) {
            const int label = u8();
            const auto data = sub_blocks();
            if (label == 0xf9) {
                REQUIRE(data.size() == 4);
                pending_delay = data[1] | (data[2] << 8);
            } else if (label == 0xff && data.size() >= 11 &&
                       std::string(data.begin(), data.begin() + 11) == "NETSCAPE2.0") {
                g.loops = true;
            }
            continue;
        }
        REQUIRE(tag == 0x2c);
        CHECK(u16() == 0);
        CHECK(u16() == 0);
        CHECK(u16() == g.width);
        CHECK(u16() == g.height);
        CHECK((u8() & 0x80) == 0);
        const int min_code = u8();
        const auto data = sub_blocks();
        g.frames.push_back(lzw_decode(data, min_code, static_cast<std::size_t>(g.width) * g.height));
        g.delays.push_back(pending_delay);
        pending_delay = -1;
    }
    CHECK(pos == b.size());
    return g;
}

std::vector<std::uint8_t> read_bytes(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

SliceView two_point_view(double h = 0.1) {
    Matrix m(2, 3);
    m << 0.0, 0.0, 0.0,   // in the slice, projects to the centre
         0.5, 0.0, 0.5;   // outside, projects to (300, 200)
    return slice_view(make_dataset(m), test::plane(test::unit(3, 0), test::unit(3, 1)),
                      SliceSpec::from_h(h, 3));
}

RenderStyle plain_style() {
    RenderStyle s;
    s.show_axes = false;
    return s;
}

} // namespace

TEST_CASE("lzw round trip through the oracle decoder") {
    Rng rng = make_rng(5);
    std::uniform_int_distribution<int> pick(0, 15);
    for (std::size_t n : {std::size_t{1}, std::size_t{2}, std::size_t{17}, std::size_t{5000},
                          std::size_t{200000}}) {
        std::vector<std::uint8_t> idx(n);
        for (auto& v : idx) v = static_cast<std::uint8_t>(pick(rng));
        CHECK(lzw_decode(gif_lzw_encode(idx, 4), 4, n) == idx);
    }
    // long runs fill the dictionary and force clear codes
    std::vector<std::uint8_t> runs(300000);
    for (std::size_t i = 0; i < runs.size(); ++i) runs[i] = static_cast<std::uint8_t>((i / 777) % 3);
    CHECK(lzw_decode(gif_lzw_encode(runs, 2), 2, runs.size()) == runs);
    CHECK(lzw_decode(gif_lzw_encode({}, 2), 2, 0).empty());
}

TEST_CASE("gif delay from fps") {
    CHECK(gif_delay_for_fps(25) == 4);
    CHECK(gif_delay_for_fps(10) == 10);
    CHECK(gif_delay_for_fps(30) == 3);
    CHECK(gif_delay_for_fps(1000) == 1);
    CHECK_THROWS_AS(gif_delay_for_fps(0), DomainError);
    CHECK_THROWS_AS(gif_delay_for_fps(-5), DomainError);
}

TEST_CASE("in-slice point is a disc at the canvas centre") {
    const RenderStyle style = plain_style();
    const Image img = render_frame(two_point_view(), style);
    CHECK(img.width() == 400);
    CHECK(img.at(200, 200) == style.in_color);
    CHECK(img.at(201, 199) == style.in_color);
    CHECK(img.at(205, 200) == style.background);
    CHECK(img.at(300, 200) == style.out_color);  // x = 0.5 maps to 300
}

TEST_CASE("axis mapping puts positive y upward") {
    Matrix m(1, 3);
    m << 0.0, 0.5, 0.0;
    const SliceView v = slice_view(make_dataset(m), test::plane(test::unit(3, 0), test::unit(3, 1)),
                                   SliceSpec::from_h(0.1, 3));
    const Image img = render_frame(v, plain_style());
    CHECK(img.at(200, 100) == Rgba{0, 0, 0, 255});
}

TEST_CASE("out glyph styles") {
    RenderStyle style = plain_style();
    style.out_glyph = OutGlyph::Hidden;
    const Image hidden = render_frame(two_point_view(), style);
    CHECK(hidden.at(300, 200) == style.background);

    // an empty slice shows only out glyphs
    const SliceView none = two_point_view(1e-9);
    CHECK(none.inside_count() == 1);  // the origin still has distance 0
    Matrix m(3, 3);
    m << 0.1, 0.1, 0.5,
         -0.2, 0.3, -0.5,
         0.4, -0.4, 0.6;
    const SliceView empty = slice_view(make_dataset(m), test::plane(test::unit(3, 0), test::unit(3, 1)),
                                       SliceSpec::from_h(0.1, 3));
    REQUIRE(empty.inside_count() == 0);
    const RenderStyle dots = plain_style();
    const Image img = render_frame(empty, dots);
    int out_pixels = 0;
    for (int y = 0; y < img.height(); ++y)
        for (int x = 0; x < img.width(); ++x) {
            const Rgba c = img.at(x, y);
            CHECK((c == dots.background || c == dots.out_color));
            out_pixels += c == dots.out_color;
        }
    CHECK(out_pixels == 3);
}

TEST_CASE("in-slice glyphs cover out-slice ones") {
    Matrix m(2, 3);
    m << 0.0, 0.0, 0.9,   // out, same pixel as the in point
         0.0, 0.0, 0.0;
    const SliceView v = slice_view(make_dataset(m), test::plane(test::unit(3, 0), test::unit(3, 1)),
                                   SliceSpec::from_h(0.1, 3));
    const Image img = render_frame(v, plain_style());
    CHECK(img.at(200, 200) == Rgba{0, 0, 0, 255});
}

TEST_CASE("group colours") {
    CHECK(group_indices({"b", "a", "c", "a"}) == std::vector<int>{1, 0, 2, 0});
    CHECK(group_indices({}).empty());
    const RenderStyle style = plain_style();
    const std::vector<int> groups{2, 0};
    const Image img = render_frame(two_point_view(), style, groups);
    CHECK(img.at(200, 200) == style.group_palette[2]);
    const std::vector<int> wrong{1};
    CHECK_THROWS_AS(render_frame(two_point_view(), style, wrong), DimensionMismatch);
}

TEST_CASE("axes overlay and labels") {
    RenderStyle style;
    const std::vector<std::string> labels{"x1", "x2", "x3"};
    const Image with = render_frame(two_point_view(), style, {}, labels);
    style.show_axes = false;
    const Image without = render_frame(two_point_view(), style);
    CHECK_FALSE(with == without);
    // the circle centre sits in the lower-left corner
    CHECK(with.at(48, 400 - 48) == RenderStyle{}.axis_color);

    Image text(64, 64);
    draw_text(text, 2, 2, "x10", {0, 0, 0, 255});
    int dark = 0;
    for (int y = 0; y < 64; ++y)
        for (int x = 0; x < 64; ++x) dark += text.at(x, y) == Rgba{0, 0, 0, 255};
    CHECK(dark > 10);
}

TEST_CASE("rendering is deterministic") {
    Rng rng = make_rng(8);
    const Dataset d = make_dataset(test::normal_matrix(500, 5, rng) * 0.4);
    const SliceView v = slice_view(d, random_frame(5, 2, rng), SliceSpec::from_eps(0.3, 5));
    const Image a = render_frame(v, RenderStyle{});
    const Image b = render_frame(v, RenderStyle{});
    CHECK(a == b);
    CHECK(encode_png(a) == encode_png(b));
    const auto png = encode_png(a);
    REQUIRE(png.size() > 8);
    CHECK(png[1] == 'P');
    CHECK(png[2] == 'N');
    CHECK(png[3] == 'G');
}

TEST_CASE("render style validation") {
    RenderStyle s;
    s.half_range = 0.0;
    CHECK_THROWS_AS(s.validate(), DomainError);
    s = RenderStyle{};
    s.width = 32;
    CHECK_THROWS_AS(render_frame(two_point_view(), s), DomainError);
    const auto colors = RenderStyle{}.colors();
    CHECK(colors.size() <= 256);
    CHECK(colors.front() == RenderStyle{}.background);
}

TEST_CASE("gif animation decodes back to the rendered frames") {
    Rng rng = make_rng(9);
    const Dataset d = make_dataset(test::normal_matrix(300, 4, rng) * 0.4);
    std::vector<SliceView> views;
    for (int i = 0; i < 3; ++i) views.push_back(slice_view(d, random_frame(4, 2, rng), SliceSpec::from_eps(0.4, 4)));
    const RenderStyle style;
    const auto path = test::temp_path("three.gif");
    render_animation(views, style, path, 25.0);

    const DecodedGif g = decode_gif(read_bytes(path));
    CHECK(g.width == 400);
    CHECK(g.height == 400);
    CHECK(g.loops);
    REQUIRE(g.frames.size() == 3);
    for (std::size_t f = 0; f < 3; ++f) {
        CHECK(g.delays[f] == 4);
        const Image img = render_frame(views[f], style);
        bool same = true;
        for (int y = 0; y < 400 && same; ++y)
            for (int x = 0; x < 400 && same; ++x) {
                const Rgba c = g.palette[g.frames[f][static_cast<std::size_t>(y) * 400 + x]];
                same = c == img.at(x, y);
            }
        CHECK(same);
    }
}

TEST_CASE("single-frame and hundred-frame gifs") {
    Rng rng = make_rng(10);
    const Dataset d = make_dataset(test::normal_matrix(50, 3, rng) * 0.3);
    RenderStyle style;
    style.width = style.height = 64;
    const SliceView v = slice_view(d, random_frame(3, 2, rng), SliceSpec::from_eps(0.3, 3));

    const auto one = test::temp_path("one.gif");
    render_animation(std::vector<SliceView>{v}, style, one, 25.0);
    CHECK(decode_gif(read_bytes(one)).frames.size() == 1);

    const auto hundred = test::temp_path("hundred.gif");
    render_animation(std::vector<SliceView>(100, v), style, hundred, 25.0);
    const DecodedGif g = decode_gif(read_bytes(hundred));
    CHECK(g.frames.size() == 100);
    int total = 0;
    for (int delay : g.delays) total += delay;
    CHECK(total == 400);  // 4 seconds
}

TEST_CASE("png frame directory output") {
    Rng rng = make_rng(11);
    const Dataset d = make_dataset(test::normal_matrix(50, 3, rng) * 0.3);
    RenderStyle style;
    style.width = style.height = 64;
    const SliceView v = slice_view(d, random_frame(3, 2, rng), SliceSpec::from_eps(0.3, 3));
    const auto dir = test::temp_path("frames_dir");
    std::filesystem::remove_all(dir);
    CHECK(animation_format_for(dir) == AnimationFormat::PngFrames);
    CHECK(animation_format_for("x.GIF") == AnimationFormat::Gif);
    render_animation(std::vector<SliceView>(12, v), style, dir, 25.0);
    CHECK(frame_file_name(0) == "frame_0000.png");
    CHECK(frame_file_name(11) == "frame_0011.png");
    CHECK(std::filesystem::exists(dir / "frame_0000.png"));
    CHECK(std::filesystem::exists(dir / "frame_0011.png"));
    CHECK_FALSE(std::filesystem::exists(dir / "frame_0012.png"));
    CHECK(read_bytes(dir / "frame_0003.png") == encode_png(render_frame(v, style)));
}

TEST_CASE("animation writer without frames fails") {
    AnimationWriter w(test::temp_path("nothing.gif"), AnimationFormat::Gif, RenderStyle{}, 25.0);
    CHECK_THROWS_AS(w.finish(), DomainError);
    CHECK_THROWS_AS(render_animation({}, RenderStyle{}, test::temp_path("none.gif"), 25.0), DomainError);
}
