#include "slicetour/font.hpp"

#include <array>
#include <cctype>
#include <cstdint>

namespace slicetour {

namespace {

using Glyph = std::array<std::uint8_t, 5>;

// one row per entry, bit 2 = left column
constexpr std::array<Glyph, 10> kDigits{{
    {7, 5, 5, 5, 7}, {2, 6, 2, 2, 7}, {7, 1, 7, 4, 7}, {7, 1, 7, 1, 7}, {5, 5, 7, 1, 1},
    {7, 4, 7, 1, 7}, {7, 4, 7, 5, 7}, {7, 1, 1, 2, 2}, {7, 5, 7, 5, 7}, {7, 5, 7, 1, 7},
}};

constexpr std::array<Glyph, 26> kLetters{{
    {2, 5, 7, 5, 5}, {6, 5, 6, 5, 6}, {3, 4, 4, 4, 3}, {6, 5, 5, 5, 6}, {7, 4, 6, 4, 7},
    {7, 4, 6, 4, 4}, {3, 4, 5, 5, 3}, {5, 5, 7, 5, 5}, {7, 2, 2, 2, 7}, {1, 1, 1, 5, 2},
    {5, 5, 6, 5, 5}, {4, 4, 4, 4, 7}, {5, 7, 7, 5, 5}, {6, 5, 5, 5, 5}, {2, 5, 5, 5, 2},
    {6, 5, 6, 4, 4}, {2, 5, 5, 6, 3}, {6, 5, 6, 5, 5}, {3, 4, 2, 1, 6}, {7, 2, 2, 2, 2},
    {5, 5, 5, 5, 7}, {5, 5, 5, 5, 2}, {5, 5, 7, 7, 5}, {5, 5, 2, 5, 5}, {5, 5, 2, 2, 2},
    {7, 1, 2, 4, 7},
}};

constexpr Glyph kUnderscore{0, 0, 0, 0, 7};
constexpr Glyph kDash{0, 0, 7, 0, 0};
constexpr Glyph kDot{0, 0, 0, 0, 2};
constexpr Glyph kSpace{0, 0, 0, 0, 0};
constexpr Glyph kUnknown{7, 1, 2, 0, 2};

const Glyph& glyph_for(char ch) {
    const auto u = static_cast<unsigned char>(ch);
    if (std::isdigit(u)) return kDigits[static_cast<std::size_t>(u - '0')];
    if (std::isalpha(u)) return kLetters[static_cast<std::size_t>(std::toupper(u) - 'A')];
    switch (ch) {
    case '_': return kUnderscore;
    case '-': return kDash;
    case '.': return kDot;
    case ' ': return kSpace;
    default: return kUnknown;
    }
}

} // namespace

void draw_text(Image& image, int x, int y, std::string_view text, Rgba color) {
    for (char ch : text) {
        const Glyph& g = glyph_for(ch);
        for (int row = 0; row < kGlyphHeight; ++row) {
            for (int col = 0; col < 3; ++col) {
                if (g[static_cast<std::size_t>(row)] & (4 >> col)) image.set(x + col, y + row, color);
            }
        }
        x += kGlyphAdvance;
    }
}

} // namespace slicetour
