#pragma once

#include <string_view>

#include "slicetour/image.hpp"

namespace slicetour {

// 3x5 pixel glyphs for digits, letters (lowercase drawn as uppercase) and
// "_-. ". Anything else is drawn as '?'. Advance is 4 pixels per character.
void draw_text(Image& image, int x, int y, std::string_view text, Rgba color);

constexpr int kGlyphAdvance = 4;
constexpr int kGlyphHeight = 5;

} // namespace slicetour
