#pragma once

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "slicetour/image.hpp"

namespace slicetour {

// Minimal GIF89a encoder: one global palette (at most 256 colours), LZW
// compressed full frames, NETSCAPE2.0 infinite loop. Pixels whose colour is
// not in the palette are mapped to the nearest palette entry.
class GifEncoder {
public:
    GifEncoder(int width, int height, std::vector<Rgba> palette, int delay_centiseconds);

    void add_frame(const Image& frame);
    // Appends the trailer; further frames are rejected.
    void finish();

    // Bytes produced so far that have not been taken yet.
    std::vector<std::uint8_t> take_bytes();

    std::size_t frame_count() const { return frames_; }

private:
    std::uint8_t index_of(Rgba c) const;

    int width_;
    int height_;
    std::vector<Rgba> palette_;
    int table_bits_;
    int delay_;
    std::size_t frames_ = 0;
    bool finished_ = false;
    std::unordered_map<std::uint32_t, std::uint8_t> lookup_;
    std::vector<std::uint8_t> out_;
};

// fps -> per-frame delay in hundredths of a second (at least 1).
int gif_delay_for_fps(double fps);

// Encodes LZW data for GIF image blocks (exposed for testing).
std::vector<std::uint8_t> gif_lzw_encode(std::span<const std::uint8_t> indices, int min_code_size);

} // namespace slicetour
