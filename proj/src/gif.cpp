#include "slicetour/gif.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "slicetour/error.hpp"

namespace slicetour {

namespace {

constexpr int kMaxCodes = 4096;

void put_u16(std::vector<std::uint8_t>& out, int v) {
    out.push_back(static_cast<std::uint8_t>(v & 0xff));
    out.push_back(static_cast<std::uint8_t>((v >> 8) & 0xff));
}

class BitWriter {
public:
    void write(int code, int bits) {
        buffer_ |= static_cast<std::uint32_t>(code) << count_;
        count_ += bits;
        while (count_ >= 8) {
            bytes_.push_back(static_cast<std::uint8_t>(buffer_ & 0xff));
            buffer_ >>= 8;
            count_ -= 8;
        }
    }
    std::vector<std::uint8_t> finish() {
        if (count_ > 0) bytes_.push_back(static_cast<std::uint8_t>(buffer_ & 0xff));
        buffer_ = 0;
        count_ = 0;
        return std::move(bytes_);
    }

private:
    std::uint32_t buffer_ = 0;
    int count_ = 0;
    std::vector<std::uint8_t> bytes_;
};

} // namespace

std::vector<std::uint8_t> gif_lzw_encode(std::span<const std::uint8_t> indices, int min_code_size) {
    const int clear = 1 << min_code_size;
    const int end_of_info = clear + 1;
    BitWriter bits;
    if (indices.empty()) {
        bits.write(clear, min_code_size + 1);
        bits.write(end_of_info, min_code_size + 1);
        return bits.finish();
    }

    // dictionary keyed by (prefix code << 8) | next index
    std::unordered_map<std::uint32_t, int> table;
    table.reserve(kMaxCodes * 2);
    int code_size = min_code_size + 1;
    int next_code = clear + 2;
    const auto reset = [&] {
        table.clear();
        code_size = min_code_size + 1;
        next_code = clear + 2;
    };

    bits.write(clear, code_size);
    int prefix = indices[0];
    for (std::size_t i = 1; i < indices.size(); ++i) {
        const std::uint8_t k = indices[i];
        const std::uint32_t key = (static_cast<std::uint32_t>(prefix) << 8) | k;
        if (const auto it = table.find(key); it != table.end()) {
            prefix = it->second;
            continue;
        }
        bits.write(prefix, code_size);
        table.emplace(key, next_code++);
        // the decoder adds this entry one code later, hence the strict '>'
        if (next_code > (1 << code_size) && code_size < 12) ++code_size;
        if (next_code == kMaxCodes) {
            bits.write(clear, code_size);
            reset();
        }
        prefix = k;
    }
    bits.write(prefix, code_size);
    // mirror the entry the decoder adds when it reads the final code
    if (next_code < kMaxCodes && next_code + 1 > (1 << code_size) && code_size < 12) ++code_size;
    bits.write(end_of_info, code_size);
    return bits.finish();
}

int gif_delay_for_fps(double fps) {
    if (!(fps > 0.0) || !std::isfinite(fps)) throw DomainError("fps must be positive");
    return std::max(1, static_cast<int>(std::lround(100.0 / fps)));
}

GifEncoder::GifEncoder(int width, int height, std::vector<Rgba> palette, int delay_centiseconds)
    : width_(width), height_(height), palette_(std::move(palette)), delay_(delay_centiseconds) {
    if (width <= 0 || height <= 0 || width > 65535 || height > 65535) {
        throw DomainError("GIF dimensions out of range");
    }
    if (palette_.empty() || palette_.size() > 256) throw DomainError("GIF palette needs 1..256 colours");
    table_bits_ = 1;
    while ((1u << table_bits_) < palette_.size()) ++table_bits_;
    for (std::size_t i = 0; i < palette_.size(); ++i) {
        lookup_.emplace(palette_[i].packed(), static_cast<std::uint8_t>(i));
    }

    const std::string_view magic = "GIF89a";
    out_.insert(out_.end(), magic.begin(), magic.end());
    put_u16(out_, width_);
    put_u16(out_, height_);
    out_.push_back(static_cast<std::uint8_t>(0x80 | (7 << 4) | (table_bits_ - 1)));
    out_.push_back(0);  // background colour index
    out_.push_back(0);  // pixel aspect ratio
    for (int i = 0; i < (1 << table_bits_); ++i) {
        const Rgba c = i < static_cast<int>(palette_.size()) ? palette_[static_cast<std::size_t>(i)] : Rgba{};
        out_.push_back(c.r);
        out_.push_back(c.g);
        out_.push_back(c.b);
    }
    const std::uint8_t netscape[] = {0x21, 0xff, 0x0b, 'N', 'E', 'T', 'S', 'C', 'A', 'P',
                                     'E',  '2',  '.',  '0', 0x03, 0x01, 0x00, 0x00, 0x00};
    out_.insert(out_.end(), std::begin(netscape), std::end(netscape));
}

std::uint8_t GifEncoder::index_of(Rgba c) const {
    if (const auto it = lookup_.find(c.packed()); it != lookup_.end()) return it->second;
    std::uint8_t best = 0;
    long best_d = std::numeric_limits<long>::max();
    for (std::size_t i = 0; i < palette_.size(); ++i) {
        const long dr = long{c.r} - palette_[i].r;
        const long dg = long{c.g} - palette_[i].g;
        const long db = long{c.b} - palette_[i].b;
        const long d = dr * dr + dg * dg + db * db;
        if (d < best_d) {
            best_d = d;
            best = static_cast<std::uint8_t>(i);
        }
    }
    return best;
}

void GifEncoder::add_frame(const Image& frame) {
    if (finished_) throw DomainError("GIF already finished");
    if (frame.width() != width_ || frame.height() != height_) {
        throw DimensionMismatch("GIF frame size differs from the animation size");
    }
    const std::uint8_t gce[] = {0x21, 0xf9, 0x04, 0x04,
                                static_cast<std::uint8_t>(delay_ & 0xff),
                                static_cast<std::uint8_t>((delay_ >> 8) & 0xff), 0x00, 0x00};
    out_.insert(out_.end(), std::begin(gce), std::end(gce));
    out_.push_back(0x2c);
    put_u16(out_, 0);
    put_u16(out_, 0);
    put_u16(out_, width_);
    put_u16(out_, height_);
    out_.push_back(0);

    std::vector<std::uint8_t> indices(static_cast<std::size_t>(width_) * height_);
    const auto& px = frame.bytes();
    for (std::size_t i = 0; i < indices.size(); ++i) {
        indices[i] = index_of({px[4 * i], px[4 * i + 1], px[4 * i + 2], px[4 * i + 3]});
    }
    const int min_code_size = std::max(2, table_bits_);
    out_.push_back(static_cast<std::uint8_t>(min_code_size));
    const auto data = gif_lzw_encode(indices, min_code_size);
    for (std::size_t pos = 0; pos < data.size(); pos += 255) {
        const auto len = std::min<std::size_t>(255, data.size() - pos);
        out_.push_back(static_cast<std::uint8_t>(len));
        out_.insert(out_.end(), data.begin() + static_cast<std::ptrdiff_t>(pos),
                    data.begin() + static_cast<std::ptrdiff_t>(pos + len));
    }
    out_.push_back(0);
    ++frames_;
}

void GifEncoder::finish() {
    if (finished_) return;
    out_.push_back(0x3b);
    finished_ = true;
}

std::vector<std::uint8_t> GifEncoder::take_bytes() {
    std::vector<std::uint8_t> bytes;
    bytes.swap(out_);
    return bytes;
}

} // namespace slicetour
