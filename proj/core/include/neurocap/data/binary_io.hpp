#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace neurocap::data {

/// Little-endian encoder into a byte buffer.
class ByteWriter {
public:
    void u32(std::uint32_t v) { put(v, 4); }
    void u64(std::uint64_t v) { put(v, 8); }
    void f32(float v) { put(std::bit_cast<std::uint32_t>(v), 4); }
    void f64(double v) { put(std::bit_cast<std::uint64_t>(v), 8); }
    void raw(std::string_view s);
    void string(std::string_view s);  // u32 length + bytes

    const std::vector<std::byte>& bytes() const { return buf_; }
    std::vector<std::byte> take() { return std::move(buf_); }

private:
    void put(std::uint64_t v, int width) {
        for (int k = 0; k < width; ++k) buf_.push_back(static_cast<std::byte>((v >> (8 * k)) & 0xFF));
    }
    std::vector<std::byte> buf_;
};

/// Little-endian decoder; every read past the end throws DataError.
class ByteReader {
public:
    explicit ByteReader(std::span<const std::byte> bytes) : bytes_(bytes) {}

    std::uint32_t u32() { return static_cast<std::uint32_t>(get(4)); }
    std::uint64_t u64() { return get(8); }
    float f32() { return std::bit_cast<float>(static_cast<std::uint32_t>(get(4))); }
    double f64() { return std::bit_cast<double>(get(8)); }
    std::string raw(std::size_t n);
    std::string string(std::size_t max_len = 1U << 30);

    std::size_t position() const { return pos_; }
    std::size_t remaining() const { return bytes_.size() - pos_; }
    bool at_end() const { return pos_ == bytes_.size(); }

private:
    std::uint64_t get(int width);
    void need(std::size_t n) const;

    std::span<const std::byte> bytes_;
    std::size_t pos_ = 0;
};

}  // namespace neurocap::data
