#include "neurocap/data/binary_io.hpp"

#include "neurocap/error.hpp"

namespace neurocap::data {

void ByteWriter::raw(std::string_view s) {
    for (char c : s) buf_.push_back(static_cast<std::byte>(c));
}

void ByteWriter::string(std::string_view s) {
    u32(static_cast<std::uint32_t>(s.size()));
    raw(s);
}

void ByteReader::need(std::size_t n) const {
    if (remaining() < n) {
        throw DataError("truncated data: need " + std::to_string(n) + " bytes at offset " +
                        std::to_string(pos_) + ", " + std::to_string(remaining()) + " left");
    }
}

std::uint64_t ByteReader::get(int width) {
    need(static_cast<std::size_t>(width));
    std::uint64_t v = 0;
    for (int k = 0; k < width; ++k) {
        v |= static_cast<std::uint64_t>(bytes_[pos_ + static_cast<std::size_t>(k)]) << (8 * k);
    }
    pos_ += static_cast<std::size_t>(width);
    return v;
}

std::string ByteReader::raw(std::size_t n) {
    need(n);
    std::string s(reinterpret_cast<const char*>(bytes_.data() + pos_), n);
    pos_ += n;
    return s;
}

std::string ByteReader::string(std::size_t max_len) {
    const std::uint32_t n = u32();
    if (n > max_len) throw DataError("string length " + std::to_string(n) + " exceeds limit");
    return raw(n);
}

}  // namespace neurocap::data
