#include "neurocap/text/tokenize.hpp"

#include <cctype>
#include <cstdint>

namespace neurocap::text {

namespace {

bool is_unicode_space(char32_t cp) {
    if (cp == 0x20 || (cp >= 0x09 && cp <= 0x0D)) return true;
    switch (cp) {
        case 0x85: case 0xA0: case 0x1680: case 0x2028: case 0x2029:
        case 0x202F: case 0x205F: case 0x3000:
            return true;
        default:
            return cp >= 0x2000 && cp <= 0x200A;
    }
}

// Decodes the code point at `pos` and returns its byte length. Malformed
// sequences decode as a single opaque byte.
std::size_t decode_utf8(std::string_view s, std::size_t pos, char32_t& cp) {
    const auto b0 = static_cast<unsigned char>(s[pos]);
    std::size_t len = 1;
    if (b0 < 0x80) {
        cp = b0;
        return 1;
    }
    if ((b0 & 0xE0) == 0xC0) {
        len = 2;
        cp = b0 & 0x1F;
    } else if ((b0 & 0xF0) == 0xE0) {
        len = 3;
        cp = b0 & 0x0F;
    } else if ((b0 & 0xF8) == 0xF0) {
        len = 4;
        cp = b0 & 0x07;
    } else {
        cp = 0xFFFD;
        return 1;
    }
    if (pos + len > s.size()) {
        cp = 0xFFFD;
        return 1;
    }
    for (std::size_t k = 1; k < len; ++k) {
        const auto b = static_cast<unsigned char>(s[pos + k]);
        if ((b & 0xC0) != 0x80) {
            cp = 0xFFFD;
            return 1;
        }
        cp = (cp << 6) | (b & 0x3F);
    }
    return len;
}

bool is_ascii_punct(char c) {
    const auto u = static_cast<unsigned char>(c);
    return u < 0x80 && std::ispunct(u) != 0;
}

void flush(std::string& current, std::vector<std::string>& out) {
    std::size_t first = 0;
    std::size_t last = current.size();
    while (first < last && is_ascii_punct(current[first])) ++first;
    while (last > first && is_ascii_punct(current[last - 1])) --last;
    if (last > first) out.emplace_back(current.substr(first, last - first));
    current.clear();
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> out;
    std::string current;
    std::size_t pos = 0;
    while (pos < text.size()) {
        char32_t cp = 0;
        const std::size_t len = decode_utf8(text, pos, cp);
        if (is_unicode_space(cp)) {
            flush(current, out);
        } else if (len == 1) {
            const auto u = static_cast<unsigned char>(text[pos]);
            current.push_back(u < 0x80 ? static_cast<char>(std::tolower(u)) : text[pos]);
        } else {
            current.append(text.substr(pos, len));
        }
        pos += len;
    }
    flush(current, out);
    return out;
}

std::string normalize(std::string_view text) {
    std::string out;
    for (const auto& tok : tokenize(text)) {
        if (!out.empty()) out.push_back(' ');
        out += tok;
    }
    return out;
}

}  // namespace neurocap::text
