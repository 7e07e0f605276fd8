#include "tfnp/bitstring.hpp"

#include "tfnp/error.hpp"

namespace tfnp {

namespace {

uint64_t width_mask(int width) {
    return width == 64 ? ~uint64_t{0} : (uint64_t{1} << width) - 1;
}

}  // namespace

BitString::BitString(int width, uint64_t value) : width_(width), value_(value) {
    if (width < 1 || width > 64)
        throw UsageError("bit string width must be in 1..64, got " + std::to_string(width));
    if ((value & ~width_mask(width)) != 0)
        throw UsageError("bit string value does not fit in " + std::to_string(width) + " bits");
}

BitString BitString::parse(std::string_view text) {
    if (text.empty()) throw ParseError("empty bit string");
    if (text.size() > 64) throw ParseError("bit string longer than 64 bits");
    uint64_t v = 0;
    for (char c : text) {
        if (c != '0' && c != '1')
            throw ParseError(std::string("bad bit character '") + c + "' in bit string");
        v = (v << 1) | uint64_t(c == '1');
    }
    return BitString(int(text.size()), v);
}

BitString BitString::ones(int width) {
    if (width < 1 || width > 64) throw UsageError("bit string width must be in 1..64");
    return BitString(width, width_mask(width));
}

BitString BitString::concat(const BitString& hi, const BitString& lo) {
    int w = hi.width_ + lo.width_;
    if (w > 64) throw UsageError("concatenated bit string exceeds 64 bits");
    return BitString(w, (hi.value_ << lo.width_) | lo.value_);
}

bool BitString::bit(int i) const {
    if (i < 0 || i >= width_) throw UsageError("bit index out of range");
    return (value_ >> (width_ - 1 - i)) & 1;
}

BitString BitString::prefix(int m) const {
    if (m < 1 || m > width_) throw UsageError("prefix length out of range");
    return BitString(m, value_ >> (width_ - m));
}

BitString BitString::suffix(int m) const {
    if (m < 1 || m > width_) throw UsageError("suffix length out of range");
    return BitString(m, value_ & width_mask(m));
}

std::string BitString::str() const {
    std::string s(size_t(width_), '0');
    for (int i = 0; i < width_; ++i)
        if (bit(i)) s[size_t(i)] = '1';
    return s;
}

bool BitString::operator<(const BitString& other) const {
    if (width_ != other.width_)
        throw UsageError("cannot order bit strings of different widths (" +
                         std::to_string(width_) + " vs " + std::to_string(other.width_) + ")");
    return value_ < other.value_;
}

}  // namespace tfnp
