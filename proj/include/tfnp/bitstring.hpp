#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace tfnp {

// Fixed-width bit string, most-significant bit first. Widths run 1..64,
// which covers every oracle domain this repo enumerates.
//
// On equal widths, lexicographic order of the rendered string coincides with
// numeric order of value(); that single order is used for all tie-breaking
// repo-wide. Comparing strings of different widths is a usage error.
class BitString {
  public:
    BitString() : width_(1), value_(0) {}
    BitString(int width, uint64_t value);

    static BitString parse(std::string_view text);
    static BitString zeros(int width) { return BitString(width, 0); }
    static BitString ones(int width);
    static BitString concat(const BitString& hi, const BitString& lo);

    int width() const { return width_; }
    uint64_t value() const { return value_; }

    // i = 0 names the most significant bit.
    bool bit(int i) const;

    BitString prefix(int m) const;  // leading m bits
    BitString suffix(int m) const;  // trailing m bits

    std::string str() const;

    friend bool operator==(const BitString&, const BitString&) = default;
    bool operator<(const BitString& other) const;
    bool operator<=(const BitString& other) const { return !(other < *this); }
    bool operator>(const BitString& other) const { return other < *this; }
    bool operator>=(const BitString& other) const { return !(*this < other); }

  private:
    int width_;
    uint64_t value_;
};

}  // namespace tfnp
