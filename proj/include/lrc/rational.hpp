#ifndef LRC_RATIONAL_HPP
#define LRC_RATIONAL_HPP

#include <cstdint>
#include <numeric>
#include <string>

#include "lrc/errors.hpp"

namespace lrc {

// Exact rational on int64. Big enough for every average this library
// computes (numerators are sums of at most C(24,12) values <= 24).
class Rat {
  public:
    constexpr Rat() : num_(0), den_(1) {}
    constexpr Rat(std::int64_t n) : num_(n), den_(1) {}
    Rat(std::int64_t n, std::int64_t d) : num_(n), den_(d) { normalize(); }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    Rat operator+(const Rat& o) const { return {num_ * o.den_ + o.num_ * den_, den_ * o.den_}; }
    Rat operator-(const Rat& o) const { return {num_ * o.den_ - o.num_ * den_, den_ * o.den_}; }
    Rat operator*(const Rat& o) const { return {num_ * o.num_, den_ * o.den_}; }
    Rat operator/(const Rat& o) const {
        if (o.num_ == 0) throw Error("rational division by zero");
        return {num_ * o.den_, den_ * o.num_};
    }
    bool operator==(const Rat& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Rat& o) const { return !(*this == o); }
    bool operator<(const Rat& o) const { return num_ * o.den_ < o.num_ * den_; }
    bool operator<=(const Rat& o) const { return num_ * o.den_ <= o.num_ * den_; }
    bool operator>(const Rat& o) const { return o < *this; }
    bool operator>=(const Rat& o) const { return o <= *this; }

    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    // Fixed-point rendering, round half away from zero; e.g. 44/9 -> "4.89".
    std::string to_decimal(int places) const {
        std::int64_t scale = 1;
        for (int i = 0; i < places; ++i) scale *= 10;
        std::int64_t n = num_ < 0 ? -num_ : num_;
        std::int64_t scaled = (2 * n * scale + den_) / (2 * den_);
        std::string body = std::to_string(scaled / scale);
        if (places > 0) {
            std::string frac = std::to_string(scaled % scale);
            body += "." + std::string(places - frac.size(), '0') + frac;
        }
        return (num_ < 0 ? "-" : "") + body;
    }

    std::string to_string() const { return std::to_string(num_) + "/" + std::to_string(den_); }

  private:
    void normalize() {
        if (den_ == 0) throw Error("rational with zero denominator");
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
        if (num_ == 0) den_ = 1;
    }

    std::int64_t num_, den_;
};

}  // namespace lrc

#endif
