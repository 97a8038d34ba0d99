#pragma once

#include <ostream>
#include <string>
#include <string_view>
#include <utility>

#include "martkit/bigint.hpp"
#include "martkit/errors.hpp"

namespace martkit {

// Exact rational scalar in canonical form: denominator > 0 and
// gcd(|numerator|, denominator) = 1, so structural equality is value
// equality. The only numeric scalar used anywhere in this library.
class Rat {
public:
    Rat() : num_(0), den_(1) {}
    Rat(long long v) : num_(v), den_(1) {} // NOLINT: implicit by design
    Rat(int v) : num_(v), den_(1) {}       // NOLINT
    Rat(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }
    Rat(long long num, long long den) : num_(num), den_(den) { normalize(); }

    // Accepts "n" or "num/den"; the result is canonical.
    static Rat parse(std::string_view s) {
        const auto slash = s.find('/');
        if (slash == std::string_view::npos) return Rat(BigInt::from_string(s), BigInt(1));
        return Rat(BigInt::from_string(s.substr(0, slash)), BigInt::from_string(s.substr(slash + 1)));
    }

    // "num/den", or just "num" when the denominator is 1.
    [[nodiscard]] std::string to_string() const {
        if (den_ == BigInt(1)) return num_.to_string();
        return num_.to_string() + "/" + den_.to_string();
    }

    [[nodiscard]] const BigInt& numerator() const { return num_; }
    [[nodiscard]] const BigInt& denominator() const { return den_; }
    [[nodiscard]] bool is_zero() const { return num_.is_zero(); }
    [[nodiscard]] int sign() const { return num_.sign(); }
    [[nodiscard]] Rat abs() const { return sign() < 0 ? -*this : *this; }

    friend Rat operator+(const Rat& a, const Rat& b) {
        return Rat(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rat operator-(const Rat& a, const Rat& b) {
        return Rat(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rat operator*(const Rat& a, const Rat& b) {
        // cross-reduce before multiplying to keep the factors small
        const BigInt g1 = gcd(a.num_, b.den_);
        const BigInt g2 = gcd(b.num_, a.den_);
        Rat r;
        r.num_ = (a.num_ / g1) * (b.num_ / g2);
        r.den_ = (a.den_ / g2) * (b.den_ / g1);
        return r;
    }
    friend Rat operator/(const Rat& a, const Rat& b) {
        if (b.is_zero()) throw domain_error("division by zero");
        return Rat(a.num_ * b.den_, a.den_ * b.num_);
    }
    Rat operator-() const {
        Rat r = *this;
        r.num_ = -r.num_;
        return r;
    }

    Rat& operator+=(const Rat& o) { return *this = *this + o; }
    Rat& operator-=(const Rat& o) { return *this = *this - o; }
    Rat& operator*=(const Rat& o) { return *this = *this * o; }
    Rat& operator/=(const Rat& o) { return *this = *this / o; }

    static int compare(const Rat& a, const Rat& b) {
        return BigInt::compare(a.num_ * b.den_, b.num_ * a.den_);
    }
    friend bool operator==(const Rat& a, const Rat& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
    friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
    friend bool operator<(const Rat& a, const Rat& b) { return compare(a, b) < 0; }
    friend bool operator<=(const Rat& a, const Rat& b) { return compare(a, b) <= 0; }
    friend bool operator>(const Rat& a, const Rat& b) { return compare(a, b) > 0; }
    friend bool operator>=(const Rat& a, const Rat& b) { return compare(a, b) >= 0; }

    friend std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.to_string(); }

private:
    BigInt num_;
    BigInt den_;

    void normalize() {
        if (den_.is_zero()) throw domain_error("rational with zero denominator");
        if (den_.sign() < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        if (num_.is_zero()) {
            den_ = BigInt(1);
            return;
        }
        const BigInt g = gcd(num_, den_);
        num_ = num_ / g;
        den_ = den_ / g;
    }
};

/// Canonical rational num/den; the sign ends up on the numerator.
inline Rat rat(long long num, long long den) { return Rat(num, den); }

} // namespace martkit
