#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "martkit/errors.hpp"

namespace martkit {

// Arbitrary-precision signed integer.
//
// Values that fit in int64 are kept inline; larger magnitudes live in a
// little-endian base-2^32 limb vector. The representation is canonical:
// the limb vector is used exactly when the value does not fit in int64,
// so structural equality is value equality.
class BigInt {
public:
    BigInt() = default;
    BigInt(long long v) : small_(v) {} // NOLINT: implicit by design
    BigInt(long v) : small_(v) {}      // NOLINT
    BigInt(int v) : small_(v) {}       // NOLINT

    static BigInt from_string(std::string_view s);
    [[nodiscard]] std::string to_string() const;

    [[nodiscard]] bool is_zero() const { return limbs_.empty() && small_ == 0; }
    [[nodiscard]] int sign() const {
        if (!limbs_.empty()) return negative_ ? -1 : 1;
        return small_ < 0 ? -1 : (small_ > 0 ? 1 : 0);
    }
    [[nodiscard]] bool fits_int64() const { return limbs_.empty(); }
    [[nodiscard]] long long as_int64() const { return small_; } // only valid if fits_int64()

    [[nodiscard]] BigInt abs() const;
    BigInt operator-() const;

    friend BigInt operator+(const BigInt& a, const BigInt& b);
    friend BigInt operator-(const BigInt& a, const BigInt& b);
    friend BigInt operator*(const BigInt& a, const BigInt& b);
    friend BigInt operator/(const BigInt& a, const BigInt& b); // truncates toward zero
    friend BigInt operator%(const BigInt& a, const BigInt& b); // sign follows the dividend

    BigInt& operator+=(const BigInt& o) { return *this = *this + o; }
    BigInt& operator-=(const BigInt& o) { return *this = *this - o; }
    BigInt& operator*=(const BigInt& o) { return *this = *this * o; }

    // quotient truncated toward zero, remainder with the dividend's sign
    static std::pair<BigInt, BigInt> divmod(const BigInt& a, const BigInt& b);

    static int compare(const BigInt& a, const BigInt& b);

    friend bool operator==(const BigInt& a, const BigInt& b) { return compare(a, b) == 0; }
    friend bool operator!=(const BigInt& a, const BigInt& b) { return compare(a, b) != 0; }
    friend bool operator<(const BigInt& a, const BigInt& b) { return compare(a, b) < 0; }
    friend bool operator<=(const BigInt& a, const BigInt& b) { return compare(a, b) <= 0; }
    friend bool operator>(const BigInt& a, const BigInt& b) { return compare(a, b) > 0; }
    friend bool operator>=(const BigInt& a, const BigInt& b) { return compare(a, b) >= 0; }

    friend std::ostream& operator<<(std::ostream& os, const BigInt& v) { return os << v.to_string(); }

private:
    using Mag = std::vector<std::uint32_t>;

    long long small_ = 0;
    bool negative_ = false;
    Mag limbs_; // empty <=> small mode

    [[nodiscard]] Mag magnitude() const;
    [[nodiscard]] bool negative() const { return limbs_.empty() ? small_ < 0 : negative_; }
    static BigInt from_mag(Mag mag, bool negative);

    static void trim(Mag& m) {
        while (!m.empty() && m.back() == 0) m.pop_back();
    }
    static int cmp_mag(const Mag& a, const Mag& b);
    static Mag add_mag(const Mag& a, const Mag& b);
    static Mag sub_mag(const Mag& a, const Mag& b); // requires a >= b
    static Mag mul_mag(const Mag& a, const Mag& b);
    static std::pair<Mag, Mag> divmod_mag(const Mag& a, const Mag& b);
    static std::pair<Mag, std::uint32_t> divmod_small_mag(const Mag& a, std::uint32_t b);
    static Mag mag_from_u64(std::uint64_t v);
};

inline BigInt::Mag BigInt::mag_from_u64(std::uint64_t v) {
    Mag m;
    while (v != 0) {
        m.push_back(static_cast<std::uint32_t>(v & 0xffffffffu));
        v >>= 32;
    }
    return m;
}

inline BigInt::Mag BigInt::magnitude() const {
    if (!limbs_.empty()) return limbs_;
    std::uint64_t v = small_ < 0 ? 0 - static_cast<std::uint64_t>(small_) : static_cast<std::uint64_t>(small_);
    return mag_from_u64(v);
}

inline BigInt BigInt::from_mag(Mag mag, bool negative) {
    trim(mag);
    BigInt r;
    if (mag.size() <= 2) {
        std::uint64_t v = 0;
        for (std::size_t i = mag.size(); i-- > 0;) v = (v << 32) | mag[i];
        if (v == 0) return r;
        if (negative && v <= (std::uint64_t{1} << 63)) {
            r.small_ = static_cast<long long>(0 - v);
            return r;
        }
        if (!negative && v <= static_cast<std::uint64_t>(INT64_MAX)) {
            r.small_ = static_cast<long long>(v);
            return r;
        }
    }
    r.limbs_ = std::move(mag);
    r.negative_ = negative;
    return r;
}

inline int BigInt::cmp_mag(const Mag& a, const Mag& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (std::size_t i = a.size(); i-- > 0;)
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    return 0;
}

inline BigInt::Mag BigInt::add_mag(const Mag& a, const Mag& b) {
    const Mag& lo = a.size() < b.size() ? a : b;
    const Mag& hi = a.size() < b.size() ? b : a;
    Mag r(hi.size() + 1, 0);
    std::uint64_t carry = 0;
    for (std::size_t i = 0; i < hi.size(); ++i) {
        std::uint64_t s = carry + hi[i] + (i < lo.size() ? lo[i] : 0u);
        r[i] = static_cast<std::uint32_t>(s);
        carry = s >> 32;
    }
    r[hi.size()] = static_cast<std::uint32_t>(carry);
    trim(r);
    return r;
}

inline BigInt::Mag BigInt::sub_mag(const Mag& a, const Mag& b) {
    Mag r(a.size(), 0);
    std::int64_t borrow = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        std::int64_t d = static_cast<std::int64_t>(a[i]) - borrow - (i < b.size() ? b[i] : 0u);
        if (d < 0) {
            d += (std::int64_t{1} << 32);
            borrow = 1;
        } else {
            borrow = 0;
        }
        r[i] = static_cast<std::uint32_t>(d);
    }
    trim(r);
    return r;
}

inline BigInt::Mag BigInt::mul_mag(const Mag& a, const Mag& b) {
    if (a.empty() || b.empty()) return {};
    Mag r(a.size() + b.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        std::uint64_t carry = 0;
        for (std::size_t j = 0; j < b.size(); ++j) {
            std::uint64_t cur = r[i + j] + carry + static_cast<std::uint64_t>(a[i]) * b[j];
            r[i + j] = static_cast<std::uint32_t>(cur);
            carry = cur >> 32;
        }
        r[i + b.size()] += static_cast<std::uint32_t>(carry);
    }
    trim(r);
    return r;
}

inline std::pair<BigInt::Mag, std::uint32_t> BigInt::divmod_small_mag(const Mag& a, std::uint32_t b) {
    Mag q(a.size(), 0);
    std::uint64_t rem = 0;
    for (std::size_t i = a.size(); i-- > 0;) {
        std::uint64_t cur = (rem << 32) | a[i];
        q[i] = static_cast<std::uint32_t>(cur / b);
        rem = cur % b;
    }
    trim(q);
    return {std::move(q), static_cast<std::uint32_t>(rem)};
}

// Shift-and-subtract long division on magnitudes. Operand sizes in this
// library stay tiny, so the bit loop is not a bottleneck.
inline std::pair<BigInt::Mag, BigInt::Mag> BigInt::divmod_mag(const Mag& a, const Mag& b) {
    if (b.empty()) throw domain_error("division by zero");
    if (cmp_mag(a, b) < 0) return {Mag{}, a};
    if (b.size() == 1) {
        auto [q, r] = divmod_small_mag(a, b[0]);
        return {std::move(q), r ? Mag{r} : Mag{}};
    }
    const std::size_t bits = a.size() * 32;
    Mag q(a.size(), 0);
    Mag rem;
    for (std::size_t i = bits; i-- > 0;) {
        // rem = rem * 2 + bit_i(a)
        std::uint32_t carry = (a[i / 32] >> (i % 32)) & 1u;
        for (auto& limb : rem) {
            std::uint32_t next = limb >> 31;
            limb = (limb << 1) | carry;
            carry = next;
        }
        if (carry) rem.push_back(carry);
        if (cmp_mag(rem, b) >= 0) {
            rem = sub_mag(rem, b);
            q[i / 32] |= (1u << (i % 32));
        }
    }
    trim(q);
    return {std::move(q), std::move(rem)};
}

inline BigInt BigInt::abs() const {
    if (limbs_.empty()) {
        if (small_ == INT64_MIN) return from_mag(mag_from_u64(std::uint64_t{1} << 63), false);
        return BigInt(small_ < 0 ? -small_ : small_);
    }
    BigInt r = *this;
    r.negative_ = false;
    return r;
}

inline BigInt BigInt::operator-() const {
    if (limbs_.empty()) {
        if (small_ == INT64_MIN) return from_mag(mag_from_u64(std::uint64_t{1} << 63), false);
        return BigInt(-small_);
    }
    BigInt r = *this;
    r.negative_ = !negative_;
    return r;
}

inline int BigInt::compare(const BigInt& a, const BigInt& b) {
    if (a.limbs_.empty() && b.limbs_.empty())
        return a.small_ < b.small_ ? -1 : (a.small_ > b.small_ ? 1 : 0);
    const bool an = a.negative();
    const bool bn = b.negative();
    if (an != bn) return an ? -1 : 1;
    const int c = cmp_mag(a.magnitude(), b.magnitude());
    return an ? -c : c;
}

inline BigInt operator+(const BigInt& a, const BigInt& b) {
    if (a.limbs_.empty() && b.limbs_.empty()) {
        long long r;
        if (!__builtin_add_overflow(a.small_, b.small_, &r)) return BigInt(r);
    }
    const bool an = a.negative();
    const bool bn = b.negative();
    const auto am = a.magnitude();
    const auto bm = b.magnitude();
    if (an == bn) return BigInt::from_mag(BigInt::add_mag(am, bm), an);
    const int c = BigInt::cmp_mag(am, bm);
    if (c == 0) return BigInt();
    if (c > 0) return BigInt::from_mag(BigInt::sub_mag(am, bm), an);
    return BigInt::from_mag(BigInt::sub_mag(bm, am), bn);
}

inline BigInt operator-(const BigInt& a, const BigInt& b) {
    if (a.limbs_.empty() && b.limbs_.empty()) {
        long long r;
        if (!__builtin_sub_overflow(a.small_, b.small_, &r)) return BigInt(r);
    }
    return a + (-b);
}

inline BigInt operator*(const BigInt& a, const BigInt& b) {
    if (a.limbs_.empty() && b.limbs_.empty()) {
        long long r;
        if (!__builtin_mul_overflow(a.small_, b.small_, &r)) return BigInt(r);
    }
    if (a.is_zero() || b.is_zero()) return BigInt();
    return BigInt::from_mag(BigInt::mul_mag(a.magnitude(), b.magnitude()),
                            a.negative() != b.negative());
}

inline std::pair<BigInt, BigInt> BigInt::divmod(const BigInt& a, const BigInt& b) {
    if (b.is_zero()) throw domain_error("division by zero");
    if (a.limbs_.empty() && b.limbs_.empty()) {
        if (!(a.small_ == INT64_MIN && b.small_ == -1))
            return {BigInt(a.small_ / b.small_), BigInt(a.small_ % b.small_)};
    }
    auto [qm, rm] = divmod_mag(a.magnitude(), b.magnitude());
    return {from_mag(std::move(qm), a.negative() != b.negative()),
            from_mag(std::move(rm), a.negative())};
}

inline BigInt operator/(const BigInt& a, const BigInt& b) { return BigInt::divmod(a, b).first; }
inline BigInt operator%(const BigInt& a, const BigInt& b) { return BigInt::divmod(a, b).second; }

inline BigInt gcd(const BigInt& a, const BigInt& b) {
    BigInt x = a.abs();
    BigInt y = b.abs();
    while (!y.is_zero()) {
        BigInt r = x % y;
        x = std::move(y);
        y = std::move(r);
    }
    return x;
}

inline BigInt BigInt::from_string(std::string_view s) {
    if (s.empty()) throw parse_error("empty integer literal");
    bool neg = false;
    std::size_t pos = 0;
    if (s[0] == '-' || s[0] == '+') {
        neg = s[0] == '-';
        pos = 1;
    }
    if (pos == s.size()) throw parse_error("integer literal has no digits: '" + std::string(s) + "'");
    BigInt r;
    for (; pos < s.size(); ++pos) {
        const char c = s[pos];
        if (c < '0' || c > '9')
            throw parse_error("invalid digit in integer literal: '" + std::string(s) + "'");
        r = r * BigInt(10) + BigInt(c - '0');
    }
    return neg ? -r : r;
}

inline std::string BigInt::to_string() const {
    if (limbs_.empty()) return std::to_string(small_);
    Mag m = limbs_;
    std::string out;
    while (!m.empty()) {
        auto [q, r] = divmod_small_mag(m, 1000000000u);
        std::string part = std::to_string(r);
        if (!q.empty()) part.insert(0, 9 - part.size(), '0');
        out.insert(0, part);
        m = std::move(q);
    }
    if (negative_) out.insert(0, 1, '-');
    return out;
}

} // namespace martkit
