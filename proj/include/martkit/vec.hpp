#pragma once

#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "martkit/errors.hpp"
#include "martkit/rational.hpp"

namespace martkit {

// Point in Q^d. All vectors taking part in one computation must share the
// same dimension d >= 1; mixing dimensions throws.
class VecD {
public:
    explicit VecD(std::vector<Rat> components) : comps_(std::move(components)) {
        if (comps_.empty()) throw domain_error("vector must have dimension >= 1");
    }
    VecD(std::initializer_list<Rat> components) : VecD(std::vector<Rat>(components)) {}

    static VecD zero(std::size_t dim) { return VecD(std::vector<Rat>(dim, Rat(0))); }
    static VecD scalar(Rat value) { return VecD({std::move(value)}); }

    [[nodiscard]] std::size_t dim() const { return comps_.size(); }
    const Rat& operator[](std::size_t i) const { return comps_[i]; }
    [[nodiscard]] const std::vector<Rat>& components() const { return comps_; }

    // The d = 1 entry, for code paths restricted to scalar tables.
    [[nodiscard]] const Rat& scalar_value() const {
        if (comps_.size() != 1) throw dimension_error("expected a scalar (d = 1) value");
        return comps_[0];
    }

    friend VecD operator+(const VecD& a, const VecD& b) {
        check_dims(a, b);
        std::vector<Rat> r;
        r.reserve(a.dim());
        for (std::size_t i = 0; i < a.dim(); ++i) r.push_back(a.comps_[i] + b.comps_[i]);
        return VecD(std::move(r));
    }
    friend VecD operator-(const VecD& a, const VecD& b) {
        check_dims(a, b);
        std::vector<Rat> r;
        r.reserve(a.dim());
        for (std::size_t i = 0; i < a.dim(); ++i) r.push_back(a.comps_[i] - b.comps_[i]);
        return VecD(std::move(r));
    }
    friend VecD operator*(const Rat& c, const VecD& v) {
        std::vector<Rat> r;
        r.reserve(v.dim());
        for (const auto& x : v.comps_) r.push_back(c * x);
        return VecD(std::move(r));
    }
    VecD operator-() const { return Rat(-1) * *this; }

    [[nodiscard]] bool is_zero() const {
        for (const auto& x : comps_)
            if (!x.is_zero()) return false;
        return true;
    }

    friend bool operator==(const VecD& a, const VecD& b) { return a.comps_ == b.comps_; }
    friend bool operator!=(const VecD& a, const VecD& b) { return !(a == b); }

    [[nodiscard]] std::string to_string() const {
        std::string s = "(";
        for (std::size_t i = 0; i < comps_.size(); ++i) {
            if (i) s += ", ";
            s += comps_[i].to_string();
        }
        return s + ")";
    }

private:
    std::vector<Rat> comps_;

    static void check_dims(const VecD& a, const VecD& b) {
        if (a.dim() != b.dim())
            throw dimension_error("vector dimensions differ: " + std::to_string(a.dim()) + " vs " +
                                  std::to_string(b.dim()));
    }
};

/// Sum of absolute values of the components. Rational-valued on rational
/// vectors, which is what keeps every norm computation here exact.
inline Rat l1_norm(const VecD& v) {
    Rat s(0);
    for (const auto& x : v.components()) s += x.abs();
    return s;
}

inline Rat l1_distance(const VecD& a, const VecD& b) { return l1_norm(a - b); }

/// Maximum pairwise L1 distance; 0 for the empty and singleton sets.
inline Rat diameter(std::span<const VecD> points) {
    for (std::size_t i = 1; i < points.size(); ++i)
        if (points[i].dim() != points[0].dim())
            throw dimension_error("diameter over points of mixed dimensions");
    Rat best(0);
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = i + 1; j < points.size(); ++j) {
            Rat d = l1_distance(points[i], points[j]);
            if (d > best) best = std::move(d);
        }
    return best;
}

inline Rat diameter(const std::vector<VecD>& points) {
    return diameter(std::span<const VecD>(points));
}

} // namespace martkit
