#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "martkit/condexp.hpp"
#include "martkit/errors.hpp"
#include "martkit/measure.hpp"
#include "martkit/partition.hpp"

namespace martkit {

// Discrete-time process on the finite horizon {0..T}: one value table per
// time, all on the same universe and with the same dimension.
class ProcessTable {
public:
    explicit ProcessTable(std::vector<FnTable> tables) : tables_(std::move(tables)) {
        if (tables_.empty()) throw universe_error("process needs at least one time index");
        for (const auto& t : tables_) {
            if (t.n() != tables_[0].n()) throw universe_error("process tables cover different universes");
            if (t.dim() != tables_[0].dim()) throw dimension_error("process tables mix dimensions");
        }
    }

    [[nodiscard]] int horizon() const { return static_cast<int>(tables_.size()) - 1; }
    [[nodiscard]] int times() const { return static_cast<int>(tables_.size()); }
    [[nodiscard]] int n() const { return tables_[0].n(); }
    [[nodiscard]] std::size_t dim() const { return tables_[0].dim(); }
    const FnTable& operator[](int t) const { return tables_[static_cast<std::size_t>(t)]; }
    [[nodiscard]] const std::vector<FnTable>& tables() const { return tables_; }

    friend bool operator==(const ProcessTable& a, const ProcessTable& b) { return a.tables_ == b.tables_; }
    friend bool operator!=(const ProcessTable& a, const ProcessTable& b) { return !(a == b); }

private:
    std::vector<FnTable> tables_;
};

// Time-indexed family of sub-sigma-algebras. The monotone-refinement
// invariant (information only accumulates) is checked by
// validate_filtration; operations that depend on it state so.
class Filtration {
public:
    explicit Filtration(std::vector<Partition> parts) : parts_(std::move(parts)) {
        if (parts_.empty()) throw universe_error("filtration needs at least one time index");
        for (const auto& p : parts_)
            if (p.universe_size() != parts_[0].universe_size())
                throw universe_error("filtration partitions cover different universes");
    }

    static Filtration constant(int horizon, const Partition& p) {
        return Filtration(std::vector<Partition>(static_cast<std::size_t>(horizon) + 1, p));
    }

    [[nodiscard]] int horizon() const { return static_cast<int>(parts_.size()) - 1; }
    [[nodiscard]] int n() const { return parts_[0].universe_size(); }
    const Partition& operator[](int t) const { return parts_[static_cast<std::size_t>(t)]; }
    [[nodiscard]] const std::vector<Partition>& parts() const { return parts_; }

    friend bool operator==(const Filtration& a, const Filtration& b) { return a.parts_ == b.parts_; }
    friend bool operator!=(const Filtration& a, const Filtration& b) { return !(a == b); }

private:
    std::vector<Partition> parts_;
};

/// True iff later partitions refine earlier ones. Adjacent pairs suffice
/// since refinement is transitive.
inline bool validate_filtration(const Filtration& f) {
    for (int t = 0; t + 1 <= f.horizon(); ++t)
        if (!refines(f[t + 1], f[t])) return false;
    return true;
}

namespace detail {
inline void check_same_horizon(const ProcessTable& x, const Filtration& f) {
    if (x.horizon() != f.horizon())
        throw universe_error("process horizon " + std::to_string(x.horizon()) +
                             " does not match filtration horizon " + std::to_string(f.horizon()));
    if (x.n() != f.n())
        throw universe_error("process and filtration cover different universes");
}

/// Joint table (j, w) -> X_j(w) on {0..t} x Omega in the flat encoding.
inline FnTable joint_table(const ProcessTable& x, int t) {
    std::vector<VecD> values;
    values.reserve(static_cast<std::size_t>(t + 1) * static_cast<std::size_t>(x.n()));
    for (int j = 0; j <= t; ++j)
        for (int w = 0; w < x.n(); ++w) values.push_back(x[j][w]);
    return FnTable(std::move(values));
}
} // namespace detail

/// Smallest filtration the process is adapted to: F_t is generated by the
/// level sets of X_0..X_t.
inline Filtration natural_filtration(const ProcessTable& x) {
    std::vector<Partition> parts;
    parts.reserve(static_cast<std::size_t>(x.times()));
    parts.push_back(generate_from_function(x.n(), x[0].values()));
    for (int t = 1; t <= x.horizon(); ++t)
        parts.push_back(join(parts.back(), generate_from_function(x.n(), x[t].values())));
    return Filtration(std::move(parts));
}

/// X_t measurable w.r.t. F_t for every t: the present is observable now.
inline bool is_adapted(const ProcessTable& x, const Filtration& f) {
    detail::check_same_horizon(x, f);
    for (int t = 0; t <= x.horizon(); ++t)
        if (!is_measurable_fn(f[t], x[t].values())) return false;
    return true;
}

/// Time of the first adaptedness failure, or -1 when adapted.
inline int first_non_adapted_time(const ProcessTable& x, const Filtration& f) {
    detail::check_same_horizon(x, f);
    for (int t = 0; t <= x.horizon(); ++t)
        if (!is_measurable_fn(f[t], x[t].values())) return t;
    return -1;
}

// Progressive measurability, taken literally: for every t the joint map on
// {0..t} x Omega is measurable w.r.t. the product sigma-algebra of the
// discrete time axis and F_t. Equivalence with adaptedness in discrete time
// is a tested theorem, not a definition.
inline bool is_progressive(const ProcessTable& x, const Filtration& f) {
    detail::check_same_horizon(x, f);
    for (int t = 0; t <= x.horizon(); ++t) {
        const TimedPartition product = product_time_partition(t, f[t]);
        if (!is_measurable_fn(product.flat, detail::joint_table(x, t).values())) return false;
    }
    return true;
}

inline TimedPartition predictable_sigma(const Filtration& f) {
    return predictable_sigma(f.parts());
}

/// Joint map measurable w.r.t. the predictable sigma-algebra of f.
/// Must agree with is_predictable_shifted on every input.
inline bool is_predictable(const ProcessTable& x, const Filtration& f) {
    detail::check_same_horizon(x, f);
    const TimedPartition sigma_p = predictable_sigma(f.parts());
    return is_measurable_fn(sigma_p.flat, detail::joint_table(x, x.horizon()).values());
}

/// Successor characterization of predictability in discrete time: X_0 is
/// F_0-measurable and X_{t+1} is F_t-measurable (tomorrow is known today).
inline bool is_predictable_shifted(const ProcessTable& x, const Filtration& f) {
    detail::check_same_horizon(x, f);
    if (!is_measurable_fn(f[0], x[0].values())) return false;
    for (int t = 0; t + 1 <= x.horizon(); ++t)
        if (!is_measurable_fn(f[t], x[t + 1].values())) return false;
    return true;
}

// --- process algebra ---------------------------------------------------------

inline ProcessTable p_add(const ProcessTable& x, const ProcessTable& y) {
    if (x.horizon() != y.horizon()) throw universe_error("process horizons differ");
    std::vector<FnTable> tables;
    tables.reserve(static_cast<std::size_t>(x.times()));
    for (int t = 0; t <= x.horizon(); ++t) tables.push_back(x[t] + y[t]);
    return ProcessTable(std::move(tables));
}

inline ProcessTable p_sub(const ProcessTable& x, const ProcessTable& y) {
    if (x.horizon() != y.horizon()) throw universe_error("process horizons differ");
    std::vector<FnTable> tables;
    tables.reserve(static_cast<std::size_t>(x.times()));
    for (int t = 0; t <= x.horizon(); ++t) tables.push_back(x[t] - y[t]);
    return ProcessTable(std::move(tables));
}

inline ProcessTable p_scale(const Rat& c, const ProcessTable& x) {
    std::vector<FnTable> tables;
    tables.reserve(static_cast<std::size_t>(x.times()));
    for (int t = 0; t <= x.horizon(); ++t) tables.push_back(c * x[t]);
    return ProcessTable(std::move(tables));
}

inline ProcessTable p_neg(const ProcessTable& x) { return p_scale(Rat(-1), x); }

inline ProcessTable p_scale_fn(const std::function<Rat(int)>& c, const ProcessTable& x) {
    std::vector<FnTable> tables;
    tables.reserve(static_cast<std::size_t>(x.times()));
    for (int t = 0; t <= x.horizon(); ++t) tables.push_back(c(t) * x[t]);
    return ProcessTable(std::move(tables));
}

inline ProcessTable p_max(const ProcessTable& x, const ProcessTable& y) {
    if (x.horizon() != y.horizon()) throw universe_error("process horizons differ");
    std::vector<FnTable> tables;
    tables.reserve(static_cast<std::size_t>(x.times()));
    for (int t = 0; t <= x.horizon(); ++t) tables.push_back(pointwise_max(x[t], y[t]));
    return ProcessTable(std::move(tables));
}

inline ProcessTable p_norm(const ProcessTable& x) {
    std::vector<FnTable> tables;
    tables.reserve(static_cast<std::size_t>(x.times()));
    for (int t = 0; t <= x.horizon(); ++t) tables.push_back(pointwise_norm(x[t]));
    return ProcessTable(std::move(tables));
}

inline ProcessTable p_compose(const std::function<VecD(int, const VecD&)>& g, const ProcessTable& x) {
    std::vector<FnTable> tables;
    tables.reserve(static_cast<std::size_t>(x.times()));
    for (int t = 0; t <= x.horizon(); ++t) {
        std::vector<VecD> values;
        values.reserve(static_cast<std::size_t>(x.n()));
        for (int w = 0; w < x.n(); ++w) values.push_back(g(t, x[t][w]));
        tables.push_back(FnTable(std::move(values)));
    }
    return ProcessTable(std::move(tables));
}

/// Y_t = sum of X_0..X_t.
inline ProcessTable p_partial_sum(const ProcessTable& x) {
    std::vector<FnTable> tables;
    tables.reserve(static_cast<std::size_t>(x.times()));
    tables.push_back(x[0]);
    for (int t = 1; t <= x.horizon(); ++t) tables.push_back(tables.back() + x[t]);
    return ProcessTable(std::move(tables));
}

} // namespace martkit
