#pragma once

#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "martkit/errors.hpp"
#include "martkit/parallel.hpp"
#include "martkit/partition.hpp"
#include "martkit/rational.hpp"
#include "martkit/vec.hpp"

namespace martkit {

// Finite measure space: outcomes {0..n-1} with nonnegative rational weights.
// The sigma-algebra is the full power set; sub-sigma-algebras are Partitions.
class MeasureSpace {
public:
    MeasureSpace(int n, std::vector<Rat> weights, std::vector<std::string> labels = {})
        : n_(n), weights_(std::move(weights)), labels_(std::move(labels)) {
        if (n_ <= 0) throw universe_error("measure space needs at least one outcome");
        if (static_cast<int>(weights_.size()) != n_)
            throw universe_error("expected " + std::to_string(n_) + " weights, got " +
                                 std::to_string(weights_.size()));
        if (!labels_.empty() && static_cast<int>(labels_.size()) != n_)
            throw universe_error("labels must be empty or one per outcome");
        for (int w = 0; w < n_; ++w) {
            if (weights_[static_cast<std::size_t>(w)].sign() < 0)
                throw domain_error("negative weight " + weights_[static_cast<std::size_t>(w)].to_string() +
                                   " at outcome " + outcome_name(w));
            total_ += weights_[static_cast<std::size_t>(w)];
        }
    }

    [[nodiscard]] int n() const { return n_; }
    [[nodiscard]] const Rat& weight(int outcome) const { return weights_[static_cast<std::size_t>(outcome)]; }
    [[nodiscard]] const std::vector<Rat>& weights() const { return weights_; }
    [[nodiscard]] const std::vector<std::string>& labels() const { return labels_; }
    [[nodiscard]] const Rat& total() const { return total_; }
    [[nodiscard]] bool is_probability() const { return total_ == Rat(1); }

    [[nodiscard]] std::string outcome_name(int outcome) const {
        if (!labels_.empty()) return "\"" + labels_[static_cast<std::size_t>(outcome)] + "\"";
        return std::to_string(outcome);
    }

    [[nodiscard]] Rat measure_of(std::span<const int> a) const {
        detail::check_subset_of_universe(n_, a);
        Rat s(0);
        for (int w : a) s += weights_[static_cast<std::size_t>(w)];
        return s;
    }
    [[nodiscard]] Rat measure_of(const std::vector<int>& a) const {
        return measure_of(std::span<const int>(a));
    }

private:
    int n_;
    std::vector<Rat> weights_;
    std::vector<std::string> labels_;
    Rat total_ = Rat(0);
};

// Random variable Omega -> Q^d as a value table. On a finite space every
// function is simple and integrable, so no integrability bookkeeping exists
// anywhere in this library.
class FnTable {
public:
    explicit FnTable(std::vector<VecD> values) : values_(std::move(values)) {
        if (values_.empty()) throw universe_error("function table must cover at least one outcome");
        for (const auto& v : values_)
            if (v.dim() != values_[0].dim())
                throw dimension_error("function table mixes dimensions");
    }

    static FnTable constant(int n, VecD value) {
        return FnTable(std::vector<VecD>(static_cast<std::size_t>(n), std::move(value)));
    }
    static FnTable zero(int n, std::size_t dim) { return constant(n, VecD::zero(dim)); }
    static FnTable scalars(std::vector<Rat> values) {
        std::vector<VecD> vs;
        vs.reserve(values.size());
        for (auto& r : values) vs.push_back(VecD::scalar(std::move(r)));
        return FnTable(std::move(vs));
    }

    [[nodiscard]] int n() const { return static_cast<int>(values_.size()); }
    [[nodiscard]] std::size_t dim() const { return values_[0].dim(); }
    const VecD& operator[](int outcome) const { return values_[static_cast<std::size_t>(outcome)]; }
    [[nodiscard]] const std::vector<VecD>& values() const { return values_; }

    friend bool operator==(const FnTable& a, const FnTable& b) { return a.values_ == b.values_; }
    friend bool operator!=(const FnTable& a, const FnTable& b) { return !(a == b); }

private:
    std::vector<VecD> values_;
};

namespace detail {
inline void check_same_space(const MeasureSpace& m, const FnTable& f) {
    if (f.n() != m.n())
        throw universe_error("function table covers " + std::to_string(f.n()) +
                             " outcomes on a space with " + std::to_string(m.n()));
}
inline void check_same_shape(const FnTable& f, const FnTable& g) {
    if (f.n() != g.n()) throw universe_error("function tables cover different universes");
    if (f.dim() != g.dim()) throw dimension_error("function tables have different dimensions");
}
} // namespace detail

inline FnTable operator+(const FnTable& f, const FnTable& g) {
    detail::check_same_shape(f, g);
    std::vector<VecD> r;
    r.reserve(f.values().size());
    for (int w = 0; w < f.n(); ++w) r.push_back(f[w] + g[w]);
    return FnTable(std::move(r));
}

inline FnTable operator-(const FnTable& f, const FnTable& g) {
    detail::check_same_shape(f, g);
    std::vector<VecD> r;
    r.reserve(f.values().size());
    for (int w = 0; w < f.n(); ++w) r.push_back(f[w] - g[w]);
    return FnTable(std::move(r));
}

inline FnTable operator*(const Rat& c, const FnTable& f) {
    std::vector<VecD> r;
    r.reserve(f.values().size());
    for (int w = 0; w < f.n(); ++w) r.push_back(c * f[w]);
    return FnTable(std::move(r));
}

/// omega -> scalar_f(omega) * g(omega) for a scalar (d = 1) first factor.
inline FnTable pointwise_scale(const FnTable& scalar_f, const FnTable& g) {
    if (scalar_f.dim() != 1) throw dimension_error("pointwise scaling factor must be scalar");
    if (scalar_f.n() != g.n()) throw universe_error("function tables cover different universes");
    std::vector<VecD> r;
    r.reserve(g.values().size());
    for (int w = 0; w < g.n(); ++w) r.push_back(scalar_f[w].scalar_value() * g[w]);
    return FnTable(std::move(r));
}

/// omega -> ||f(omega)|| as a scalar table.
inline FnTable pointwise_norm(const FnTable& f) {
    std::vector<Rat> r;
    r.reserve(f.values().size());
    for (int w = 0; w < f.n(); ++w) r.push_back(l1_norm(f[w]));
    return FnTable::scalars(std::move(r));
}

/// Componentwise max of two scalar tables.
inline FnTable pointwise_max(const FnTable& f, const FnTable& g) {
    detail::check_same_shape(f, g);
    if (f.dim() != 1) throw unsupported_order_error("max is only defined for scalar tables");
    std::vector<Rat> r;
    r.reserve(f.values().size());
    for (int w = 0; w < f.n(); ++w)
        r.push_back(f[w].scalar_value() >= g[w].scalar_value() ? f[w].scalar_value()
                                                               : g[w].scalar_value());
    return FnTable::scalars(std::move(r));
}

/// Bochner integral of a (necessarily simple) table: the weighted value sum.
inline VecD integral(const MeasureSpace& m, const FnTable& f) {
    detail::check_same_space(m, f);
    VecD acc = VecD::zero(f.dim());
    for (int w = 0; w < m.n(); ++w) {
        if (m.weight(w).is_zero()) continue;
        acc = acc + m.weight(w) * f[w];
    }
    return acc;
}

/// Integral over the event a, i.e. the integral of 1_a * f.
inline VecD set_integral(const MeasureSpace& m, std::span<const int> a, const FnTable& f) {
    detail::check_same_space(m, f);
    detail::check_subset_of_universe(m.n(), a);
    VecD acc = VecD::zero(f.dim());
    for (int w : a) {
        if (m.weight(w).is_zero()) continue;
        acc = acc + m.weight(w) * f[w];
    }
    return acc;
}

inline VecD set_integral(const MeasureSpace& m, const std::vector<int>& a, const FnTable& f) {
    return set_integral(m, std::span<const int>(a), f);
}

// --- almost-everywhere predicates ------------------------------------------
//
// A statement holds almost everywhere iff it holds at every outcome of
// strictly positive weight. On a zero-total measure everything is
// vacuously true.

inline bool ae_eq(const MeasureSpace& m, const FnTable& f, const FnTable& g) {
    detail::check_same_space(m, f);
    detail::check_same_shape(f, g);
    for (int w = 0; w < m.n(); ++w)
        if (!m.weight(w).is_zero() && !(f[w] == g[w])) return false;
    return true;
}

namespace detail {
template <typename Cmp>
bool ae_order(const MeasureSpace& m, const FnTable& f, const FnTable& g, Cmp cmp, const char* name) {
    check_same_space(m, f);
    check_same_shape(f, g);
    if (f.dim() != 1)
        throw unsupported_order_error(std::string(name) + " is only defined for scalar tables (d = 1)");
    for (int w = 0; w < m.n(); ++w)
        if (!m.weight(w).is_zero() && !cmp(f[w].scalar_value(), g[w].scalar_value())) return false;
    return true;
}
} // namespace detail

inline bool ae_le(const MeasureSpace& m, const FnTable& f, const FnTable& g) {
    return detail::ae_order(m, f, g, [](const Rat& a, const Rat& b) { return a <= b; }, "ae_le");
}
inline bool ae_ge(const MeasureSpace& m, const FnTable& f, const FnTable& g) {
    return detail::ae_order(m, f, g, [](const Rat& a, const Rat& b) { return a >= b; }, "ae_ge");
}
inline bool ae_lt(const MeasureSpace& m, const FnTable& f, const FnTable& g) {
    return detail::ae_order(m, f, g, [](const Rat& a, const Rat& b) { return a < b; }, "ae_lt");
}

// --- independence -----------------------------------------------------------

/// mu(A n B) = mu(A) mu(B) for every atom A of p and atom B of q. By finite
/// additivity this extends to all events of the two sigma-algebras.
inline bool independent(const MeasureSpace& m, const Partition& p, const Partition& q) {
    if (!m.is_probability())
        throw precondition_error("independence requires a probability space (total measure 1)");
    if (p.universe_size() != m.n() || q.universe_size() != m.n())
        throw universe_error("partitions do not live on the outcome set of the measure space");
    for (const auto& a : p.atoms()) {
        const Rat mu_a = m.measure_of(a);
        for (const auto& b : q.atoms()) {
            Rat mu_ab(0);
            for (int w : a)
                if (q.atom_of(w) == q.atom_of(b.front())) mu_ab += m.weight(w);
            if (mu_ab != mu_a * m.measure_of(b)) return false;
        }
    }
    return true;
}

// --- exhaustive event enumeration -------------------------------------------

namespace detail {
inline std::atomic<int>& event_cap_slot() {
    static std::atomic<int> cap = [] {
        if (const char* s = std::getenv("MARTKIT_EVENT_CAP")) {
            const int v = std::atoi(s);
            if (v >= 1 && v <= 62) return v;
        }
        return 20;
    }();
    return cap;
}
} // namespace detail

/// Largest universe (or atom count) for which 2^n event enumerations run.
inline int event_cap() { return detail::event_cap_slot().load(); }
inline void set_event_cap(int cap) {
    if (cap >= 1 && cap <= 62) detail::event_cap_slot().store(cap);
}

namespace detail {
inline void check_event_cap(int n, const char* what) {
    if (n > event_cap())
        throw capacity_error(std::string(what) + " would enumerate 2^" + std::to_string(n) +
                             " events; cap is 2^" + std::to_string(event_cap()) +
                             " (override with MARTKIT_EVENT_CAP)");
}
inline std::vector<int> mask_to_outcomes(std::uint64_t mask, int n) {
    std::vector<int> out;
    for (int w = 0; w < n; ++w)
        if (mask & (std::uint64_t{1} << w)) out.push_back(w);
    return out;
}
} // namespace detail

struct AveragingReport {
    bool premise_holds = false;
    bool conclusion_holds = false;
    // first event with positive measure whose average escapes S
    std::optional<std::vector<int>> premise_counterexample;
    // first positive-weight outcome where the value escapes S
    std::optional<int> conclusion_counterexample;
};

// Averaging check: if the average of f over every positive-measure event
// lies in S then f itself lies in S almost everywhere. On a finite space
// this holds for an arbitrary membership predicate, since singletons are
// events and get averaged pointwise; no closedness assumption on S enters.
inline AveragingReport averaging_oracle(const MeasureSpace& m, const FnTable& f,
                                        const std::function<bool(const VecD&)>& member) {
    detail::check_same_space(m, f);
    detail::check_event_cap(m.n(), "averaging oracle");
    AveragingReport report;

    const std::uint64_t events = std::uint64_t{1} << m.n();
    const auto premise_hit = parallel::find_first(events, [&](std::uint64_t mask) {
        const auto outcomes = detail::mask_to_outcomes(mask, m.n());
        const Rat mu = m.measure_of(outcomes);
        if (mu.is_zero()) return false;
        const VecD avg = (Rat(1) / mu) * set_integral(m, outcomes, f);
        return !member(avg);
    });
    report.premise_holds = !premise_hit.has_value();
    if (premise_hit) report.premise_counterexample = detail::mask_to_outcomes(*premise_hit, m.n());

    report.conclusion_holds = true;
    for (int w = 0; w < m.n(); ++w) {
        if (m.weight(w).is_zero()) continue;
        if (!member(f[w])) {
            report.conclusion_holds = false;
            report.conclusion_counterexample = w;
            break;
        }
    }
    return report;
}

/// True iff the set integrals of f and g agree on every one of the 2^n
/// events. Equivalent to ae_eq by uniqueness of densities; tests assert the
/// equivalence, production code may rely on either side.
inline bool density_report(const MeasureSpace& m, const FnTable& f, const FnTable& g) {
    detail::check_same_space(m, f);
    detail::check_same_shape(f, g);
    detail::check_event_cap(m.n(), "density check");
    const std::uint64_t events = std::uint64_t{1} << m.n();
    const auto hit = parallel::find_first(events, [&](std::uint64_t mask) {
        const auto outcomes = detail::mask_to_outcomes(mask, m.n());
        return !(set_integral(m, outcomes, f) == set_integral(m, outcomes, g));
    });
    return !hit.has_value();
}

/// Same universe, weights zeroed outside a.
inline MeasureSpace restrict(const MeasureSpace& m, std::span<const int> a) {
    detail::check_subset_of_universe(m.n(), a);
    std::vector<bool> keep(static_cast<std::size_t>(m.n()), false);
    for (int w : a) keep[static_cast<std::size_t>(w)] = true;
    std::vector<Rat> weights;
    weights.reserve(static_cast<std::size_t>(m.n()));
    for (int w = 0; w < m.n(); ++w)
        weights.push_back(keep[static_cast<std::size_t>(w)] ? m.weight(w) : Rat(0));
    return MeasureSpace(m.n(), std::move(weights), m.labels());
}

inline MeasureSpace restrict(const MeasureSpace& m, const std::vector<int>& a) {
    return restrict(m, std::span<const int>(a));
}

// For each start index k, the integral of
//   omega -> diameter({ seq_i(omega) | k <= i < len }).
// The tail sets shrink as k grows, so the sequence is nonincreasing.
inline std::vector<Rat> tail_diameter_integrals(const MeasureSpace& m, std::span<const FnTable> seq) {
    if (seq.empty()) throw precondition_error("tail diameters need a nonempty sequence");
    for (const auto& f : seq) {
        detail::check_same_space(m, f);
        if (f.dim() != seq[0].dim()) throw dimension_error("sequence tables mix dimensions");
    }
    std::vector<Rat> result;
    result.reserve(seq.size());
    for (std::size_t k = 0; k < seq.size(); ++k) {
        Rat acc(0);
        for (int w = 0; w < m.n(); ++w) {
            if (m.weight(w).is_zero()) continue;
            std::vector<VecD> tail;
            tail.reserve(seq.size() - k);
            for (std::size_t i = k; i < seq.size(); ++i) tail.push_back(seq[i][w]);
            acc += m.weight(w) * diameter(tail);
        }
        result.push_back(std::move(acc));
    }
    return result;
}

inline std::vector<Rat> tail_diameter_integrals(const MeasureSpace& m, const std::vector<FnTable>& seq) {
    return tail_diameter_integrals(m, std::span<const FnTable>(seq));
}

} // namespace martkit
