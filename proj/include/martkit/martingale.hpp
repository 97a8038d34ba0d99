#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "martkit/condexp.hpp"
#include "martkit/errors.hpp"
#include "martkit/measure.hpp"
#include "martkit/process.hpp"

namespace martkit {

// The relation between X_i and E(X_j | F_i): eq for martingales, le for
// submartingales, ge for supermartingales.
enum class Relation { eq, le, ge };

inline const char* relation_name(Relation r) {
    switch (r) {
        case Relation::eq: return "eq";
        case Relation::le: return "le";
        default: return "ge";
    }
}

// First failure of a characterization, in lexicographic (i, j, event) order
// so that failures are deterministic and diffable.
struct Counterexample {
    int time_i = 0;
    int time_j = 0;
    std::vector<int> where;      // outcomes of the conditioning atom, or of the event
    bool where_is_event = false; // true when `where` is an enumerated set-integral event
    VecD lhs = VecD::scalar(Rat(0));
    VecD rhs = VecD::scalar(Rat(0));
};

namespace detail {

inline bool rel_holds(Relation rel, const Rat& a, const Rat& b) {
    switch (rel) {
        case Relation::eq: return a == b;
        case Relation::le: return a <= b;
        default: return a >= b;
    }
}

inline bool rel_holds(Relation rel, const VecD& a, const VecD& b) {
    if (rel == Relation::eq) return a == b;
    return rel_holds(rel, a.scalar_value(), b.scalar_value());
}

inline void check_order_supported(Relation rel, std::size_t dim, const char* what) {
    if (rel != Relation::eq && dim != 1)
        throw unsupported_order_error(std::string(what) +
                                      " with an ordered relation needs scalar values (d = 1)");
}

inline void check_adapted(const ProcessTable& x, const Filtration& f) {
    const int t = first_non_adapted_time(x, f);
    if (t >= 0)
        throw precondition_error("process is not adapted: X_" + std::to_string(t) +
                                 " is not measurable w.r.t. F_" + std::to_string(t));
}

// rel(X_i, E(X_j | F_i)) almost everywhere for every pair i <= j.
inline std::optional<Counterexample> pairwise_violation(const MeasureSpace& m, const Filtration& f,
                                                        const ProcessTable& x, Relation rel) {
    for (int i = 0; i <= x.horizon(); ++i)
        for (int j = i; j <= x.horizon(); ++j) {
            const FnTable ce = cond_exp(m, f[i], x[j]).table;
            for (int w = 0; w < m.n(); ++w) {
                if (m.weight(w).is_zero()) continue;
                if (!rel_holds(rel, x[i][w], ce[w]))
                    return Counterexample{i, j, f[i].atom_containing(w), false, x[i][w], ce[w]};
            }
        }
    return std::nullopt;
}

/// Successor-only variant: rel(X_t, E(X_{t+1} | F_t)) for every t < T.
inline std::optional<Counterexample> successor_violation(const MeasureSpace& m, const Filtration& f,
                                                         const ProcessTable& x, Relation rel) {
    for (int t = 0; t + 1 <= x.horizon(); ++t) {
        const FnTable ce = cond_exp(m, f[t], x[t + 1]).table;
        for (int w = 0; w < m.n(); ++w) {
            if (m.weight(w).is_zero()) continue;
            if (!rel_holds(rel, x[t][w], ce[w]))
                return Counterexample{t, t + 1, f[t].atom_containing(w), false, x[t][w], ce[w]};
        }
    }
    return std::nullopt;
}

// rel(set_integral(A, X_i), set_integral(A, X_j)) over every F_i-event A,
// enumerated as the 2^|atoms(F_i)| unions of atoms in ascending bitmask
// order.
inline std::optional<Counterexample> set_integral_violation(const MeasureSpace& m, const Filtration& f,
                                                            const ProcessTable& x, Relation rel,
                                                            bool successor_only) {
    for (int i = 0; i <= x.horizon(); ++i) {
        const int k = static_cast<int>(f[i].atom_count());
        check_event_cap(k, "set-integral characterization");
        const int j_hi = successor_only ? std::min(i + 1, x.horizon()) : x.horizon();
        for (int j = i; j <= j_hi; ++j) {
            const std::uint64_t events = std::uint64_t{1} << k;
            const auto hit = parallel::find_first(events, [&](std::uint64_t mask) {
                std::vector<int> event;
                for (int a = 0; a < k; ++a)
                    if (mask & (std::uint64_t{1} << a))
                        event.insert(event.end(), f[i].atoms()[static_cast<std::size_t>(a)].begin(),
                                     f[i].atoms()[static_cast<std::size_t>(a)].end());
                return !rel_holds(rel, set_integral(m, event, x[i]), set_integral(m, event, x[j]));
            });
            if (hit) {
                std::vector<int> event;
                for (int a = 0; a < k; ++a)
                    if (*hit & (std::uint64_t{1} << a))
                        event.insert(event.end(), f[i].atoms()[static_cast<std::size_t>(a)].begin(),
                                     f[i].atoms()[static_cast<std::size_t>(a)].end());
                std::sort(event.begin(), event.end());
                return Counterexample{i,
                                      j,
                                      event,
                                      true,
                                      set_integral(m, event, x[i]),
                                      set_integral(m, event, x[j])};
            }
        }
    }
    return std::nullopt;
}

// rel(E(X_{t+1} - X_t | F_t), 0) almost everywhere for every t < T. Note the
// orientation: a submartingale has nonnegative expected increments, so its
// relation here is ge, not le.
inline std::optional<Counterexample> difference_violation(const MeasureSpace& m, const Filtration& f,
                                                          const ProcessTable& x, Relation rel) {
    for (int t = 0; t + 1 <= x.horizon(); ++t) {
        const FnTable ce = cond_exp(m, f[t], x[t + 1] - x[t]).table;
        const VecD zero = VecD::zero(x.dim());
        for (int w = 0; w < m.n(); ++w) {
            if (m.weight(w).is_zero()) continue;
            if (!rel_holds(rel, ce[w], zero))
                return Counterexample{t, t + 1, f[t].atom_containing(w), false, ce[w], zero};
        }
    }
    return std::nullopt;
}

} // namespace detail

/// X_i = E(X_j | F_i) a.e. for all i <= j. Precondition: adapted.
inline bool is_martingale(const MeasureSpace& m, const Filtration& f, const ProcessTable& x) {
    detail::check_same_horizon(x, f);
    detail::check_adapted(x, f);
    return !detail::pairwise_violation(m, f, x, Relation::eq).has_value();
}

/// X_i <= E(X_j | F_i) a.e. for all i <= j. Scalar values only.
inline bool is_submartingale(const MeasureSpace& m, const Filtration& f, const ProcessTable& x) {
    detail::check_same_horizon(x, f);
    detail::check_order_supported(Relation::le, x.dim(), "submartingale check");
    detail::check_adapted(x, f);
    return !detail::pairwise_violation(m, f, x, Relation::le).has_value();
}

/// X_i >= E(X_j | F_i) a.e. for all i <= j. Scalar values only.
inline bool is_supermartingale(const MeasureSpace& m, const Filtration& f, const ProcessTable& x) {
    detail::check_same_horizon(x, f);
    detail::check_order_supported(Relation::ge, x.dim(), "supermartingale check");
    detail::check_adapted(x, f);
    return !detail::pairwise_violation(m, f, x, Relation::ge).has_value();
}

/// Successor characterization: rel(X_t, E(X_{t+1} | F_t)) for all t < T.
inline bool check_succ(const MeasureSpace& m, const Filtration& f, const ProcessTable& x, Relation rel) {
    detail::check_same_horizon(x, f);
    detail::check_order_supported(rel, x.dim(), "successor check");
    detail::check_adapted(x, f);
    return !detail::successor_violation(m, f, x, rel).has_value();
}

/// Set-integral characterization over every F_i-event.
inline bool check_set_integral(const MeasureSpace& m, const Filtration& f, const ProcessTable& x,
                               Relation rel, bool successor_only = false) {
    detail::check_same_horizon(x, f);
    detail::check_order_supported(rel, x.dim(), "set-integral check");
    detail::check_adapted(x, f);
    return !detail::set_integral_violation(m, f, x, rel, successor_only).has_value();
}

/// Expected-increment characterization: rel(E(X_{t+1} - X_t | F_t), 0).
inline bool check_difference(const MeasureSpace& m, const Filtration& f, const ProcessTable& x,
                             Relation rel) {
    detail::check_same_horizon(x, f);
    detail::check_order_supported(rel, x.dim(), "difference check");
    detail::check_adapted(x, f);
    return !detail::difference_violation(m, f, x, rel).has_value();
}

struct ClassifyOptions {
    bool pairwise = true;
    bool successor = true;
    bool set_integral = true;
    bool difference = true;
};

// Verdicts of one process class under the four characterizations. The four
// answers must agree whenever computed; classify enforces that and treats a
// disagreement as an internal bug.
struct CharacterizationReport {
    bool supported = true;     // false: ordered relation on d > 1 values
    bool capacity_hit = false; // set-integral enumeration exceeded the cap
    std::optional<bool> pairwise;
    std::optional<bool> successor;
    std::optional<bool> set_integral;
    std::optional<bool> difference;
    std::optional<bool> verdict;
    std::optional<Counterexample> counterexample;
};

struct ClassificationReport {
    std::size_t dimension = 1;
    bool adapted = false;
    std::optional<int> adapted_violation_time;
    std::optional<CharacterizationReport> martingale;
    std::optional<CharacterizationReport> submartingale;
    std::optional<CharacterizationReport> supermartingale;

    [[nodiscard]] bool capacity_hit() const {
        for (const auto* s : {&martingale, &submartingale, &supermartingale})
            if (s->has_value() && (*s)->capacity_hit) return true;
        return false;
    }
};

namespace detail {

inline CharacterizationReport characterize(const MeasureSpace& m, const Filtration& f,
                                           const ProcessTable& x, Relation rel,
                                           const ClassifyOptions& opts) {
    CharacterizationReport report;
    if (rel != Relation::eq && x.dim() != 1) {
        report.supported = false;
        return report;
    }
    std::optional<Counterexample> first;
    const auto record = [&](std::optional<bool>& slot, std::optional<Counterexample> violation) {
        slot = !violation.has_value();
        if (violation && !first) first = std::move(violation);
    };
    if (opts.pairwise) record(report.pairwise, pairwise_violation(m, f, x, rel));
    if (opts.successor) record(report.successor, successor_violation(m, f, x, rel));
    if (opts.set_integral) {
        try {
            record(report.set_integral, set_integral_violation(m, f, x, rel, false));
        } catch (const capacity_error&) {
            report.capacity_hit = true;
        }
    }
    if (opts.difference) {
        // a submartingale has nonnegative expected increments and a
        // supermartingale nonpositive ones
        const Relation inc = rel == Relation::le ? Relation::ge
                             : rel == Relation::ge ? Relation::le
                                                   : Relation::eq;
        record(report.difference, difference_violation(m, f, x, inc));
    }
    for (const auto* a : {&report.pairwise, &report.successor, &report.set_integral, &report.difference})
        for (const auto* b : {&report.pairwise, &report.successor, &report.set_integral, &report.difference})
            if (a->has_value() && b->has_value() && **a != **b)
                throw invariant_violation(
                    std::string("characterizations disagree for relation ") + relation_name(rel) +
                    "; the four routes must answer identically");
    for (const auto* s : {&report.pairwise, &report.successor, &report.set_integral, &report.difference})
        if (s->has_value()) {
            report.verdict = **s;
            break;
        }
    report.counterexample = std::move(first);
    return report;
}

} // namespace detail

// Full classification. Adaptedness is reported rather than required; when
// the process is not adapted the martingale sections are skipped.
inline ClassificationReport classify(const MeasureSpace& m, const Filtration& f, const ProcessTable& x,
                                     const ClassifyOptions& opts = {}) {
    detail::check_same_horizon(x, f);
    ClassificationReport report;
    report.dimension = x.dim();
    const int bad_time = first_non_adapted_time(x, f);
    report.adapted = bad_time < 0;
    if (!report.adapted) {
        report.adapted_violation_time = bad_time;
        return report;
    }
    report.martingale = detail::characterize(m, f, x, Relation::eq, opts);
    report.submartingale = detail::characterize(m, f, x, Relation::le, opts);
    report.supermartingale = detail::characterize(m, f, x, Relation::ge, opts);
    if (report.martingale->verdict.has_value() && report.submartingale->verdict.has_value() &&
        report.supermartingale->verdict.has_value() &&
        *report.martingale->verdict !=
            (*report.submartingale->verdict && *report.supermartingale->verdict))
        throw invariant_violation(
            "martingale verdict must equal submartingale and supermartingale jointly");
    return report;
}

/// X_t = E(g | F_t): always a martingale, by the tower property.
inline ProcessTable cond_exp_process(const MeasureSpace& m, const Filtration& f, const FnTable& g) {
    std::vector<FnTable> tables;
    tables.reserve(static_cast<std::size_t>(f.horizon()) + 1);
    for (int t = 0; t <= f.horizon(); ++t) tables.push_back(cond_exp(m, f[t], g).table);
    return ProcessTable(std::move(tables));
}

// Martingale transform (discrete stochastic integral): the cumulative
// winnings of betting C_{t+1} on each increment,
//   Y_0 = 0,  Y_t = sum over i < t of C_{i+1} * (X_{i+1} - X_i).
// For predictable C this preserves the martingale property; for predictable
// nonnegative C it preserves submartingales.
inline ProcessTable transform(const ProcessTable& c, const ProcessTable& x) {
    if (c.horizon() != x.horizon())
        throw universe_error("betting process and transformed process have different horizons");
    if (c.dim() != 1) throw dimension_error("betting process must be scalar (d = 1)");
    if (c.n() != x.n()) throw universe_error("betting process covers a different universe");
    std::vector<FnTable> tables;
    tables.reserve(static_cast<std::size_t>(x.times()));
    tables.push_back(FnTable::zero(x.n(), x.dim()));
    for (int t = 1; t <= x.horizon(); ++t)
        tables.push_back(tables.back() + pointwise_scale(c[t], x[t] - x[t - 1]));
    return ProcessTable(std::move(tables));
}

} // namespace martkit
