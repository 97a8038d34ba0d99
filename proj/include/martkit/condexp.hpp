#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "martkit/errors.hpp"
#include "martkit/measure.hpp"
#include "martkit/parallel.hpp"
#include "martkit/partition.hpp"

namespace martkit {

// Conditional expectation table together with the atoms where the
// zero-vector convention was used because the atom is null. The table is
// measurable w.r.t. the conditioning partition by construction, and every
// downstream identity is almost-everywhere, so the convention never shows.
struct CondExpResult {
    FnTable table;
    std::vector<std::vector<int>> null_atoms;
};

// E(x | f_alg): on each atom B with mu(B) > 0 the constant value
// (1 / mu(B)) * integral of x over B; the zero vector on null atoms.
inline CondExpResult cond_exp(const MeasureSpace& m, const Partition& f_alg, const FnTable& x) {
    detail::check_same_space(m, x);
    if (f_alg.universe_size() != m.n())
        throw universe_error("conditioning partition does not live on the outcome set");
    std::vector<VecD> values(static_cast<std::size_t>(m.n()), VecD::zero(x.dim()));
    std::vector<std::vector<int>> null_atoms;
    for (const auto& atom : f_alg.atoms()) {
        const Rat mu = m.measure_of(atom);
        if (mu.is_zero()) {
            null_atoms.push_back(atom);
            continue;
        }
        const VecD avg = (Rat(1) / mu) * set_integral(m, atom, x);
        for (int w : atom) values[static_cast<std::size_t>(w)] = avg;
    }
    return CondExpResult{FnTable(std::move(values)), std::move(null_atoms)};
}

// The defining property: g is f_alg-measurable and the integrals of x and g
// agree on every f_alg-event. Events are exactly the unions of atoms, all
// 2^|atoms| of which are enumerated.
inline bool has_cond_exp(const MeasureSpace& m, const Partition& f_alg, const FnTable& x,
                         const FnTable& g) {
    detail::check_same_space(m, x);
    detail::check_same_shape(x, g);
    if (f_alg.universe_size() != m.n())
        throw universe_error("conditioning partition does not live on the outcome set");
    if (!is_measurable_fn(f_alg, g.values())) return false;
    const int k = static_cast<int>(f_alg.atom_count());
    detail::check_event_cap(k, "conditional-expectation characterization");
    const std::uint64_t events = std::uint64_t{1} << k;
    const auto hit = parallel::find_first(events, [&](std::uint64_t mask) {
        std::vector<int> event;
        for (int a = 0; a < k; ++a)
            if (mask & (std::uint64_t{1} << a))
                event.insert(event.end(), f_alg.atoms()[static_cast<std::size_t>(a)].begin(),
                             f_alg.atoms()[static_cast<std::size_t>(a)].end());
        return !(set_integral(m, event, x) == set_integral(m, event, g));
    });
    return !hit.has_value();
}

// "Pulling out what's known": for f_alg-measurable scalar_f,
// E(scalar_f * g | f_alg) = scalar_f * E(g | f_alg) almost everywhere.
// Returns the left-hand side; the identity itself is a tested contract.
inline FnTable cond_exp_pull_out(const MeasureSpace& m, const Partition& f_alg,
                                 const FnTable& scalar_f, const FnTable& g) {
    if (scalar_f.dim() != 1) throw dimension_error("the pulled-out factor must be scalar (d = 1)");
    if (!is_measurable_fn(f_alg, scalar_f.values()))
        throw precondition_error("pulled-out factor is not measurable w.r.t. the conditioning algebra");
    return cond_exp(m, f_alg, pointwise_scale(scalar_f, g)).table;
}

// Irrelevance of independent information: when g_alg is independent of
// join(f_alg, sigma(x)) on a probability space,
// E(x | join(f_alg, g_alg)) = E(x | f_alg) almost everywhere.
// Returns the left-hand side. Only scalar x is supported: the identity
// needs a multiplicative structure on the value space, which Q^d lacks
// for d > 1.
inline FnTable cond_exp_indep(const MeasureSpace& m, const Partition& f_alg, const Partition& g_alg,
                              const FnTable& x) {
    if (x.dim() != 1)
        throw unsupported_error("independence-based conditioning is only supported for scalar tables");
    if (!m.is_probability())
        throw precondition_error("independence-based conditioning requires a probability space");
    const Partition known = join(f_alg, generate_from_function(m.n(), x.values()));
    if (!independent(m, known, g_alg))
        throw precondition_error(
            "the added sigma-algebra is not independent of join(f_alg, sigma(x))");
    return cond_exp(m, join(f_alg, g_alg), x).table;
}

} // namespace martkit
