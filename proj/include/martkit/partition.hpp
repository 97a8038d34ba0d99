#pragma once

#include <algorithm>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "martkit/errors.hpp"
#include "martkit/vec.hpp"

namespace martkit {

// A sigma-algebra on the finite outcome set {0..n-1}, stored as the
// partition of its atoms. On a finite set every sigma-algebra is exactly
// the set of unions of the atoms of a unique partition, so this
// representation is complete and makes membership tests linear.
//
// Canonical form: each atom is sorted ascending and the atoms are ordered
// by their least element, so structural equality is sigma-algebra equality.
class Partition {
public:
    Partition(int universe_size, std::vector<std::vector<int>> atoms)
        : n_(universe_size), atoms_(std::move(atoms)) {
        if (n_ <= 0) throw universe_error("universe size must be positive");
        canonicalize();
    }

    static Partition trivial(int n) {
        std::vector<int> all(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) all[static_cast<std::size_t>(i)] = i;
        return Partition(n, {std::move(all)});
    }

    static Partition singletons(int n) {
        std::vector<std::vector<int>> atoms;
        atoms.reserve(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) atoms.push_back({i});
        return Partition(n, std::move(atoms));
    }

    [[nodiscard]] int universe_size() const { return n_; }
    [[nodiscard]] const std::vector<std::vector<int>>& atoms() const { return atoms_; }
    [[nodiscard]] std::size_t atom_count() const { return atoms_.size(); }
    [[nodiscard]] int atom_of(int outcome) const { return atom_of_[static_cast<std::size_t>(outcome)]; }
    [[nodiscard]] const std::vector<int>& atom_containing(int outcome) const {
        return atoms_[static_cast<std::size_t>(atom_of(outcome))];
    }

    friend bool operator==(const Partition& a, const Partition& b) {
        return a.n_ == b.n_ && a.atoms_ == b.atoms_;
    }
    friend bool operator!=(const Partition& a, const Partition& b) { return !(a == b); }

private:
    int n_;
    std::vector<std::vector<int>> atoms_;
    std::vector<int> atom_of_;

    void canonicalize() {
        atom_of_.assign(static_cast<std::size_t>(n_), -1);
        for (auto& atom : atoms_) {
            if (atom.empty()) throw universe_error("partition contains an empty atom");
            std::sort(atom.begin(), atom.end());
            for (int w : atom) {
                if (w < 0 || w >= n_)
                    throw universe_error("outcome " + std::to_string(w) + " outside universe of size " +
                                         std::to_string(n_));
                if (atom_of_[static_cast<std::size_t>(w)] != -1)
                    throw universe_error("outcome " + std::to_string(w) + " appears in two atoms");
                atom_of_[static_cast<std::size_t>(w)] = 0;
            }
        }
        for (int w = 0; w < n_; ++w)
            if (atom_of_[static_cast<std::size_t>(w)] == -1)
                throw universe_error("outcome " + std::to_string(w) + " is not covered by any atom");
        std::sort(atoms_.begin(), atoms_.end(),
                  [](const auto& a, const auto& b) { return a.front() < b.front(); });
        for (std::size_t k = 0; k < atoms_.size(); ++k)
            for (int w : atoms_[k]) atom_of_[static_cast<std::size_t>(w)] = static_cast<int>(k);
    }
};

namespace detail {
inline void check_same_universe(const Partition& p, const Partition& q) {
    if (p.universe_size() != q.universe_size())
        throw universe_error("partitions live on universes of size " +
                             std::to_string(p.universe_size()) + " and " +
                             std::to_string(q.universe_size()));
}
inline void check_subset_of_universe(int n, std::span<const int> a) {
    for (int w : a)
        if (w < 0 || w >= n)
            throw universe_error("outcome " + std::to_string(w) + " outside universe of size " +
                                 std::to_string(n));
}
} // namespace detail

// Coarsest partition in which every generator set is a union of atoms:
// two outcomes share an atom iff they have the same membership signature
// across all generators.
inline Partition generate(int n, const std::vector<std::vector<int>>& generators) {
    std::vector<std::vector<bool>> signature(static_cast<std::size_t>(n),
                                             std::vector<bool>(generators.size(), false));
    for (std::size_t g = 0; g < generators.size(); ++g) {
        detail::check_subset_of_universe(n, generators[g]);
        for (int w : generators[g]) signature[static_cast<std::size_t>(w)][g] = true;
    }
    std::map<std::vector<bool>, std::vector<int>> groups;
    for (int w = 0; w < n; ++w) groups[signature[static_cast<std::size_t>(w)]].push_back(w);
    std::vector<std::vector<int>> atoms;
    atoms.reserve(groups.size());
    for (auto& [sig, members] : groups) atoms.push_back(std::move(members));
    return Partition(n, std::move(atoms));
}

/// Preimage sigma-algebra of a single function: atoms are its level sets.
inline Partition generate_from_function(int n, std::span<const VecD> values) {
    if (static_cast<int>(values.size()) != n)
        throw universe_error("value table has " + std::to_string(values.size()) +
                             " entries for a universe of size " + std::to_string(n));
    std::vector<std::vector<int>> atoms;
    for (int w = 0; w < n; ++w) {
        const auto& v = values[static_cast<std::size_t>(w)];
        bool placed = false;
        for (auto& atom : atoms) {
            if (values[static_cast<std::size_t>(atom.front())] == v) {
                atom.push_back(w);
                placed = true;
                break;
            }
        }
        if (!placed) atoms.push_back({w});
    }
    return Partition(n, std::move(atoms));
}

inline Partition generate_from_function(int n, const std::vector<VecD>& values) {
    return generate_from_function(n, std::span<const VecD>(values));
}

/// fine refines coarse: every atom of fine lies inside one atom of coarse.
/// As sigma-algebras this is exactly sets(coarse) being contained in sets(fine).
inline bool refines(const Partition& fine, const Partition& coarse) {
    detail::check_same_universe(fine, coarse);
    for (const auto& atom : fine.atoms()) {
        const int target = coarse.atom_of(atom.front());
        for (int w : atom)
            if (coarse.atom_of(w) != target) return false;
    }
    return true;
}

/// Common refinement: the coarsest partition refining both. Atoms are the
/// nonempty pairwise intersections of atoms.
inline Partition join(const Partition& p, const Partition& q) {
    detail::check_same_universe(p, q);
    const int n = p.universe_size();
    std::map<std::pair<int, int>, std::vector<int>> groups;
    for (int w = 0; w < n; ++w) groups[{p.atom_of(w), q.atom_of(w)}].push_back(w);
    std::vector<std::vector<int>> atoms;
    atoms.reserve(groups.size());
    for (auto& [key, members] : groups) atoms.push_back(std::move(members));
    return Partition(n, std::move(atoms));
}

/// Membership test "a in sets(p)": a must be a union of atoms.
inline bool is_measurable_set(const Partition& p, std::span<const int> a) {
    detail::check_subset_of_universe(p.universe_size(), a);
    std::vector<bool> in(static_cast<std::size_t>(p.universe_size()), false);
    for (int w : a) in[static_cast<std::size_t>(w)] = true;
    for (const auto& atom : p.atoms()) {
        const bool first = in[static_cast<std::size_t>(atom.front())];
        for (int w : atom)
            if (in[static_cast<std::size_t>(w)] != first) return false;
    }
    return true;
}

inline bool is_measurable_set(const Partition& p, const std::vector<int>& a) {
    return is_measurable_set(p, std::span<const int>(a));
}

/// On a finite space a function is measurable w.r.t. p iff it is constant
/// on every atom of p.
inline bool is_measurable_fn(const Partition& p, std::span<const VecD> values) {
    if (static_cast<int>(values.size()) != p.universe_size())
        throw universe_error("value table does not match universe size");
    for (const auto& atom : p.atoms()) {
        const auto& v = values[static_cast<std::size_t>(atom.front())];
        for (int w : atom)
            if (!(values[static_cast<std::size_t>(w)] == v)) return false;
    }
    return true;
}

inline bool is_measurable_fn(const Partition& p, const std::vector<VecD>& values) {
    return is_measurable_fn(p, std::span<const VecD>(values));
}

// Sigma-algebra on the product {0..horizon} x {0..base_universe-1}. Points
// are encoded flat as t * base_universe + w, which lets every Partition
// operation be reused unchanged.
struct TimedPartition {
    int horizon;
    int base_universe;
    Partition flat;

    [[nodiscard]] int flat_index(int t, int w) const { return t * base_universe + w; }
};

/// Product of the discrete time axis {0..t} with f_t: atoms are
/// {j} x (atoms of f_t) for every j <= t.
inline TimedPartition product_time_partition(int t, const Partition& f_t) {
    if (t < 0) throw universe_error("time index must be nonnegative");
    const int n = f_t.universe_size();
    std::vector<std::vector<int>> atoms;
    atoms.reserve(static_cast<std::size_t>(t + 1) * f_t.atom_count());
    for (int j = 0; j <= t; ++j)
        for (const auto& atom : f_t.atoms()) {
            std::vector<int> lifted;
            lifted.reserve(atom.size());
            for (int w : atom) lifted.push_back(j * n + w);
            atoms.push_back(std::move(lifted));
        }
    return TimedPartition{t, n, Partition((t + 1) * n, std::move(atoms))};
}

// Predictable sigma-algebra of a filtration F_0 <= ... <= F_T, given as its
// time-indexed partitions. In discrete time its atoms are {0} x atoms(F_0)
// together with {t+1} x atoms(F_t) for t < T: information available at t
// describes what may happen at t+1.
inline TimedPartition predictable_sigma(std::span<const Partition> parts) {
    if (parts.empty()) throw precondition_error("filtration must have at least one time");
    const int n = parts[0].universe_size();
    const int horizon = static_cast<int>(parts.size()) - 1;
    for (std::size_t t = 0; t + 1 < parts.size(); ++t)
        if (!refines(parts[t + 1], parts[t]))
            throw precondition_error("filtration is not monotone between times " + std::to_string(t) +
                                     " and " + std::to_string(t + 1));
    std::vector<std::vector<int>> atoms;
    for (int slice = 0; slice <= horizon; ++slice) {
        const Partition& source = slice == 0 ? parts[0] : parts[static_cast<std::size_t>(slice - 1)];
        for (const auto& atom : source.atoms()) {
            std::vector<int> lifted;
            lifted.reserve(atom.size());
            for (int w : atom) lifted.push_back(slice * n + w);
            atoms.push_back(std::move(lifted));
        }
    }
    return TimedPartition{horizon, n, Partition((horizon + 1) * n, std::move(atoms))};
}

inline TimedPartition predictable_sigma(const std::vector<Partition>& parts) {
    return predictable_sigma(std::span<const Partition>(parts));
}

} // namespace martkit
