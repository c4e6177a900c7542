#pragma once
// Lattice-antichain discovery, the one-element extension, and the pruning
// ladder that decides which extensions a class-restricted search explores.

#include <bit>
#include <stdexcept>
#include <vector>

#include "latgen/lattice.hpp"

namespace latgen {

/// Ascending-sequence lexicographic order on element sets, shorter prefix
/// first: {1} < {1,2} < {1,3} < {2} < {2,3} < {3}.
inline bool lex_set_less(Mask a, Mask b) {
    const Mask d = a ^ b;
    if (!d) return false;
    const Mask low = d & (~d + 1);
    if (a & low) return (b & ~mask_below(lowest_bit(low))) != 0;
    return (a & ~mask_below(lowest_bit(low))) == 0;
}

enum class LatticeClass { all, semimodular, modular };

/// Which pruning rules are active for one extension step.
struct FilterProfile {
    LatticeClass cls = LatticeClass::all;
    bool vi_only = false;
    bool last_step = false; // the extension would reach the target size
};

/// A is a lattice-antichain: a nonempty antichain of L \ {0} whose up-set
/// is meet-closed except at 0, i.e. x/\y in {0} u ^A for all x,y in ^A.
/// Exactly these A admit the atom extension (the extended poset stays a
/// lattice).
inline bool is_lattice_antichain(const Lattice& L, Mask a) {
    if (!a || (a & bit(0)) || (a & ~L.all_mask())) return false;
    Mask up = 0;
    for (Mask t = a; t; t &= t - 1) {
        const int x = std::countr_zero(t);
        if ((L.up_set(x) & a) != bit(x)) return false; // not an antichain
        up |= L.up_set(x);
    }
    // x/\y >= some member of A  iff  A meets the common lower bounds of x,y
    for (Mask t = up; t; t &= t - 1) {
        const int x = std::countr_zero(t);
        for (Mask u = t & (t - 1); u; u &= u - 1) {
            const int y = std::countr_zero(u);
            if (L.comparable(x, y)) continue;
            const Mask common = L.down_set(x) & L.down_set(y);
            if (common != bit(0) && !(common & a)) return false;
        }
    }
    return true;
}

namespace detail {

template <typename Emit>
void antichain_dfs(const Lattice& L, Mask chosen, Mask pool, Emit&& emit) {
    while (pool) {
        const int x = lowest_bit(pool);
        pool &= pool - 1;
        const Mask with = chosen | bit(x);
        emit(with);
        antichain_dfs(L, with, pool & ~L.up_set(x) & ~L.down_set(x), emit);
    }
}

} // namespace detail

/// All lattice-antichains of L, in lexicographic element-set order.
inline std::vector<Mask> lattice_antichains(const Lattice& L) {
    std::vector<Mask> out;
    detail::antichain_dfs(L, 0, L.all_mask() & ~bit(0), [&](Mask a) {
        if (is_lattice_antichain(L, a)) out.push_back(a);
    });
    return out;
}

/// The (n+1)-lattice L^A: element n is added as an atom whose upper covers
/// are exactly A. Callers must have checked that A is a lattice-antichain.
inline Lattice extend_unchecked(const Lattice& L, Mask a) {
    const int n = L.size();
    Mask up_a = 0;
    for (Mask t = a; t; t &= t - 1) up_a |= L.up_set(std::countr_zero(t));

    std::vector<Mask> up(static_cast<std::size_t>(n + 1));
    std::vector<Mask> down(static_cast<std::size_t>(n + 1));
    std::vector<Mask> covers(static_cast<std::size_t>(n + 1));
    for (int x = 0; x < n; ++x) {
        up[x] = L.up_set(x);
        down[x] = L.down_set(x) | ((up_a >> x) & 1 ? bit(n) : 0);
        covers[x] = L.covers_mask(x);
    }
    up[0] |= bit(n);
    up[n] = bit(n) | up_a;
    down[n] = bit(n) | bit(0);
    covers[n] = a;
    covers[0] = (covers[0] & ~a) | bit(n); // atoms in A stop being atoms
    return Lattice::from_parts_unchecked(n + 1, std::move(up), std::move(down), std::move(covers));
}

inline Lattice extend(const Lattice& L, Mask a) {
    if (L.size() >= kMaxElements) throw std::invalid_argument("extension exceeds the element cap");
    if (!is_lattice_antichain(L, a))
        throw std::invalid_argument("extension by a set that is not a lattice-antichain");
    return extend_unchecked(L, a);
}

// ---------------------------------------------------------------------------
// Antichain filters. For a levelized L with k levels, an extension L^A is
// explored only when the rules active for the search class all pass.

/// L^A is levelized iff A meets the two bottom levels.
inline bool filter_levelized(const LevelPartition& lv, Mask a) {
    return (a & (lv.bottom() | lv.above_bottom())) != 0;
}

/// The whole antichain sits in lev_{k-1} or in lev_k. Mixing depths makes
/// every descendant fail the Jordan-Hoelder chain condition.
inline bool filter_single_level(const LevelPartition& lv, Mask a) {
    return (a & ~lv.bottom()) == 0 || (a & ~lv.above_bottom()) == 0;
}

/// Descending below lev_k is futile while an atom is stranded in lev_{k-1};
/// that atom would pin a short maximal chain forever.
inline bool filter_no_stranded_atom(const Lattice& L, const LevelPartition& lv, Mask a) {
    if ((a & ~lv.bottom()) != 0) return true;
    return (L.atom_mask() & lv.above_bottom()) == 0;
}

/// Every pair of the antichain needs a common upper cover; the new atom
/// becomes their common co-cover and semimodularity demands the dual.
inline bool filter_common_cover(const Lattice& L, Mask a) {
    for (Mask t = a; t; t &= t - 1) {
        const int x = std::countr_zero(t);
        for (Mask u = t & (t - 1); u; u &= u - 1)
            if ((L.covers_mask(x) & L.covers_mask(std::countr_zero(u))) == 0) return false;
    }
    return true;
}

/// Pairs of `level` that join to a common cover must also meet to a common
/// co-cover.
inline bool level_lower_semimodular(const Lattice& L, Mask level) {
    for (Mask t = level; t; t &= t - 1) {
        const int x = std::countr_zero(t);
        for (Mask u = t & (t - 1); u; u &= u - 1) {
            const int y = std::countr_zero(u);
            const int j = L.join(x, y);
            if (!(L.covered_by(x, j) && L.covered_by(y, j))) continue;
            const int m = L.meet(x, y);
            if (!(L.covered_by(m, x) && L.covered_by(m, y))) return false;
        }
    }
    return true;
}

/// Modular runs only: once the search descends below lev_k, elements of
/// lev_{k-1} can never gain a common co-cover, so any lower-semimodularity
/// failure there is permanent.
inline bool filter_lower_semimodular_above(const Lattice& L, const LevelPartition& lv, Mask a) {
    if ((a & ~lv.bottom()) != 0) return true;
    return level_lower_semimodular(L, lv.above_bottom());
}

/// Last extension step of a modular search: a proper nonempty subset of the
/// bottom level yields unequal maximal chains, hence a non-modular lattice.
inline bool filter_last_step(const LevelPartition& lv, Mask a, bool target_reached) {
    if (!target_reached) return true;
    return (a & ~lv.above_bottom()) == 0 || a == lv.bottom();
}

/// Vertically-indecomposable searches skip the extension below a unique
/// atom: the atom stays comparable to everything, so every descendant of
/// that step is vertically decomposable. Does not apply to the 2-lattice,
/// whose only atom is the top and therefore not a decomposition witness.
inline bool filter_vi(const Lattice& L, Mask a) {
    const Mask atoms = L.atom_mask();
    return !(L.size() >= 3 && std::has_single_bit(atoms) && a == atoms);
}

/// Lattice-antichains of L surviving the profile's rules, in lexicographic
/// element-set order. The levelized rule always applies; the single-level,
/// stranded-atom and common-cover rules for the semimodular and modular
/// classes; the lower-semimodularity and last-step rules for the modular
/// class; the VI rule when vi_only.
inline std::vector<Mask> admissible_antichains(const Lattice& L, const LevelPartition& lv,
                                               const FilterProfile& profile) {
    const bool classed = profile.cls != LatticeClass::all;
    const bool modular = profile.cls == LatticeClass::modular;

    // Facts shared by every candidate once the antichain is in lev_k.
    const bool stranded_atom = (L.atom_mask() & lv.above_bottom()) != 0;
    const bool above_ok = !modular || level_lower_semimodular(L, lv.above_bottom());

    const Mask pool =
        classed ? (lv.bottom() | lv.above_bottom()) : (L.all_mask() & ~bit(0));

    std::vector<Mask> out;
    detail::antichain_dfs(L, 0, pool, [&](Mask a) {
        if (!filter_levelized(lv, a)) return;
        if (profile.vi_only && !filter_vi(L, a)) return;
        if (classed) {
            if (!filter_single_level(lv, a)) return;
            const bool in_bottom = (a & ~lv.bottom()) == 0;
            if (in_bottom && stranded_atom) return;
            if (modular && in_bottom && !above_ok) return;
            if (modular && !filter_last_step(lv, a, profile.last_step)) return;
            if (!filter_common_cover(L, a)) return;
        }
        if (!is_lattice_antichain(L, a)) return;
        out.push_back(a);
    });
    return out;
}

} // namespace latgen
