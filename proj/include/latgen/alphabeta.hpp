#pragma once
// The alpha-beta construction: applying every {alpha,beta}-word of length
// n-3 to the 3-chain yields 2^(n-3) pairwise nonisomorphic modular
// lattices of size n, a lower bound for the modular count.

#include <bit>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "latgen/canonical.hpp"
#include "latgen/extension.hpp"
#include "latgen/lattice.hpp"

namespace latgen {

/// Extension below the full atom set; the result has a unique atom and
/// stays modular (the same lattice with one element appended at the
/// bottom).
inline Lattice alpha_step(const Lattice& L) {
    if (L.size() < 2 || L.size() >= kMaxElements)
        throw std::invalid_argument("alpha step outside the supported size range");
    return extend_unchecked(L, L.atom_mask());
}

/// Extension below a single cover b of the newest element n-1. The cover
/// is unique after a beta step; after an alpha step all covers of the
/// unique atom are interchangeable, and the least-labeled one is used for
/// determinism. Other inputs are outside the construction and rejected.
inline Lattice beta_step(const Lattice& L) {
    if (L.size() < 3 || L.size() >= kMaxElements)
        throw std::invalid_argument("beta step outside the supported size range");
    const int newest = L.size() - 1;
    const Mask covers = L.covers_mask(newest);
    if (!std::has_single_bit(covers) && L.atom_mask() != bit(newest))
        throw std::invalid_argument(
            "beta step needs a unique cover of the newest element or a unique-atom lattice");
    return extend_unchecked(L, bit(lowest_bit(covers)));
}

/// All 2^(n-3) lattices of size n reachable from the 3-chain by
/// {alpha,beta}-words of length n-3.
inline std::vector<Lattice> generate_alpha_beta(int n) {
    if (n < 3) throw std::invalid_argument("alpha-beta construction starts at size 3");
    if (n > kMaxElements) throw std::invalid_argument("size exceeds the element cap");
    const int steps = n - 3;
    std::vector<Lattice> out;
    out.reserve(std::size_t{1} << steps);
    const Lattice start = Lattice::chain(3);
    for (std::uint64_t word = 0; word < (std::uint64_t{1} << steps); ++word) {
        Lattice L = start;
        for (int i = 0; i < steps; ++i) L = (word >> i) & 1 ? beta_step(L) : alpha_step(L);
        out.push_back(std::move(L));
    }
    return out;
}

/// Checks the lower-bound construction at size n: every generated lattice
/// is modular and the 2^(n-3) canonical keys are pairwise distinct. When an
/// enumerated modular count is supplied, also checks 2^(n-3) <= m(n).
inline bool verify_lower_bound(int n, std::optional<std::uint64_t> modular_count = {}) {
    if (n > 14) throw std::invalid_argument("lower-bound verification capped at 14 elements");
    const std::vector<Lattice> family = generate_alpha_beta(n);
    const std::uint64_t expected = std::uint64_t{1} << (n - 3);
    if (family.size() != expected) return false;
    std::vector<std::string> keys;
    keys.reserve(family.size());
    for (const Lattice& L : family) {
        if (L.size() != n || !is_modular(L)) return false;
        keys.push_back(canonical_key(L));
    }
    std::sort(keys.begin(), keys.end());
    if (std::adjacent_find(keys.begin(), keys.end()) != keys.end()) return false;
    return !modular_count || expected <= *modular_count;
}

} // namespace latgen
