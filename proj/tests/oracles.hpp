#pragma once
// Brute-force oracles and shared fixtures for the test suites. Everything
// here recomputes results from definitions, independent of the library's
// optimized paths.

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "latgen/latgen.hpp"

namespace oracle {

using namespace latgen;

// --- fixtures --------------------------------------------------------------

inline Lattice diamond() { return parse_cover_list("4;0<2,0<3,2<1,3<1"); }
/// Pentagon 0<2<3<1, 0<4<1 (valid but not levelized).
inline Lattice pentagon() { return parse_cover_list("5;0<2,0<4,2<3,3<1,4<1"); }
/// Pentagon with levelized labels: 0<4<2<1, 0<3<1.
inline Lattice pentagon_levelized() { return parse_cover_list("5;0<3,0<4,2<1,3<1,4<2"); }
/// Hexagon 0<2<3<1, 0<4<5<1.
inline Lattice hexagon() { return parse_cover_list("6;0<2,0<4,2<3,3<1,4<5,5<1"); }
inline Lattice m3() { return parse_cover_list("5;0<2,0<3,0<4,2<1,3<1,4<1"); }
/// The height-2 lattice with k atoms between shared bottom and top.
inline Lattice m_k(int k) {
    std::vector<Mask> up(static_cast<std::size_t>(k) + 2);
    up[0] = mask_below(k + 2);
    up[1] = bit(1);
    for (int a = 2; a < k + 2; ++a) up[a] = bit(a) | bit(1);
    return Lattice::from_relation(up);
}

// --- permutations ----------------------------------------------------------

/// All permutations of {0..n-1} fixing 0 and 1.
inline std::vector<Perm> all_label_perms(int n) {
    std::vector<int> rest;
    for (int i = 2; i < n; ++i) rest.push_back(i);
    std::vector<Perm> out;
    do {
        Perm p(static_cast<std::size_t>(n));
        p[0] = 0;
        if (n >= 2) p[1] = 1;
        for (std::size_t i = 0; i < rest.size(); ++i) p[i + 2] = rest[i];
        out.push_back(p);
    } while (std::next_permutation(rest.begin(), rest.end()));
    return out;
}

inline bool isomorphic_brute_force(const Lattice& a, const Lattice& b) {
    if (a.size() != b.size()) return false;
    for (const Perm& p : all_label_perms(a.size()))
        if (apply_labeling(a, p) == b) return true;
    return false;
}

/// Weight canonicity straight from the definition: no relabeling at all
/// (fixing only the bottom/top convention) reaches a smaller weight.
inline bool weight_canonical_brute_force(const Lattice& L) {
    const Weight w = weight(L);
    for (const Perm& p : all_label_perms(L.size()))
        if (weight(apply_labeling(L, p)) < w) return false;
    return true;
}

inline std::vector<Perm> automorphisms_brute_force(const Lattice& L) {
    std::vector<Perm> out;
    for (const Perm& p : all_label_perms(L.size()))
        if (is_automorphism(L, p)) out.push_back(p);
    return out;
}

// --- definitions recomputed ------------------------------------------------

/// The lattice-antichain condition checked literally: locate each meet as
/// an element and test membership in {0} u ^A.
inline bool lattice_antichain_by_definition(const Lattice& L, Mask a) {
    if (!a || (a & bit(0))) return false;
    for (const int x : mask_elements(a))
        for (const int y : mask_elements(a))
            if (x != y && L.comparable(x, y)) return false;
    Mask up = 0;
    for (const int x : mask_elements(a)) up |= L.up_set(x);
    for (const int x : mask_elements(up))
        for (const int y : mask_elements(up)) {
            const int m = L.meet(x, y);
            if (m != 0 && !((up >> m) & 1)) return false;
        }
    return true;
}

/// All nonempty antichains of L \ {0} (not only lattice-antichains).
inline std::vector<Mask> all_antichains(const Lattice& L) {
    std::vector<Mask> out;
    const int n = L.size();
    for (Mask s = 1; s < (Mask{1} << n); ++s) {
        if (s & bit(0)) continue;
        bool antichain = true;
        const auto elems = mask_elements(s);
        for (std::size_t i = 0; i < elems.size() && antichain; ++i)
            for (std::size_t j = i + 1; j < elems.size() && antichain; ++j)
                antichain = !L.comparable(elems[i], elems[j]);
        if (antichain) out.push_back(s);
    }
    return out;
}

/// Longest chain cardinality from x to the top, walking covers.
inline int longest_chain_to_top(const Lattice& L, int x) {
    if (x == 1) return 1;
    int best = 0;
    for (const int q : mask_elements(L.covers_mask(x)))
        best = std::max(best, longest_chain_to_top(L, q));
    return best + 1;
}

/// Every counted lattice of every size up to `target`.
inline std::vector<Lattice> generated_lattices(int target, LatticeClass cls = LatticeClass::all,
                                               Algorithm algo = Algorithm::weight) {
    std::vector<Lattice> out;
    for (int n = 2; n <= target; ++n) {
        EnumConfig cfg{n, cls, false, algo, 1, 0};
        enumerate(cfg, [&](const Lattice& L) { out.push_back(L); });
    }
    return out;
}

} // namespace oracle
