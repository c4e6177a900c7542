#pragma once
// Isomorphism machinery: the lexicographic weight order and its canonicity
// test (the orderly search), a partition-refinement canonical labeling with
// automorphism discovery (the construction-path search), orbit handling,
// and the canonical-deletion acceptance test.

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "latgen/extension.hpp"
#include "latgen/lattice.hpp"

namespace latgen {

using Perm = std::vector<int>; // perm[x] = image of x

inline Perm identity_perm(int n) {
    Perm p(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) p[i] = i;
    return p;
}

inline Mask permute_mask(Mask m, const Perm& p) {
    Mask out = 0;
    for (Mask t = m; t; t &= t - 1) out |= bit(p[std::countr_zero(t)]);
    return out;
}

/// Relabel a lattice by a permutation fixing bottom and top.
inline Lattice apply_labeling(const Lattice& L, const Perm& p) {
    const int n = L.size();
    std::vector<Mask> up(static_cast<std::size_t>(n)), down(static_cast<std::size_t>(n)),
        covers(static_cast<std::size_t>(n));
    for (int x = 0; x < n; ++x) {
        up[p[x]] = permute_mask(L.up_set(x), p);
        down[p[x]] = permute_mask(L.down_set(x), p);
        covers[p[x]] = permute_mask(L.covers_mask(x), p);
    }
    return Lattice::from_parts_unchecked(n, std::move(up), std::move(down), std::move(covers));
}

inline bool is_automorphism(const Lattice& L, const Perm& p) {
    for (int a = 0; a < L.size(); ++a)
        if (permute_mask(L.up_set(a), p) != L.up_set(p[a])) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Weight order (orderly algorithm)

/// w_i = sum of 2^j over the upper covers j of i, for i = 2..n-1; compared
/// lexicographically in index order. As a bitset the sum is exactly the
/// cover mask of i.
struct Weight {
    std::vector<Mask> w;
    auto operator<=>(const Weight&) const = default;
};

inline Weight weight(const Lattice& L) {
    Weight out;
    for (int i = 2; i < L.size(); ++i) out.w.push_back(L.covers_mask(i));
    return out;
}

namespace detail {

// Searches for a level-preserving relabeling of strictly smaller weight.
// Labels are assigned in increasing order; at label l every upper cover of
// a candidate already carries its new label, so w_l is known immediately
// and branches compare against L's own weight prefix as they grow.
class WeightCanonicity {
public:
    WeightCanonicity(const Lattice& L, const LevelPartition& lv) : L_(L), lv_(lv) {}

    bool smaller_exists() {
        const int n = L_.size();
        if (n <= 2) return false;
        newlabel_.assign(static_cast<std::size_t>(n), -1);
        newlabel_[0] = 0;
        newlabel_[1] = 1;
        unassigned_ = L_.all_mask() & ~bit(0) & ~bit(1);
        return dfs(2);
    }

private:
    bool dfs(int label) {
        if (label == L_.size()) return false;
        const Mask target = L_.covers_mask(label);
        const Mask block = lv_.blocks[static_cast<std::size_t>(lv_.dep[label] - 1)];
        int equal[kMaxElements];
        int n_equal = 0;
        for (Mask t = block & unassigned_; t; t &= t - 1) {
            const int p = std::countr_zero(t);
            Mask w = 0;
            for (Mask c = L_.covers_mask(p); c; c &= c - 1)
                w |= bit(newlabel_[std::countr_zero(c)]);
            if (w < target) return true; // strictly smaller prefix is reachable
            if (w == target) equal[n_equal++] = p;
        }
        for (int i = 0; i < n_equal; ++i) {
            const int p = equal[i];
            bool mirrored = false;
            for (int j = 0; j < i && !mirrored; ++j) mirrored = swap_is_automorphism(equal[j], p);
            if (mirrored) continue; // an explored sibling covers this branch
            newlabel_[p] = label;
            unassigned_ &= ~bit(p);
            const bool found = dfs(label + 1);
            newlabel_[p] = -1;
            unassigned_ |= bit(p);
            if (found) return true;
        }
        return false;
    }

    bool swap_is_automorphism(int p, int q) const {
        const Mask pq = bit(p) | bit(q);
        return (L_.up_set(p) & ~pq) == (L_.up_set(q) & ~pq) &&
               (L_.down_set(p) & ~pq) == (L_.down_set(q) & ~pq);
    }

    const Lattice& L_;
    const LevelPartition& lv_;
    Perm newlabel_;
    Mask unassigned_ = 0;
};

} // namespace detail

/// True iff no level-block-preserving relabeling (fixing 0 and 1) has a
/// lexicographically smaller weight. Level preservation is sound here
/// because isomorphisms preserve dep and the search maintains levelized
/// lattices; the all-permutations oracle lives in the tests.
inline bool is_weight_canonical(const Lattice& L, const LevelPartition& lv) {
    assert(L.size() <= 2 || is_levelized(L));
    return !detail::WeightCanonicity(L, lv).smaller_exists();
}

inline bool is_weight_canonical(const Lattice& L) {
    const LevelPartition lv = compute_levels(L);
    return is_weight_canonical(L, lv);
}

// ---------------------------------------------------------------------------
// Canonical labeling by equitable refinement + individualization

/// perm maps original elements to canonical labels; generators are
/// automorphisms discovered during the search (they generate Aut(L)).
struct CanonResult {
    Perm perm;
    std::vector<Perm> generators;
};

namespace detail {

class CanonSearch {
public:
    explicit CanonSearch(const Lattice& L) : L_(L), n_(L.size()) {
        lower_covers_.assign(static_cast<std::size_t>(n_), 0);
        for (int a = 0; a < n_; ++a)
            for (Mask t = L.covers_mask(a); t; t &= t - 1)
                lower_covers_[std::countr_zero(t)] |= bit(a);
    }

    CanonResult run() {
        std::vector<Mask> cells;
        cells.push_back(bit(0));
        if (n_ >= 2) cells.push_back(bit(1));
        const LevelPartition lv = compute_levels(L_);
        for (std::size_t i = 1; i < lv.blocks.size(); ++i) cells.push_back(lv.blocks[i]);
        refine(cells);
        node(cells);
        return CanonResult{best_perm_, gens_};
    }

private:
    // Split cells by cover-degree counts into every cell until equitable.
    // Fragments are ordered by their count signatures, which keeps the
    // refinement independent of the input labeling.
    void refine(std::vector<Mask>& cells) const {
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::size_t ci = 0; ci < cells.size(); ++ci) {
                if (std::has_single_bit(cells[ci])) continue;
                // signature of x: per cell, (#covers of x in cell, #co-covers)
                struct Keyed {
                    std::vector<int> sig;
                    int x;
                };
                std::vector<Keyed> members;
                for (Mask t = cells[ci]; t; t &= t - 1) {
                    const int x = std::countr_zero(t);
                    Keyed k{{}, x};
                    k.sig.reserve(cells.size() * 2);
                    for (const Mask cell : cells) {
                        k.sig.push_back(std::popcount(L_.covers_mask(x) & cell));
                        k.sig.push_back(std::popcount(lower_covers_[x] & cell));
                    }
                    members.push_back(std::move(k));
                }
                std::stable_sort(members.begin(), members.end(),
                                 [](const Keyed& a, const Keyed& b) { return a.sig < b.sig; });
                std::vector<Mask> parts;
                for (std::size_t i = 0; i < members.size(); ++i) {
                    if (i == 0 || members[i].sig != members[i - 1].sig) parts.push_back(0);
                    parts.back() |= bit(members[i].x);
                }
                if (parts.size() > 1) {
                    cells.erase(cells.begin() + static_cast<std::ptrdiff_t>(ci));
                    cells.insert(cells.begin() + static_cast<std::ptrdiff_t>(ci), parts.begin(),
                                 parts.end());
                    changed = true;
                    break;
                }
            }
        }
    }

    void node(const std::vector<Mask>& cells) {
        // first smallest non-singleton cell is the branching target
        int target = -1, target_size = kMaxElements + 1;
        for (std::size_t i = 0; i < cells.size(); ++i) {
            const int sz = std::popcount(cells[i]);
            if (sz > 1 && sz < target_size) {
                target = static_cast<int>(i);
                target_size = sz;
            }
        }
        if (target < 0) {
            leaf(cells);
            return;
        }
        std::vector<int> tried;
        for (Mask t = cells[static_cast<std::size_t>(target)]; t; t &= t - 1) {
            const int v = std::countr_zero(t);
            if (in_tried_orbit(v, tried)) continue;
            tried.push_back(v);
            std::vector<Mask> next = cells;
            next[static_cast<std::size_t>(target)] &= ~bit(v);
            next.insert(next.begin() + target, bit(v));
            refine(next);
            path_.push_back(v);
            node(next);
            path_.pop_back();
        }
    }

    // v is redundant if an automorphism fixing the individualized path maps
    // an already-explored sibling to it.
    bool in_tried_orbit(int v, const std::vector<int>& tried) const {
        if (tried.empty()) return false;
        std::vector<int> parent(static_cast<std::size_t>(n_));
        for (int i = 0; i < n_; ++i) parent[i] = i;
        auto find = [&](int x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        for (const Perm& g : gens_) {
            bool fixes = true;
            for (const int u : path_)
                if (g[u] != u) {
                    fixes = false;
                    break;
                }
            if (!fixes) continue;
            for (int x = 0; x < n_; ++x) {
                const int a = find(x), b = find(g[x]);
                if (a != b) parent[a] = b;
            }
        }
        const int rv = find(v);
        for (const int t : tried)
            if (find(t) == rv) return true;
        return false;
    }

    void leaf(const std::vector<Mask>& cells) {
        Perm perm(static_cast<std::size_t>(n_));
        for (int i = 0; i < n_; ++i) perm[lowest_bit(cells[static_cast<std::size_t>(i)])] = i;
        std::vector<Mask> rows(static_cast<std::size_t>(n_));
        for (int x = 0; x < n_; ++x) rows[perm[x]] = permute_mask(L_.up_set(x), perm);

        if (best_perm_.empty()) {
            best_perm_ = first_perm_ = perm;
            best_rows_ = first_rows_ = rows;
            return;
        }
        if (rows == first_rows_) record_automorphism(first_perm_, perm);
        if (rows < best_rows_) {
            best_rows_ = rows;
            best_perm_ = perm;
        } else if (rows == best_rows_ && !(perm == best_perm_)) {
            record_automorphism(best_perm_, perm);
        }
    }

    // pa and pb relabel L to the same object, so pa^-1 . pb fixes L.
    void record_automorphism(const Perm& pa, const Perm& pb) {
        Perm inv(static_cast<std::size_t>(n_));
        for (int x = 0; x < n_; ++x) inv[pa[x]] = x;
        Perm g(static_cast<std::size_t>(n_));
        bool trivial = true;
        for (int x = 0; x < n_; ++x) {
            g[x] = inv[pb[x]];
            trivial &= g[x] == x;
        }
        if (trivial) return;
        assert(is_automorphism(L_, g));
        for (const Perm& have : gens_)
            if (have == g) return;
        gens_.push_back(std::move(g));
    }

    const Lattice& L_;
    int n_;
    std::vector<Mask> lower_covers_;
    std::vector<int> path_;
    std::vector<Perm> gens_;
    Perm best_perm_, first_perm_;
    std::vector<Mask> best_rows_, first_rows_;
};

} // namespace detail

/// Deterministic canonical labeling: two lattices receive identical
/// relabeled order relations exactly when they are isomorphic. The search
/// refines an initial partition by levels and backtracks over target cells,
/// keeping the lexicographically least relabeled relation.
inline CanonResult canonical_labeling(const Lattice& L) {
    return detail::CanonSearch(L).run();
}

/// Cover-list serialization of the canonically relabeled lattice; equal
/// keys iff isomorphic.
inline std::string canonical_key(const Lattice& L) {
    return to_cover_list(apply_labeling(L, canonical_labeling(L).perm));
}

// ---------------------------------------------------------------------------
// Automorphism groups and orbits

/// The full automorphism set, materialized by closing the discovered
/// generators under composition. Every member fixes 0 and 1 and preserves
/// every level block. Groups beyond `cap` elements signal input outside
/// the intended scale and raise std::runtime_error.
struct AutGroup {
    std::vector<Perm> perms;
    std::size_t order() const { return perms.size(); }
};

inline AutGroup automorphisms(const Lattice& L, std::size_t cap = 1'000'000) {
    const CanonResult canon = canonical_labeling(L);
    std::set<Perm> closed;
    closed.insert(identity_perm(L.size()));
    std::vector<Perm> queue(closed.begin(), closed.end());
    while (!queue.empty()) {
        const Perm g = std::move(queue.back());
        queue.pop_back();
        for (const Perm& h : canon.generators) {
            Perm gh(static_cast<std::size_t>(L.size()));
            for (int x = 0; x < L.size(); ++x) gh[x] = g[h[x]];
            if (closed.insert(gh).second) {
                if (closed.size() > cap)
                    throw std::runtime_error("automorphism group exceeds cap of " + std::to_string(cap));
                queue.push_back(std::move(gh));
            }
        }
    }
    AutGroup out;
    out.perms.assign(closed.begin(), closed.end());
    return out;
}

/// One representative per orbit of the generated group acting on element
/// sets; the representative is the lexicographically least member.
inline std::vector<Mask> orbit_representatives(const std::vector<Mask>& sets,
                                               const std::vector<Perm>& generators) {
    if (generators.empty()) return sets;
    std::vector<Mask> reps;
    for (const Mask a : sets) {
        // expand the orbit of a; keep a only if it is the least member
        std::vector<Mask> orbit{a};
        bool least = true;
        for (std::size_t i = 0; i < orbit.size() && least; ++i)
            for (const Perm& g : generators) {
                const Mask img = permute_mask(orbit[i], g);
                if (lex_set_less(img, a)) {
                    least = false;
                    break;
                }
                if (std::find(orbit.begin(), orbit.end(), img) == orbit.end()) orbit.push_back(img);
            }
        if (least) reps.push_back(a);
    }
    return reps;
}

/// Orbit selection for the construction-path search, using Aut(L).
inline std::vector<Mask> antichain_orbit_representatives(const Lattice& L,
                                                         const std::vector<Mask>& antichains) {
    return orbit_representatives(antichains, canonical_labeling(L).generators);
}

inline bool same_element_orbit(const std::vector<Perm>& generators, int n, int a, int b) {
    if (a == b) return true;
    std::vector<int> parent(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) parent[i] = i;
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const Perm& g : generators)
        for (int x = 0; x < n; ++x) {
            const int ra = find(x), rb = find(g[x]);
            if (ra != rb) parent[ra] = rb;
        }
    return find(a) == find(b);
}

/// Canonical-deletion acceptance for an extension whose newest element is
/// labeled n-1: the construction path is kept iff the newest element lies
/// in the same Aut orbit as the element holding the last canonical label,
/// i.e. deleting the canonical victim recovers an isomorph of the parent.
inline bool is_canonical_extension(const CanonResult& canon, int newest) {
    const int n = static_cast<int>(canon.perm.size());
    int victim = -1;
    for (int x = 0; x < n; ++x)
        if (canon.perm[x] == n - 1) {
            victim = x;
            break;
        }
    return same_element_orbit(canon.generators, n, newest, victim);
}

inline bool is_canonical_extension(const Lattice& ext) {
    return is_canonical_extension(canonical_labeling(ext), ext.size() - 1);
}

} // namespace latgen
