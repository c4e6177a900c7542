#pragma once
// Finite bounded lattices on {0,...,n-1} with element 0 the bottom and
// element 1 the top (n >= 2; for n = 1 the single element is both).
// The order relation and the cover relation are kept as per-element
// bitsets, which caps the size at one machine word (64 elements).

#include <bit>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace latgen {

using Mask = std::uint64_t;

inline constexpr int kMaxElements = 64;

constexpr Mask bit(int i) { return Mask{1} << i; }

/// Bits 0..n-1 set.
constexpr Mask mask_below(int n) {
    return n >= kMaxElements ? ~Mask{0} : (Mask{1} << n) - 1;
}

constexpr int lowest_bit(Mask m) { return std::countr_zero(m); }

/// Elements of a mask in ascending order.
inline std::vector<int> mask_elements(Mask m) {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(std::popcount(m)));
    for (Mask t = m; t; t &= t - 1) out.push_back(std::countr_zero(t));
    return out;
}

class Lattice {
public:
    Lattice() = default;

    /// Validating constructor from an explicit order relation.
    /// `up_rows[a]` is the bitset of all b with a <= b (including a).
    /// Throws std::invalid_argument naming the violating element pair if the
    /// relation is not a partial order, lacks the bottom/top convention, or
    /// lacks some join or meet.
    static Lattice from_relation(std::span<const Mask> up_rows) {
        const int n = static_cast<int>(up_rows.size());
        if (n < 1) throw std::invalid_argument("lattice needs at least one element");
        if (n > kMaxElements)
            throw std::invalid_argument("lattice too large: " + std::to_string(n) +
                                        " > " + std::to_string(kMaxElements) + " elements");
        const Mask full = mask_below(n);
        for (int a = 0; a < n; ++a) {
            if (up_rows[a] & ~full)
                throw std::invalid_argument("relation row " + std::to_string(a) +
                                            " references elements outside 0.." + std::to_string(n - 1));
            if (!(up_rows[a] & bit(a)))
                throw std::invalid_argument("relation not reflexive at element " + std::to_string(a));
        }
        for (int a = 0; a < n; ++a)
            for (Mask t = up_rows[a] & ~bit(a); t; t &= t - 1) {
                const int b = std::countr_zero(t);
                if (up_rows[b] & bit(a))
                    throw std::invalid_argument("antisymmetry violated by elements " +
                                                std::to_string(a) + " and " + std::to_string(b));
                if ((up_rows[a] & up_rows[b]) != up_rows[b])
                    throw std::invalid_argument("transitivity violated at pair " +
                                                std::to_string(a) + " <= " + std::to_string(b));
            }
        if (up_rows[0] != full)
            throw std::invalid_argument("element 0 is not a bottom: 0 is not below element " +
                                        std::to_string(lowest_bit(full & ~up_rows[0])));
        if (n >= 2)
            for (int a = 0; a < n; ++a)
                if (!(up_rows[a] & bit(1)))
                    throw std::invalid_argument("element 1 is not a top: element " +
                                                std::to_string(a) + " is not below 1");

        Lattice L;
        L.n_ = n;
        L.up_.assign(up_rows.begin(), up_rows.end());
        L.down_.assign(static_cast<std::size_t>(n), 0);
        for (int a = 0; a < n; ++a)
            for (Mask t = up_rows[a]; t; t &= t - 1) L.down_[std::countr_zero(t)] |= bit(a);

        // Every pair must have a least upper bound and a greatest lower bound.
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b) {
                if (L.find_bound(L.up_, L.up_[a] & L.up_[b]) < 0)
                    throw std::invalid_argument("elements " + std::to_string(a) + " and " +
                                                std::to_string(b) + " have no least upper bound");
                if (L.find_bound(L.down_, L.down_[a] & L.down_[b]) < 0)
                    throw std::invalid_argument("elements " + std::to_string(a) + " and " +
                                                std::to_string(b) + " have no greatest lower bound");
            }

        L.covers_.assign(static_cast<std::size_t>(n), 0);
        for (int a = 0; a < n; ++a) {
            const Mask strict_up = L.up_[a] & ~bit(a);
            for (Mask t = strict_up; t; t &= t - 1) {
                const int b = std::countr_zero(t);
                // a ~< b iff nothing sits strictly between them
                if ((strict_up & (L.down_[b] & ~bit(b))) == 0) L.covers_[a] |= bit(b);
            }
        }
        return L;
    }

    /// Trusted constructor used by the extension step; rows must already
    /// satisfy every Lattice invariant.
    static Lattice from_parts_unchecked(int n, std::vector<Mask> up, std::vector<Mask> down,
                                        std::vector<Mask> covers) {
        Lattice L;
        L.n_ = n;
        L.up_ = std::move(up);
        L.down_ = std::move(down);
        L.covers_ = std::move(covers);
        return L;
    }

    /// The n-element chain 0 < n-1 < n-2 < ... < 2 < 1 (levelized labels).
    static Lattice chain(int n) {
        if (n < 1 || n > kMaxElements) throw std::invalid_argument("bad chain size");
        std::vector<Mask> up(static_cast<std::size_t>(n));
        up[0] = mask_below(n);
        // above element i (for i >= 1) sit exactly the labels 1..i
        for (int i = 1; i < n; ++i) up[i] = mask_below(i + 1) & ~bit(0);
        return from_relation(up);
    }

    int size() const { return n_; }
    Mask all_mask() const { return mask_below(n_); }

    bool leq(int a, int b) const { return (up_[a] >> b) & 1; }
    bool covered_by(int a, int b) const { return (covers_[a] >> b) & 1; }
    bool comparable(int a, int b) const { return leq(a, b) || leq(b, a); }

    Mask up_set(int a) const { return up_[a]; }
    Mask down_set(int a) const { return down_[a]; }
    Mask covers_mask(int a) const { return covers_[a]; }
    std::vector<int> upper_covers(int a) const { return mask_elements(covers_[a]); }
    Mask atom_mask() const { return covers_[0]; }

    int join(int a, int b) const {
        const int j = find_bound(up_, up_[a] & up_[b]);
        return j; // existence guaranteed by the lattice invariant
    }
    int meet(int a, int b) const { return find_bound(down_, down_[a] & down_[b]); }

    bool operator==(const Lattice&) const = default;

private:
    // Least element of an up-set intersection (or greatest of a down-set
    // intersection): the unique x in `common` whose own ray equals `common`.
    // Returns -1 if no such element exists.
    int find_bound(const std::vector<Mask>& rays, Mask common) const {
        for (Mask t = common; t; t &= t - 1) {
            const int x = std::countr_zero(t);
            if (rays[x] == common) return x;
        }
        return -1;
    }

    int n_ = 0;
    std::vector<Mask> up_;
    std::vector<Mask> down_;
    std::vector<Mask> covers_;
};

// ---------------------------------------------------------------------------
// Levels

/// Strata of iterated maximal elements of L \ {0}: blocks[0] is the set of
/// maximal elements (always {1}), blocks[m] the maximal elements after the
/// first m blocks are removed. dep[p] is the 1-based block index of p and
/// equals the cardinality of the longest chain from p to the top.
struct LevelPartition {
    std::vector<int> dep;     // dep[0] = 0 by convention (0 is not in any level)
    std::vector<Mask> blocks; // blocks[i] = lev_{i+1}

    int levels() const { return static_cast<int>(blocks.size()); }
    Mask bottom() const { return blocks.back(); }
    /// lev_{k-1}; empty when there is a single level.
    Mask above_bottom() const {
        return blocks.size() >= 2 ? blocks[blocks.size() - 2] : Mask{0};
    }
};

inline LevelPartition compute_levels(const Lattice& L) {
    LevelPartition lp;
    lp.dep.assign(static_cast<std::size_t>(L.size()), 0);
    Mask remaining = L.all_mask() & ~bit(0);
    while (remaining) {
        Mask maximal = 0;
        for (Mask t = remaining; t; t &= t - 1) {
            const int x = std::countr_zero(t);
            if ((L.up_set(x) & remaining) == bit(x)) maximal |= bit(x);
        }
        lp.blocks.push_back(maximal);
        const int level = lp.levels();
        for (Mask t = maximal; t; t &= t - 1) lp.dep[std::countr_zero(t)] = level;
        remaining &= ~maximal;
    }
    return lp;
}

/// True iff the level blocks, read top to bottom, are consecutive label
/// ranges {1}, {2..m2}, {m2+1..m3}, ... so labels increase with depth.
inline bool is_levelized(const Lattice& L) {
    const LevelPartition lp = compute_levels(L);
    int next = 1;
    for (const Mask block : lp.blocks) {
        const int width = std::popcount(block);
        if (block != (mask_below(next + width) & ~mask_below(next))) return false;
        next += width;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Structural predicates

/// a/\b ~< a,b implies a,b ~< a\/b for all pairs.
inline bool is_semimodular(const Lattice& L) {
    const int n = L.size();
    for (int a = 2; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
            if (L.comparable(a, b)) continue;
            const int m = L.meet(a, b);
            if (!(L.covered_by(m, a) && L.covered_by(m, b))) continue;
            const int j = L.join(a, b);
            if (!(L.covered_by(a, j) && L.covered_by(b, j))) return false;
        }
    return true;
}

/// Dual: a,b ~< a\/b implies a/\b ~< a,b.
inline bool is_lower_semimodular(const Lattice& L) {
    const int n = L.size();
    for (int a = 2; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
            if (L.comparable(a, b)) continue;
            const int j = L.join(a, b);
            if (!(L.covered_by(a, j) && L.covered_by(b, j))) continue;
            const int m = L.meet(a, b);
            if (!(L.covered_by(m, a) && L.covered_by(m, b))) return false;
        }
    return true;
}

/// Modularity through the semimodular + lower semimodular characterization
/// (valid for finite lattices); the route the enumerator uses.
inline bool is_modular(const Lattice& L) {
    return is_semimodular(L) && is_lower_semimodular(L);
}

/// Modularity by the law itself: a >= c implies a/\(b\/c) = (a/\b)\/c.
/// Kept alongside is_modular as a permanent cross-check.
inline bool is_modular_direct(const Lattice& L) {
    const int n = L.size();
    for (int a = 0; a < n; ++a)
        for (int c = 0; c < n; ++c) {
            if (!L.leq(c, a)) continue;
            for (int b = 0; b < n; ++b)
                if (L.meet(a, L.join(b, c)) != L.join(L.meet(a, b), c)) return false;
        }
    return true;
}

/// All maximal chains from bottom to top have the same cardinality.
inline bool jordan_holder_holds(const Lattice& L) {
    const int n = L.size();
    if (n == 1) return true;
    std::vector<int> shortest(static_cast<std::size_t>(n), 0), longest(static_cast<std::size_t>(n), 0);
    auto walk = [&](auto&& self, int x) -> void {
        if (shortest[x]) return;
        if (x == 1) {
            shortest[x] = longest[x] = 1;
            return;
        }
        int lo = kMaxElements + 1, hi = 0;
        for (Mask t = L.covers_mask(x); t; t &= t - 1) {
            const int q = std::countr_zero(t);
            self(self, q);
            lo = std::min(lo, shortest[q]);
            hi = std::max(hi, longest[q]);
        }
        shortest[x] = lo + 1;
        longest[x] = hi + 1;
    };
    walk(walk, 0);
    return shortest[0] == longest[0];
}

/// Some element other than bottom and top is comparable to every element.
inline bool is_vertically_decomposable(const Lattice& L) {
    const Mask full = L.all_mask();
    for (int x = 2; x < L.size(); ++x)
        if ((L.up_set(x) | L.down_set(x)) == full) return true;
    return false;
}

// ---------------------------------------------------------------------------
// Cover-list interchange format: one lattice per line, `n;a<b,a<b,...` with
// the cover pairs sorted lexicographically by (a,b), decimal labels and no
// whitespace. The diamond is `4;0<2,0<3,2<1,3<1`.

inline std::string to_cover_list(const Lattice& L) {
    std::string out = std::to_string(L.size());
    out += ';';
    bool first = true;
    for (int a = 0; a < L.size(); ++a)
        for (Mask t = L.covers_mask(a); t; t &= t - 1) {
            if (!first) out += ',';
            first = false;
            out += std::to_string(a);
            out += '<';
            out += std::to_string(std::countr_zero(t));
        }
    return out;
}

namespace detail {

inline int parse_label(std::string_view s, std::size_t& pos, int n) {
    if (pos >= s.size() || s[pos] < '0' || s[pos] > '9')
        throw std::invalid_argument("cover list: expected a label at position " + std::to_string(pos));
    long v = 0;
    while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') {
        v = v * 10 + (s[pos] - '0');
        if (v > kMaxElements) throw std::invalid_argument("cover list: label out of range");
        ++pos;
    }
    if (n >= 0 && v >= n) throw std::invalid_argument("cover list: label " + std::to_string(v) + " out of range");
    return static_cast<int>(v);
}

} // namespace detail

inline Lattice parse_cover_list(std::string_view s) {
    std::size_t pos = 0;
    const int n = detail::parse_label(s, pos, -1);
    if (n < 1) throw std::invalid_argument("cover list: bad element count");
    if (pos >= s.size() || s[pos] != ';') throw std::invalid_argument("cover list: expected ';'");
    ++pos;
    std::vector<std::pair<int, int>> pairs;
    while (pos < s.size()) {
        if (!pairs.empty()) {
            if (s[pos] != ',') throw std::invalid_argument("cover list: expected ','");
            ++pos;
        }
        const int a = detail::parse_label(s, pos, n);
        if (pos >= s.size() || s[pos] != '<') throw std::invalid_argument("cover list: expected '<'");
        ++pos;
        const int b = detail::parse_label(s, pos, n);
        if (!pairs.empty() && !(pairs.back() < std::pair{a, b}))
            throw std::invalid_argument("cover list: pairs not sorted");
        pairs.emplace_back(a, b);
    }
    // transitive closure of the cover pairs, then full validation
    std::vector<Mask> up(static_cast<std::size_t>(n));
    for (int a = 0; a < n; ++a) up[a] = bit(a);
    for (bool changed = true; changed;) {
        changed = false;
        for (const auto& [a, b] : pairs) {
            const Mask merged = up[a] | up[b];
            if (merged != up[a]) {
                up[a] = merged;
                changed = true;
            }
        }
    }
    Lattice L = Lattice::from_relation(up);
    // reject inputs whose pair list is not exactly the cover relation
    for (const auto& [a, b] : pairs)
        if (!L.covered_by(a, b))
            throw std::invalid_argument("cover list: " + std::to_string(a) + "<" + std::to_string(b) +
                                        " is not a cover");
    if (to_cover_list(L) != s) throw std::invalid_argument("cover list: not in canonical form");
    return L;
}

} // namespace latgen
