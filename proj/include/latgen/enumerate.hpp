#pragma once
// Search drivers for the two isomorph-free generation strategies, class and
// vertical-indecomposability accounting, frontier splitting for parallel
// runs, the brute-force reference oracle, and the convolution linking
// vertically-indecomposable counts to totals.

#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <mutex>
#include <span>
#include <stdexcept>
#include <thread>
#include <vector>

#include "latgen/canonical.hpp"
#include "latgen/extension.hpp"
#include "latgen/lattice.hpp"

namespace latgen {

enum class Algorithm { weight, canon_path };

struct EnumConfig {
    int target_n = 2;
    LatticeClass cls = LatticeClass::all;
    bool vi_only = false;
    Algorithm algorithm = Algorithm::weight;
    int jobs = 1;
    int split_depth = 0; // 0 picks a default when jobs > 1
};

struct CountResult {
    int target_n = 0;
    std::vector<std::uint64_t> counts; // indexed by size, entries 1..target_n
    double seconds = 0.0;
    std::uint64_t nodes_expanded = 0;
    std::uint64_t extensions_tested = 0;

    std::uint64_t count_at(int n) const {
        return n >= 1 && n <= target_n ? counts[static_cast<std::size_t>(n)] : 0;
    }
};

using LatticeSink = std::function<void(const Lattice&)>;

namespace detail {

struct SearchParams {
    int target_n;
    LatticeClass prune_cls; // which pruning lemmas are active
    LatticeClass count_cls; // leaf predicate
    bool vi_only;
    int depth_cap;   // stop recursing at this size
    int count_floor; // count only sizes strictly above this
};

struct SearchState {
    std::vector<std::uint64_t> counts;
    std::uint64_t nodes = 0;
    std::uint64_t extensions = 0;
    std::vector<Lattice>* frontier = nullptr; // filled at depth_cap when set
    const LatticeSink* sink = nullptr;
    std::mutex* sink_mutex = nullptr;
};

inline bool leaf_predicate(const Lattice& L, const SearchParams& p) {
    switch (p.count_cls) {
        case LatticeClass::modular:
            if (!is_modular(L)) return false;
            break;
        case LatticeClass::semimodular:
            if (!is_semimodular(L)) return false;
            break;
        case LatticeClass::all:
            break;
    }
    return !p.vi_only || !is_vertically_decomposable(L);
}

template <Algorithm Algo>
void search_node(const Lattice& L, const LevelPartition& lv, const std::vector<Perm>& gens,
                 int m, const SearchParams& p, SearchState& st) {
    ++st.nodes;
    if (m > p.count_floor && leaf_predicate(L, p)) {
        ++st.counts[static_cast<std::size_t>(m)];
        if (m == p.target_n && st.sink) {
            if (st.sink_mutex) {
                const std::lock_guard<std::mutex> lock(*st.sink_mutex);
                (*st.sink)(L);
            } else {
                (*st.sink)(L);
            }
        }
    }
    if (m == p.depth_cap) {
        if (st.frontier && m < p.target_n) st.frontier->push_back(L);
        return;
    }

    const FilterProfile profile{p.prune_cls, p.vi_only, m + 1 == p.target_n};
    std::vector<Mask> antichains = admissible_antichains(L, lv, profile);
    if constexpr (Algo == Algorithm::canon_path)
        antichains = orbit_representatives(antichains, gens);

    for (const Mask a : antichains) {
        ++st.extensions;
        const Lattice ext = extend_unchecked(L, a);
        if constexpr (Algo == Algorithm::weight) {
            const LevelPartition lv2 = compute_levels(ext);
            if (is_weight_canonical(ext, lv2)) search_node<Algo>(ext, lv2, gens, m + 1, p, st);
        } else {
            const CanonResult canon = canonical_labeling(ext);
            if (is_canonical_extension(canon, ext.size() - 1)) {
                const LevelPartition lv2 = compute_levels(ext);
                search_node<Algo>(ext, lv2, canon.generators, m + 1, p, st);
            }
        }
    }
}

inline void run_search(const Lattice& root, Algorithm algo, int start_size, const SearchParams& p,
                       SearchState& st) {
    const LevelPartition lv = compute_levels(root);
    if (algo == Algorithm::weight) {
        static const std::vector<Perm> no_gens;
        search_node<Algorithm::weight>(root, lv, no_gens, start_size, p, st);
    } else {
        search_node<Algorithm::canon_path>(root, lv, canonical_labeling(root).generators,
                                           start_size, p, st);
    }
}

inline void validate_config(const EnumConfig& cfg) {
    if (cfg.target_n < 1) throw std::invalid_argument("target size must be at least 1");
    if (cfg.target_n > kMaxElements) throw std::invalid_argument("target size exceeds the element cap");
    if (cfg.jobs < 1) throw std::invalid_argument("jobs must be at least 1");
    if (cfg.split_depth < 0) throw std::invalid_argument("split depth must be nonnegative");
    if (cfg.split_depth != 0 && cfg.split_depth >= cfg.target_n)
        throw std::invalid_argument("split depth must be smaller than the target size");
}

} // namespace detail

/// Accepted lattices of size `depth`, collected by running the configured
/// driver that far. Each is the root of an independent subtree: enumerating
/// every root to the target and summing reproduces the sequential count.
inline std::vector<Lattice> split_frontier(const EnumConfig& cfg, int depth) {
    detail::validate_config(cfg);
    if (depth < 2 || depth >= cfg.target_n)
        throw std::invalid_argument("split depth must lie in [2, target)");
    detail::SearchParams params{cfg.target_n, cfg.cls, cfg.cls, cfg.vi_only, depth, 0};
    detail::SearchState st;
    st.counts.assign(static_cast<std::size_t>(cfg.target_n) + 1, 0);
    std::vector<Lattice> frontier;
    st.frontier = &frontier;
    detail::run_search(Lattice::chain(2), cfg.algorithm, 2, params, st);
    return frontier;
}

/// Runs the configured driver from the 2-lattice root and returns per-size
/// counts (sizes 1 and 2 are 1 by convention). When vi_only is set,
/// vertically decomposable lattices are excluded from counts and emission.
/// `sink`, when provided, receives every counted lattice of the target size.
inline CountResult enumerate(const EnumConfig& cfg, const LatticeSink& sink = {}) {
    detail::validate_config(cfg);
    const auto t0 = std::chrono::steady_clock::now();

    CountResult result;
    result.target_n = cfg.target_n;
    result.counts.assign(static_cast<std::size_t>(cfg.target_n) + 1, 0);
    result.counts[1] = 1;

    if (cfg.target_n == 1) {
        if (sink) sink(Lattice::chain(1));
    } else {
        int split = cfg.split_depth;
        const bool parallel_requested = cfg.jobs > 1;
        if (split == 0 && parallel_requested) split = std::min(8, cfg.target_n - 1);
        if (split < 2 || cfg.target_n <= 3) split = 0;

        std::mutex sink_mutex;
        detail::SearchParams params{cfg.target_n, cfg.cls, cfg.cls, cfg.vi_only, cfg.target_n, 0};
        detail::SearchState st;
        st.counts.assign(result.counts.size(), 0);
        st.sink = sink ? &sink : nullptr;

        if (split == 0) {
            detail::run_search(Lattice::chain(2), cfg.algorithm, 2, params, st);
        } else {
            // sequential prefix up to the split depth, then independent subtrees
            std::vector<Lattice> roots;
            st.frontier = &roots;
            detail::SearchParams prefix = params;
            prefix.depth_cap = split;
            detail::run_search(Lattice::chain(2), cfg.algorithm, 2, prefix, st);
            st.frontier = nullptr;

            detail::SearchParams rest = params;
            rest.count_floor = split;
            std::atomic<std::size_t> next{0};
            std::mutex merge_mutex;
            auto worker = [&]() {
                detail::SearchState local;
                local.counts.assign(result.counts.size(), 0);
                local.sink = st.sink;
                local.sink_mutex = &sink_mutex;
                for (std::size_t i = next.fetch_add(1); i < roots.size(); i = next.fetch_add(1))
                    detail::run_search(roots[i], cfg.algorithm, split, rest, local);
                const std::lock_guard<std::mutex> lock(merge_mutex);
                for (std::size_t s = 0; s < st.counts.size(); ++s) st.counts[s] += local.counts[s];
                st.nodes += local.nodes;
                st.extensions += local.extensions;
            };
            std::vector<std::thread> pool;
            pool.reserve(static_cast<std::size_t>(cfg.jobs));
            for (int j = 0; j < cfg.jobs; ++j) pool.emplace_back(worker);
            for (std::thread& t : pool) t.join();
        }

        for (int s = 2; s <= cfg.target_n; ++s)
            result.counts[static_cast<std::size_t>(s)] = st.counts[static_cast<std::size_t>(s)];
        result.nodes_expanded = st.nodes;
        result.extensions_tested = st.extensions;
    }

    result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return result;
}

/// The convolution m(n) = sum_{k=2..n} m^v(k) * m(n-k+1) with m(1) = 1.
/// `mv[i]` holds m^v(i+2); the returned vector holds m(2..) likewise.
inline std::vector<std::uint64_t> counts_from_vi(std::span<const std::uint64_t> mv) {
    std::vector<std::uint64_t> m(mv.size(), 0);
    const auto m_at = [&](int size) -> std::uint64_t {
        return size == 1 ? 1 : m[static_cast<std::size_t>(size - 2)];
    };
    for (std::size_t i = 0; i < mv.size(); ++i) {
        const int n = static_cast<int>(i) + 2;
        std::uint64_t total = 0;
        for (int k = 2; k <= n; ++k) total += mv[static_cast<std::size_t>(k - 2)] * m_at(n - k + 1);
        m[i] = total;
    }
    return m;
}

/// Independent oracle: the weight driver with only the levelized rule
/// active and the class predicate applied at the target size. Certifies
/// the pruned drivers at small sizes.
inline std::uint64_t brute_force_reference(int n, LatticeClass cls) {
    if (n < 1) throw std::invalid_argument("bad reference size");
    if (n > 9) throw std::invalid_argument("brute-force reference capped at 9 elements");
    if (n == 1) return 1;
    detail::SearchParams params{n, LatticeClass::all, cls, false, n, 0};
    detail::SearchState st;
    st.counts.assign(static_cast<std::size_t>(n) + 1, 0);
    detail::run_search(Lattice::chain(2), Algorithm::weight, 2, params, st);
    return st.counts[static_cast<std::size_t>(n)];
}

} // namespace latgen
