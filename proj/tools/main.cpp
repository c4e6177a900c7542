// Command-line front end: enumerate and count lattice classes, emit
// lattices in the cover-list format, print the full count table, run the
// alpha-beta lower-bound construction, and cross-check the search drivers
// against each other and the brute-force reference.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "latgen/latgen.hpp"

namespace {

using namespace latgen;

struct CommonFlags {
    int size = 2;
    std::string cls = "all";
    bool vi = false;
    std::string algorithm = "weight";
    int jobs = 0; // 0: take LATGEN_JOBS, else 1
    int split_depth = 0;
};

void add_enum_flags(CLI::App* cmd, CommonFlags& f, bool with_class) {
    cmd->add_option("--size", f.size, "target size n")->required()->check(CLI::Range(1, 24));
    if (with_class) {
        cmd->add_option("--class", f.cls, "lattice class")
            ->check(CLI::IsMember({"all", "semimodular", "modular"}));
        cmd->add_flag("--vi", f.vi, "count only vertically indecomposable lattices");
    }
    cmd->add_option("--algorithm", f.algorithm, "search driver")
        ->check(CLI::IsMember({"weight", "canon-path"}));
    cmd->add_option("--jobs", f.jobs, "worker threads (default: LATGEN_JOBS or 1)")
        ->check(CLI::Range(1, 256));
    cmd->add_option("--split-depth", f.split_depth, "frontier split size for parallel runs")
        ->check(CLI::Range(0, 23));
}

int effective_jobs(int flag_value) {
    if (flag_value > 0) return flag_value;
    if (const char* env = std::getenv("LATGEN_JOBS")) {
        const int v = std::atoi(env);
        if (v >= 1) return v;
    }
    return 1;
}

EnumConfig to_config(const CommonFlags& f, int target) {
    EnumConfig cfg;
    cfg.target_n = target;
    cfg.cls = f.cls == "modular"       ? LatticeClass::modular
              : f.cls == "semimodular" ? LatticeClass::semimodular
                                       : LatticeClass::all;
    cfg.vi_only = f.vi;
    cfg.algorithm = f.algorithm == "canon-path" ? Algorithm::canon_path : Algorithm::weight;
    cfg.jobs = effective_jobs(f.jobs);
    cfg.split_depth = f.split_depth;
    return cfg;
}

// One driver run per size so long runs show progress; the final table is
// what machine consumers should parse.
std::vector<std::uint64_t> counts_by_size(const CommonFlags& f, std::ostream& progress,
                                          const LatticeSink& target_sink = {}) {
    if (f.split_depth != 0 && f.split_depth >= f.size)
        throw std::invalid_argument("split depth must be smaller than the target size");
    std::vector<std::uint64_t> counts(static_cast<std::size_t>(f.size) + 1, 0);
    for (int n = 1; n <= f.size; ++n) {
        EnumConfig cfg = to_config(f, n);
        if (cfg.split_depth >= n) cfg.split_depth = 0; // small sizes run sequentially
        const CountResult r = enumerate(cfg, n == f.size ? target_sink : LatticeSink{});
        counts[static_cast<std::size_t>(n)] = r.count_at(n);
        progress << n << '\t' << r.count_at(n) << '\n' << std::flush;
    }
    return counts;
}

void print_counts(std::ostream& out, const std::vector<std::uint64_t>& counts) {
    for (std::size_t n = 1; n < counts.size(); ++n) out << n << '\t' << counts[n] << '\n';
}

int run_count(const CommonFlags& f) {
    const auto counts = counts_by_size(f, std::cerr);
    print_counts(std::cout, counts);
    return 0;
}

int run_emit(const CommonFlags& f, const std::string& out_path) {
    std::ofstream file;
    if (!out_path.empty()) {
        file.open(out_path);
        if (!file) {
            std::cerr << "cannot open " << out_path << '\n';
            return 1;
        }
    }
    std::ostream& lattice_out = out_path.empty() ? std::cout : file;
    // keep count lines off the lattice stream
    std::ostream& count_out = out_path.empty() ? std::cerr : std::cout;
    const LatticeSink sink = [&](const Lattice& L) { lattice_out << to_cover_list(L) << '\n'; };
    const auto counts = counts_by_size(f, std::cerr, sink);
    print_counts(count_out, counts);
    return 0;
}

int run_table(const CommonFlags& f) {
    struct Column {
        const char* name;
        LatticeClass cls;
        bool vi;
    };
    const Column columns[] = {{"all", LatticeClass::all, false},
                              {"semimodular", LatticeClass::semimodular, false},
                              {"vi_semimodular", LatticeClass::semimodular, true},
                              {"modular", LatticeClass::modular, false},
                              {"vi_modular", LatticeClass::modular, true}};
    std::vector<std::vector<std::uint64_t>> table;
    for (const Column& col : columns) {
        CommonFlags cf = f;
        cf.cls = col.cls == LatticeClass::all           ? "all"
                 : col.cls == LatticeClass::semimodular ? "semimodular"
                                                        : "modular";
        cf.vi = col.vi;
        std::cerr << "# " << col.name << '\n';
        table.push_back(counts_by_size(cf, std::cerr));
    }
    std::cout << "# n\tall\tsemimodular\tvi_semimodular\tmodular\tvi_modular\n";
    for (int n = 1; n <= f.size; ++n) {
        std::cout << n;
        for (const auto& col : table) std::cout << '\t' << col[static_cast<std::size_t>(n)];
        std::cout << '\n';
    }
    return 0;
}

int run_alphabeta(int size, bool verify) {
    for (const Lattice& L : generate_alpha_beta(size)) std::cout << to_cover_list(L) << '\n';
    if (!verify) return 0;
    std::optional<std::uint64_t> modular_count;
    if (size <= 14) {
        EnumConfig cfg;
        cfg.target_n = size;
        cfg.cls = LatticeClass::modular;
        cfg.jobs = effective_jobs(0);
        modular_count = enumerate(cfg).count_at(size);
    }
    const bool ok = verify_lower_bound(size, modular_count);
    std::cerr << "alpha-beta size " << size << ": " << (std::uint64_t{1} << (size - 3))
              << " lattices, modular and pairwise nonisomorphic: " << (ok ? "yes" : "NO");
    if (modular_count) std::cerr << " (enumerated modular count " << *modular_count << ")";
    std::cerr << '\n';
    return ok ? 0 : 1;
}

int run_verify(int max_n, int jobs) {
    bool all_ok = true;
    const auto report = [&](const std::string& name, bool ok) {
        std::cout << (ok ? "PASS" : "FAIL") << ' ' << name << '\n';
        all_ok &= ok;
    };

    const LatticeClass classes[] = {LatticeClass::all, LatticeClass::semimodular,
                                    LatticeClass::modular};
    const char* class_names[] = {"all", "semimodular", "modular"};

    for (int ci = 0; ci < 3; ++ci) {
        bool ok = true;
        for (int n = 2; n <= max_n && ok; ++n) {
            EnumConfig wa{n, classes[ci], false, Algorithm::weight, jobs, 0};
            EnumConfig cp{n, classes[ci], false, Algorithm::canon_path, jobs, 0};
            std::vector<std::string> ka, kb;
            const CountResult ra = enumerate(wa, [&](const Lattice& L) { ka.push_back(canonical_key(L)); });
            const CountResult rb = enumerate(cp, [&](const Lattice& L) { kb.push_back(canonical_key(L)); });
            std::sort(ka.begin(), ka.end());
            std::sort(kb.begin(), kb.end());
            ok = ra.counts == rb.counts && ka == kb;
        }
        report(std::string("driver-equivalence ") + class_names[ci] + " n<=" + std::to_string(max_n), ok);
    }

    for (int ci = 1; ci < 3; ++ci) {
        const int cap = std::min(max_n, 9);
        bool ok = true;
        for (int n = 2; n <= cap && ok; ++n) {
            EnumConfig cfg{n, classes[ci], false, Algorithm::weight, jobs, 0};
            ok = enumerate(cfg).count_at(n) == brute_force_reference(n, classes[ci]);
        }
        report(std::string("pruning-soundness ") + class_names[ci] + " n<=" + std::to_string(cap), ok);
    }

    {
        EnumConfig mod{max_n, LatticeClass::modular, false, Algorithm::weight, jobs, 0};
        const CountResult rm = enumerate(mod);
        mod.vi_only = true;
        const CountResult rv = enumerate(mod);
        std::vector<std::uint64_t> mv;
        for (int n = 2; n <= max_n; ++n) mv.push_back(rv.count_at(n));
        const auto derived = counts_from_vi(mv);
        bool ok = true;
        for (int n = 2; n <= max_n; ++n) ok &= derived[static_cast<std::size_t>(n - 2)] == rm.count_at(n);
        report("convolution-identity modular n<=" + std::to_string(max_n), ok);
    }
    return all_ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"isomorph-free generation of finite lattices (all / semimodular / modular)"};
    app.require_subcommand(1);

    CommonFlags count_flags;
    CLI::App* count_cmd = app.add_subcommand("count", "print per-size counts up to --size");
    add_enum_flags(count_cmd, count_flags, true);

    CommonFlags emit_flags;
    std::string emit_out;
    CLI::App* emit_cmd = app.add_subcommand("emit", "count and stream target-size lattices");
    add_enum_flags(emit_cmd, emit_flags, true);
    emit_cmd->add_option("--out", emit_out, "write cover-list lines to this file");

    CommonFlags table_flags;
    CLI::App* table_cmd = app.add_subcommand("table", "print all five count columns up to --size");
    add_enum_flags(table_cmd, table_flags, false);

    int ab_size = 3;
    bool ab_verify = false;
    CLI::App* ab_cmd = app.add_subcommand("alphabeta", "emit the 2^(n-3) lower-bound family");
    ab_cmd->add_option("--size", ab_size, "lattice size n")->required()->check(CLI::Range(3, 14));
    ab_cmd->add_flag("--verify", ab_verify, "check modularity and pairwise nonisomorphism");

    int verify_max_n = 7;
    int verify_jobs = 0;
    CLI::App* verify_cmd = app.add_subcommand("verify", "run the oracle cross-checks");
    verify_cmd->add_option("--max-n", verify_max_n, "largest size to check")
        ->required()
        ->check(CLI::Range(2, 12));
    verify_cmd->add_option("--jobs", verify_jobs, "worker threads")->check(CLI::Range(1, 256));

    CLI11_PARSE(app, argc, argv);

    try {
        if (count_cmd->parsed()) return run_count(count_flags);
        if (emit_cmd->parsed()) return run_emit(emit_flags, emit_out);
        if (table_cmd->parsed()) return run_table(table_flags);
        if (ab_cmd->parsed()) return run_alphabeta(ab_size, ab_verify);
        if (verify_cmd->parsed()) return run_verify(verify_max_n, effective_jobs(verify_jobs));
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
