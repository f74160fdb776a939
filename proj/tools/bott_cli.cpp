// Command-line front end for the Bott equivalence engine.
//
// Exit codes: 0 success or true, 1 domain false, 2 usage error, 3 resource error.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include "CLI11.hpp"

#include "bott/bott.hpp"
#include "bott/report.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_false = 1;
constexpr int exit_usage = 2;
constexpr int exit_resource = 3;

struct RuntimeConfig {
    int threads = 0;
    std::size_t mem_mb = 2048;

    int resolved_threads() const
    {
        if (threads > 0)
            return threads;
        if (const char* env = std::getenv("BOTT_THREADS")) {
            try {
                int t = std::stoi(env);
                if (t > 0)
                    return t;
            } catch (const std::exception&) {
            }
        }
        return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    }

    std::size_t budget_bytes() const { return mem_mb << 20; }
};

std::ostream* open_output(const std::string& path, std::ofstream& file)
{
    if (path.empty() || path == "-")
        return &std::cout;
    file.open(path);
    if (!file)
        throw CLI::ValidationError("cannot open output file: " + path);
    return &file;
}

bott::ClassFilter parse_filter(const std::string& name)
{
    if (name == "orientable")
        return bott::ClassFilter::orientable;
    if (name == "symplectic")
        return bott::ClassFilter::symplectic;
    return bott::ClassFilter::all;
}

int run_selftest(int n, int trials, std::uint64_t seed)
{
    using namespace bott;
    DigraphSampler sampler(seed);
    int failures = 0;
    auto check = [&](bool ok, const char* what, const Digraph& d) {
        if (!ok) {
            ++failures;
            std::cerr << "FAIL " << what << " on " << format_record(d) << "\n";
        }
    };
    for (int t = 0; t < trials; ++t) {
        const Digraph d = sampler.dag(1, n);
        const auto a = adjacency_matrix(d);
        const auto fp = fingerprint(d);
        check(all_principal_minors_one(phi(a)), "principal minors of phi", d);
        for (int v = 0; v < d.size(); ++v) {
            const Digraph lc = local_complement(d, v);
            check(local_complement(lc, v) == d, "local complementation involution", d);
            check(adjacency_matrix(lc) == op_phi_k(a, v), "local complementation matrix", d);
            check(rank(op_phi_k(a, v)) == rank(a), "rank under column operation", d);
            check(fingerprint(lc) == fp, "fingerprint under local complementation", d);
        }
        for (int v = 0; v < d.size(); ++v)
            for (int w = 0; w < d.size(); ++w) {
                if (v == w || d.in_neighbors(v) != d.in_neighbors(w))
                    continue;
                const Digraph s = slide(d, v, w);
                const auto [index, c] = slide_row_operation(v, w);
                check(slide(s, v, w) == d, "slide involution", d);
                check(adjacency_matrix(s) == op_phi_I_C(a, index, c), "slide matrix", d);
                check(rank(op_phi_I_C(a, index, c)) == rank(a), "rank under row operation", d);
                check(fingerprint(s) == fp, "fingerprint under slide", d);
            }
        const Permutation p = sampler.permutation(d.size());
        check(fingerprint(relabel(d, p)) == fp, "fingerprint under relabelling", d);
        check(canonical_form(relabel(d, p)) == canonical_form(d), "canonical form under relabelling", d);
    }
    std::cout << (failures == 0 ? "selftest passed" : "selftest FAILED") << ": " << trials << " trials, "
              << failures << " failures\n";
    return failures == 0 ? exit_ok : exit_false;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Classify acyclic digraphs up to Bott equivalence"};
    app.require_subcommand(1);
    app.fallthrough();
    RuntimeConfig config;
    app.add_option("--threads", config.threads, "Worker count (default: BOTT_THREADS or hardware concurrency)")
        ->check(CLI::PositiveNumber);
    app.add_option("--mem-mb", config.mem_mb, "Memory budget per code store in MiB")->check(CLI::PositiveNumber);

    int n = 0;
    std::string out_path;
    std::string reps_path;
    std::string filter = "all";
    int shards = 1;
    bool omit_timing = false;

    auto* enumerate = app.add_subcommand("enumerate", "Stream every isomorphism class of DAGs on K vertices");
    enumerate->add_option("-n", n, "Vertex count")->required()->check(CLI::Range(1, bott::max_vertices));
    enumerate->add_option("--out", out_path, "Output file (default stdout)");

    auto* classify = app.add_subcommand("classify", "Count Bott equivalence classes on K vertices");
    classify->add_option("-n", n, "Vertex count")->required()->check(CLI::Range(1, bott::max_vertices));
    classify->add_option("--filter", filter, "Which representatives to write")
        ->check(CLI::IsMember({"all", "orientable", "symplectic"}));
    classify->add_option("--reps", reps_path, "Write one representative record per class");
    classify->add_option("--shards", shards, "Split the run into passes by level sequence")
        ->check(CLI::PositiveNumber);
    classify->add_flag("--omit-timing", omit_timing, "Leave elapsed_ms out of the report");

    std::string record;
    std::string record_file;
    auto* invariants = app.add_subcommand("invariants", "Print the invariant fingerprint as JSON");
    auto* inv_rec = invariants->add_option("record", record, "Digraph record");
    auto* inv_file = invariants->add_option("--file", record_file, "File with one record per line");
    inv_rec->excludes(inv_file);

    std::string other;
    auto* equiv = app.add_subcommand("equiv", "Decide Bott equivalence of two digraphs");
    equiv->add_option("first", record, "Digraph record")->required();
    equiv->add_option("second", other, "Digraph record")->required();

    std::optional<std::size_t> limit;
    auto* orbit = app.add_subcommand("orbit", "List the Bott equivalence class of a digraph");
    orbit->add_option("record", record, "Digraph record")->required();
    orbit->add_option("--limit", limit, "Stop after this many members");

    auto* canon = app.add_subcommand("canon", "Print the canonical relabelling of a digraph");
    canon->add_option("record", record, "Digraph record")->required();

    int trials = 1000;
    std::uint64_t seed = 1;
    auto* selftest = app.add_subcommand("selftest", "Randomised consistency checks");
    selftest->add_option("-n", n, "Maximum vertex count")->required()->check(CLI::Range(1, bott::max_vertices));
    selftest->add_option("--trials", trials, "Number of random digraphs")->check(CLI::NonNegativeNumber);
    selftest->add_option("--seed", seed, "Generator seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        if (*enumerate) {
            bott::EnumerateOptions eo;
            eo.threads = config.resolved_threads();
            eo.memory_budget_bytes = config.budget_bytes();
            auto store = bott::build_catalog(n, eo);
            std::ofstream file;
            std::ostream& os = *open_output(out_path, file);
            store->for_each([&](bott::CanonicalCode c) {
                os << bott::format_record(bott::unpack_upper_triangle(n, c)) << '\n';
            });
            return exit_ok;
        }
        if (*classify) {
            bott::ClassifyOptions co;
            co.filter = parse_filter(filter);
            co.emit_representatives = !reps_path.empty();
            co.threads = config.resolved_threads();
            co.memory_budget_bytes = config.budget_bytes();
            co.shards = shards;
            const auto start = std::chrono::steady_clock::now();
            const auto census = bott::classify(n, co);
            const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                                     std::chrono::steady_clock::now() - start)
                                     .count();
            if (!reps_path.empty()) {
                std::ofstream file;
                std::ostream& os = *open_output(reps_path, file);
                for (const auto& r : census.representatives)
                    os << bott::format_class_record(n, r) << '\n';
            }
            std::cout << bott::to_json(census, omit_timing ? -1 : elapsed).dump() << '\n';
            return exit_ok;
        }
        if (*invariants) {
            if (!record_file.empty()) {
                std::ifstream in(record_file);
                if (!in) {
                    std::cerr << "cannot open " << record_file << "\n";
                    return exit_usage;
                }
                std::string line;
                while (std::getline(in, line)) {
                    if (line.empty())
                        continue;
                    // Representative streams carry the orbit size after a space.
                    const auto token = line.substr(0, line.find(' '));
                    std::cout << bott::to_json(bott::fingerprint(bott::parse_record(token))).dump() << '\n';
                }
                return exit_ok;
            }
            if (record.empty()) {
                std::cerr << "invariants needs a record or --file\n";
                return exit_usage;
            }
            std::cout << bott::to_json(bott::fingerprint(bott::parse_record(record))).dump() << '\n';
            return exit_ok;
        }
        if (*equiv) {
            const bool same = bott::are_bott_equivalent(bott::parse_record(record), bott::parse_record(other));
            std::cout << (same ? "equivalent" : "not equivalent") << '\n';
            return same ? exit_ok : exit_false;
        }
        if (*orbit) {
            const auto d = bott::parse_record(record);
            try {
                std::cout << bott::to_json(bott::orbit(d, limit)).dump() << '\n';
                return exit_ok;
            } catch (const bott::limit_exceeded& e) {
                std::cout << bott::to_json(e.partial()).dump() << '\n';
                std::cerr << e.what() << "\n";
                return exit_resource;
            }
        }
        if (*canon) {
            const auto form = bott::canonical_form(bott::parse_record(record));
            std::cout << bott::format_record(form.digraph()) << '\n';
            return exit_ok;
        }
        if (*selftest)
            return run_selftest(n, trials, seed);
    } catch (const bott::resource_error& e) {
        std::cerr << "resource error: " << e.what() << "\n";
        return exit_resource;
    } catch (const std::bad_alloc&) {
        std::cerr << "resource error: out of memory\n";
        return exit_resource;
    } catch (const bott::bott_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    }
    return exit_usage;
}
