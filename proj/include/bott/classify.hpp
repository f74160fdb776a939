#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <unordered_set>
#include <vector>

#include "canonical.hpp"
#include "digraph.hpp"
#include "error.hpp"
#include "invariants.hpp"

namespace bott {

struct OrbitResult {
    int n = 0;
    CanonicalCode representative; // smallest code in the orbit
    std::size_t size = 0;         // isomorphism classes in the orbit
    std::vector<CanonicalCode> members; // ascending; empty unless retained
    bool truncated = false;

    Digraph representative_digraph() const { return unpack_upper_triangle(n, representative); }
};

// Orbit exploration stopped at its member limit; carries what was found.
class limit_exceeded : public resource_error {
  public:
    limit_exceeded(std::string what, OrbitResult partial)
        : resource_error(std::move(what)), partial_(std::move(partial))
    {
    }

    const OrbitResult& partial() const { return partial_; }

  private:
    OrbitResult partial_;
};

enum class ClassFilter { all, orientable, symplectic };

struct ClassRecord {
    CanonicalCode representative;
    std::size_t orbit_size = 0;
    bool orientable = false;
    bool symplectic = false;

    friend bool operator==(const ClassRecord&, const ClassRecord&) = default;
};

struct ClassCensus {
    int n = 0;
    std::size_t total_classes = 0;
    std::size_t orientable_classes = 0;
    std::size_t symplectic_classes = 0;
    std::size_t dag_count = 0;
    std::vector<ClassRecord> representatives; // ascending by code, filtered
};

struct ClassifyOptions {
    ClassFilter filter = ClassFilter::all;
    bool emit_representatives = false;
    int threads = 1;
    std::size_t memory_budget_bytes = std::size_t{2048} << 20;
    int shards = 1;
};

namespace detail {

class AtomicBitmap {
  public:
    explicit AtomicBitmap(std::uint64_t bits)
        : words_((bits + 63) / 64), data_(std::make_unique<std::atomic<std::uint64_t>[]>(words_))
    {
        for (std::size_t i = 0; i < words_; ++i)
            data_[i].store(0, std::memory_order_relaxed);
    }

    // Returns true if the bit was clear before.
    bool set(std::uint64_t i)
    {
        const std::uint64_t mask = std::uint64_t{1} << (i & 63);
        return (data_[i >> 6].fetch_or(mask, std::memory_order_relaxed) & mask) == 0;
    }

    bool test(std::uint64_t i) const
    {
        return (data_[i >> 6].load(std::memory_order_relaxed) >> (i & 63)) & 1u;
    }

    std::size_t word_count() const { return words_; }
    std::uint64_t word(std::size_t w) const { return data_[w].load(std::memory_order_relaxed); }

    static std::size_t bytes_for(std::uint64_t bits) { return static_cast<std::size_t>((bits + 63) / 64 * 8); }

  private:
    std::size_t words_;
    std::unique_ptr<std::atomic<std::uint64_t>[]> data_;
};

} // namespace detail

/// Concurrent set of canonical codes for one vertex count.
///
/// Codes of up to 28 bits (n <= 8) live in a bitmap indexed by the code
/// itself; larger n fall back to a sharded hash set whose estimated footprint
/// is checked against the memory budget on every insertion.
class CodeStore {
  public:
    static constexpr int bitmap_max_bits = 28;
    static constexpr std::size_t hashed_entry_bytes = 48;

    CodeStore(int n, std::size_t memory_budget_bytes) : n_(n), budget_(memory_budget_bytes)
    {
        if (triangle_bits(n) <= bitmap_max_bits) {
            const std::uint64_t bits = std::uint64_t{1} << triangle_bits(n);
            if (detail::AtomicBitmap::bytes_for(bits) > budget_)
                throw resource_error("code bitmap exceeds memory budget");
            bitmap_ = std::make_unique<detail::AtomicBitmap>(bits);
        } else {
            shards_ = std::make_unique<Shard[]>(shard_count);
        }
    }

    int vertex_count() const { return n_; }
    std::size_t size() const { return count_.load(std::memory_order_relaxed); }
    std::size_t footprint_bytes() const
    {
        return bitmap_ ? bitmap_->word_count() * 8 : size() * hashed_entry_bytes;
    }

    bool insert(CanonicalCode code)
    {
        if (bitmap_) {
            if (!bitmap_->set(code.lo))
                return false;
        } else {
            Shard& s = shards_[CanonicalCodeHash{}(code) % shard_count];
            std::lock_guard lock(s.mutex);
            if (!s.codes.insert(code).second)
                return false;
            dirty_.store(true, std::memory_order_relaxed);
        }
        const std::size_t now = count_.fetch_add(1, std::memory_order_relaxed) + 1;
        if (!bitmap_ && now * hashed_entry_bytes > budget_)
            throw resource_error("code store exceeds memory budget after " + std::to_string(now) + " entries");
        return true;
    }

    bool contains(CanonicalCode code) const
    {
        if (bitmap_)
            return bitmap_->test(code.lo);
        Shard& s = shards_[CanonicalCodeHash{}(code) % shard_count];
        std::lock_guard lock(s.mutex);
        return s.codes.count(code) != 0;
    }

    // Ascending iteration is split into chunks so workers can share it.
    // Chunks are ordered and disjoint.
    std::size_t chunk_count() const
    {
        if (bitmap_)
            return (bitmap_->word_count() + chunk_words - 1) / chunk_words;
        return (sorted().size() + chunk_codes - 1) / chunk_codes;
    }

    template <typename Fn>
    void for_each_in_chunk(std::size_t chunk, Fn&& fn) const
    {
        if (bitmap_) {
            const std::size_t first = chunk * chunk_words;
            const std::size_t last = std::min(first + chunk_words, bitmap_->word_count());
            for (std::size_t w = first; w < last; ++w) {
                std::uint64_t bits = bitmap_->word(w);
                while (bits) {
                    const int b = std::countr_zero(bits);
                    bits &= bits - 1;
                    fn(CanonicalCode{0, w * 64 + static_cast<std::uint64_t>(b)});
                }
            }
        } else {
            const auto& codes = sorted();
            const std::size_t first = chunk * chunk_codes;
            const std::size_t last = std::min(first + chunk_codes, codes.size());
            for (std::size_t i = first; i < last; ++i)
                fn(codes[i]);
        }
    }

    template <typename Fn>
    void for_each(Fn&& fn) const
    {
        const std::size_t chunks = chunk_count();
        for (std::size_t c = 0; c < chunks; ++c)
            for_each_in_chunk(c, fn);
    }

  private:
    static constexpr std::size_t shard_count = 64;
    static constexpr std::size_t chunk_words = 1024;
    static constexpr std::size_t chunk_codes = 1 << 16;

    struct Shard {
        mutable std::mutex mutex;
        std::unordered_set<CanonicalCode, CanonicalCodeHash> codes;
    };

    // Not safe against concurrent insertion; iteration happens after filling.
    const std::vector<CanonicalCode>& sorted() const
    {
        if (!sorted_ || dirty_.exchange(false)) {
            auto all = std::make_shared<std::vector<CanonicalCode>>();
            for (std::size_t i = 0; i < shard_count; ++i)
                all->insert(all->end(), shards_[i].codes.begin(), shards_[i].codes.end());
            std::sort(all->begin(), all->end());
            sorted_ = std::move(all);
        }
        return *sorted_;
    }

    int n_;
    std::size_t budget_;
    std::atomic<std::size_t> count_{0};
    std::unique_ptr<detail::AtomicBitmap> bitmap_;
    std::unique_ptr<Shard[]> shards_;
    mutable std::atomic<bool> dirty_{false};
    mutable std::shared_ptr<std::vector<CanonicalCode>> sorted_;
};

namespace detail {

// Runs fn(i) for i in [0, count) on up to `threads` workers. The first
// exception thrown by any worker is rethrown after all have joined.
template <typename Fn>
void parallel_for(std::size_t count, int threads, Fn&& fn)
{
    if (threads <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i)
            fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    const int workers = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(threads), count));
    for (int t = 0; t < workers; ++t)
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= count)
                    return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure)
                        failure = std::current_exception();
                    next.store(count);
                    return;
                }
            }
        });
    for (auto& t : pool)
        t.join();
    if (failure)
        std::rethrow_exception(failure);
}

// Visits every local complementation and slide result of d. With
// skip_identity, moves that provably leave d unchanged are not generated.
template <typename Fn>
void for_each_move(const Digraph& d, bool skip_identity, Fn&& fn)
{
    const int n = d.size();
    for (int v = 0; v < n; ++v) {
        if (skip_identity && (d.in_neighbors(v) == 0 || d.out_neighbors(v) == 0))
            continue;
        fn(local_complement(d, v));
    }
    for (Row group : sibling_group_masks(d)) {
        if (std::has_single_bit(static_cast<unsigned>(group)))
            continue;
        for_each_bit(group, [&](int v) {
            if (skip_identity && d.out_neighbors(v) == 0)
                return;
            for_each_bit(group, [&](int w) {
                if (v != w)
                    fn(slide(d, v, w));
            });
        });
    }
}

// Breadth-first closure over canonical codes. Stops when target is reached
// (if given) or when more than limit members are found.
struct OrbitSearch {
    std::vector<CanonicalCode> members; // discovery order
    bool truncated = false;
    bool found_target = false;
};

inline OrbitSearch explore_orbit(const Digraph& start, std::optional<std::size_t> limit,
                                 std::optional<CanonicalCode> target = std::nullopt)
{
    const int n = start.size();
    OrbitSearch out;
    std::unordered_set<CanonicalCode, CanonicalCodeHash> seen;
    const CanonicalCode first = canonical_code(start);
    seen.insert(first);
    out.members.push_back(first);
    if (target && *target == first) {
        out.found_target = true;
        return out;
    }
    for (std::size_t i = 0; i < out.members.size(); ++i) {
        const Digraph d = unpack_upper_triangle(n, out.members[i]);
        bool stop = false;
        for_each_move(d, true, [&](const Digraph& next) {
            if (stop)
                return;
            const CanonicalCode code = canonical_code(next);
            if (!seen.insert(code).second)
                return;
            out.members.push_back(code);
            if (target && *target == code) {
                out.found_target = true;
                stop = true;
            } else if (limit && out.members.size() > *limit) {
                out.truncated = true;
                stop = true;
            }
        });
        if (stop)
            break;
    }
    return out;
}

inline OrbitResult summarize(int n, OrbitSearch&& search, bool keep_members)
{
    OrbitResult r;
    r.n = n;
    r.truncated = search.truncated;
    std::sort(search.members.begin(), search.members.end());
    r.representative = search.members.front();
    r.size = search.members.size();
    if (keep_members)
        r.members = std::move(search.members);
    return r;
}

inline std::uint64_t level_sequence_hash(const Digraph& d)
{
    const auto level = level_indices(d);
    std::array<int, max_vertices> counts{};
    for (int v = 0; v < d.size(); ++v)
        ++counts[level[v]];
    std::uint64_t h = 0xCBF29CE484222325ull;
    for (int k = 0; k < d.size(); ++k) {
        h ^= static_cast<std::uint64_t>(counts[k]);
        h *= 0x100000001B3ull;
    }
    return h;
}

} // namespace detail

/// Canonical forms reachable from d by one local complementation or slide,
/// ascending and without duplicates. Moves that fix d contribute d itself.
inline std::vector<CanonicalForm> bott_neighbors(const Digraph& d)
{
    std::vector<CanonicalForm> out;
    detail::for_each_move(d, false, [&](const Digraph& next) { out.push_back(canonical_form(next)); });
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/// Bott equivalence class of d over isomorphism classes.
///
/// Throws limit_exceeded, carrying the partial orbit, when member_limit is
/// given and the orbit holds more classes than that.
inline OrbitResult orbit(const Digraph& d, std::optional<std::size_t> member_limit = std::nullopt)
{
    auto search = detail::explore_orbit(d, member_limit);
    const bool truncated = search.truncated;
    OrbitResult r = detail::summarize(d.size(), std::move(search), true);
    if (truncated)
        throw limit_exceeded("orbit exceeds member limit of " + std::to_string(*member_limit), std::move(r));
    return r;
}

inline bool are_bott_equivalent(const Digraph& a, const Digraph& b)
{
    if (a.size() != b.size())
        return false;
    // Differing invariants settle the question without a search.
    if (fingerprint(a) != fingerprint(b))
        return false;
    return detail::explore_orbit(a, std::nullopt, canonical_code(b)).found_target;
}

struct EnumerateOptions {
    int threads = 1;
    std::size_t memory_budget_bytes = std::size_t{2048} << 20;
    // When shards > 1 only classes whose level sequence hashes to shard are kept.
    int shards = 1;
    int shard = 0;
};

/// Every isomorphism class of acyclic digraphs on n vertices, built by
/// attaching a new sink to each class on n-1 vertices in all possible ways.
/// Every DAG has a sink, so this reaches all classes.
inline std::unique_ptr<CodeStore> build_catalog(int n, const EnumerateOptions& options = {})
{
    Digraph::check_vertex_count(n);
    auto store = std::make_unique<CodeStore>(n, options.memory_budget_bytes);
    auto keep = [&](const Digraph& d) {
        return options.shards <= 1 ||
               detail::level_sequence_hash(d) % static_cast<std::uint64_t>(options.shards) ==
                   static_cast<std::uint64_t>(options.shard);
    };
    if (n == 1) {
        const Digraph single = Digraph::edgeless(1);
        if (keep(single))
            store->insert(canonical_code(single));
        return store;
    }

    EnumerateOptions smaller = options;
    smaller.shards = 1;
    smaller.shard = 0;
    std::vector<CanonicalCode> bases;
    {
        auto prev = build_catalog(n - 1, smaller);
        bases.reserve(prev->size());
        prev->for_each([&](CanonicalCode c) { bases.push_back(c); });
    }

    constexpr std::size_t batch = 256;
    const std::size_t batches = (bases.size() + batch - 1) / batch;
    const Row sink = bit(n - 1);
    detail::parallel_for(batches, options.threads, [&](std::size_t b) {
        const std::size_t last = std::min(bases.size(), (b + 1) * batch);
        for (std::size_t i = b * batch; i < last; ++i) {
            const Digraph base = unpack_upper_triangle(n - 1, bases[i]);
            for (unsigned parents = 0; parents < (1u << (n - 1)); ++parents) {
                auto rows = base.rows();
                for_each_bit(static_cast<Row>(parents), [&](int u) { rows[u] |= sink; });
                const Digraph d = Digraph::unchecked(n, rows);
                if (keep(d))
                    store->insert(canonical_code(d));
            }
        }
    });
    return store;
}

/// Isomorphism classes on n vertices in ascending code order. Each form's
/// witness refers to its own canonical digraph.
inline std::vector<CanonicalForm> enumerate_dags(int n, const EnumerateOptions& options = {})
{
    auto store = build_catalog(n, options);
    std::vector<CanonicalForm> out;
    out.reserve(store->size());
    const Permutation id = Permutation::identity(n);
    store->for_each([&](CanonicalCode c) { out.push_back(CanonicalForm{n, c, id}); });
    return out;
}

inline bool passes(ClassFilter filter, const ClassRecord& r)
{
    switch (filter) {
    case ClassFilter::all:
        return true;
    case ClassFilter::orientable:
        return r.orientable;
    case ClassFilter::symplectic:
        return r.symplectic;
    }
    return false;
}

/// Partitions all classes on n vertices into Bott orbits.
///
/// Workers take seeds in ascending order and close each unvisited seed into
/// its orbit. Two workers may close the same orbit concurrently; only the
/// one that first claims the orbit's smallest code records it, so counts and
/// the representative list do not depend on scheduling. With several shards
/// the seeds are partitioned by level sequence, which every move preserves,
/// so no orbit spans two shards.
inline ClassCensus classify(int n, const ClassifyOptions& options = {})
{
    Digraph::check_vertex_count(n);
    if (options.shards < 1)
        throw range_error("shard count must be positive");

    ClassCensus census;
    census.n = n;
    std::size_t orbit_members = 0;

    for (int shard = 0; shard < options.shards; ++shard) {
        EnumerateOptions eo;
        eo.threads = options.threads;
        eo.memory_budget_bytes = options.memory_budget_bytes;
        eo.shards = options.shards;
        eo.shard = shard;
        auto catalog = build_catalog(n, eo);
        census.dag_count += catalog->size();

        CodeStore visited(n, options.memory_budget_bytes);
        CodeStore claimed(n, options.memory_budget_bytes);
        std::vector<std::vector<ClassRecord>> found(catalog->chunk_count());

        detail::parallel_for(catalog->chunk_count(), options.threads, [&](std::size_t chunk) {
            catalog->for_each_in_chunk(chunk, [&](CanonicalCode seed) {
                if (visited.contains(seed))
                    return;
                auto search = detail::explore_orbit(unpack_upper_triangle(n, seed), std::nullopt);
                CanonicalCode rep = search.members.front();
                for (const CanonicalCode& c : search.members) {
                    rep = std::min(rep, c);
                    visited.insert(c);
                }
                if (!claimed.insert(rep))
                    return;
                const Digraph d = unpack_upper_triangle(n, rep);
                found[chunk].push_back(ClassRecord{rep, search.members.size(), is_orientable(d), is_symplectic(d)});
            });
        });

        std::vector<ClassRecord> records;
        for (auto& part : found)
            records.insert(records.end(), part.begin(), part.end());
        std::sort(records.begin(), records.end(),
                  [](const ClassRecord& a, const ClassRecord& b) { return a.representative < b.representative; });
        for (const ClassRecord& r : records) {
            ++census.total_classes;
            census.orientable_classes += r.orientable;
            census.symplectic_classes += r.symplectic;
            orbit_members += r.orbit_size;
            if (options.emit_representatives && passes(options.filter, r))
                census.representatives.push_back(r);
        }
    }

    if (orbit_members != census.dag_count)
        throw std::logic_error("orbit sizes do not add up to the class count");
    if (options.shards > 1 && options.emit_representatives)
        std::sort(census.representatives.begin(), census.representatives.end(),
                  [](const ClassRecord& a, const ClassRecord& b) { return a.representative < b.representative; });
    return census;
}

inline std::size_t filtered_count(const ClassCensus& census, ClassFilter filter)
{
    switch (filter) {
    case ClassFilter::all:
        return census.total_classes;
    case ClassFilter::orientable:
        return census.orientable_classes;
    case ClassFilter::symplectic:
        return census.symplectic_classes;
    }
    return 0;
}

} // namespace bott
