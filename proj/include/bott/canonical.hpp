#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <compare>
#include <cstdint>
#include <cstring>
#include <functional>

#include "digraph.hpp"

namespace bott {

/// Strict upper triangle of an n x n adjacency matrix, row-major and
/// MSB-first: pair (0,1) is the most significant of n(n-1)/2 bits. Within a
/// fixed n, numeric order of the code equals lexicographic order of the full
/// row-major bit string, since the diagonal and lower triangle of every
/// acyclically ordered matrix are zero.
struct CanonicalCode {
    std::uint64_t hi = 0;
    std::uint64_t lo = 0;

    friend bool operator==(const CanonicalCode&, const CanonicalCode&) = default;
    friend auto operator<=>(const CanonicalCode&, const CanonicalCode&) = default;
};

struct CanonicalCodeHash {
    std::size_t operator()(const CanonicalCode& c) const noexcept
    {
        std::uint64_t h = c.lo * 0x9E3779B97F4A7C15ull;
        h ^= c.hi + 0x632BE59BD9B4E019ull + (h << 6) + (h >> 2);
        return static_cast<std::size_t>(h ^ (h >> 29));
    }
};

inline int triangle_bits(int n) { return n * (n - 1) / 2; }

// Packs an upper-triangular digraph (all arcs go from lower to higher index).
inline CanonicalCode pack_upper_triangle(const Digraph& d)
{
    const int n = d.size();
    CanonicalCode code;
    for (int i = 0; i < n; ++i) {
        assert((d.out_neighbors(i) & ((1u << (i + 1)) - 1u)) == 0);
        for (int j = i + 1; j < n; ++j) {
            code.hi = (code.hi << 1) | (code.lo >> 63);
            code.lo = (code.lo << 1) | static_cast<std::uint64_t>(d.has_arc(i, j));
        }
    }
    return code;
}

inline Digraph unpack_upper_triangle(int n, CanonicalCode code)
{
    Digraph::check_vertex_count(n);
    std::array<Row, max_vertices> rows{};
    int shift = triangle_bits(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            --shift;
            std::uint64_t b = shift >= 64 ? (code.hi >> (shift - 64)) & 1u : (code.lo >> shift) & 1u;
            if (b)
                rows[i] |= bit(j);
        }
    return Digraph::unchecked(n, rows);
}

/// Isomorphism-class key of a digraph together with the relabelling that
/// realises it. Two forms compare equal iff their digraphs are isomorphic.
struct CanonicalForm {
    int n = 0;
    CanonicalCode code;
    Permutation witness; // old vertex -> canonical position

    Digraph digraph() const { return unpack_upper_triangle(n, code); }

    friend bool operator==(const CanonicalForm& a, const CanonicalForm& b)
    {
        return a.n == b.n && a.code == b.code;
    }
    friend std::strong_ordering operator<=>(const CanonicalForm& a, const CanonicalForm& b)
    {
        if (auto c = a.n <=> b.n; c != 0)
            return c;
        return a.code <=> b.code;
    }
};

namespace detail {

// Ordered partition of the vertex set into cells.
struct OrderedPartition {
    std::array<Row, max_vertices> cells{};
    int count = 0;
};

class Canonicalizer {
  public:
    explicit Canonicalizer(const Digraph& d) : d_(d), n_(d.size())
    {
        for (int v = 0; v < n_; ++v) {
            twins_[v] = 0;
            for (int u = 0; u < n_; ++u)
                if (d.out_neighbors(u) == d.out_neighbors(v) && d.in_neighbors(u) == d.in_neighbors(v))
                    twins_[v] |= bit(u);
        }
    }

    CanonicalForm run()
    {
        search(initial_partition());
        CanonicalForm form;
        form.n = n_;
        form.code = best_code_;
        form.witness = Permutation::from_image(std::span<const int>(best_pos_.data(), n_));
        return form;
    }

    CanonicalCode run_code()
    {
        search(initial_partition());
        return best_code_;
    }

  private:
    // Cells sorted by (level, in-degree, out-degree); level first keeps every
    // leaf ordering acyclic.
    OrderedPartition initial_partition() const
    {
        const auto level = level_indices(d_);
        std::array<std::uint32_t, max_vertices> key{};
        std::array<int, max_vertices> by_key{};
        for (int v = 0; v < n_; ++v) {
            key[v] = (static_cast<std::uint32_t>(level[v]) << 16) |
                     (static_cast<std::uint32_t>(d_.in_degree(v)) << 8) |
                     static_cast<std::uint32_t>(d_.out_degree(v));
            by_key[v] = v;
        }
        std::sort(by_key.begin(), by_key.begin() + n_, [&](int a, int b) {
            return key[a] != key[b] ? key[a] < key[b] : a < b;
        });
        OrderedPartition p;
        for (int k = 0; k < n_; ++k) {
            int v = by_key[k];
            if (k == 0 || key[v] != key[by_key[k - 1]])
                ++p.count;
            p.cells[p.count - 1] |= bit(v);
        }
        return p;
    }

    // Splits cells until every vertex in a cell has the same number of in-
    // and out-neighbours in every cell.
    void refine(OrderedPartition& p) const
    {
        using Key = std::array<std::uint8_t, max_vertices>;
        for (;;) {
            std::array<Key, max_vertices> key{};
            for (int v = 0; v < n_; ++v)
                for (int j = 0; j < p.count; ++j) {
                    unsigned out = std::popcount(static_cast<unsigned>(d_.out_neighbors(v) & p.cells[j]));
                    unsigned in = std::popcount(static_cast<unsigned>(d_.in_neighbors(v) & p.cells[j]));
                    key[v][j] = static_cast<std::uint8_t>((out << 4) | in);
                }
            const std::size_t width = static_cast<std::size_t>(p.count);
            auto less = [&](int a, int b) { return std::memcmp(key[a].data(), key[b].data(), width) < 0; };

            OrderedPartition next;
            for (int c = 0; c < p.count; ++c) {
                Row cell = p.cells[c];
                if (std::has_single_bit(static_cast<unsigned>(cell))) {
                    next.cells[next.count++] = cell;
                    continue;
                }
                std::array<int, max_vertices> members{};
                int m = 0;
                for_each_bit(cell, [&](int v) { members[m++] = v; });
                std::sort(members.begin(), members.begin() + m,
                          [&](int a, int b) { return less(a, b) || (!less(b, a) && a < b); });
                next.cells[next.count] = bit(members[0]);
                for (int k = 1; k < m; ++k) {
                    if (less(members[k - 1], members[k]))
                        ++next.count;
                    next.cells[next.count] |= bit(members[k]);
                }
                ++next.count;
            }
            const bool stable = next.count == p.count;
            p = next;
            if (stable)
                return;
        }
    }

    void search(OrderedPartition p)
    {
        refine(p);
        if (p.count == n_) {
            visit_leaf(p);
            return;
        }
        int target = 0;
        while (std::has_single_bit(static_cast<unsigned>(p.cells[target])))
            ++target;
        const Row cell = p.cells[target];
        for_each_bit(cell, [&](int x) {
            // A twin swap fixes every other vertex, so only the smallest
            // remaining twin of each class needs a branch.
            if (twins_[x] & cell & (bit(x) - 1u))
                return;
            OrderedPartition child;
            for (int c = 0; c < p.count; ++c) {
                if (c == target) {
                    child.cells[child.count++] = bit(x);
                    child.cells[child.count++] = static_cast<Row>(cell & ~bit(x));
                } else {
                    child.cells[child.count++] = p.cells[c];
                }
            }
            search(child);
        });
    }

    void visit_leaf(const OrderedPartition& p)
    {
        std::array<int, max_vertices> pos{};
        for (int k = 0; k < n_; ++k)
            pos[std::countr_zero(static_cast<unsigned>(p.cells[k]))] = k;
        std::array<Row, max_vertices> rows{};
        for (int u = 0; u < n_; ++u) {
            Row r = 0;
            for_each_bit(d_.out_neighbors(u), [&](int v) { r |= bit(pos[v]); });
            rows[pos[u]] = r;
        }
        CanonicalCode code;
        for (int i = 0; i < n_; ++i)
            for (int j = i + 1; j < n_; ++j) {
                code.hi = (code.hi << 1) | (code.lo >> 63);
                code.lo = (code.lo << 1) | ((rows[i] >> j) & 1u);
            }
        if (!have_best_ || code < best_code_) {
            have_best_ = true;
            best_code_ = code;
            best_pos_ = pos;
        }
    }

    const Digraph& d_;
    int n_;
    std::array<Row, max_vertices> twins_{};
    bool have_best_ = false;
    CanonicalCode best_code_;
    std::array<int, max_vertices> best_pos_{};
};

} // namespace detail

/// Canonical form of d.
///
/// The code is the smallest packed adjacency string over the leaf orderings
/// of an individualisation-refinement search whose root partition orders
/// vertices by (level, in-degree, out-degree). Every leaf ordering is
/// acyclic, and the explored leaf set depends only on the isomorphism class,
/// so equal codes mean isomorphic digraphs and vice versa.
inline CanonicalForm canonical_form(const Digraph& d)
{
    return detail::Canonicalizer(d).run();
}

// Canonical code alone, without materialising the witness.
inline CanonicalCode canonical_code(const Digraph& d)
{
    return detail::Canonicalizer(d).run_code();
}

inline bool is_isomorphic(const Digraph& a, const Digraph& b)
{
    if (a.size() != b.size() || a.arc_count() != b.arc_count())
        return false;
    return canonical_code(a) == canonical_code(b);
}

} // namespace bott
