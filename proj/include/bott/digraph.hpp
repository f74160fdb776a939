#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cassert>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"

namespace bott {

inline constexpr int max_vertices = 16;

// One adjacency row (or column): bit j set means vertex j is a neighbour.
using Row = std::uint16_t;

struct Arc {
    int from;
    int to;

    friend bool operator==(const Arc&, const Arc&) = default;
    friend auto operator<=>(const Arc&, const Arc&) = default;
};

inline Row bit(int v) { return static_cast<Row>(1u << v); }

inline Row all_vertices(int n)
{
    return static_cast<Row>((1u << n) - 1u);
}

// Calls fn(v) for every set bit v of mask, lowest first.
template <typename Fn>
void for_each_bit(Row mask, Fn&& fn)
{
    unsigned m = mask;
    while (m != 0) {
        int v = std::countr_zero(m);
        m &= m - 1;
        fn(v);
    }
}

/// Bijection on {0, ..., n-1}; image[v] is the new label of old vertex v.
class Permutation {
  public:
    static Permutation identity(int n)
    {
        check_size(n);
        Permutation p;
        p.n_ = n;
        for (int v = 0; v < n; ++v)
            p.image_[v] = static_cast<std::uint8_t>(v);
        return p;
    }

    static Permutation from_image(std::span<const int> image)
    {
        int n = static_cast<int>(image.size());
        check_size(n);
        Permutation p;
        p.n_ = n;
        Row seen = 0;
        for (int v = 0; v < n; ++v) {
            int t = image[v];
            if (t < 0 || t >= n || (seen & bit(t)))
                throw range_error("permutation image is not a bijection");
            seen |= bit(t);
            p.image_[v] = static_cast<std::uint8_t>(t);
        }
        return p;
    }

    static Permutation from_image(std::initializer_list<int> image)
    {
        return from_image(std::span<const int>(image.begin(), image.size()));
    }

    // order[k] is the old vertex placed at new position k.
    static Permutation from_order(std::span<const int> order)
    {
        return from_image(order).inverse();
    }

    int size() const { return n_; }
    int operator()(int v) const { return image_[v]; }

    Permutation inverse() const
    {
        Permutation p;
        p.n_ = n_;
        for (int v = 0; v < n_; ++v)
            p.image_[image_[v]] = static_cast<std::uint8_t>(v);
        return p;
    }

    // (a.then(b))(v) == b(a(v))
    Permutation then(const Permutation& next) const
    {
        if (next.n_ != n_)
            throw size_error("permutation sizes differ");
        Permutation p;
        p.n_ = n_;
        for (int v = 0; v < n_; ++v)
            p.image_[v] = next.image_[image_[v]];
        return p;
    }

    // Old vertices listed by new position.
    std::vector<int> order() const
    {
        std::vector<int> out(n_);
        for (int v = 0; v < n_; ++v)
            out[image_[v]] = v;
        return out;
    }

    std::vector<int> image() const
    {
        return {image_.begin(), image_.begin() + n_};
    }

    friend bool operator==(const Permutation& a, const Permutation& b)
    {
        return a.n_ == b.n_ &&
               std::equal(a.image_.begin(), a.image_.begin() + a.n_, b.image_.begin());
    }

  private:
    static void check_size(int n)
    {
        if (n < 1 || n > max_vertices)
            throw range_error("permutation size out of range: " + std::to_string(n));
    }

    int n_ = 0;
    std::array<std::uint8_t, max_vertices> image_{};
};

/// Acyclic digraph on vertices 0..n-1 with bit-row adjacency.
///
/// Values are immutable; every operation returns a new digraph. Construction
/// through from_arcs() or from_rows() validates acyclicity, while the move
/// operations rely on closure and only re-check it in debug builds.
class Digraph {
  public:
    static Digraph from_rows(int n, std::span<const Row> rows)
    {
        check_vertex_count(n);
        if (static_cast<int>(rows.size()) != n)
            throw size_error("expected " + std::to_string(n) + " rows");
        Digraph d;
        d.n_ = n;
        for (int v = 0; v < n; ++v) {
            if (rows[v] & ~all_vertices(n))
                throw range_error("row " + std::to_string(v) + " has bits beyond column n");
            if (rows[v] & bit(v))
                throw self_loop_error("self-loop at vertex " + std::to_string(v));
            d.out_[v] = rows[v];
        }
        d.rebuild_columns();
        if (!d.acyclic())
            throw cycle_error("digraph contains a directed cycle");
        return d;
    }

    // Trusted constructor for move results; acyclicity is asserted, not checked.
    static Digraph unchecked(int n, const std::array<Row, max_vertices>& rows)
    {
        Digraph d;
        d.n_ = n;
        d.out_ = rows;
        d.rebuild_columns();
        assert(d.acyclic());
        return d;
    }

    static Digraph edgeless(int n)
    {
        check_vertex_count(n);
        Digraph d;
        d.n_ = n;
        return d;
    }

    int size() const { return n_; }

    Row out_neighbors(int v) const { return out_[v]; }
    Row in_neighbors(int v) const { return in_[v]; }
    int out_degree(int v) const { return std::popcount(static_cast<unsigned>(out_[v])); }
    int in_degree(int v) const { return std::popcount(static_cast<unsigned>(in_[v])); }
    bool has_arc(int u, int v) const { return (out_[u] >> v) & 1u; }

    const std::array<Row, max_vertices>& rows() const { return out_; }

    int arc_count() const
    {
        int total = 0;
        for (int v = 0; v < n_; ++v)
            total += out_degree(v);
        return total;
    }

    std::vector<Arc> arcs() const
    {
        std::vector<Arc> out;
        for (int u = 0; u < n_; ++u)
            for_each_bit(out_[u], [&](int v) { out.push_back({u, v}); });
        return out;
    }

    friend bool operator==(const Digraph& a, const Digraph& b)
    {
        return a.n_ == b.n_ && a.out_ == b.out_;
    }

    static void check_vertex_count(int n)
    {
        if (n < 1 || n > max_vertices)
            throw range_error("vertex count out of range: " + std::to_string(n));
    }

    void check_vertex(int v) const
    {
        if (v < 0 || v >= n_)
            throw range_error("vertex out of range: " + std::to_string(v));
    }

  private:
    void rebuild_columns()
    {
        in_.fill(0);
        for (int u = 0; u < n_; ++u)
            for_each_bit(out_[u], [&](int v) { in_[v] |= bit(u); });
    }

    bool acyclic() const
    {
        // Kahn: repeatedly strip sources.
        Row remaining = all_vertices(n_);
        while (remaining) {
            Row sources = 0;
            for_each_bit(remaining, [&](int v) {
                if ((in_[v] & remaining) == 0)
                    sources |= bit(v);
            });
            if (!sources)
                return false;
            remaining &= static_cast<Row>(~sources);
        }
        return true;
    }

    int n_ = 0;
    std::array<Row, max_vertices> out_{};
    std::array<Row, max_vertices> in_{};
};

inline Digraph from_arcs(int n, std::span<const Arc> arcs)
{
    Digraph::check_vertex_count(n);
    std::array<Row, max_vertices> rows{};
    for (const Arc& a : arcs) {
        if (a.from < 0 || a.from >= n || a.to < 0 || a.to >= n)
            throw range_error("arc endpoint out of range");
        if (a.from == a.to)
            throw self_loop_error("self-loop at vertex " + std::to_string(a.from));
        rows[a.from] |= bit(a.to);
    }
    return Digraph::from_rows(n, std::span<const Row>(rows.data(), n));
}

inline Digraph from_arcs(int n, std::initializer_list<Arc> arcs)
{
    return from_arcs(n, std::span<const Arc>(arcs.begin(), arcs.size()));
}

/// Topological order with the smallest available source taken first.
/// The returned permutation maps each vertex to its position.
inline Permutation acyclic_ordering(const Digraph& d)
{
    const int n = d.size();
    std::array<int, max_vertices> order{};
    Row placed = 0;
    for (int k = 0; k < n; ++k) {
        Row ready = 0;
        for_each_bit(static_cast<Row>(all_vertices(n) & ~placed), [&](int v) {
            if ((d.in_neighbors(v) & ~placed) == 0)
                ready |= bit(v);
        });
        assert(ready != 0);
        int v = std::countr_zero(static_cast<unsigned>(ready));
        order[k] = v;
        placed |= bit(v);
    }
    return Permutation::from_order(std::span<const int>(order.data(), n));
}

/// D*v: toggles every arc (u, w) with u an in-neighbour and w an out-neighbour of v.
inline Digraph local_complement(const Digraph& d, int v)
{
    d.check_vertex(v);
    auto rows = d.rows();
    const Row out = d.out_neighbors(v);
    for_each_bit(d.in_neighbors(v), [&](int u) { rows[u] ^= out; });
    return Digraph::unchecked(d.size(), rows);
}

/// D slide vw: replaces the out-neighbourhood of w by its symmetric
/// difference with that of v. Requires N-(v) == N-(w).
inline Digraph slide(const Digraph& d, int v, int w)
{
    d.check_vertex(v);
    d.check_vertex(w);
    if (v == w)
        throw identity_error("slide needs two distinct vertices");
    if (d.in_neighbors(v) != d.in_neighbors(w))
        throw sibling_error("slide needs vertices with equal in-neighbourhoods");
    auto rows = d.rows();
    rows[w] ^= rows[v];
    // Siblings are never adjacent in an acyclic digraph, so no loop appears.
    assert((rows[w] & bit(w)) == 0);
    return Digraph::unchecked(d.size(), rows);
}

/// Image of d under p: arc (u, v) becomes (p(u), p(v)).
inline Digraph relabel(const Digraph& d, const Permutation& p)
{
    if (p.size() != d.size())
        throw size_error("permutation and digraph sizes differ");
    std::array<Row, max_vertices> rows{};
    for (int u = 0; u < d.size(); ++u) {
        Row r = 0;
        for_each_bit(d.out_neighbors(u), [&](int v) { r |= bit(p(v)); });
        rows[p(u)] = r;
    }
    return Digraph::unchecked(d.size(), rows);
}

namespace detail {

// Longest-path layer of every vertex. Round k of source stripping removes
// exactly the vertices whose longest incoming path has k arcs.
inline std::array<int, max_vertices> level_indices(const Digraph& d)
{
    std::array<int, max_vertices> level{};
    Row remaining = all_vertices(d.size());
    for (int k = 0; remaining; ++k) {
        Row sources = 0;
        for_each_bit(remaining, [&](int v) {
            if ((d.in_neighbors(v) & remaining) == 0)
                sources |= bit(v);
        });
        assert(sources != 0);
        for_each_bit(sources, [&](int v) { level[v] = k; });
        remaining &= static_cast<Row>(~sources);
    }
    return level;
}

} // namespace detail

} // namespace bott
