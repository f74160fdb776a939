#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "digraph.hpp"
#include "gf2.hpp"

namespace bott {

struct LevelStructure {
    std::vector<int> level_of; // vertex -> longest incoming path length
    std::vector<int> sequence; // |L_0|, ..., |L_{n-1}|

    // Number of nonempty levels; they are always 0..height()-1.
    int height() const
    {
        int h = 0;
        while (h < static_cast<int>(sequence.size()) && sequence[h] > 0)
            ++h;
        return h;
    }

    Row members(int level) const
    {
        Row m = 0;
        for (int v = 0; v < static_cast<int>(level_of.size()); ++v)
            if (level_of[v] == level)
                m |= bit(v);
        return m;
    }

    friend bool operator==(const LevelStructure&, const LevelStructure&) = default;
};

// Sibling-group sizes for each nonempty level, largest first.
struct SiblingProfile {
    std::vector<std::vector<int>> sizes_by_level;

    friend bool operator==(const SiblingProfile&, const SiblingProfile&) = default;
};

/// Highest level holding a vertex of odd out-degree, or infinity when every
/// out-degree is even.
class OddHeight {
  public:
    static OddHeight infinity() { return OddHeight{}; }
    static OddHeight at(int level) { return OddHeight{level}; }

    bool is_infinite() const { return !level_; }
    int level() const { return *level_; }

    friend bool operator==(const OddHeight&, const OddHeight&) = default;

  private:
    OddHeight() = default;
    explicit OddHeight(int level) : level_(level) {}
    std::optional<int> level_;
};

struct InvariantFingerprint {
    int n = 0;
    std::vector<int> level_sequence;
    int rank = 0;
    // Indexed by a bit mask over the nonempty levels: entry I is the cut-rank
    // of the union of the levels in I.
    std::vector<int> levelset_cut_ranks;
    // Cut-rank between consecutive levels i and i+1, for i = 0..n-2.
    std::vector<int> consecutive_cut_ranks;
    SiblingProfile sibling_profile;
    OddHeight odd_height = OddHeight::infinity();

    friend bool operator==(const InvariantFingerprint&, const InvariantFingerprint&) = default;

    std::uint64_t digest() const
    {
        std::uint64_t h = 0xCBF29CE484222325ull;
        auto mix = [&h](std::int64_t x) {
            for (int b = 0; b < 8; ++b) {
                h ^= static_cast<std::uint8_t>(x >> (8 * b));
                h *= 0x100000001B3ull;
            }
        };
        auto mix_vec = [&](const std::vector<int>& v) {
            mix(static_cast<std::int64_t>(v.size()));
            for (int x : v)
                mix(x);
        };
        mix(n);
        mix_vec(level_sequence);
        mix(rank);
        mix_vec(levelset_cut_ranks);
        mix_vec(consecutive_cut_ranks);
        mix(static_cast<std::int64_t>(sibling_profile.sizes_by_level.size()));
        for (const auto& level : sibling_profile.sizes_by_level)
            mix_vec(level);
        mix(odd_height.is_infinite() ? -1 : odd_height.level());
        return h;
    }
};

inline LevelStructure levels(const Digraph& d)
{
    const int n = d.size();
    const auto raw = detail::level_indices(d);
    LevelStructure ls;
    ls.level_of.assign(raw.begin(), raw.begin() + n);
    ls.sequence.assign(n, 0);
    for (int v = 0; v < n; ++v)
        ++ls.sequence[raw[v]];
    return ls;
}

inline int cut_rank(const Digraph& d, IndexSet rows, IndexSet cols)
{
    if ((rows.mask() | cols.mask()) & ~all_vertices(d.size()))
        throw range_error("vertex set exceeds digraph size");
    return rank(adjacency_matrix(d).submatrix(rows, cols));
}

// Cut-rank of X against its complement.
inline int cut_rank(const Digraph& d, IndexSet x)
{
    return cut_rank(d, x, IndexSet::from_mask(static_cast<Row>(all_vertices(d.size()) & ~x.mask())));
}

// Vertex masks of the sibling groups, each group represented once.
inline std::vector<Row> sibling_group_masks(const Digraph& d)
{
    std::vector<Row> groups;
    Row assigned = 0;
    for (int v = 0; v < d.size(); ++v) {
        if (assigned & bit(v))
            continue;
        Row g = 0;
        for (int u = v; u < d.size(); ++u)
            if (d.in_neighbors(u) == d.in_neighbors(v))
                g |= bit(u);
        assigned |= g;
        groups.push_back(g);
    }
    return groups;
}

inline SiblingProfile sibling_groups(const Digraph& d)
{
    const auto ls = levels(d);
    SiblingProfile profile;
    profile.sizes_by_level.resize(ls.height());
    for (Row g : sibling_group_masks(d)) {
        // Siblings share in-neighbours and hence a level.
        int level = ls.level_of[std::countr_zero(static_cast<unsigned>(g))];
        profile.sizes_by_level[level].push_back(std::popcount(static_cast<unsigned>(g)));
    }
    for (auto& sizes : profile.sizes_by_level)
        std::sort(sizes.begin(), sizes.end(), std::greater<>());
    return profile;
}

inline OddHeight odd_height(const Digraph& d)
{
    const auto ls = levels(d);
    int best = -1;
    for (int v = 0; v < d.size(); ++v)
        if (d.out_degree(v) % 2 == 1)
            best = std::max(best, ls.level_of[v]);
    return best < 0 ? OddHeight::infinity() : OddHeight::at(best);
}

inline bool is_orientable(const Digraph& d)
{
    for (int v = 0; v < d.size(); ++v)
        if (d.out_degree(v) % 2 == 1)
            return false;
    return true;
}

inline bool is_symplectic(const Digraph& d)
{
    for (Row g : sibling_group_masks(d))
        if (std::popcount(static_cast<unsigned>(g)) % 2 == 1)
            return false;
    return true;
}

inline InvariantFingerprint fingerprint(const Digraph& d)
{
    const int n = d.size();
    const auto ls = levels(d);
    const int h = ls.height();
    const auto adj = adjacency_matrix(d);

    std::vector<Row> level_mask(n, 0);
    for (int v = 0; v < n; ++v)
        level_mask[ls.level_of[v]] |= bit(v);

    InvariantFingerprint fp;
    fp.n = n;
    fp.level_sequence = ls.sequence;
    fp.rank = rank(adj);

    fp.levelset_cut_ranks.resize(std::size_t{1} << h);
    for (unsigned subset = 0; subset < (1u << h); ++subset) {
        Row x = 0;
        for (int i = 0; i < h; ++i)
            if (subset & (1u << i))
                x |= level_mask[i];
        const Row y = static_cast<Row>(all_vertices(n) & ~x);
        fp.levelset_cut_ranks[subset] = rank(adj.submatrix(IndexSet::from_mask(x), IndexSet::from_mask(y)));
    }

    for (int i = 0; i + 1 < n; ++i)
        fp.consecutive_cut_ranks.push_back(
            rank(adj.submatrix(IndexSet::from_mask(level_mask[i]), IndexSet::from_mask(level_mask[i + 1]))));

    fp.sibling_profile = sibling_groups(d);
    fp.odd_height = odd_height(d);
    return fp;
}

} // namespace bott
