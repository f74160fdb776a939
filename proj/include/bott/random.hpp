#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "digraph.hpp"

namespace bott {

/// Reproducible random digraphs.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++
/// standard. Bounded draws use the multiply-high reduction below instead of
/// std::uniform_int_distribution, whose algorithm is implementation defined,
/// so every platform sees the same trials for a given seed.
class DigraphSampler {
  public:
    explicit DigraphSampler(std::uint64_t seed) : engine_(seed) {}

    // Uniform in [0, bound).
    std::uint64_t below(std::uint64_t bound)
    {
        return static_cast<std::uint64_t>((static_cast<unsigned __int128>(engine_()) * bound) >> 64);
    }

    Permutation permutation(int n)
    {
        std::vector<int> image(n);
        for (int v = 0; v < n; ++v)
            image[v] = v;
        for (int v = n - 1; v > 0; --v)
            std::swap(image[v], image[below(static_cast<std::uint64_t>(v) + 1)]);
        return Permutation::from_image(image);
    }

    // Arc density is drawn per digraph from {1/8, ..., 7/8}; the upper
    // triangle is then relabelled by a uniform permutation.
    Digraph dag(int n)
    {
        const std::uint64_t density = 1 + below(7);
        std::array<Row, max_vertices> rows{};
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (below(8) < density)
                    rows[i] |= bit(j);
        return relabel(Digraph::unchecked(n, rows), permutation(n));
    }

    // Any vertex count in [lo, hi].
    Digraph dag(int lo, int hi)
    {
        return dag(lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1))));
    }

  private:
    std::mt19937_64 engine_;
};

} // namespace bott
