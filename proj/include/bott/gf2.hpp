#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "digraph.hpp"
#include "error.hpp"

namespace bott {

/// Sorted set of distinct indices in 0..15, stored as a bit mask.
class IndexSet {
  public:
    IndexSet() = default;

    static IndexSet from_mask(Row mask)
    {
        IndexSet s;
        s.mask_ = mask;
        return s;
    }

    IndexSet(std::initializer_list<int> members)
    {
        for (int i : members) {
            if (i < 0 || i >= max_vertices)
                throw range_error("index out of range: " + std::to_string(i));
            if (mask_ & bit(i))
                throw range_error("duplicate index: " + std::to_string(i));
            mask_ |= bit(i);
        }
    }

    Row mask() const { return mask_; }
    int size() const { return std::popcount(static_cast<unsigned>(mask_)); }
    bool contains(int i) const { return (mask_ >> i) & 1u; }

    std::vector<int> members() const
    {
        std::vector<int> out;
        for_each_bit(mask_, [&](int i) { out.push_back(i); });
        return out;
    }

    // Rank of member i within the sorted set.
    int position(int i) const
    {
        return std::popcount(static_cast<unsigned>(mask_ & (bit(i) - 1u)));
    }

    friend bool operator==(const IndexSet&, const IndexSet&) = default;

  private:
    Row mask_ = 0;
};

/// Dense matrix over Z2 with at most 16 rows and 16 columns. Bit j of row i
/// holds entry (i, j).
class GF2Matrix {
  public:
    GF2Matrix() = default;

    GF2Matrix(int rows, int cols) : rows_(rows), cols_(cols)
    {
        if (rows < 0 || rows > max_vertices || cols < 0 || cols > max_vertices)
            throw shape_error("matrix dimensions out of range");
    }

    // Rows written as strings of '0'/'1', column 0 first.
    static GF2Matrix from_strings(std::initializer_list<std::string_view> rows)
    {
        const int r = static_cast<int>(rows.size());
        const int c = r ? static_cast<int>(rows.begin()->size()) : 0;
        GF2Matrix m(r, c);
        int i = 0;
        for (std::string_view row : rows) {
            if (static_cast<int>(row.size()) != c)
                throw shape_error("ragged matrix rows");
            for (int j = 0; j < c; ++j) {
                if (row[j] != '0' && row[j] != '1')
                    throw shape_error("matrix entries must be 0 or 1");
                m.set(i, j, row[j] == '1');
            }
            ++i;
        }
        return m;
    }

    static GF2Matrix identity(int n)
    {
        GF2Matrix m(n, n);
        for (int i = 0; i < n; ++i)
            m.bits_[i] = bit(i);
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    bool get(int i, int j) const { return (bits_[i] >> j) & 1u; }
    void set(int i, int j, bool value)
    {
        if (value)
            bits_[i] |= bit(j);
        else
            bits_[i] &= static_cast<Row>(~bit(j));
    }

    Row row(int i) const { return bits_[i]; }
    void set_row(int i, Row r) { bits_[i] = static_cast<Row>(r & all_vertices(cols_)); }

    Row column(int j) const
    {
        Row c = 0;
        for (int i = 0; i < rows_; ++i)
            if (get(i, j))
                c |= bit(i);
        return c;
    }

    GF2Matrix transpose() const
    {
        GF2Matrix t(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for_each_bit(bits_[i], [&](int j) { t.bits_[j] |= bit(i); });
        return t;
    }

    GF2Matrix submatrix(IndexSet row_set, IndexSet col_set) const
    {
        GF2Matrix s(row_set.size(), col_set.size());
        int r = 0;
        for_each_bit(row_set.mask(), [&](int i) {
            int c = 0;
            for_each_bit(col_set.mask(), [&](int j) {
                if (get(i, j))
                    s.bits_[r] |= bit(c);
                ++c;
            });
            ++r;
        });
        return s;
    }

    friend GF2Matrix operator+(const GF2Matrix& a, const GF2Matrix& b)
    {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw shape_error("matrix sum of different shapes");
        GF2Matrix s(a.rows_, a.cols_);
        for (int i = 0; i < a.rows_; ++i)
            s.bits_[i] = a.bits_[i] ^ b.bits_[i];
        return s;
    }

    friend GF2Matrix operator*(const GF2Matrix& a, const GF2Matrix& b)
    {
        if (a.cols_ != b.rows_)
            throw shape_error("matrix product of incompatible shapes");
        GF2Matrix p(a.rows_, b.cols_);
        for (int i = 0; i < a.rows_; ++i)
            for_each_bit(a.bits_[i], [&](int k) { p.bits_[i] ^= b.bits_[k]; });
        return p;
    }

    friend bool operator==(const GF2Matrix& a, const GF2Matrix& b)
    {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            return false;
        for (int i = 0; i < a.rows_; ++i)
            if (a.bits_[i] != b.bits_[i])
                return false;
        return true;
    }

  private:
    int rows_ = 0;
    int cols_ = 0;
    std::array<Row, max_vertices> bits_{};
};

inline GF2Matrix adjacency_matrix(const Digraph& d)
{
    GF2Matrix m(d.size(), d.size());
    for (int v = 0; v < d.size(); ++v)
        m.set_row(v, d.out_neighbors(v));
    return m;
}

namespace detail {

inline int row_rank(std::array<Row, max_vertices> rows, int count)
{
    int rank = 0;
    for (int pivot_col = 0; pivot_col < max_vertices && rank < count; ++pivot_col) {
        const Row pivot_bit = bit(pivot_col);
        int pivot = -1;
        for (int i = rank; i < count; ++i)
            if (rows[i] & pivot_bit) {
                pivot = i;
                break;
            }
        if (pivot < 0)
            continue;
        std::swap(rows[rank], rows[pivot]);
        for (int i = rank + 1; i < count; ++i)
            if (rows[i] & pivot_bit)
                rows[i] ^= rows[rank];
        ++rank;
    }
    return rank;
}

inline void require_square(const GF2Matrix& m, const char* what)
{
    if (!m.square())
        throw shape_error(std::string(what) + " needs a square matrix");
}

inline void require_zero_diagonal(const GF2Matrix& m, const char* what)
{
    for (int i = 0; i < m.rows(); ++i)
        if (m.get(i, i))
            throw diagonal_error(std::string(what) + " needs a zero diagonal");
}

} // namespace detail

/// Rank over Z2 by Gaussian elimination.
inline int rank(const GF2Matrix& m)
{
    std::array<Row, max_vertices> rows{};
    for (int i = 0; i < m.rows(); ++i)
        rows[i] = m.row(i);
    return detail::row_rank(rows, m.rows());
}

/// I + A^t, the characteristic matrix attached to an adjacency matrix.
inline GF2Matrix phi(const GF2Matrix& a)
{
    detail::require_square(a, "phi");
    detail::require_zero_diagonal(a, "phi");
    return GF2Matrix::identity(a.rows()) + a.transpose();
}

/// True iff every principal minor is 1. Subsets are visited by increasing
/// cardinality and the scan stops at the first singular minor.
inline bool all_principal_minors_one(const GF2Matrix& m)
{
    detail::require_square(m, "principal minor check");
    const int n = m.rows();
    for (int k = 1; k <= n; ++k) {
        // Gosper's hack over all k-subsets of {0..n-1}.
        unsigned subset = (1u << k) - 1u;
        while (subset < (1u << n)) {
            std::array<Row, max_vertices> rows{};
            int r = 0;
            const auto cols = IndexSet::from_mask(static_cast<Row>(subset));
            const auto block = m.submatrix(cols, cols);
            for (int i = 0; i < k; ++i)
                rows[r++] = block.row(i);
            if (detail::row_rank(rows, k) != k)
                return false;
            unsigned low = subset & -subset;
            unsigned ripple = subset + low;
            subset = (((ripple ^ subset) >> 2) / low) | ripple;
        }
    }
    return true;
}

/// S A S^-1 for the permutation matrix S of p; entry (i, j) moves to (p(i), p(j)).
inline GF2Matrix op_phi_S(const GF2Matrix& a, const Permutation& p)
{
    detail::require_square(a, "conjugation");
    if (p.size() != a.rows())
        throw shape_error("permutation and matrix sizes differ");
    GF2Matrix out(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for_each_bit(a.row(i), [&](int j) { out.set(p(i), p(j), true); });
    return out;
}

/// Adds column k to every column j with A(k, j) = 1.
inline GF2Matrix op_phi_k(const GF2Matrix& a, int k)
{
    detail::require_square(a, "column operation");
    detail::require_zero_diagonal(a, "column operation");
    if (k < 0 || k >= a.cols())
        throw range_error("column index out of range: " + std::to_string(k));
    const Row col_k = a.column(k);
    const Row targets = a.row(k);
    GF2Matrix out = a;
    for (int i = 0; i < a.rows(); ++i)
        if (col_k & bit(i))
            out.set_row(i, static_cast<Row>(out.row(i) ^ targets));
    return out;
}

/// Replaces the rows indexed by I with C times those rows. The columns of A
/// indexed by I must agree and C must be invertible.
inline GF2Matrix op_phi_I_C(const GF2Matrix& a, IndexSet index, const GF2Matrix& c)
{
    detail::require_square(a, "row block operation");
    const int m = index.size();
    if (c.rows() != m || c.cols() != m)
        throw shape_error("C must be |I| x |I|");
    if (m > 0 && (index.mask() & ~all_vertices(a.rows())))
        throw range_error("index set exceeds matrix size");
    const auto members = index.members();
    for (int idx : members)
        if (a.column(idx) != a.column(members.front()))
            throw column_mismatch_error("columns indexed by I differ");
    if (rank(c) != m)
        throw singular_error("C is not invertible over Z2");

    GF2Matrix out = a;
    for (int r = 0; r < m; ++r) {
        Row combined = 0;
        for_each_bit(c.row(r), [&](int k) { combined ^= a.row(members[k]); });
        out.set_row(members[r], combined);
    }
    return out;
}

/// Row operation that realises slide(D, v, w): I = {v, w} in ascending order
/// and C the elementary matrix adding the row of v into the row of w.
inline std::pair<IndexSet, GF2Matrix> slide_row_operation(int v, int w)
{
    IndexSet index{v, w};
    GF2Matrix c = GF2Matrix::identity(2);
    c.set(index.position(w), index.position(v), true);
    return {index, c};
}

} // namespace bott
