#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fkt {

using Int = boost::multiprecision::cpp_int;

/**
 * Dense matrix over arbitrary-precision integers.  Row major.
 *
 * All the exact linear algebra in this library (Smith/Hermite forms,
 * kernels, integral solving) sits on top of this class; entries never
 * overflow by construction.
 */
class IntMatrix
{
public:
    IntMatrix() : rows_(0), cols_(0) {}

    IntMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols)
    {
    }

    static IntMatrix identity(std::size_t n)
    {
        IntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = 1;
        return m;
    }

    /** Build from a nested initializer list of machine integers. */
    static IntMatrix from_rows(std::initializer_list<std::initializer_list<long long>> rows)
    {
        std::size_t r = rows.size();
        std::size_t c = r == 0 ? 0 : rows.begin()->size();
        IntMatrix m(r, c);
        std::size_t i = 0;
        for (const auto& row : rows)
        {
            if (row.size() != c)
                throw std::invalid_argument("IntMatrix: ragged rows");
            std::size_t j = 0;
            for (long long v : row)
                m(i, j++) = v;
            ++i;
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Int& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Int& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    bool is_zero() const
    {
        for (const Int& v : data_)
            if (v != 0)
                return false;
        return true;
    }

    bool operator==(const IntMatrix& o) const
    {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }
    bool operator!=(const IntMatrix& o) const { return !(*this == o); }

    IntMatrix transpose() const
    {
        IntMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                t(j, i) = (*this)(i, j);
        return t;
    }

    IntMatrix operator*(const IntMatrix& b) const
    {
        if (cols_ != b.rows_)
            throw std::invalid_argument("IntMatrix: dimension mismatch in product");
        IntMatrix c(rows_, b.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k)
            {
                const Int& a = (*this)(i, k);
                if (a == 0)
                    continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                {
                    const Int& v = b(k, j);
                    if (v != 0)
                        c(i, j) += a * v;
                }
            }
        return c;
    }

    IntMatrix operator+(const IntMatrix& b) const
    {
        require_same_shape(b);
        IntMatrix c(rows_, cols_);
        for (std::size_t i = 0; i < data_.size(); ++i)
            c.data_[i] = data_[i] + b.data_[i];
        return c;
    }

    IntMatrix operator-(const IntMatrix& b) const
    {
        require_same_shape(b);
        IntMatrix c(rows_, cols_);
        for (std::size_t i = 0; i < data_.size(); ++i)
            c.data_[i] = data_[i] - b.data_[i];
        return c;
    }

    IntMatrix operator-() const
    {
        IntMatrix c(rows_, cols_);
        for (std::size_t i = 0; i < data_.size(); ++i)
            c.data_[i] = -data_[i];
        return c;
    }

    IntMatrix scaled(const Int& k) const
    {
        IntMatrix c(rows_, cols_);
        for (std::size_t i = 0; i < data_.size(); ++i)
            c.data_[i] = data_[i] * k;
        return c;
    }

    /** Columns of `a` followed by columns of `b`. */
    static IntMatrix hconcat(const IntMatrix& a, const IntMatrix& b)
    {
        if (a.rows() != b.rows())
            throw std::invalid_argument("IntMatrix: hconcat row mismatch");
        IntMatrix c(a.rows(), a.cols() + b.cols());
        for (std::size_t i = 0; i < a.rows(); ++i)
        {
            for (std::size_t j = 0; j < a.cols(); ++j)
                c(i, j) = a(i, j);
            for (std::size_t j = 0; j < b.cols(); ++j)
                c(i, a.cols() + j) = b(i, j);
        }
        return c;
    }

    static IntMatrix vconcat(const IntMatrix& a, const IntMatrix& b)
    {
        if (a.cols() != b.cols())
            throw std::invalid_argument("IntMatrix: vconcat col mismatch");
        IntMatrix c(a.rows() + b.rows(), a.cols());
        for (std::size_t i = 0; i < a.rows(); ++i)
            for (std::size_t j = 0; j < a.cols(); ++j)
                c(i, j) = a(i, j);
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (std::size_t j = 0; j < b.cols(); ++j)
                c(a.rows() + i, j) = b(i, j);
        return c;
    }

    IntMatrix column(std::size_t j) const
    {
        IntMatrix c(rows_, 1);
        for (std::size_t i = 0; i < rows_; ++i)
            c(i, 0) = (*this)(i, j);
        return c;
    }

    IntMatrix columns(std::size_t j0, std::size_t j1) const
    {
        IntMatrix c(rows_, j1 - j0);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = j0; j < j1; ++j)
                c(i, j - j0) = (*this)(i, j);
        return c;
    }

    IntMatrix rows_slice(std::size_t i0, std::size_t i1) const
    {
        IntMatrix c(i1 - i0, cols_);
        for (std::size_t i = i0; i < i1; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                c(i - i0, j) = (*this)(i, j);
        return c;
    }

    void swap_rows(std::size_t a, std::size_t b)
    {
        if (a == b)
            return;
        for (std::size_t j = 0; j < cols_; ++j)
            std::swap((*this)(a, j), (*this)(b, j));
    }

    void swap_cols(std::size_t a, std::size_t b)
    {
        if (a == b)
            return;
        for (std::size_t i = 0; i < rows_; ++i)
            std::swap((*this)(i, a), (*this)(i, b));
    }

    /** row[a] += k * row[b] */
    void add_row(std::size_t a, std::size_t b, const Int& k)
    {
        if (k == 0)
            return;
        for (std::size_t j = 0; j < cols_; ++j)
            (*this)(a, j) += k * (*this)(b, j);
    }

    /** col[a] += k * col[b] */
    void add_col(std::size_t a, std::size_t b, const Int& k)
    {
        if (k == 0)
            return;
        for (std::size_t i = 0; i < rows_; ++i)
            (*this)(i, a) += k * (*this)(i, b);
    }

    void negate_row(std::size_t a)
    {
        for (std::size_t j = 0; j < cols_; ++j)
            (*this)(a, j) = -(*this)(a, j);
    }

    void negate_col(std::size_t a)
    {
        for (std::size_t i = 0; i < rows_; ++i)
            (*this)(i, a) = -(*this)(i, a);
    }

    std::string to_string() const
    {
        std::ostringstream os;
        os << "[";
        for (std::size_t i = 0; i < rows_; ++i)
        {
            os << (i ? ", [" : "[");
            for (std::size_t j = 0; j < cols_; ++j)
                os << (j ? "," : "") << (*this)(i, j);
            os << "]";
        }
        os << "]";
        return os.str();
    }

private:
    void require_same_shape(const IntMatrix& b) const
    {
        if (rows_ != b.rows_ || cols_ != b.cols_)
            throw std::invalid_argument("IntMatrix: shape mismatch");
    }

    std::size_t rows_, cols_;
    std::vector<Int> data_;
};

namespace detail {

inline Int abs_int(const Int& v) { return v < 0 ? Int(-v) : v; }

/** Euclidean quotient: remainder satisfies 0 <= r < |b|. */
inline Int euclid_div(const Int& a, const Int& b)
{
    Int q = a / b, r = a % b;
    if (r < 0)
        q += (b > 0 ? -1 : 1);
    return q;
}

/**
 * In-place column Hermite reduction: S becomes a lower staircase with
 * positive pivots and reduced off-pivot entries; pivot columns are the
 * leading ones.  Column operations are mirrored on V when present, so
 * S_in * V = S_out stays valid.  Returns the pivot rows in column order.
 *
 * Entries stay reasonably small because every pivot row is fully
 * reduced as soon as its pivot is placed.
 */
inline std::vector<std::size_t> hermite_columns(IntMatrix& S, IntMatrix* V)
{
    const std::size_t m = S.rows(), n = S.cols();
    std::vector<std::size_t> pivot_rows;
    std::size_t c = 0;
    for (std::size_t r = 0; r < m && c < n; ++r)
    {
        while (true)
        {
            std::size_t pj = n;
            Int best = 0;
            for (std::size_t j = c; j < n; ++j)
            {
                if (S(r, j) == 0)
                    continue;
                Int a = abs_int(S(r, j));
                if (best == 0 || a < best)
                {
                    best = a;
                    pj = j;
                }
            }
            if (pj == n)
                break;
            S.swap_cols(c, pj);
            if (V)
                V->swap_cols(c, pj);
            bool reduced = true;
            for (std::size_t j = c + 1; j < n; ++j)
            {
                if (S(r, j) == 0)
                    continue;
                Int q = euclid_div(S(r, j), S(r, c));
                S.add_col(j, c, -q);
                if (V)
                    V->add_col(j, c, -q);
                if (S(r, j) != 0)
                    reduced = false;
            }
            if (reduced)
                break;
        }
        if (c < n && S(r, c) != 0)
        {
            if (S(r, c) < 0)
            {
                S.negate_col(c);
                if (V)
                    V->negate_col(c);
            }
            for (std::size_t j = 0; j < c; ++j)
            {
                Int q = euclid_div(S(r, j), S(r, c));
                S.add_col(j, c, -q);
                if (V)
                    V->add_col(j, c, -q);
            }
            pivot_rows.push_back(r);
            ++c;
        }
    }
    return pivot_rows;
}

/** Row Hermite reduction, mirrored on U (so U * S_in = S_out). */
inline void hermite_rows(IntMatrix& S, IntMatrix* U)
{
    const std::size_t m = S.rows(), n = S.cols();
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < m; ++c)
    {
        while (true)
        {
            std::size_t pi = m;
            Int best = 0;
            for (std::size_t i = r; i < m; ++i)
            {
                if (S(i, c) == 0)
                    continue;
                Int a = abs_int(S(i, c));
                if (best == 0 || a < best)
                {
                    best = a;
                    pi = i;
                }
            }
            if (pi == m)
                break;
            S.swap_rows(r, pi);
            if (U)
                U->swap_rows(r, pi);
            bool reduced = true;
            for (std::size_t i = r + 1; i < m; ++i)
            {
                if (S(i, c) == 0)
                    continue;
                Int q = euclid_div(S(i, c), S(r, c));
                S.add_row(i, r, -q);
                if (U)
                    U->add_row(i, r, -q);
                if (S(i, c) != 0)
                    reduced = false;
            }
            if (reduced)
                break;
        }
        if (r < m && S(r, c) != 0)
        {
            if (S(r, c) < 0)
            {
                S.negate_row(r);
                if (U)
                    U->negate_row(r);
            }
            for (std::size_t i = 0; i < r; ++i)
            {
                Int q = euclid_div(S(i, c), S(r, c));
                S.add_row(i, r, -q);
                if (U)
                    U->add_row(i, r, -q);
            }
            ++r;
        }
    }
}

inline bool is_diagonalish(const IntMatrix& S)
{
    for (std::size_t i = 0; i < S.rows(); ++i)
        for (std::size_t j = 0; j < S.cols(); ++j)
        {
            if (S(i, j) == 0)
                continue;
            for (std::size_t k = 0; k < S.cols(); ++k)
                if (k != j && S(i, k) != 0)
                    return false;
            for (std::size_t k = 0; k < S.rows(); ++k)
                if (k != i && S(k, j) != 0)
                    return false;
        }
    return true;
}

inline Int gcd_int(Int a, Int b)
{
    a = abs_int(a);
    b = abs_int(b);
    while (b != 0)
    {
        Int t = a % b;
        a = b;
        b = t;
    }
    return a;
}

/** Extended gcd: returns (g, p, q) with p*a + q*b = g >= 0. */
inline std::tuple<Int, Int, Int> ext_gcd(const Int& a, const Int& b)
{
    if (b == 0)
        return {abs_int(a), a < 0 ? Int(-1) : Int(1), Int(0)};
    Int old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
    while (r != 0)
    {
        Int q = old_r / r;
        Int tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
        tmp = old_t - q * t;
        old_t = t;
        t = tmp;
    }
    if (old_r < 0)
    {
        old_r = -old_r;
        old_s = -old_s;
        old_t = -old_t;
    }
    return {old_r, old_s, old_t};
}

}  // namespace detail

/**
 * Smith normal form U*A*V = S with U, V unimodular and S diagonal with
 * successively dividing non-negative entries.  Computed by alternating
 * Hermite reductions, which keeps intermediate entries small, followed
 * by a divisibility cascade on the diagonal.
 */
struct SNFResult
{
    IntMatrix U, S, V;
    std::vector<Int> factors;  // nonzero diagonal entries, ascending divisibility
    std::size_t rank = 0;
};

inline SNFResult smith_normal_form(const IntMatrix& A)
{
    const std::size_t m = A.rows(), n = A.cols();
    SNFResult res;
    res.S = A;
    res.U = IntMatrix::identity(m);
    res.V = IntMatrix::identity(n);
    IntMatrix& S = res.S;
    IntMatrix& U = res.U;
    IntMatrix& V = res.V;

    for (int pass = 0;; ++pass)
    {
        if (pass > 200)
            throw std::logic_error("smith_normal_form: no convergence");
        detail::hermite_columns(S, &V);
        if (detail::is_diagonalish(S))
            break;
        detail::hermite_rows(S, &U);
        if (detail::is_diagonalish(S))
            break;
    }

    // move the nonzero entries onto the leading diagonal
    std::vector<std::pair<std::size_t, std::size_t>> pivots;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (S(i, j) != 0)
                pivots.emplace_back(i, j);
    std::sort(pivots.begin(), pivots.end());
    for (std::size_t t = 0; t < pivots.size(); ++t)
    {
        auto [i, j] = pivots[t];
        S.swap_rows(t, i);
        U.swap_rows(t, i);
        S.swap_cols(t, j);
        V.swap_cols(t, j);
        for (auto& p : pivots)
        {
            if (p.first == i)
                p.first = t;
            else if (p.first == t)
                p.first = i;
            if (p.second == j)
                p.second = t;
            else if (p.second == t)
                p.second = j;
        }
        if (S(t, t) < 0)
        {
            S.negate_row(t);
            U.negate_row(t);
        }
    }
    std::size_t rank = pivots.size();

    // divisibility cascade: repair pairs until d_i | d_j for i < j
    bool changed = true;
    while (changed)
    {
        changed = false;
        for (std::size_t i = 0; i + 1 < rank; ++i)
            for (std::size_t j = i + 1; j < rank; ++j)
            {
                const Int a = S(i, i), b = S(j, j);
                if (b % a == 0)
                    continue;
                changed = true;
                auto [g, p, q] = detail::ext_gcd(a, b);
                Int l = a / g * b;
                // diag(a, b) -> diag(g, l) by unimodular 2x2 operations
                S.add_row(i, j, 1);
                U.add_row(i, j, 1);  // row i: (a, b)
                // columns (i, j) <- (p*ci + q*cj, -(b/g)*ci + (a/g)*cj)
                IntMatrix ci = S.column(i), cj = S.column(j);
                IntMatrix vi = V.column(i), vj = V.column(j);
                for (std::size_t r2 = 0; r2 < m; ++r2)
                {
                    S(r2, i) = p * ci(r2, 0) + q * cj(r2, 0);
                    S(r2, j) = -(b / g) * ci(r2, 0) + (a / g) * cj(r2, 0);
                }
                for (std::size_t r2 = 0; r2 < n; ++r2)
                {
                    V(r2, i) = p * vi(r2, 0) + q * vj(r2, 0);
                    V(r2, j) = -(b / g) * vi(r2, 0) + (a / g) * vj(r2, 0);
                }
                // now S(i,i) = g, S(i,j) = 0, S(j,i) = q*b, S(j,j) = l
                Int f = S(j, i) / g;
                S.add_row(j, i, -f);
                U.add_row(j, i, -f);
                if (S(j, j) < 0)
                {
                    S.negate_row(j);
                    U.negate_row(j);
                }
            }
    }

    for (std::size_t i = 0; i < rank; ++i)
        res.factors.push_back(S(i, i));
    res.rank = rank;
    return res;
}

/** Solve A*X = B over the integers; nullopt when no integral solution. */
inline std::optional<IntMatrix> solve(const IntMatrix& A, const IntMatrix& B)
{
    if (A.rows() != B.rows())
        throw std::invalid_argument("solve: row mismatch");
    IntMatrix H = A;
    IntMatrix V = IntMatrix::identity(A.cols());
    std::vector<std::size_t> pivot_rows = detail::hermite_columns(H, &V);
    const std::size_t p = pivot_rows.size();
    IntMatrix Y(A.cols(), B.cols());
    for (std::size_t col = 0; col < B.cols(); ++col)
    {
        std::vector<Int> residual(A.rows());
        for (std::size_t i = 0; i < A.rows(); ++i)
            residual[i] = B(i, col);
        for (std::size_t k = 0; k < p; ++k)
        {
            const Int& piv = H(pivot_rows[k], k);
            Int num = residual[pivot_rows[k]];
            if (num % piv != 0)
                return std::nullopt;
            Int yk = num / piv;
            if (yk != 0)
            {
                for (std::size_t i = 0; i < A.rows(); ++i)
                    residual[i] -= yk * H(i, k);
                Y(k, col) = yk;
            }
        }
        for (const Int& r : residual)
            if (r != 0)
                return std::nullopt;
    }
    return V * Y;
}

/** Basis (columns) of the integral kernel lattice {x : A x = 0}. */
inline IntMatrix nullspace(const IntMatrix& A)
{
    IntMatrix H = A;
    IntMatrix V = IntMatrix::identity(A.cols());
    std::vector<std::size_t> pivot_rows = detail::hermite_columns(H, &V);
    return V.columns(pivot_rows.size(), A.cols());
}

/**
 * Column-style Hermite normal form of the lattice spanned by the columns.
 * Returns a canonical basis without zero columns; two generating sets span
 * the same lattice iff their Hermite bases are identical.
 */
inline IntMatrix column_hermite(const IntMatrix& A)
{
    IntMatrix H = A;
    std::vector<std::size_t> pivot_rows = detail::hermite_columns(H, nullptr);
    return H.columns(0, pivot_rows.size());
}

/** True iff every column of V lies in the column lattice of L. */
inline bool lattice_contains(const IntMatrix& L, const IntMatrix& V)
{
    if (V.cols() == 0)
        return true;
    return solve(L, V).has_value();
}

inline bool lattice_equal(const IntMatrix& L1, const IntMatrix& L2)
{
    return lattice_contains(L1, L2) && lattice_contains(L2, L1);
}

}  // namespace fkt
