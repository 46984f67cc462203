#pragma once

#include "abelian.hpp"
#include "order_complex.hpp"

#include <map>
#include <vector>

namespace fkt {

enum class ExactnessFlag
{
    exact,
    heuristic
};

/** A Z/2-graded abelian group together with a reliability flag. */
struct KTheoryResult
{
    GradedAbelianGroup groups;
    ExactnessFlag flag = ExactnessFlag::exact;
};

namespace detail {

struct RelativeCells
{
    // cells[q] lists the q-simplices of total not in sub, in set order
    std::vector<std::vector<std::vector<int>>> cells;
    std::vector<std::map<std::vector<int>, std::size_t>> index;
};

inline RelativeCells relative_cells(const SimplicialPair& pair)
{
    RelativeCells rc;
    for (const auto& s : pair.total.simplices)
    {
        if (pair.sub.contains(s))
            continue;
        std::size_t q = s.size() - 1;
        if (rc.cells.size() <= q)
        {
            rc.cells.resize(q + 1);
            rc.index.resize(q + 1);
        }
        rc.index[q][s] = rc.cells[q].size();
        rc.cells[q].push_back(s);
    }
    return rc;
}

/** Boundary matrix C_q -> C_{q-1} of the relative chain complex. */
inline IntMatrix boundary_matrix(const RelativeCells& rc, std::size_t q)
{
    std::size_t rows = q >= 1 && q - 1 < rc.cells.size() ? rc.cells[q - 1].size() : 0;
    std::size_t cols = q < rc.cells.size() ? rc.cells[q].size() : 0;
    IntMatrix d(rows, cols);
    if (q == 0 || rows == 0 || cols == 0)
        return d;
    for (std::size_t j = 0; j < cols; ++j)
    {
        const auto& s = rc.cells[q][j];
        int sign = 1;
        for (std::size_t drop = 0; drop < s.size(); ++drop)
        {
            std::vector<int> face;
            face.reserve(s.size() - 1);
            for (std::size_t k = 0; k < s.size(); ++k)
                if (k != drop)
                    face.push_back(s[k]);
            auto it = rc.index[q - 1].find(face);
            if (it != rc.index[q - 1].end())
                d(it->second, j) += sign;
            sign = -sign;
        }
    }
    return d;
}

}  // namespace detail

/**
 * Relative simplicial cohomology with integer coefficients of the pair
 * (total, sub), one group per degree 0..dim.
 */
inline std::vector<AbelianGroup> cohomology_of_pair(const SimplicialPair& pair)
{
    detail::RelativeCells rc = detail::relative_cells(pair);
    const std::size_t top = rc.cells.size();
    std::vector<AbelianGroup> h(top);
    for (std::size_t q = 0; q < top; ++q)
    {
        // cochain differentials d^q = (boundary_{q+1})^T
        IntMatrix dq = detail::boundary_matrix(rc, q + 1).transpose();
        IntMatrix dprev = detail::boundary_matrix(rc, q).transpose();
        std::size_t nq = rc.cells[q].size();
        if (dq.rows() == 0)
            dq = IntMatrix(0, nq);
        if (dprev.cols() == 0)
            dprev = IntMatrix(nq, 0);
        // H^q = ker(d^q) / im(d^{q-1})
        IntMatrix kernel = nullspace(dq);
        if (kernel.cols() == 0)
        {
            h[q] = AbelianGroup{};
            continue;
        }
        auto coords = solve(kernel, dprev);
        if (!coords)
            throw std::logic_error("cohomology_of_pair: image not inside kernel");
        h[q] = canonical_form(Presentation(kernel.cols(), *coords));
    }
    return h;
}

/**
 * Z/2-graded K-theory of the locally compact space carried by the pair,
 * computed as graded integral cohomology.  The result is flagged exact
 * when the Atiyah-Hirzebruch differentials and extension problems are
 * forced to vanish: relative dimension <= 2, or torsion-free cohomology
 * that is concentrated in at most three consecutive degrees.
 */
inline KTheoryResult graded_k_theory(const SimplicialPair& pair)
{
    std::vector<AbelianGroup> h = cohomology_of_pair(pair);
    KTheoryResult result;
    for (std::size_t q = 0; q < h.size(); ++q)
    {
        AbelianGroup& part = (q % 2 == 0) ? result.groups.even : result.groups.odd;
        part = AbelianGroup::direct_sum(part, h[q]);
    }

    std::size_t relative_dim = h.empty() ? 0 : h.size() - 1;
    bool torsion_free = true;
    std::size_t lo = h.size(), hi = 0;
    for (std::size_t q = 0; q < h.size(); ++q)
    {
        if (!h[q].torsion.empty())
            torsion_free = false;
        if (!h[q].is_zero())
        {
            lo = std::min(lo, q);
            hi = std::max(hi, q);
        }
    }
    bool concentrated = lo > hi || (hi - lo + 1 <= 3);
    if (relative_dim <= 2 || (torsion_free && (relative_dim <= 3 || concentrated)))
        result.flag = ExactnessFlag::exact;
    else
        result.flag = ExactnessFlag::heuristic;
    return result;
}

/** Euler characteristic from the relative cell counts. */
inline long long euler_characteristic_cells(const SimplicialPair& pair)
{
    detail::RelativeCells rc = detail::relative_cells(pair);
    long long chi = 0;
    for (std::size_t q = 0; q < rc.cells.size(); ++q)
        chi += (q % 2 == 0 ? 1 : -1) * static_cast<long long>(rc.cells[q].size());
    return chi;
}

}  // namespace fkt
