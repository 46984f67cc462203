#pragma once

#include "poset.hpp"

#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace fkt {

struct EmptyChain : std::runtime_error
{
    explicit EmptyChain(const std::string& what) : std::runtime_error(what) {}
};

/**
 * An abstract ordered simplicial complex whose simplices are the strict
 * chains of a poset, each stored sorted by the partial order.  Closed
 * under subchains; the chain order is the orientation.
 */
struct SimplicialComplex
{
    std::set<std::vector<int>> simplices;

    bool contains(const std::vector<int>& s) const { return simplices.count(s) > 0; }

    std::size_t dimension() const
    {
        std::size_t d = 0;
        for (const auto& s : simplices)
            d = std::max(d, s.size());
        return d == 0 ? 0 : d - 1;
    }

    static SimplicialComplex unite(const SimplicialComplex& a, const SimplicialComplex& b)
    {
        SimplicialComplex c = a;
        c.simplices.insert(b.simplices.begin(), b.simplices.end());
        return c;
    }
};

/**
 * A pair (total, sub) with sub a subcomplex of total.  It stands for the
 * locally compact space |total| minus |sub|; two pairs with equal sets of
 * open simplices represent the same space.
 */
struct SimplicialPair
{
    SimplicialComplex total, sub;

    /** Simplices of total not in sub, i.e. the open simplices of the pair. */
    std::set<std::vector<int>> relative_simplices() const
    {
        std::set<std::vector<int>> out;
        for (const auto& s : total.simplices)
            if (!sub.contains(s))
                out.insert(s);
        return out;
    }
};

/** All strict chains of the restriction of P to the subset `domain`. */
inline SimplicialComplex order_complex(const FinitePoset& p, const Subset& domain)
{
    SimplicialComplex c;
    // grow chains by appending strictly larger elements
    std::vector<std::vector<int>> frontier;
    for (int x : domain)
        frontier.push_back({x});
    while (!frontier.empty())
    {
        std::vector<std::vector<int>> next;
        for (auto& chain : frontier)
        {
            for (int y : domain)
            {
                int last = chain.back();
                if (y != last && p.leq(last, y))
                {
                    std::vector<int> longer = chain;
                    longer.push_back(y);
                    next.push_back(std::move(longer));
                }
            }
            c.simplices.insert(std::move(chain));
        }
        frontier = std::move(next);
    }
    return c;
}

inline SimplicialComplex order_complex(const FinitePoset& p)
{
    Subset all;
    for (std::size_t i = 0; i < p.size(); ++i)
        all.push_back(static_cast<int>(i));
    return order_complex(p, all);
}

/** Minimum of a strict chain (the first entry in chain order). */
inline int m_of(const std::vector<int>& simplex)
{
    if (simplex.empty())
        throw EmptyChain("m_of: empty chain");
    return simplex.front();
}

/** Maximum of a strict chain (the last entry in chain order). */
inline int M_of(const std::vector<int>& simplex)
{
    if (simplex.empty())
        throw EmptyChain("M_of: empty chain");
    return simplex.back();
}

/**
 * The simplicial pair representing S(Y,Z) inside Ch(X):
 *   total = Ch(up(Y) /\ cl(Z)),
 *   sub   = Ch(up(Y) /\ clbd(Z)) u Ch(upbd(Y) /\ cl(Z)).
 * Its open simplices are exactly the strict chains with min in Y and
 * max in Z.
 */
inline SimplicialPair relative_S(const FinitePoset& p, const Subset& y, const Subset& z)
{
    ClosureOps oy = closure_ops(p, y);
    ClosureOps oz = closure_ops(p, z);
    Subset total_dom = subset_intersection(oy.up, oz.cl);
    Subset sub1 = subset_intersection(oy.up, oz.cl_boundary);
    Subset sub2 = subset_intersection(oy.up_boundary, oz.cl);
    SimplicialPair pair;
    pair.total = order_complex(p, total_dom);
    pair.sub = SimplicialComplex::unite(order_complex(p, sub1), order_complex(p, sub2));
    // keep sub a subcomplex of total
    for (auto it = pair.sub.simplices.begin(); it != pair.sub.simplices.end();)
    {
        if (!pair.total.contains(*it))
            it = pair.sub.simplices.erase(it);
        else
            ++it;
    }
    return pair;
}

/** Independent oracle: the strict chains with min in Y and max in Z. */
inline std::set<std::vector<int>> open_simplex_filter(const FinitePoset& p, const Subset& y,
                                                      const Subset& z)
{
    std::set<std::vector<int>> out;
    for (const auto& s : order_complex(p).simplices)
        if (subset_contains(y, m_of(s)) && subset_contains(z, M_of(s)))
            out.insert(s);
    return out;
}

}  // namespace fkt
