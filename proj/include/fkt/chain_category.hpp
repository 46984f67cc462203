#pragma once

#include "category.hpp"

#include <string>
#include <vector>

namespace fkt {

namespace detail {

/** Interval bounds of a connected locally closed subset of a chain. */
struct Interval
{
    int a = 0, b = 0;  // 1-based, a <= b
};

inline bool mu_defined(const Interval& y, const Interval& z)
{
    // Z[0] case: a2 <= a1 <= b2 <= b1
    return z.a <= y.a && y.a <= z.b && z.b <= y.b;
}

inline bool delta_defined(const Interval& y, const Interval& z)
{
    // Z[1] case: a1 < a2, b1 < b2, a2 - 1 <= b1
    return y.a < z.a && y.b < z.b && z.a - 1 <= y.b;
}

}  // namespace detail

/**
 * The category ring of natural transformations for the totally ordered
 * space {1 < 2 < ... < n}: objects are the intervals [a,b], hom groups
 * follow the three-case law, and composition collapses products of the
 * generators mu and delta to single basis elements or zero.
 */
inline CategoryRing chain_category(int n)
{
    if (n < 1)
        throw std::invalid_argument("chain_category: n must be positive");
    CategoryRing ring(chain_poset(n));
    ring.name = "chain:" + std::to_string(n);

    std::vector<detail::Interval> intervals;
    for (const Subset& s : connected_lc_sets(ring.poset))
    {
        ring.object_names.push_back(subset_name(ring.poset, s));
        ring.object_sets.push_back(s);
        ring.object_is_virtual.push_back(false);
        intervals.push_back({s.front() + 1, s.back() + 1});
    }
    const int num = static_cast<int>(intervals.size());

    auto obj_of = [&](int a, int b) -> int {
        for (int i = 0; i < num; ++i)
            if (intervals[i].a == a && intervals[i].b == b)
                return i;
        throw ObjectMismatch("chain_category: no interval [" + std::to_string(a) + "," +
                             std::to_string(b) + "]");
    };

    // basis: identities, mu, delta
    std::vector<std::vector<int>> mu_idx(num, std::vector<int>(num, -1));
    std::vector<std::vector<int>> delta_idx(num, std::vector<int>(num, -1));
    ring.identity_of.assign(num, -1);
    for (int y = 0; y < num; ++y)
        for (int z = 0; z < num; ++z)
        {
            if (detail::mu_defined(intervals[y], intervals[z]))
            {
                BasisMorphism m;
                m.src = y;
                m.tgt = z;
                m.degree = 0;
                m.label = y == z ? "id(" + ring.object_names[y] + ")"
                                 : "mu(" + ring.object_names[y] + "->" +
                                       ring.object_names[z] + ")";
                mu_idx[y][z] = static_cast<int>(ring.basis.size());
                if (y == z)
                    ring.identity_of[y] = mu_idx[y][z];
                ring.basis.push_back(m);
            }
            if (detail::delta_defined(intervals[y], intervals[z]))
            {
                BasisMorphism m;
                m.src = y;
                m.tgt = z;
                m.degree = 1;
                m.label =
                    "delta(" + ring.object_names[y] + "->" + ring.object_names[z] + ")";
                delta_idx[y][z] = static_cast<int>(ring.basis.size());
                ring.basis.push_back(m);
            }
        }

    // composition: mu mu = mu (or 0), mu delta = delta mu = delta (or 0),
    // delta delta = 0; products of nonzero transformations W -> Y -> Z
    // survive exactly when the target pattern admits them.
    for (int f = 0; f < static_cast<int>(ring.basis.size()); ++f)
        for (int g = 0; g < static_cast<int>(ring.basis.size()); ++g)
        {
            const BasisMorphism& bf = ring.basis[f];
            const BasisMorphism& bg = ring.basis[g];
            if (bg.tgt != bf.src)
                continue;
            int w = bg.src, z = bf.tgt;
            int deg = (bf.degree + bg.degree) % 2;
            int h = -1;
            if (deg == 0 && bf.degree == 0 && bg.degree == 0)
                h = mu_idx[w][z];
            else if (deg == 1 && bf.degree != bg.degree)
                h = delta_idx[w][z];
            if (h >= 0)
                ring.set_structure(f, g, {{Int(1), h}});
        }

    // six-term data for every (Y = [a,b], U = [c,b]) with a < c <= b
    for (const auto& [y, u] : six_term_pairs(ring.poset))
    {
        int a = y.front() + 1, b = y.back() + 1;
        int c = u.front() + 1;
        int oy = obj_of(a, b), ou = obj_of(c, b), ow = obj_of(a, c - 1);
        CategoryRing::SixTermSeq st;
        st.label = "Y=" + ring.object_names[oy] + " U=" + ring.object_names[ou];
        st.incl = BlockElement::zeros({ou}, {oy}, 0);
        st.incl.entries[0][0] = ring.basis_element(mu_idx[ou][oy]);
        st.restr = BlockElement::zeros({oy}, {ow}, 0);
        st.restr.entries[0][0] = ring.basis_element(mu_idx[oy][ow]);
        st.boundary = BlockElement::zeros({ow}, {ou}, 1);
        st.boundary.entries[0][0] = ring.basis_element(delta_idx[ow][ou]);
        ring.six_terms.push_back(std::move(st));
    }

    return ring;
}

}  // namespace fkt
