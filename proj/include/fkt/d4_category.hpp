#pragma once

#include "presented_category.hpp"

#include <string>
#include <vector>

namespace fkt {

namespace detail {

inline RingPresentation d4_presentation()
{
    RingPresentation pres;
    pres.name = "d4";
    pres.poset = d4_poset();
    for (const Subset& s : connected_lc_sets(pres.poset))
    {
        pres.object_names.push_back(subset_name(pres.poset, s));
        pres.object_sets.push_back(s);
        pres.object_is_virtual.push_back(false);
    }
    auto obj = [&](const std::string& n) -> int {
        for (std::size_t i = 0; i < pres.object_names.size(); ++i)
            if (pres.object_names[i] == n)
                return static_cast<int>(i);
        throw ObjectMismatch("d4_presentation: no object " + n);
    };
    auto arrow = [&](const std::string& kind, const std::string& a,
                     const std::string& b, int degree) {
        pres.arrows.push_back(
            {obj(a), obj(b), degree, kind + "(" + a + "->" + b + ")"});
        return static_cast<int>(pres.arrows.size() - 1);
    };

    int i4_14 = arrow("i", "4", "14", 0);
    int i4_24 = arrow("i", "4", "24", 0);
    int i4_34 = arrow("i", "4", "34", 0);
    int i14_124 = arrow("i", "14", "124", 0);
    int i14_134 = arrow("i", "14", "134", 0);
    int i24_124 = arrow("i", "24", "124", 0);
    int i24_234 = arrow("i", "24", "234", 0);
    int i34_134 = arrow("i", "34", "134", 0);
    int i34_234 = arrow("i", "34", "234", 0);
    int i124 = arrow("i", "124", "1234", 0);
    int i134 = arrow("i", "134", "1234", 0);
    int i234 = arrow("i", "234", "1234", 0);
    int r1 = arrow("r", "1234", "1", 0);
    int r2 = arrow("r", "1234", "2", 0);
    int r3 = arrow("r", "1234", "3", 0);
    int d1 = arrow("delta", "1", "4", 1);
    int d2 = arrow("delta", "2", "4", 1);
    int d3 = arrow("delta", "3", "4", 1);

    using R = RingPresentation::Relation;
    // the cube of inclusion transformations commutes
    pres.relations.push_back(R{{1, {i4_14, i14_124}}, {-1, {i4_24, i24_124}}});
    pres.relations.push_back(R{{1, {i4_14, i14_134}}, {-1, {i4_34, i34_134}}});
    pres.relations.push_back(R{{1, {i4_24, i24_234}}, {-1, {i4_34, i34_234}}});
    pres.relations.push_back(R{{1, {i14_124, i124}}, {-1, {i14_134, i134}}});
    pres.relations.push_back(R{{1, {i24_124, i124}}, {-1, {i24_234, i234}}});
    pres.relations.push_back(R{{1, {i34_134, i134}}, {-1, {i34_234, i234}}});
    // restriction to the missing point kills the smaller open set
    pres.relations.push_back(R{{1, {i124, r3}}});
    pres.relations.push_back(R{{1, {i134, r2}}});
    pres.relations.push_back(R{{1, {i234, r1}}});
    // boundary followed by the inclusion over the same point vanishes
    pres.relations.push_back(R{{1, {d1, i4_14}}});
    pres.relations.push_back(R{{1, {d2, i4_24}}});
    pres.relations.push_back(R{{1, {d3, i4_34}}});
    // the three boundary paths 1234 -> 4 sum to zero
    pres.relations.push_back(R{{1, {r1, d1}}, {1, {r2, d2}}, {1, {r3, d3}}});
    return pres;
}

inline RingPresentation d4_refined_presentation()
{
    RingPresentation pres;
    pres.name = "d4refined";
    pres.poset = d4_poset();
    for (const Subset& s : connected_lc_sets(pres.poset))
    {
        pres.object_names.push_back(subset_name(pres.poset, s));
        pres.object_sets.push_back(s);
        pres.object_is_virtual.push_back(false);
    }
    pres.object_names.push_back("12344");
    pres.object_sets.push_back({});
    pres.object_is_virtual.push_back(true);

    auto obj = [&](const std::string& n) -> int {
        for (std::size_t i = 0; i < pres.object_names.size(); ++i)
            if (pres.object_names[i] == n)
                return static_cast<int>(i);
        throw ObjectMismatch("d4_refined_presentation: no object " + n);
    };
    auto arrow = [&](const std::string& kind, const std::string& a,
                     const std::string& b, int degree) {
        pres.arrows.push_back(
            {obj(a), obj(b), degree, kind + "(" + a + "->" + b + ")"});
        return static_cast<int>(pres.arrows.size() - 1);
    };

    int i4_14 = arrow("i", "4", "14", 0);
    int i4_24 = arrow("i", "4", "24", 0);
    int i4_34 = arrow("i", "4", "34", 0);
    int a14 = arrow("i", "14", "12344", 0);
    int a24 = arrow("i", "24", "12344", 0);
    int a34 = arrow("i", "34", "12344", 0);
    int b124 = arrow("r", "12344", "124", 0);
    int b134 = arrow("r", "12344", "134", 0);
    int b234 = arrow("r", "12344", "234", 0);
    int i124 = arrow("i", "124", "1234", 0);
    int i134 = arrow("i", "134", "1234", 0);
    int i234 = arrow("i", "234", "1234", 0);
    int r1 = arrow("r", "1234", "1", 0);
    int r2 = arrow("r", "1234", "2", 0);
    int r3 = arrow("r", "1234", "3", 0);
    int d1 = arrow("delta", "1", "4", 1);
    int d2 = arrow("delta", "2", "4", 1);
    int d3 = arrow("delta", "3", "4", 1);

    using R = RingPresentation::Relation;
    // the three transformations 4 -> 12344 sum to zero
    pres.relations.push_back(
        R{{1, {i4_14, a14}}, {1, {i4_24, a24}}, {1, {i4_34, a34}}});
    // j4 -> 12344 -> (1234 minus j) vanishes
    pres.relations.push_back(R{{1, {a14, b234}}});
    pres.relations.push_back(R{{1, {a24, b134}}});
    pres.relations.push_back(R{{1, {a34, b124}}});
    // the three transformations 12344 -> 1234 sum to zero
    pres.relations.push_back(
        R{{1, {b124, i124}}, {1, {b134, i134}}, {1, {b234, i234}}});
    // relations inherited from the unrefined category
    pres.relations.push_back(R{{1, {i124, r3}}});
    pres.relations.push_back(R{{1, {i134, r2}}});
    pres.relations.push_back(R{{1, {i234, r1}}});
    pres.relations.push_back(R{{1, {d1, i4_14}}});
    pres.relations.push_back(R{{1, {d2, i4_24}}});
    pres.relations.push_back(R{{1, {d3, i4_34}}});
    pres.relations.push_back(R{{1, {r1, d1}}, {1, {r2, d2}}, {1, {r3, d3}}});
    return pres;
}

/** Formal reversal: arrows flip, i and r exchange roles, labels follow. */
inline RingPresentation reverse_presentation(const RingPresentation& pres,
                                             const std::string& name)
{
    RingPresentation rev;
    rev.name = name;
    rev.poset = pres.poset.opposite();
    rev.object_names = pres.object_names;
    rev.object_sets = pres.object_sets;
    rev.object_is_virtual = pres.object_is_virtual;
    for (const auto& a : pres.arrows)
    {
        std::string kind = a.label.substr(0, a.label.find('('));
        if (kind == "i")
            kind = "r";
        else if (kind == "r")
            kind = "i";
        rev.arrows.push_back({a.tgt, a.src, a.degree,
                              kind + "(" + pres.object_names[a.tgt] + "->" +
                                  pres.object_names[a.src] + ")"});
    }
    for (const auto& rel : pres.relations)
    {
        RingPresentation::Relation out;
        for (const auto& term : rel)
        {
            RingPresentation::PathTerm t;
            t.coeff = term.coeff;
            t.arrows.assign(term.arrows.rbegin(), term.arrows.rend());
            out.push_back(std::move(t));
        }
        rev.relations.push_back(std::move(out));
    }
    return rev;
}

}  // namespace detail

/** The category ring of the four-point space with 1,2,3 < 4. */
inline CategoryRing d4_category()
{
    RingPresentation pres = detail::d4_presentation();
    detail::PathAlgebra algebra(pres);
    detail::attach_six_terms(algebra.ring(), algebra);
    return algebra.ring();
}

/** The formally reversed ring for the opposite four-point space. */
inline CategoryRing d4op_category()
{
    RingPresentation pres =
        detail::reverse_presentation(detail::d4_presentation(), "d4op");
    detail::PathAlgebra algebra(pres);
    detail::attach_six_terms(algebra.ring(), algebra);
    return algebra.ring();
}

/**
 * The refined category with the extra representable object 12344.  The
 * six-term list contains the sequences of the underlying four-point
 * space plus the three sequences through the new object.
 */
inline CategoryRing d4_refined_category()
{
    RingPresentation pres = detail::d4_refined_presentation();
    detail::PathAlgebra algebra(pres);
    CategoryRing& ring = algebra.ring();
    detail::attach_six_terms(ring, algebra);

    const int v = ring.object_index("12344");
    const std::string k4[3] = {"14", "24", "34"};
    const std::string ij4[3] = {"234", "134", "124"};
    for (int k = 0; k < 3; ++k)
    {
        int ok4 = ring.object_index(k4[k]);
        int oij = ring.object_index(ij4[k]);
        CategoryRing::SixTermSeq st;
        st.label = "refined Y=12344 U=" + k4[k];
        st.incl = BlockElement::zeros({ok4}, {v}, 0);
        st.incl.entries[0][0] = algebra.transfer(ok4, v, 0);
        st.restr = BlockElement::zeros({v}, {oij}, 0);
        st.restr.entries[0][0] = algebra.transfer(v, oij, 0);
        st.boundary = BlockElement::zeros({oij}, {ok4}, 1);
        st.boundary.entries[0][0] = algebra.transfer(oij, ok4, 1);
        ring.six_terms.push_back(std::move(st));
    }
    return ring;
}

}  // namespace fkt
