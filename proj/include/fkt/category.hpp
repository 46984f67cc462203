#pragma once

#include "cohomology.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace fkt {

struct ObjectMismatch : std::runtime_error
{
    explicit ObjectMismatch(const std::string& what) : std::runtime_error(what) {}
};

/**
 * Graded hom groups of natural transformations for arbitrary finite T0
 * spaces, computed as graded K-theory of the pair for S(Y,Z).  Works for
 * disconnected and empty arguments.
 */
inline KTheoryResult hom_group(const FinitePoset& p, const Subset& y, const Subset& z)
{
    if (y.empty() || z.empty())
        return KTheoryResult{};
    return graded_k_theory(relative_S(p, y, z));
}

/** One basis natural transformation of the category ring. */
struct BasisMorphism
{
    int src = -1, tgt = -1;
    int degree = 0;  // 0 or 1
    std::string label;
};

/**
 * An integer combination of basis morphisms sharing (source, target,
 * degree).  Zero is the empty combination.
 */
struct RingElement
{
    int src = -1, tgt = -1;
    int degree = 0;
    std::vector<std::pair<Int, int>> terms;  // (coefficient, basis index), sorted

    bool is_zero() const { return terms.empty(); }

    void normalize()
    {
        std::sort(terms.begin(), terms.end(),
                  [](const auto& a, const auto& b) { return a.second < b.second; });
        std::vector<std::pair<Int, int>> out;
        for (auto& t : terms)
        {
            if (!out.empty() && out.back().second == t.second)
                out.back().first += t.first;
            else
                out.push_back(t);
        }
        terms.clear();
        for (auto& t : out)
            if (t.first != 0)
                terms.push_back(t);
    }

    bool operator==(const RingElement& o) const
    {
        return src == o.src && tgt == o.tgt && degree == o.degree && terms == o.terms;
    }
};

inline RingElement zero_element(int src, int tgt, int degree)
{
    RingElement e;
    e.src = src;
    e.tgt = tgt;
    e.degree = degree;
    return e;
}

/**
 * A map between formal direct sums of objects, one RingElement per
 * (target component, source component); used for the six-term sequences
 * attached to disconnected locally closed sets.
 */
struct BlockElement
{
    std::vector<int> src_objs, tgt_objs;
    int degree = 0;
    std::vector<std::vector<RingElement>> entries;  // [tgt index][src index]

    static BlockElement zeros(std::vector<int> src, std::vector<int> tgt, int degree)
    {
        BlockElement b;
        b.src_objs = std::move(src);
        b.tgt_objs = std::move(tgt);
        b.degree = degree;
        b.entries.assign(b.tgt_objs.size(), {});
        for (std::size_t i = 0; i < b.tgt_objs.size(); ++i)
            for (std::size_t j = 0; j < b.src_objs.size(); ++j)
                b.entries[i].push_back(zero_element(b.src_objs[j], b.tgt_objs[i], degree));
        return b;
    }
};

/**
 * The Z/2-graded pre-additive category of natural transformations,
 * materialised as a finite basis with integer structure constants.
 * Immutable once built.
 */
class CategoryRing
{
public:
    std::string name;
    FinitePoset poset;
    std::vector<std::string> object_names;
    std::vector<Subset> object_sets;     // empty for virtual objects
    std::vector<bool> object_is_virtual;
    std::vector<BasisMorphism> basis;
    std::vector<int> identity_of;  // object -> identity basis index

    /** One six-term exact sequence datum: ... -> U -> Y -> W -> U[1] -> ... */
    struct SixTermSeq
    {
        std::string label;
        BlockElement incl;      // U -> Y, degree 0
        BlockElement restr;     // Y -> W, degree 0
        BlockElement boundary;  // W -> U, degree 1
    };
    std::vector<SixTermSeq> six_terms;

    explicit CategoryRing(FinitePoset p) : poset(std::move(p)) {}

    std::size_t num_objects() const { return object_names.size(); }

    int object_index(const std::string& obj_name) const
    {
        for (std::size_t i = 0; i < object_names.size(); ++i)
            if (object_names[i] == obj_name)
                return static_cast<int>(i);
        throw ObjectMismatch("unknown object '" + obj_name + "' in ring " + name);
    }

    int basis_index(const std::string& label) const
    {
        for (std::size_t i = 0; i < basis.size(); ++i)
            if (basis[i].label == label)
                return static_cast<int>(i);
        throw ObjectMismatch("unknown basis morphism '" + label + "' in ring " + name);
    }

    RingElement basis_element(int b) const
    {
        RingElement e = zero_element(basis[b].src, basis[b].tgt, basis[b].degree);
        e.terms.emplace_back(1, b);
        return e;
    }

    RingElement identity_element(int obj) const { return basis_element(identity_of[obj]); }

    /** Basis indices of the hom group (y, z) in the given degree. */
    std::vector<int> hom_basis(int y, int z, int degree) const
    {
        std::vector<int> out;
        for (std::size_t i = 0; i < basis.size(); ++i)
            if (basis[i].src == y && basis[i].tgt == z && basis[i].degree == degree)
                out.push_back(static_cast<int>(i));
        return out;
    }

    /** Structure constants for f after g (f of g); empty when zero. */
    const std::vector<std::pair<Int, int>>& compose_basis(int f, int g) const
    {
        auto it = structure_.find({f, g});
        if (it == structure_.end())
        {
            static const std::vector<std::pair<Int, int>> empty;
            return empty;
        }
        return it->second;
    }

    void set_structure(int f, int g, std::vector<std::pair<Int, int>> terms)
    {
        if (basis[g].tgt != basis[f].src)
            throw ObjectMismatch("structure constant for non-composable pair");
        if (!terms.empty())
            structure_[{f, g}] = std::move(terms);
    }

    const std::map<std::pair<int, int>, std::vector<std::pair<Int, int>>>& structure() const
    {
        return structure_;
    }

private:
    std::map<std::pair<int, int>, std::vector<std::pair<Int, int>>> structure_;
};

inline RingElement add(const RingElement& a, const RingElement& b)
{
    if (a.src != b.src || a.tgt != b.tgt || a.degree != b.degree)
        throw ObjectMismatch("adding ring elements of different type");
    RingElement c = a;
    c.terms.insert(c.terms.end(), b.terms.begin(), b.terms.end());
    c.normalize();
    return c;
}

inline RingElement scale(const RingElement& a, const Int& k)
{
    RingElement c = a;
    if (k == 0)
    {
        c.terms.clear();
        return c;
    }
    for (auto& t : c.terms)
        t.first *= k;
    return c;
}

/** Bilinear extension of the structure constants: f after g. */
inline RingElement compose(const CategoryRing& ring, const RingElement& f,
                           const RingElement& g)
{
    if (g.tgt != f.src)
        throw ObjectMismatch("compose: target of g is not source of f");
    RingElement out = zero_element(g.src, f.tgt, (f.degree + g.degree) % 2);
    for (const auto& [cf, bf] : f.terms)
        for (const auto& [cg, bg] : g.terms)
            for (const auto& [ch, bh] : ring.compose_basis(bf, bg))
                out.terms.emplace_back(cf * cg * ch, bh);
    out.normalize();
    return out;
}

inline BlockElement block_compose(const CategoryRing& ring, const BlockElement& f,
                                  const BlockElement& g)
{
    if (g.tgt_objs != f.src_objs)
        throw ObjectMismatch("block_compose: shape mismatch");
    BlockElement out =
        BlockElement::zeros(g.src_objs, f.tgt_objs, (f.degree + g.degree) % 2);
    for (std::size_t i = 0; i < f.tgt_objs.size(); ++i)
        for (std::size_t j = 0; j < g.src_objs.size(); ++j)
            for (std::size_t k = 0; k < f.src_objs.size(); ++k)
                out.entries[i][j] =
                    add(out.entries[i][j],
                        compose(ring, f.entries[i][k], g.entries[k][j]));
    return out;
}

inline bool block_is_zero(const BlockElement& b)
{
    for (const auto& row : b.entries)
        for (const auto& e : row)
            if (!e.is_zero())
                return false;
    return true;
}

/**
 * All pairs (Y, U) with Y a non-empty locally closed subset and U a
 * non-empty proper relatively open subset of Y; these index the six-term
 * sequences a module must satisfy to be exact.
 */
inline std::vector<std::pair<Subset, Subset>> six_term_pairs(const FinitePoset& p)
{
    std::vector<std::pair<Subset, Subset>> out;
    for (const Subset& y : locally_closed_sets(p))
    {
        if (y.empty())
            continue;
        for (const Subset& u : detail::all_subsets(p))
        {
            if (u.empty() || u.size() >= y.size())
                continue;
            if (!subset_includes(y, u))
                continue;
            // relatively open: up-closure of u within y stays in u
            bool rel_open = true;
            for (int a : u)
                for (int b : y)
                    if (p.leq(a, b) && !subset_contains(u, b))
                        rel_open = false;
            if (rel_open)
                out.emplace_back(y, u);
        }
    }
    return out;
}

struct ValidationReport
{
    bool ok = true;
    std::vector<std::string> failures;

    void fail(const std::string& msg)
    {
        ok = false;
        failures.push_back(msg);
    }
};

struct NilSsSplit
{
    std::vector<int> nil_basis, ss_basis;
    int nil_index = 0;  // least k with nil^k = 0
};

/**
 * Split off the semi-simple subring of identities and compute the
 * nilpotency index of the ideal spanned by everything else.
 */
inline NilSsSplit nil_ss_split(const CategoryRing& ring)
{
    NilSsSplit split;
    std::vector<bool> is_id(ring.basis.size(), false);
    for (int b : ring.identity_of)
        is_id[b] = true;
    for (std::size_t i = 0; i < ring.basis.size(); ++i)
        (is_id[i] ? split.ss_basis : split.nil_basis).push_back(static_cast<int>(i));

    // span of k-fold products, reduced blockwise to lattice bases
    std::vector<RingElement> span;
    for (int b : split.nil_basis)
        span.push_back(ring.basis_element(b));
    int k = 1;
    const int bound = 64;
    while (!span.empty() && k < bound)
    {
        std::vector<RingElement> next;
        for (int b : split.nil_basis)
            for (const RingElement& v : span)
                if (v.tgt == ring.basis[b].src)
                {
                    RingElement prod = compose(ring, ring.basis_element(b), v);
                    if (!prod.is_zero())
                        next.push_back(std::move(prod));
                }
        // reduce per (src, tgt, degree) block
        std::map<std::tuple<int, int, int>, std::vector<RingElement>> blocks;
        for (RingElement& e : next)
            blocks[{e.src, e.tgt, e.degree}].push_back(std::move(e));
        span.clear();
        for (auto& [key, elems] : blocks)
        {
            std::vector<int> basis_ids;
            for (const RingElement& e : elems)
                for (const auto& [c, b] : e.terms)
                    if (std::find(basis_ids.begin(), basis_ids.end(), b) == basis_ids.end())
                        basis_ids.push_back(b);
            std::sort(basis_ids.begin(), basis_ids.end());
            IntMatrix coords(basis_ids.size(), elems.size());
            for (std::size_t j = 0; j < elems.size(); ++j)
                for (const auto& [c, b] : elems[j].terms)
                {
                    std::size_t row = std::lower_bound(basis_ids.begin(), basis_ids.end(), b) -
                                      basis_ids.begin();
                    coords(row, j) = c;
                }
            IntMatrix reduced = column_hermite(coords);
            for (std::size_t j = 0; j < reduced.cols(); ++j)
            {
                RingElement e = zero_element(std::get<0>(key), std::get<1>(key),
                                             std::get<2>(key));
                for (std::size_t i = 0; i < basis_ids.size(); ++i)
                    if (reduced(i, j) != 0)
                        e.terms.emplace_back(reduced(i, j), basis_ids[i]);
                span.push_back(std::move(e));
            }
        }
        ++k;
    }
    split.nil_index = k;
    return split;
}

/**
 * Structural validation of a category ring: identity laws, degree
 * additivity, associativity over all composable basis triples,
 * nilpotency of the non-identity span, vanishing of the distinguished
 * six-term composites, and rank agreement of every hom group between
 * non-virtual objects with the cohomology pipeline.
 */
inline ValidationReport validate_ring(const CategoryRing& ring)
{
    ValidationReport report;

    // identity laws
    for (std::size_t f = 0; f < ring.basis.size(); ++f)
    {
        RingElement e = ring.basis_element(static_cast<int>(f));
        RingElement left = compose(ring, ring.identity_element(ring.basis[f].tgt), e);
        RingElement right = compose(ring, e, ring.identity_element(ring.basis[f].src));
        if (!(left == e))
            report.fail("identity law fails on the left of " + ring.basis[f].label);
        if (!(right == e))
            report.fail("identity law fails on the right of " + ring.basis[f].label);
    }

    // degree additivity and endpoint consistency of structure constants
    for (const auto& [pair, terms] : ring.structure())
    {
        const BasisMorphism& f = ring.basis[pair.first];
        const BasisMorphism& g = ring.basis[pair.second];
        for (const auto& [c, h] : terms)
        {
            const BasisMorphism& m = ring.basis[h];
            if (m.src != g.src || m.tgt != f.tgt ||
                m.degree != (f.degree + g.degree) % 2)
                report.fail("structure constant " + f.label + " after " + g.label +
                            " has inconsistent type");
        }
    }

    // associativity on all composable basis triples
    for (std::size_t f = 0; f < ring.basis.size(); ++f)
        for (std::size_t g = 0; g < ring.basis.size(); ++g)
        {
            if (ring.basis[g].tgt != ring.basis[f].src)
                continue;
            RingElement fg = compose(ring, ring.basis_element(static_cast<int>(f)),
                                     ring.basis_element(static_cast<int>(g)));
            for (std::size_t h = 0; h < ring.basis.size(); ++h)
            {
                if (ring.basis[h].tgt != ring.basis[g].src)
                    continue;
                RingElement gh = compose(ring, ring.basis_element(static_cast<int>(g)),
                                         ring.basis_element(static_cast<int>(h)));
                RingElement a =
                    compose(ring, fg, ring.basis_element(static_cast<int>(h)));
                RingElement b =
                    compose(ring, ring.basis_element(static_cast<int>(f)), gh);
                if (!(a == b))
                    report.fail("associativity fails on (" + ring.basis[f].label + ", " +
                                ring.basis[g].label + ", " + ring.basis[h].label + ")");
            }
        }

    // the non-identity span is nilpotent
    NilSsSplit split = nil_ss_split(ring);
    if (split.nil_index >= 64)
        report.fail("non-identity span does not look nilpotent");

    // six-term data: consecutive composites vanish
    for (const auto& st : ring.six_terms)
    {
        if (!block_is_zero(block_compose(ring, st.restr, st.incl)))
            report.fail("six-term " + st.label + ": restriction after inclusion nonzero");
        if (!block_is_zero(block_compose(ring, st.boundary, st.restr)))
            report.fail("six-term " + st.label + ": boundary after restriction nonzero");
        if (!block_is_zero(block_compose(ring, st.incl, st.boundary)))
            report.fail("six-term " + st.label + ": inclusion after boundary nonzero");
    }

    // rank agreement with the cohomology pipeline
    for (std::size_t y = 0; y < ring.num_objects(); ++y)
        for (std::size_t z = 0; z < ring.num_objects(); ++z)
        {
            if (ring.object_is_virtual[y] || ring.object_is_virtual[z])
                continue;
            KTheoryResult hom =
                hom_group(ring.poset, ring.object_sets[y], ring.object_sets[z]);
            if (!hom.groups.is_free())
            {
                report.fail("hom group (" + ring.object_names[y] + "," +
                            ring.object_names[z] + ") has unexpected torsion");
                continue;
            }
            std::size_t even = ring.hom_basis(static_cast<int>(y), static_cast<int>(z), 0).size();
            std::size_t odd = ring.hom_basis(static_cast<int>(y), static_cast<int>(z), 1).size();
            if (even != hom.groups.even.free_rank || odd != hom.groups.odd.free_rank)
                report.fail("hom rank mismatch at (" + ring.object_names[y] + "," +
                            ring.object_names[z] + "): basis " + std::to_string(even) +
                            "/" + std::to_string(odd) + " vs K-theory " +
                            std::to_string(hom.groups.even.free_rank) + "/" +
                            std::to_string(hom.groups.odd.free_rank));
        }

    return report;
}

}  // namespace fkt
