#pragma once

#include "int_matrix.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fkt {

struct NotWellDefined : std::runtime_error
{
    explicit NotWellDefined(const std::string& what) : std::runtime_error(what) {}
};

/**
 * A finitely generated abelian group presented as Z^gens / colspan(rels).
 * rels has `gens` rows; zero columns are allowed.
 */
struct Presentation
{
    std::size_t gens = 0;
    IntMatrix rels;  // gens x (#relations)

    Presentation() : rels(0, 0) {}
    explicit Presentation(std::size_t g) : gens(g), rels(g, 0) {}
    Presentation(std::size_t g, IntMatrix r) : gens(g), rels(std::move(r))
    {
        if (rels.rows() != gens)
            throw std::invalid_argument("Presentation: relation rows != gens");
    }

    static Presentation free_group(std::size_t rank) { return Presentation(rank); }

    static Presentation direct_sum(const Presentation& a, const Presentation& b)
    {
        Presentation c(a.gens + b.gens);
        c.rels = IntMatrix(a.gens + b.gens, a.rels.cols() + b.rels.cols());
        for (std::size_t i = 0; i < a.gens; ++i)
            for (std::size_t j = 0; j < a.rels.cols(); ++j)
                c.rels(i, j) = a.rels(i, j);
        for (std::size_t i = 0; i < b.gens; ++i)
            for (std::size_t j = 0; j < b.rels.cols(); ++j)
                c.rels(a.gens + i, a.rels.cols() + j) = b.rels(i, j);
        return c;
    }
};

/**
 * Invariant-factor normal form of a finitely generated abelian group:
 * Z^free_rank + sum of Z/d_i with 2 <= d_1 | d_2 | ... .
 */
struct AbelianGroup
{
    std::size_t free_rank = 0;
    std::vector<Int> torsion;

    bool is_zero() const { return free_rank == 0 && torsion.empty(); }
    bool is_free() const { return torsion.empty(); }

    bool operator==(const AbelianGroup& o) const
    {
        return free_rank == o.free_rank && torsion == o.torsion;
    }
    bool operator!=(const AbelianGroup& o) const { return !(*this == o); }

    static AbelianGroup free_of_rank(std::size_t r)
    {
        AbelianGroup g;
        g.free_rank = r;
        return g;
    }

    static AbelianGroup cyclic(const Int& d)
    {
        AbelianGroup g;
        if (d == 0)
            g.free_rank = 1;
        else if (d != 1 && d != -1)
            g.torsion.push_back(d < 0 ? Int(-d) : d);
        return g;
    }

    /** Canonical form of a direct sum, via SNF of the combined torsion. */
    static AbelianGroup direct_sum(const AbelianGroup& a, const AbelianGroup& b)
    {
        AbelianGroup g;
        g.free_rank = a.free_rank + b.free_rank;
        std::vector<Int> all = a.torsion;
        all.insert(all.end(), b.torsion.begin(), b.torsion.end());
        if (!all.empty())
        {
            IntMatrix diag(all.size(), all.size());
            for (std::size_t i = 0; i < all.size(); ++i)
                diag(i, i) = all[i];
            SNFResult snf = smith_normal_form(diag);
            for (const Int& d : snf.factors)
                if (d > 1)
                    g.torsion.push_back(d);
        }
        return g;
    }
};

inline AbelianGroup canonical_form(const Presentation& p)
{
    SNFResult snf = smith_normal_form(p.rels);
    AbelianGroup g;
    g.free_rank = p.gens - snf.rank;
    for (const Int& d : snf.factors)
        if (d > 1)
            g.torsion.push_back(d);
    return g;
}

/** Lattice of elements that are zero in the presented group. */
inline IntMatrix zero_lattice(const Presentation& p) { return p.rels; }

/**
 * A homomorphism between presented groups, given on generators.
 * map is tgt.gens x src.gens and must carry src relations into tgt relations.
 */
inline bool hom_well_defined(const Presentation& src, const Presentation& tgt,
                             const IntMatrix& map)
{
    if (map.rows() != tgt.gens || map.cols() != src.gens)
        return false;
    if (src.rels.cols() == 0)
        return true;
    return lattice_contains(tgt.rels, map * src.rels);
}

/**
 * Kernel of a homomorphism of presented groups.
 *
 * Returns the lattice (columns, in source generator coordinates) of all
 * x with map(x) = 0 in the target, together with a presentation of the
 * kernel group in the coordinates of that lattice basis.  The lattice
 * always contains the source relations.
 */
struct KernelData
{
    IntMatrix lattice;  // src.gens x k, a basis
    Presentation group;  // k generators
};

inline KernelData hom_kernel(const Presentation& src, const Presentation& tgt,
                             const IntMatrix& map)
{
    // {x : map x in colspan(tgt.rels)} = projection of null([map | tgt.rels])
    IntMatrix stacked = IntMatrix::hconcat(map, tgt.rels);
    IntMatrix null = nullspace(stacked);
    IntMatrix projected = null.rows_slice(0, src.gens);
    // include source relations, then reduce to a canonical basis
    IntMatrix gens = column_hermite(IntMatrix::hconcat(projected, src.rels));
    KernelData k;
    k.lattice = gens;
    // kernel group = lattice / (source relations)
    if (gens.cols() == 0)
    {
        k.group = Presentation(0);
        return k;
    }
    auto coords = solve(gens, src.rels);
    if (!coords)
        throw std::logic_error("hom_kernel: relations not inside kernel lattice");
    k.group = Presentation(gens.cols(), *coords);
    return k;
}

inline Presentation hom_cokernel(const Presentation& src, const Presentation& tgt,
                                 const IntMatrix& map)
{
    return Presentation(tgt.gens, IntMatrix::hconcat(map, tgt.rels));
}

/** Image of the map as a subgroup lattice of the target generator space. */
inline IntMatrix hom_image_lattice(const Presentation& tgt, const IntMatrix& map)
{
    return column_hermite(IntMatrix::hconcat(map, tgt.rels));
}

/** Kernel of the map as a subgroup lattice of the source generator space. */
inline IntMatrix hom_kernel_lattice(const Presentation& src, const Presentation& tgt,
                                    const IntMatrix& map)
{
    IntMatrix stacked = IntMatrix::hconcat(map, tgt.rels);
    IntMatrix null = nullspace(stacked);
    IntMatrix projected = null.rows_slice(0, src.gens);
    return column_hermite(IntMatrix::hconcat(projected, src.rels));
}

/**
 * Exactness of A --f--> B --g--> C at B: image(f) = kernel(g) as
 * sublattices of B's generator space (both contain B's relations).
 */
inline bool exact_at(const Presentation& A, const Presentation& B, const Presentation& C,
                     const IntMatrix& f, const IntMatrix& g)
{
    (void)A;
    IntMatrix image = hom_image_lattice(B, f);
    IntMatrix kernel = hom_kernel_lattice(B, C, g);
    return image == kernel;  // both are canonical Hermite bases
}

/** Cokernel in canonical form; rejects maps that break the relations. */
inline AbelianGroup cokernel_group(const Presentation& src, const Presentation& tgt,
                                   const IntMatrix& map)
{
    if (!hom_well_defined(src, tgt, map))
        throw NotWellDefined("cokernel_group: map does not respect relations");
    return canonical_form(hom_cokernel(src, tgt, map));
}

inline AbelianGroup kernel_group(const Presentation& src, const Presentation& tgt,
                                 const IntMatrix& map)
{
    if (!hom_well_defined(src, tgt, map))
        throw NotWellDefined("kernel_group: map does not respect relations");
    return canonical_form(hom_kernel(src, tgt, map).group);
}

/** Whether x (a column vector) is zero in the presented group. */
inline bool is_zero_element(const Presentation& p, const IntMatrix& x)
{
    return lattice_contains(p.rels, x);
}

/**
 * Z/2-graded finitely generated abelian group in canonical form.
 * Degree conventions follow the notation Z[0], Z[1].
 */
struct GradedAbelianGroup
{
    AbelianGroup even, odd;

    bool is_zero() const { return even.is_zero() && odd.is_zero(); }
    bool is_free() const { return even.is_free() && odd.is_free(); }

    bool operator==(const GradedAbelianGroup& o) const
    {
        return even == o.even && odd == o.odd;
    }
    bool operator!=(const GradedAbelianGroup& o) const { return !(*this == o); }

    static GradedAbelianGroup zero() { return {}; }

    static GradedAbelianGroup direct_sum(const GradedAbelianGroup& a,
                                         const GradedAbelianGroup& b)
    {
        return {AbelianGroup::direct_sum(a.even, b.even),
                AbelianGroup::direct_sum(a.odd, b.odd)};
    }

    GradedAbelianGroup shifted() const { return {odd, even}; }
};

namespace detail {

inline void render_part(std::string& out, const AbelianGroup& g, int parity)
{
    std::string tag = parity == 0 ? "[0]" : "[1]";
    if (g.free_rank > 0)
    {
        if (!out.empty())
            out += " + ";
        out += "Z";
        if (g.free_rank > 1)
            out += "^" + std::to_string(g.free_rank);
        out += tag;
    }
    for (const Int& d : g.torsion)
    {
        if (!out.empty())
            out += " + ";
        out += "Z/" + d.str() + tag;
    }
}

}  // namespace detail

/** Render as e.g. "Z^2[1] + Z/3[0]"; the zero group renders as "0". */
inline std::string to_string(const GradedAbelianGroup& g)
{
    std::string out;
    detail::render_part(out, g.even, 0);
    detail::render_part(out, g.odd, 1);
    return out.empty() ? "0" : out;
}

inline std::string to_string(const AbelianGroup& g)
{
    GradedAbelianGroup gg;
    gg.even = g;
    std::string s = to_string(gg);
    return s;
}

/** Parse the textual rendering above; inverse of to_string. */
inline GradedAbelianGroup parse_graded_group(const std::string& text)
{
    GradedAbelianGroup g;
    std::string s;
    for (char c : text)
        if (!isspace(static_cast<unsigned char>(c)))
            s += c;
    if (s == "0" || s.empty())
        return g;
    std::size_t pos = 0;
    while (pos < s.size())
    {
        if (s[pos] == '+')
            ++pos;
        if (s[pos] != 'Z')
            throw std::invalid_argument("parse_graded_group: expected Z in '" + text + "'");
        ++pos;
        bool torsion = false;
        Int d = 0;
        std::size_t rank = 1;
        if (pos < s.size() && s[pos] == '/')
        {
            torsion = true;
            ++pos;
            std::size_t start = pos;
            while (pos < s.size() && isdigit(static_cast<unsigned char>(s[pos])))
                ++pos;
            d = Int(s.substr(start, pos - start));
        }
        else if (pos < s.size() && s[pos] == '^')
        {
            ++pos;
            std::size_t start = pos;
            while (pos < s.size() && isdigit(static_cast<unsigned char>(s[pos])))
                ++pos;
            rank = std::stoul(s.substr(start, pos - start));
        }
        if (pos + 2 >= s.size() || s[pos] != '[' || s[pos + 2] != ']')
            throw std::invalid_argument("parse_graded_group: expected [parity] in '" + text + "'");
        int parity = s[pos + 1] - '0';
        pos += 3;
        AbelianGroup& part = parity == 0 ? g.even : g.odd;
        if (torsion)
            part.torsion.push_back(d);
        else
            part.free_rank += rank;
    }
    // renormalize torsion into invariant factors
    AbelianGroup e = g.even, o = g.odd;
    g.even = AbelianGroup::direct_sum(e, AbelianGroup{});
    g.odd = AbelianGroup::direct_sum(o, AbelianGroup{});
    return g;
}

}  // namespace fkt
