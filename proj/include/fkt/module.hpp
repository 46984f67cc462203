#pragma once

#include "category.hpp"

#include <array>
#include <string>
#include <vector>

namespace fkt {

struct SpecMismatch : std::runtime_error
{
    explicit SpecMismatch(const std::string& what) : std::runtime_error(what) {}
};

/** A Z/2-graded finitely presented abelian group (one module slot). */
struct GradedPresentation
{
    Presentation even, odd;

    Presentation& part(int p) { return p % 2 == 0 ? even : odd; }
    const Presentation& part(int p) const { return p % 2 == 0 ? even : odd; }

    GradedAbelianGroup canonical() const
    {
        return {canonical_form(even), canonical_form(odd)};
    }

    bool is_trivial_group() const { return canonical().is_zero(); }

    static GradedPresentation direct_sum(const GradedPresentation& a,
                                         const GradedPresentation& b)
    {
        return {Presentation::direct_sum(a.even, b.even),
                Presentation::direct_sum(a.odd, b.odd)};
    }

    GradedPresentation shifted() const { return {odd, even}; }
};

/**
 * A graded homomorphism between graded presentations: from_even maps the
 * even source generators into the (degree)-shifted target part, from_odd
 * the odd ones.
 */
struct GradedMap
{
    int degree = 0;
    IntMatrix from_even, from_odd;

    IntMatrix& from_part(int p) { return p % 2 == 0 ? from_even : from_odd; }
    const IntMatrix& from_part(int p) const { return p % 2 == 0 ? from_even : from_odd; }

    static GradedMap zero(const GradedPresentation& src, const GradedPresentation& tgt,
                          int degree)
    {
        GradedMap m;
        m.degree = degree;
        m.from_even = IntMatrix(tgt.part(degree).gens, src.even.gens);
        m.from_odd = IntMatrix(tgt.part(1 + degree).gens, src.odd.gens);
        return m;
    }

    static GradedMap identity(const GradedPresentation& s)
    {
        GradedMap m;
        m.from_even = IntMatrix::identity(s.even.gens);
        m.from_odd = IntMatrix::identity(s.odd.gens);
        return m;
    }
};

inline GradedMap compose_graded(const GradedMap& f, const GradedMap& g)
{
    GradedMap c;
    c.degree = (f.degree + g.degree) % 2;
    c.from_even = (g.degree == 0 ? f.from_even : f.from_odd) * g.from_even;
    c.from_odd = (g.degree == 0 ? f.from_odd : f.from_even) * g.from_odd;
    return c;
}

inline GradedMap add_graded(const GradedMap& a, const GradedMap& b)
{
    GradedMap c = a;
    c.from_even = a.from_even + b.from_even;
    c.from_odd = a.from_odd + b.from_odd;
    return c;
}

inline GradedMap scale_graded(const GradedMap& a, const Int& k)
{
    GradedMap c = a;
    c.from_even = a.from_even.scaled(k);
    c.from_odd = a.from_odd.scaled(k);
    return c;
}

/** Equality of graded maps into the presented target (mod relations). */
inline bool maps_agree(const GradedMap& a, const GradedMap& b,
                       const GradedPresentation& tgt)
{
    if (a.degree != b.degree)
        return false;
    for (int p = 0; p < 2; ++p)
    {
        IntMatrix diff = a.from_part(p) - b.from_part(p);
        if (!lattice_contains(tgt.part(p + a.degree).rels, diff))
            return false;
    }
    return true;
}

/**
 * A module over a category ring: one graded presentation per object and
 * one integer action per basis morphism.
 */
struct Module
{
    const CategoryRing* ring = nullptr;
    std::vector<GradedPresentation> slots;  // indexed like ring->object_names
    std::vector<GradedMap> actions;         // indexed like ring->basis

    const GradedPresentation& slot(int obj) const { return slots[obj]; }
    const GradedMap& action(int b) const { return actions[b]; }

    GradedAbelianGroup slot_group(int obj) const { return slots[obj].canonical(); }

    bool is_zero_module() const
    {
        for (const auto& s : slots)
            if (!s.is_trivial_group())
                return false;
        return true;
    }
};

/** Bilinear extension of the action to an arbitrary ring element. */
inline GradedMap element_action(const Module& m, const RingElement& e)
{
    GradedMap out = GradedMap::zero(m.slot(e.src), m.slot(e.tgt), e.degree);
    for (const auto& [c, b] : e.terms)
        out = add_graded(out, scale_graded(m.action(b), c));
    return out;
}

/** A formal direct sum of module slots, with generator offsets. */
struct SlotSum
{
    GradedPresentation pres;
    std::vector<std::size_t> even_offset, odd_offset;  // per component

    std::size_t offset(int p, std::size_t comp) const
    {
        return p % 2 == 0 ? even_offset[comp] : odd_offset[comp];
    }
};

inline SlotSum sum_slots(const Module& m, const std::vector<int>& objs)
{
    SlotSum s;
    for (int o : objs)
    {
        s.even_offset.push_back(s.pres.even.gens);
        s.odd_offset.push_back(s.pres.odd.gens);
        s.pres = GradedPresentation::direct_sum(s.pres, m.slot(o));
    }
    return s;
}

/** The action of a block element between formal direct sums of slots. */
inline GradedMap block_action(const Module& m, const BlockElement& blk,
                              const SlotSum& src, const SlotSum& tgt)
{
    GradedMap out = GradedMap::zero(src.pres, tgt.pres, blk.degree);
    for (std::size_t i = 0; i < blk.tgt_objs.size(); ++i)
        for (std::size_t j = 0; j < blk.src_objs.size(); ++j)
        {
            GradedMap e = element_action(m, blk.entries[i][j]);
            for (int p = 0; p < 2; ++p)
            {
                const IntMatrix& part = e.from_part(p);
                std::size_t r0 = tgt.offset(p + blk.degree, i);
                std::size_t c0 = src.offset(p, j);
                for (std::size_t r = 0; r < part.rows(); ++r)
                    for (std::size_t c = 0; c < part.cols(); ++c)
                        out.from_part(p)(r0 + r, c0 + c) = part(r, c);
            }
        }
    return out;
}

/** A free module together with the bookkeeping of its generators. */
struct FreeModuleSpec
{
    std::vector<std::pair<int, int>> gens;  // (object index, degree shift)

    bool operator==(const FreeModuleSpec& o) const { return gens == o.gens; }
};

struct FreeModule
{
    Module module;
    FreeModuleSpec spec;
    // labels[obj][parity] lists (spec generator, ring basis element)
    std::vector<std::array<std::vector<std::pair<int, int>>, 2>> labels;

    std::size_t rank() const { return spec.gens.size(); }

    std::size_t label_index(int obj, int parity, int s, int b) const
    {
        const auto& v = labels[obj][parity % 2];
        for (std::size_t i = 0; i < v.size(); ++i)
            if (v[i].first == s && v[i].second == b)
                return i;
        throw std::logic_error("free module generator label not found");
    }
};

/**
 * The representable module on the spec: slot Z carries the hom groups
 * out of the spec objects (with degree shifts), and basis morphisms act
 * by left composition.
 */
inline FreeModule free_module(const CategoryRing& ring, const FreeModuleSpec& spec)
{
    FreeModule f;
    f.spec = spec;
    f.module.ring = &ring;
    f.module.slots.resize(ring.num_objects());
    f.labels.resize(ring.num_objects());

    for (std::size_t z = 0; z < ring.num_objects(); ++z)
    {
        for (std::size_t s = 0; s < spec.gens.size(); ++s)
        {
            auto [y, shift] = spec.gens[s];
            for (int d = 0; d < 2; ++d)
                for (int b : ring.hom_basis(y, static_cast<int>(z), d))
                    f.labels[z][(d + shift) % 2].emplace_back(static_cast<int>(s), b);
        }
        f.module.slots[z].even = Presentation(f.labels[z][0].size());
        f.module.slots[z].odd = Presentation(f.labels[z][1].size());
    }

    f.module.actions.resize(ring.basis.size());
    for (std::size_t bi = 0; bi < ring.basis.size(); ++bi)
    {
        const BasisMorphism& bm = ring.basis[bi];
        GradedMap act = GradedMap::zero(f.module.slot(bm.src), f.module.slot(bm.tgt),
                                        bm.degree);
        for (int p = 0; p < 2; ++p)
        {
            const auto& src_labels = f.labels[bm.src][p];
            for (std::size_t col = 0; col < src_labels.size(); ++col)
            {
                auto [s, c] = src_labels[col];
                for (const auto& [coeff, h] :
                     ring.compose_basis(static_cast<int>(bi), c))
                    act.from_part(p)(
                        f.label_index(bm.tgt, p + bm.degree, s, h), col) += coeff;
            }
        }
        f.module.actions[bi] = std::move(act);
    }
    return f;
}

inline FreeModule free_module(const CategoryRing& ring, int obj, int shift = 0)
{
    return free_module(ring, FreeModuleSpec{{{obj, shift}}});
}

/**
 * A homomorphism between modules over the same ring, one graded map per
 * slot.  The source and target modules are passed to the operations
 * explicitly; a degree-1 hom is a uniform-shift family.
 */
struct ModuleHom
{
    int degree = 0;
    std::vector<GradedMap> maps;  // per object

    const GradedMap& at(int obj) const { return maps[obj]; }
};

inline ModuleHom zero_hom(const Module& src, const Module& tgt, int degree = 0)
{
    ModuleHom h;
    h.degree = degree;
    for (std::size_t o = 0; o < src.slots.size(); ++o)
        h.maps.push_back(GradedMap::zero(src.slots[o], tgt.slots[o], degree));
    return h;
}

inline ModuleHom identity_hom(const Module& m)
{
    ModuleHom h;
    for (const auto& s : m.slots)
        h.maps.push_back(GradedMap::identity(s));
    return h;
}

inline ModuleHom compose_homs(const ModuleHom& f, const ModuleHom& g)
{
    ModuleHom h;
    h.degree = (f.degree + g.degree) % 2;
    for (std::size_t o = 0; o < g.maps.size(); ++o)
        h.maps.push_back(compose_graded(f.maps[o], g.maps[o]));
    return h;
}

struct ModuleReport
{
    bool ok = true;
    std::vector<std::string> failures;

    void fail(const std::string& msg)
    {
        ok = false;
        failures.push_back(msg);
    }
};

/**
 * Check the module axioms: actions have the right shapes and respect the
 * presentations, identities act identically, and composition of actions
 * realizes the structure constants on every composable basis pair.
 */
inline ModuleReport validate_module(const Module& m)
{
    ModuleReport report;
    const CategoryRing& ring = *m.ring;
    if (m.slots.size() != ring.num_objects() || m.actions.size() != ring.basis.size())
    {
        report.fail("module shape does not match the ring");
        return report;
    }

    for (std::size_t b = 0; b < ring.basis.size(); ++b)
    {
        const BasisMorphism& bm = ring.basis[b];
        const GradedMap& act = m.actions[b];
        if (act.degree != bm.degree ||
            act.from_even.rows() != m.slot(bm.tgt).part(bm.degree).gens ||
            act.from_even.cols() != m.slot(bm.src).even.gens ||
            act.from_odd.rows() != m.slot(bm.tgt).part(1 + bm.degree).gens ||
            act.from_odd.cols() != m.slot(bm.src).odd.gens)
        {
            report.fail("action of " + bm.label + " has the wrong shape");
            continue;
        }
        for (int p = 0; p < 2; ++p)
            if (!hom_well_defined(m.slot(bm.src).part(p),
                                  m.slot(bm.tgt).part(p + bm.degree),
                                  act.from_part(p)))
                report.fail("action of " + bm.label + " does not respect relations");
    }
    if (!report.ok)
        return report;

    for (std::size_t o = 0; o < ring.num_objects(); ++o)
    {
        GradedMap id = GradedMap::identity(m.slots[o]);
        if (!maps_agree(m.actions[ring.identity_of[o]], id, m.slots[o]))
            report.fail("identity of " + ring.object_names[o] +
                        " does not act as the identity");
    }

    for (std::size_t fb = 0; fb < ring.basis.size(); ++fb)
        for (std::size_t gb = 0; gb < ring.basis.size(); ++gb)
        {
            const BasisMorphism& f = ring.basis[fb];
            const BasisMorphism& g = ring.basis[gb];
            if (g.tgt != f.src)
                continue;
            GradedMap lhs = compose_graded(m.actions[fb], m.actions[gb]);
            RingElement fg = compose(ring, ring.basis_element(static_cast<int>(fb)),
                                     ring.basis_element(static_cast<int>(gb)));
            GradedMap rhs = element_action(m, fg);
            if (!maps_agree(lhs, rhs, m.slot(f.tgt)))
                report.fail("actions violate the relation " + f.label + " after " +
                            g.label);
        }
    return report;
}

/** Componentwise validity of a module homomorphism src -> tgt. */
inline ModuleReport validate_hom(const Module& src, const Module& tgt,
                                 const ModuleHom& h)
{
    ModuleReport report;
    const CategoryRing& ring = *src.ring;
    for (std::size_t o = 0; o < ring.num_objects(); ++o)
        for (int p = 0; p < 2; ++p)
            if (!hom_well_defined(src.slots[o].part(p),
                                  tgt.slots[o].part(p + h.degree),
                                  h.maps[o].from_part(p)))
                report.fail("hom not well defined at " + ring.object_names[o]);
    if (!report.ok)
        return report;
    for (std::size_t bi = 0; bi < ring.basis.size(); ++bi)
    {
        const BasisMorphism& bm = ring.basis[bi];
        GradedMap lhs = compose_graded(h.maps[bm.tgt], src.actions[bi]);
        GradedMap rhs = compose_graded(tgt.actions[bi], h.maps[bm.src]);
        if (!maps_agree(lhs, rhs, tgt.slots[bm.tgt]))
            report.fail("hom does not commute with " + bm.label);
    }
    return report;
}

/** Direct sum of modules over the same ring. */
inline Module direct_sum(const Module& a, const Module& b)
{
    Module c;
    c.ring = a.ring;
    for (std::size_t o = 0; o < a.slots.size(); ++o)
        c.slots.push_back(GradedPresentation::direct_sum(a.slots[o], b.slots[o]));
    for (std::size_t i = 0; i < a.actions.size(); ++i)
    {
        const BasisMorphism& bm = a.ring->basis[i];
        GradedMap act = GradedMap::zero(c.slots[bm.src], c.slots[bm.tgt], bm.degree);
        for (int p = 0; p < 2; ++p)
        {
            const IntMatrix& pa = a.actions[i].from_part(p);
            const IntMatrix& pb = b.actions[i].from_part(p);
            for (std::size_t r = 0; r < pa.rows(); ++r)
                for (std::size_t col = 0; col < pa.cols(); ++col)
                    act.from_part(p)(r, col) = pa(r, col);
            std::size_t r0 = pa.rows(), c0 = pa.cols();
            for (std::size_t r = 0; r < pb.rows(); ++r)
                for (std::size_t col = 0; col < pb.cols(); ++col)
                    act.from_part(p)(r0 + r, c0 + col) = pb(r, col);
        }
        c.actions.push_back(std::move(act));
    }
    return c;
}

/** Parity shift M[1]. */
inline Module shift_module(const Module& m)
{
    Module s;
    s.ring = m.ring;
    for (const auto& slot : m.slots)
        s.slots.push_back(slot.shifted());
    for (const auto& act : m.actions)
    {
        GradedMap a;
        a.degree = act.degree;
        a.from_even = act.from_odd;
        a.from_odd = act.from_even;
        s.actions.push_back(std::move(a));
    }
    return s;
}

/** M / k*M: same generators and actions, extra relations k*e. */
inline Module quotient_mod_k(const Module& m, const Int& k)
{
    Module q = m;
    for (auto& slot : q.slots)
        for (int p = 0; p < 2; ++p)
        {
            Presentation& part = slot.part(p);
            part.rels =
                IntMatrix::hconcat(part.rels, IntMatrix::identity(part.gens).scaled(k));
        }
    return q;
}

/** Cokernel of a degree-0 homomorphism, with the induced actions. */
inline Module cokernel_module(const Module& /*src*/, const Module& tgt,
                              const ModuleHom& h)
{
    if (h.degree != 0)
        throw SpecMismatch("cokernel_module expects a degree-0 homomorphism");
    Module c;
    c.ring = tgt.ring;
    c.slots.resize(tgt.slots.size());
    for (std::size_t o = 0; o < tgt.slots.size(); ++o)
        for (int p = 0; p < 2; ++p)
        {
            const Presentation& t = tgt.slots[o].part(p);
            c.slots[o].part(p) = Presentation(
                t.gens, IntMatrix::hconcat(h.maps[o].from_part(p), t.rels));
        }
    c.actions = tgt.actions;
    return c;
}

/**
 * Kernel of a degree-0 homomorphism: slotwise kernel lattices carrying
 * the restricted actions, together with the inclusion into the source.
 */
struct KernelModule
{
    Module module;
    ModuleHom inclusion;  // module -> source of h
};

inline KernelModule kernel_of(const Module& src, const Module& tgt, const ModuleHom& h)
{
    if (h.degree != 0)
        throw SpecMismatch("kernel_of expects a degree-0 homomorphism");
    const CategoryRing& ring = *src.ring;

    std::vector<std::array<KernelData, 2>> kernels(src.slots.size());
    KernelModule out;
    out.module.ring = src.ring;
    out.module.slots.resize(src.slots.size());
    for (std::size_t o = 0; o < src.slots.size(); ++o)
        for (int p = 0; p < 2; ++p)
        {
            kernels[o][p] = hom_kernel(src.slots[o].part(p), tgt.slots[o].part(p),
                                       h.maps[o].from_part(p));
            out.module.slots[o].part(p) = kernels[o][p].group;
        }

    for (std::size_t bi = 0; bi < ring.basis.size(); ++bi)
    {
        const BasisMorphism& bm = ring.basis[bi];
        GradedMap act = GradedMap::zero(out.module.slots[bm.src],
                                        out.module.slots[bm.tgt], bm.degree);
        for (int p = 0; p < 2; ++p)
        {
            const IntMatrix& src_lat = kernels[bm.src][p].lattice;
            const IntMatrix& tgt_lat = kernels[bm.tgt][(p + bm.degree) % 2].lattice;
            IntMatrix image = src.actions[bi].from_part(p) * src_lat;
            auto restricted = solve(tgt_lat, image);
            if (!restricted)
                throw std::logic_error("kernel_of: action does not restrict");
            act.from_part(p) = *restricted;
        }
        out.module.actions.push_back(std::move(act));
    }

    out.inclusion.degree = 0;
    for (std::size_t o = 0; o < src.slots.size(); ++o)
    {
        GradedMap inc;
        inc.from_even = kernels[o][0].lattice;
        inc.from_odd = kernels[o][1].lattice;
        out.inclusion.maps.push_back(std::move(inc));
    }
    return out;
}

}  // namespace fkt
