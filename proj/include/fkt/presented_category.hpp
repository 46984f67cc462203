#pragma once

#include "category.hpp"

#include <map>
#include <string>
#include <tuple>
#include <vector>

namespace fkt {

/**
 * A presentation of a category ring by a quiver with relations.  The
 * relations must be homogeneous in path length, and the quotient of the
 * path category by the two-sided ideal they generate must have finite
 * rank with torsion-free hom groups; both are verified while building.
 */
struct RingPresentation
{
    struct Arrow
    {
        int src, tgt, degree;
        std::string label;
    };

    /** A path stores arrow ids in application order (first applied first). */
    struct PathTerm
    {
        Int coeff;
        std::vector<int> arrows;
    };
    using Relation = std::vector<PathTerm>;

    std::string name;
    FinitePoset poset{std::vector<std::string>{}, {}};
    std::vector<std::string> object_names;
    std::vector<Subset> object_sets;
    std::vector<bool> object_is_virtual;
    std::vector<Arrow> arrows;
    std::vector<Relation> relations;
};

namespace detail {

/**
 * The path category of a quiver modulo the two-sided ideal generated by
 * homogeneous relations, computed degree by degree with exact integer
 * linear algebra.  Basis morphisms are single-path representatives.
 */
class PathAlgebra
{
public:
    explicit PathAlgebra(const RingPresentation& pres)
        : pres_(pres), ring_(pres.poset)
    {
        build();
    }

    CategoryRing& ring() { return ring_; }

    /** Reduce a path to coordinates over the chosen basis. */
    RingElement reduce_path(const std::vector<int>& arrows) const
    {
        int src = pres_.arrows[arrows.front()].src;
        int tgt = pres_.arrows[arrows.back()].tgt;
        int parity = path_parity(arrows);
        RingElement out = zero_element(src, tgt, parity);
        std::size_t d = arrows.size();
        if (d >= degrees_.size())
            return out;  // beyond the degree where the quotient vanishes
        const DegreeData& dd = degrees_[d];
        auto bit = dd.blocks.find({src, tgt, parity});
        if (bit == dd.blocks.end())
            return out;
        const BlockData& blk = bit->second;
        if (blk.chosen.empty())
            return out;
        std::size_t local = blk.local_index.at(dd.path_index.at(arrows));
        IntMatrix v(blk.paths.size(), 1);
        v(local, 0) = 1;
        auto sol = solve(blk.solver, v);
        if (!sol)
            throw std::logic_error("reduce_path: path not in span of basis and ideal");
        for (std::size_t i = 0; i < blk.chosen.size(); ++i)
            if ((*sol)(i, 0) != 0)
                out.terms.emplace_back((*sol)(i, 0), blk.chosen[i]);
        out.normalize();
        return out;
    }

    /**
     * Canonical transfer element from a to b of the given parity: the
     * reduction of the first nonzero path in (length, lexicographic)
     * order, or zero when every path vanishes.
     */
    RingElement transfer(int a, int b, int parity) const
    {
        if (a == b && parity == 0)
            return ring_.identity_element(a);
        for (std::size_t len = 1; len < degrees_.size(); ++len)
        {
            const DegreeData& dd = degrees_[len];
            auto it = dd.by_endpoints.find({a, b});
            if (it == dd.by_endpoints.end())
                continue;
            for (std::size_t p : it->second)
            {
                const std::vector<int>& path = dd.paths[p];
                if (path_parity(path) != parity)
                    continue;
                RingElement r = reduce_path(path);
                if (!r.is_zero())
                    return r;
            }
        }
        return zero_element(a, b, parity);
    }

private:
    struct BlockData
    {
        std::vector<std::size_t> paths;  // global path ids, ascending
        std::map<std::size_t, std::size_t> local_index;
        IntMatrix ideal;     // reduced column basis of the ideal in this block
        std::vector<int> chosen;  // ring basis indices of representatives
        IntMatrix solver;    // [chosen unit columns | ideal]
    };

    struct DegreeData
    {
        std::vector<std::vector<int>> paths;
        std::map<std::vector<int>, std::size_t> path_index;
        std::map<std::pair<int, int>, std::vector<std::size_t>> by_endpoints;
        std::vector<std::map<std::size_t, Int>> ideal;  // reduced generators
        std::map<std::tuple<int, int, int>, BlockData> blocks;
    };

    int path_parity(const std::vector<int>& arrows) const
    {
        int parity = 0;
        for (int a : arrows)
            parity += pres_.arrows[a].degree;
        return parity % 2;
    }

    void build()
    {
        ring_.name = pres_.name;
        ring_.object_names = pres_.object_names;
        ring_.object_sets = pres_.object_sets;
        ring_.object_is_virtual = pres_.object_is_virtual;

        ring_.identity_of.assign(pres_.object_names.size(), -1);
        for (std::size_t o = 0; o < pres_.object_names.size(); ++o)
        {
            BasisMorphism m;
            m.src = m.tgt = static_cast<int>(o);
            m.degree = 0;
            m.label = "id(" + pres_.object_names[o] + ")";
            ring_.identity_of[o] = static_cast<int>(ring_.basis.size());
            ring_.basis.push_back(m);
        }

        std::map<std::size_t, std::vector<RingPresentation::Relation>> rels_by_len;
        for (const auto& rel : pres_.relations)
        {
            if (rel.empty())
                continue;
            std::size_t len = rel.front().arrows.size();
            for (const auto& t : rel)
                if (t.arrows.size() != len)
                    throw std::logic_error("relation not homogeneous in path length");
            rels_by_len[len].push_back(rel);
        }

        degrees_.resize(1);  // slot 0 unused; identities are not paths

        for (std::size_t d = 1; d <= max_len_; ++d)
        {
            DegreeData dd;
            if (d == 1)
            {
                for (std::size_t a = 0; a < pres_.arrows.size(); ++a)
                    dd.paths.push_back({static_cast<int>(a)});
            }
            else
            {
                for (const auto& p : degrees_[d - 1].paths)
                    for (std::size_t a = 0; a < pres_.arrows.size(); ++a)
                        if (pres_.arrows[p.back()].tgt == pres_.arrows[a].src)
                        {
                            std::vector<int> q = p;
                            q.push_back(static_cast<int>(a));
                            dd.paths.push_back(std::move(q));
                        }
                std::sort(dd.paths.begin(), dd.paths.end());
            }
            if (dd.paths.size() > 200000)
                throw std::logic_error("path explosion in presented category");
            for (std::size_t i = 0; i < dd.paths.size(); ++i)
            {
                dd.path_index[dd.paths[i]] = i;
                int s = pres_.arrows[dd.paths[i].front()].src;
                int t = pres_.arrows[dd.paths[i].back()].tgt;
                dd.by_endpoints[{s, t}].push_back(i);
            }

            // raw ideal generators at this degree
            std::vector<std::map<std::size_t, Int>> raw;
            if (auto it = rels_by_len.find(d); it != rels_by_len.end())
                for (const auto& rel : it->second)
                {
                    std::map<std::size_t, Int> v;
                    for (const auto& t : rel)
                        v[dd.path_index.at(t.arrows)] += t.coeff;
                    raw.push_back(std::move(v));
                }
            if (d >= 2)
            {
                for (const auto& gen : degrees_[d - 1].ideal)
                {
                    if (gen.empty())
                        continue;
                    const auto& first = degrees_[d - 1].paths[gen.begin()->first];
                    int gen_src = pres_.arrows[first.front()].src;
                    int gen_tgt = pres_.arrows[first.back()].tgt;
                    for (std::size_t a = 0; a < pres_.arrows.size(); ++a)
                    {
                        if (pres_.arrows[a].src == gen_tgt)
                        {
                            std::map<std::size_t, Int> v;
                            for (const auto& [pid, c] : gen)
                            {
                                std::vector<int> q = degrees_[d - 1].paths[pid];
                                q.push_back(static_cast<int>(a));
                                v[dd.path_index.at(q)] += c;
                            }
                            raw.push_back(std::move(v));
                        }
                        if (pres_.arrows[a].tgt == gen_src)
                        {
                            std::map<std::size_t, Int> v;
                            for (const auto& [pid, c] : gen)
                            {
                                std::vector<int> q;
                                q.push_back(static_cast<int>(a));
                                const auto& p = degrees_[d - 1].paths[pid];
                                q.insert(q.end(), p.begin(), p.end());
                                v[dd.path_index.at(q)] += c;
                            }
                            raw.push_back(std::move(v));
                        }
                    }
                }
            }

            // split into blocks, reduce, choose single-path representatives
            std::map<std::tuple<int, int, int>, std::vector<std::size_t>> block_paths;
            for (std::size_t i = 0; i < dd.paths.size(); ++i)
            {
                int s = pres_.arrows[dd.paths[i].front()].src;
                int t = pres_.arrows[dd.paths[i].back()].tgt;
                block_paths[{s, t, path_parity(dd.paths[i])}].push_back(i);
            }
            std::map<std::tuple<int, int, int>, std::vector<std::size_t>> block_gens;
            for (std::size_t g = 0; g < raw.size(); ++g)
            {
                if (raw[g].empty())
                    continue;
                const auto& p = dd.paths[raw[g].begin()->first];
                block_gens[{pres_.arrows[p.front()].src, pres_.arrows[p.back()].tgt,
                            path_parity(p)}]
                    .push_back(g);
            }

            std::size_t total_rank = 0;
            for (auto& [key, pids] : block_paths)
            {
                BlockData blk;
                blk.paths = pids;
                for (std::size_t j = 0; j < pids.size(); ++j)
                    blk.local_index[pids[j]] = j;
                const auto& gens = block_gens[key];
                IntMatrix ideal(pids.size(), gens.size());
                for (std::size_t j = 0; j < gens.size(); ++j)
                    for (const auto& [pid, c] : raw[gens[j]])
                        ideal(blk.local_index.at(pid), j) = c;
                blk.ideal = column_hermite(ideal);

                SNFResult snf = smith_normal_form(blk.ideal);
                for (const Int& f : snf.factors)
                    if (f > 1)
                        throw std::logic_error(
                            "presented category has torsion hom group");
                std::size_t quotient_rank = pids.size() - snf.rank;
                total_rank += quotient_rank;

                IntMatrix span = blk.ideal;
                std::vector<std::size_t> chosen_local;
                for (std::size_t j = 0;
                     j < pids.size() && chosen_local.size() < quotient_rank; ++j)
                {
                    IntMatrix unit(pids.size(), 1);
                    unit(j, 0) = 1;
                    if (!lattice_contains(span, unit))
                    {
                        chosen_local.push_back(j);
                        span = IntMatrix::hconcat(span, unit);
                    }
                }
                if (chosen_local.size() != quotient_rank)
                    throw std::logic_error(
                        "presented category: no single-path basis found");
                IntMatrix chosen_cols(pids.size(), chosen_local.size());
                for (std::size_t j = 0; j < chosen_local.size(); ++j)
                {
                    chosen_cols(chosen_local[j], j) = 1;
                    BasisMorphism m;
                    m.src = std::get<0>(key);
                    m.tgt = std::get<1>(key);
                    m.degree = std::get<2>(key);
                    m.label = path_label(dd.paths[pids[chosen_local[j]]]);
                    blk.chosen.push_back(static_cast<int>(ring_.basis.size()));
                    ring_.basis.push_back(m);
                    basis_paths_.push_back(dd.paths[pids[chosen_local[j]]]);
                }
                blk.solver = IntMatrix::hconcat(chosen_cols, blk.ideal);

                // keep the reduced generators for the next degree
                for (std::size_t j = 0; j < blk.ideal.cols(); ++j)
                {
                    std::map<std::size_t, Int> v;
                    for (std::size_t i = 0; i < pids.size(); ++i)
                        if (blk.ideal(i, j) != 0)
                            v[pids[i]] = blk.ideal(i, j);
                    dd.ideal.push_back(std::move(v));
                }
                dd.blocks[key] = std::move(blk);
            }

            bool done = total_rank == 0;
            degrees_.push_back(std::move(dd));
            if (done)
                break;
        }
        if (degrees_.size() > max_len_)
            throw std::logic_error("presented category did not stabilise");

        // structure constants: identity laws, then products of path basis
        for (std::size_t f = 0; f < ring_.basis.size(); ++f)
        {
            const BasisMorphism& bf = ring_.basis[f];
            ring_.set_structure(ring_.identity_of[bf.tgt], static_cast<int>(f),
                                {{Int(1), static_cast<int>(f)}});
            if (static_cast<int>(f) != ring_.identity_of[bf.src])
                ring_.set_structure(static_cast<int>(f), ring_.identity_of[bf.src],
                                    {{Int(1), static_cast<int>(f)}});
        }
        const std::size_t ids = pres_.object_names.size();
        for (std::size_t f = ids; f < ring_.basis.size(); ++f)
            for (std::size_t g = ids; g < ring_.basis.size(); ++g)
            {
                if (ring_.basis[g].tgt != ring_.basis[f].src)
                    continue;
                std::vector<int> path = basis_paths_[g - ids];
                path.insert(path.end(), basis_paths_[f - ids].begin(),
                            basis_paths_[f - ids].end());
                RingElement prod = reduce_path(path);
                if (!prod.is_zero())
                    ring_.set_structure(static_cast<int>(f), static_cast<int>(g),
                                        prod.terms);
            }
    }

    std::string path_label(const std::vector<int>& path) const
    {
        // displayed in composition order: last-applied arrow first
        std::string out;
        for (auto it = path.rbegin(); it != path.rend(); ++it)
        {
            if (!out.empty())
                out += "*";
            out += pres_.arrows[*it].label;
        }
        return out;
    }

    const RingPresentation& pres_;
    CategoryRing ring_;
    std::vector<DegreeData> degrees_;
    std::vector<std::vector<int>> basis_paths_;  // parallel to non-identity basis
    static constexpr std::size_t max_len_ = 24;
};

/**
 * Six-term data for every (Y, U) pair of the ring's poset, with maps
 * assembled componentwise from canonical transfer elements.
 */
inline void attach_six_terms(CategoryRing& ring, const PathAlgebra& algebra)
{
    auto object_of = [&](const Subset& s) -> int {
        std::string n = subset_name(ring.poset, s);
        return ring.object_index(n);
    };
    for (const auto& [y, u] : six_term_pairs(ring.poset))
    {
        Subset w = subset_difference(y, u);
        std::vector<int> uc, yc, wc;
        for (const Subset& c : components(ring.poset, u))
            uc.push_back(object_of(c));
        for (const Subset& c : components(ring.poset, y))
            yc.push_back(object_of(c));
        for (const Subset& c : components(ring.poset, w))
            wc.push_back(object_of(c));

        CategoryRing::SixTermSeq st;
        st.label = "Y=" + subset_name(ring.poset, y) + " U=" + subset_name(ring.poset, u);
        st.incl = BlockElement::zeros(uc, yc, 0);
        st.restr = BlockElement::zeros(yc, wc, 0);
        st.boundary = BlockElement::zeros(wc, uc, 1);
        for (std::size_t i = 0; i < yc.size(); ++i)
            for (std::size_t j = 0; j < uc.size(); ++j)
                if (subset_includes(ring.object_sets[yc[i]], ring.object_sets[uc[j]]))
                    st.incl.entries[i][j] = algebra.transfer(uc[j], yc[i], 0);
        for (std::size_t i = 0; i < wc.size(); ++i)
            for (std::size_t j = 0; j < yc.size(); ++j)
                if (subset_includes(ring.object_sets[yc[j]], ring.object_sets[wc[i]]))
                    st.restr.entries[i][j] = algebra.transfer(yc[j], wc[i], 0);
        for (std::size_t i = 0; i < uc.size(); ++i)
            for (std::size_t j = 0; j < wc.size(); ++j)
                st.boundary.entries[i][j] = algebra.transfer(wc[j], uc[i], 1);
        ring.six_terms.push_back(std::move(st));
    }
}

}  // namespace detail

}  // namespace fkt
