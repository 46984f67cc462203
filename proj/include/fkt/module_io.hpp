#pragma once

#include "module_ops.hpp"

#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace fkt {

namespace detail {

/**
 * Coordinate change of one slot part into invariant-factor form: free
 * generators first, then torsion generators with their factors.
 */
struct PartNormalization
{
    Presentation pres;       // normalized presentation
    IntMatrix project;       // new gens x old gens (coordinates of old classes)
    IntMatrix include;       // old gens x new gens (lifts of new generators)
};

inline PartNormalization normalize_part(const Presentation& p)
{
    SNFResult snf = smith_normal_form(p.rels);
    auto uinv = solve(snf.U, IntMatrix::identity(p.gens));
    if (!uinv)
        throw std::logic_error("normalize_part: singular transform");

    std::vector<std::size_t> keep;  // free coordinates first, then torsion
    std::vector<Int> torsion;
    for (std::size_t i = snf.rank; i < p.gens; ++i)
        keep.push_back(i);
    for (std::size_t i = 0; i < snf.rank; ++i)
        if (snf.factors[i] > 1)
        {
            keep.push_back(i);
            torsion.push_back(snf.factors[i]);
        }

    PartNormalization out;
    std::size_t free_rank = p.gens - snf.rank;
    out.pres = Presentation(keep.size());
    out.pres.rels = IntMatrix(keep.size(), torsion.size());
    for (std::size_t t = 0; t < torsion.size(); ++t)
        out.pres.rels(free_rank + t, t) = torsion[t];

    out.project = IntMatrix(keep.size(), p.gens);
    for (std::size_t r = 0; r < keep.size(); ++r)
        for (std::size_t c = 0; c < p.gens; ++c)
            out.project(r, c) = snf.U(keep[r], c);
    out.include = IntMatrix(p.gens, keep.size());
    for (std::size_t r = 0; r < p.gens; ++r)
        for (std::size_t c = 0; c < keep.size(); ++c)
            out.include(r, c) = (*uinv)(r, keep[c]);
    return out;
}

}  // namespace detail

/**
 * Rewrite every slot in invariant-factor coordinates (free generators
 * first, then torsion generators); actions are transported along.
 */
inline Module normalize_module(const Module& m)
{
    std::vector<std::array<detail::PartNormalization, 2>> norms(m.slots.size());
    Module out;
    out.ring = m.ring;
    out.slots.resize(m.slots.size());
    for (std::size_t o = 0; o < m.slots.size(); ++o)
        for (int p = 0; p < 2; ++p)
        {
            norms[o][p] = detail::normalize_part(m.slots[o].part(p));
            out.slots[o].part(p) = norms[o][p].pres;
        }
    const CategoryRing& ring = *m.ring;
    for (std::size_t b = 0; b < ring.basis.size(); ++b)
    {
        const BasisMorphism& bm = ring.basis[b];
        GradedMap act = GradedMap::zero(out.slots[bm.src], out.slots[bm.tgt], bm.degree);
        for (int p = 0; p < 2; ++p)
            act.from_part(p) = norms[bm.tgt][(p + bm.degree) % 2].project *
                               m.actions[b].from_part(p) * norms[bm.src][p].include;
        out.actions.push_back(std::move(act));
    }
    return out;
}

namespace detail {

inline std::string part_to_text(const Presentation& p)
{
    // the presentation is assumed normalized: diag torsion after free gens
    std::size_t torsion = p.rels.cols();
    std::size_t free_rank = p.gens - torsion;
    std::string out;
    if (free_rank > 0)
    {
        out += "Z";
        if (free_rank > 1)
            out += "^" + std::to_string(free_rank);
    }
    for (std::size_t t = 0; t < torsion; ++t)
        out += std::string(out.empty() ? "" : " + ") + "Z/" +
               p.rels(free_rank + t, t).str();
    return out.empty() ? "0" : out;
}

inline std::string matrix_to_text(const IntMatrix& m)
{
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < m.rows(); ++i)
    {
        os << (i ? ",[" : "[");
        for (std::size_t j = 0; j < m.cols(); ++j)
            os << (j ? "," : "") << m(i, j);
        os << "]";
    }
    os << "]";
    return os.str();
}

}  // namespace detail

/**
 * Render a module in the module-spec text format.  The module is
 * normalized first so that every slot is in invariant-factor form.
 */
inline std::string module_to_text(const Module& m)
{
    Module n = normalize_module(m);
    const CategoryRing& ring = *m.ring;
    std::ostringstream os;
    os << "module over " << ring.name << "\n";
    for (std::size_t o = 0; o < ring.num_objects(); ++o)
    {
        if (n.slots[o].even.gens == 0 && n.slots[o].odd.gens == 0)
            continue;
        os << "object " << ring.object_names[o] << "\n";
        os << "  even: " << detail::part_to_text(n.slots[o].even) << "\n";
        os << "  odd: " << detail::part_to_text(n.slots[o].odd) << "\n";
    }
    for (std::size_t b = 0; b < ring.basis.size(); ++b)
    {
        const BasisMorphism& bm = ring.basis[b];
        if (static_cast<int>(b) == ring.identity_of[bm.src])
            continue;
        const GradedMap& act = n.actions[b];
        // write the combined matrix over (even, odd) generator lists
        std::size_t src_e = n.slots[bm.src].even.gens, src_o = n.slots[bm.src].odd.gens;
        std::size_t tgt_e = n.slots[bm.tgt].even.gens, tgt_o = n.slots[bm.tgt].odd.gens;
        if ((src_e + src_o) == 0 || (tgt_e + tgt_o) == 0)
            continue;
        IntMatrix full(tgt_e + tgt_o, src_e + src_o);
        for (int p = 0; p < 2; ++p)
        {
            const IntMatrix& part = act.from_part(p);
            std::size_t r0 = (p + bm.degree) % 2 == 0 ? 0 : tgt_e;
            std::size_t c0 = p == 0 ? 0 : src_e;
            for (std::size_t r = 0; r < part.rows(); ++r)
                for (std::size_t c = 0; c < part.cols(); ++c)
                    full(r0 + r, c0 + c) = part(r, c);
        }
        if (full.is_zero())
            continue;
        os << "action " << bm.label << ": " << detail::matrix_to_text(full) << "\n";
    }
    return os.str();
}

/**
 * Parse the module-spec text format.  Omitted slots are zero; omitted
 * actions are zero maps.  Throws ParseError / SpecMismatch on malformed
 * input or on slots that do not match the ring.
 */
inline Module parse_module(const CategoryRing& ring, const std::string& text)
{
    Module m;
    m.ring = &ring;
    m.slots.resize(ring.num_objects());

    auto trim = [](std::string s) {
        std::size_t a = s.find_first_not_of(" \t\r");
        std::size_t b = s.find_last_not_of(" \t\r");
        return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };

    struct PendingAction
    {
        int basis;
        IntMatrix full;
    };
    std::vector<PendingAction> pending;

    auto parse_part = [&](const std::string& body) -> Presentation {
        // grammar: 0 | Z[^r]? (+ Z/d)*
        std::string s;
        for (char c : body)
            if (!isspace(static_cast<unsigned char>(c)))
                s += c;
        if (s.empty() || s == "0")
            return Presentation(0);
        std::size_t pos = 0, free_rank = 0;
        std::vector<Int> torsion;
        while (pos < s.size())
        {
            if (s[pos] == '+')
                ++pos;
            if (s[pos] != 'Z')
                throw ParseError("bad group term in '" + body + "'");
            ++pos;
            if (pos < s.size() && s[pos] == '^')
            {
                ++pos;
                std::size_t start = pos;
                while (pos < s.size() && isdigit(static_cast<unsigned char>(s[pos])))
                    ++pos;
                free_rank += std::stoul(s.substr(start, pos - start));
            }
            else if (pos < s.size() && s[pos] == '/')
            {
                ++pos;
                std::size_t start = pos;
                while (pos < s.size() && isdigit(static_cast<unsigned char>(s[pos])))
                    ++pos;
                torsion.push_back(Int(s.substr(start, pos - start)));
            }
            else
            {
                free_rank += 1;
            }
        }
        Presentation p(free_rank + torsion.size());
        p.rels = IntMatrix(p.gens, torsion.size());
        for (std::size_t t = 0; t < torsion.size(); ++t)
            p.rels(free_rank + t, t) = torsion[t];
        return p;
    };

    int current_object = -1;
    std::istringstream in(text);
    std::string raw;
    bool saw_header = false;
    while (std::getline(in, raw))
    {
        std::string line = trim(raw.substr(0, raw.find('#')));
        if (line.empty())
            continue;
        if (line.rfind("module over ", 0) == 0)
        {
            std::string name = trim(line.substr(12));
            if (name != ring.name)
                throw SpecMismatch("module file is over '" + name + "', ring is '" +
                                   ring.name + "'");
            saw_header = true;
        }
        else if (line.rfind("object ", 0) == 0)
        {
            current_object = ring.object_index(trim(line.substr(7)));
        }
        else if (line.rfind("even:", 0) == 0 || line.rfind("odd:", 0) == 0)
        {
            if (current_object < 0)
                throw ParseError("slot line before any object");
            bool even = line[0] == 'e';
            m.slots[current_object].part(even ? 0 : 1) =
                parse_part(trim(line.substr(even ? 5 : 4)));
        }
        else if (line.rfind("action ", 0) == 0)
        {
            std::size_t colon = line.find(':');
            if (colon == std::string::npos)
                throw ParseError("malformed action line '" + line + "'");
            std::string label = trim(line.substr(7, colon - 7));
            std::string body = trim(line.substr(colon + 1));
            int b = ring.basis_index(label);
            // parse [[..],[..]]
            std::vector<std::vector<Int>> rows;
            std::size_t pos = 0;
            auto expect = [&](char c) {
                if (pos >= body.size() || body[pos] != c)
                    throw ParseError("malformed matrix in '" + line + "'");
                ++pos;
            };
            expect('[');
            while (pos < body.size() && body[pos] != ']')
            {
                if (body[pos] == ',')
                    ++pos;
                expect('[');
                std::vector<Int> row;
                while (pos < body.size() && body[pos] != ']')
                {
                    if (body[pos] == ',')
                        ++pos;
                    std::size_t start = pos;
                    while (pos < body.size() && body[pos] != ',' && body[pos] != ']')
                        ++pos;
                    std::string num = trim(body.substr(start, pos - start));
                    if (num.empty())
                        throw ParseError("empty matrix entry in '" + line + "'");
                    row.push_back(Int(num));
                }
                expect(']');
                rows.push_back(std::move(row));
            }
            expect(']');
            IntMatrix full(rows.size(), rows.empty() ? 0 : rows[0].size());
            for (std::size_t r = 0; r < rows.size(); ++r)
            {
                if (rows[r].size() != full.cols())
                    throw ParseError("ragged matrix in '" + line + "'");
                for (std::size_t c = 0; c < full.cols(); ++c)
                    full(r, c) = rows[r][c];
            }
            pending.push_back({b, std::move(full)});
        }
        else
        {
            throw ParseError("unrecognized line '" + line + "'");
        }
    }
    if (!saw_header)
        throw ParseError("missing 'module over <ring>' header");

    // default actions: identities act as the identity, everything else zero
    const CategoryRing& r = ring;
    for (std::size_t b = 0; b < r.basis.size(); ++b)
    {
        const BasisMorphism& bm = r.basis[b];
        if (static_cast<int>(b) == r.identity_of[bm.src])
            m.actions.push_back(GradedMap::identity(m.slots[bm.src]));
        else
            m.actions.push_back(
                GradedMap::zero(m.slots[bm.src], m.slots[bm.tgt], bm.degree));
    }
    for (const auto& pa : pending)
    {
        const BasisMorphism& bm = r.basis[pa.basis];
        std::size_t src_e = m.slots[bm.src].even.gens, src_o = m.slots[bm.src].odd.gens;
        std::size_t tgt_e = m.slots[bm.tgt].even.gens, tgt_o = m.slots[bm.tgt].odd.gens;
        if (pa.full.rows() != tgt_e + tgt_o || pa.full.cols() != src_e + src_o)
            throw SpecMismatch("action " + bm.label + " has shape " +
                               std::to_string(pa.full.rows()) + "x" +
                               std::to_string(pa.full.cols()) + ", expected " +
                               std::to_string(tgt_e + tgt_o) + "x" +
                               std::to_string(src_e + src_o));
        GradedMap act = GradedMap::zero(m.slots[bm.src], m.slots[bm.tgt], bm.degree);
        for (int p = 0; p < 2; ++p)
        {
            std::size_t r0 = (p + bm.degree) % 2 == 0 ? 0 : tgt_e;
            std::size_t c0 = p == 0 ? 0 : src_e;
            IntMatrix& part = act.from_part(p);
            for (std::size_t rr = 0; rr < part.rows(); ++rr)
                for (std::size_t cc = 0; cc < part.cols(); ++cc)
                    part(rr, cc) = pa.full(r0 + rr, c0 + cc);
        }
        // entries between incompatible parities must vanish
        IntMatrix rebuilt(tgt_e + tgt_o, src_e + src_o);
        for (int p = 0; p < 2; ++p)
        {
            std::size_t r0 = (p + bm.degree) % 2 == 0 ? 0 : tgt_e;
            std::size_t c0 = p == 0 ? 0 : src_e;
            const IntMatrix& part = act.from_part(p);
            for (std::size_t rr = 0; rr < part.rows(); ++rr)
                for (std::size_t cc = 0; cc < part.cols(); ++cc)
                    rebuilt(r0 + rr, c0 + cc) = part(rr, cc);
        }
        if (!(rebuilt == pa.full))
            throw SpecMismatch("action " + bm.label +
                               " mixes generators of incompatible parity");
        m.actions[pa.basis] = std::move(act);
    }
    return m;
}

}  // namespace fkt
