#pragma once

#include "chain_category.hpp"
#include "d4_category.hpp"
#include "module_io.hpp"

#include <iomanip>
#include <sstream>
#include <string>

namespace fkt {

enum class ReportFormat
{
    text,
    machine
};

/** Builtin spaces: chain:n, d4, d4op; anything else is read as a file path. */
inline FinitePoset builtin_poset(const std::string& name)
{
    if (name.rfind("chain:", 0) == 0)
        return chain_poset(std::stoi(name.substr(6)));
    if (name == "d4")
        return d4_poset();
    if (name == "d4op")
        return d4_poset().opposite();
    throw ParseError("unknown builtin space '" + name + "'");
}

inline bool is_builtin_poset(const std::string& name)
{
    return name == "d4" || name == "d4op" || name.rfind("chain:", 0) == 0;
}

/** Builtin rings: chain:n, d4, d4op, d4refined. */
inline CategoryRing builtin_ring(const std::string& name)
{
    if (name.rfind("chain:", 0) == 0)
        return chain_category(std::stoi(name.substr(6)));
    if (name == "d4")
        return d4_category();
    if (name == "d4op")
        return d4op_category();
    if (name == "d4refined")
        return d4_refined_category();
    throw ParseError("unknown builtin ring '" + name + "' (expected chain:n, d4, "
                     "d4op, or d4refined)");
}

/**
 * Resolve a set of points from a comma-separated list of element names;
 * a bare word like "234" also works when every character names a point.
 */
inline Subset parse_subset(const FinitePoset& p, const std::string& text)
{
    auto has_element = [&](const std::string& n) {
        for (const auto& e : p.element_names())
            if (e == n)
                return true;
        return false;
    };
    Subset s;
    std::string cur;
    auto flush = [&]() {
        if (cur.empty())
            return;
        if (has_element(cur))
        {
            s.push_back(p.index_of(cur));
        }
        else
        {
            for (char c : cur)
                s.push_back(p.index_of(std::string(1, c)));
        }
        cur.clear();
    };
    for (char c : text)
    {
        if (c == ',' || isspace(static_cast<unsigned char>(c)))
            flush();
        else
            cur += c;
    }
    flush();
    return sorted_subset(std::move(s));
}

inline std::string space_report(const FinitePoset& p, ReportFormat format)
{
    std::ostringstream os;
    if (format == ReportFormat::machine)
    {
        os << "space";
        for (const auto& n : p.element_names())
            os << " " << n;
        os << "\n";
        for (std::size_t i = 0; i < p.size(); ++i)
            for (std::size_t j = 0; j < p.size(); ++j)
                if (i != j && p.leq(static_cast<int>(i), static_cast<int>(j)))
                    os << "leq " << p.name(static_cast<int>(i)) << " "
                       << p.name(static_cast<int>(j)) << "\n";
        for (const Subset& u : open_sets(p))
            os << "open " << subset_name(p, u) << "\n";
        for (const Subset& y : connected_lc_sets(p))
            os << "lc* " << subset_name(p, y) << "\n";
        return os.str();
    }
    os << "elements:";
    for (const auto& n : p.element_names())
        os << " " << n;
    os << "\norder (x<y means x below y; open sets are upward closed):\n";
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = 0; j < p.size(); ++j)
            if (i != j && p.leq(static_cast<int>(i), static_cast<int>(j)))
                os << "  " << p.name(static_cast<int>(i)) << " < "
                   << p.name(static_cast<int>(j)) << "\n";
    os << "open sets:";
    for (const Subset& u : open_sets(p))
        os << " " << subset_name(p, u);
    os << "\nconnected locally closed subsets:";
    for (const Subset& y : connected_lc_sets(p))
        os << " " << subset_name(p, y);
    os << "\nminimal open neighbourhoods:\n";
    for (std::size_t x = 0; x < p.size(); ++x)
        os << "  U(" << p.name(static_cast<int>(x))
           << ") = " << subset_name(p, min_open(p, static_cast<int>(x))) << "\n";
    return os.str();
}

/** The LC* x LC* table of graded hom groups, rows Y, columns Z. */
inline std::string homtable_report(const FinitePoset& p, ReportFormat format)
{
    std::vector<Subset> lc = connected_lc_sets(p);
    std::vector<std::vector<KTheoryResult>> table(lc.size());
    for (std::size_t y = 0; y < lc.size(); ++y)
        for (std::size_t z = 0; z < lc.size(); ++z)
            table[y].push_back(hom_group(p, lc[y], lc[z]));

    std::ostringstream os;
    if (format == ReportFormat::machine)
    {
        for (std::size_t y = 0; y < lc.size(); ++y)
            for (std::size_t z = 0; z < lc.size(); ++z)
                os << "hom " << subset_name(p, lc[y]) << " " << subset_name(p, lc[z])
                   << " " << to_string(table[y][z].groups) << " "
                   << (table[y][z].flag == ExactnessFlag::exact ? "exact" : "heuristic")
                   << "\n";
        return os.str();
    }

    std::vector<std::size_t> widths(lc.size() + 2, 0);
    auto cell = [&](std::size_t y, std::size_t z) {
        return to_string(table[y][z].groups);
    };
    widths[0] = 4;
    for (std::size_t y = 0; y < lc.size(); ++y)
        widths[0] = std::max(widths[0], subset_name(p, lc[y]).size());
    for (std::size_t z = 0; z < lc.size(); ++z)
    {
        widths[z + 1] = subset_name(p, lc[z]).size();
        for (std::size_t y = 0; y < lc.size(); ++y)
            widths[z + 1] = std::max(widths[z + 1], cell(y, z).size());
    }
    os << std::left << std::setw(static_cast<int>(widths[0])) << "Y\\Z";
    for (std::size_t z = 0; z < lc.size(); ++z)
        os << "  " << std::setw(static_cast<int>(widths[z + 1]))
           << subset_name(p, lc[z]);
    os << "  flag\n";
    for (std::size_t y = 0; y < lc.size(); ++y)
    {
        os << std::setw(static_cast<int>(widths[0])) << subset_name(p, lc[y]);
        bool exact = true;
        for (std::size_t z = 0; z < lc.size(); ++z)
        {
            os << "  " << std::setw(static_cast<int>(widths[z + 1])) << cell(y, z);
            exact = exact && table[y][z].flag == ExactnessFlag::exact;
        }
        os << "  " << (exact ? "exact" : "heuristic") << "\n";
    }
    return os.str();
}

/** Parse a machine homtable block back into a map; round-trip check. */
inline std::map<std::pair<std::string, std::string>, GradedAbelianGroup>
parse_homtable_machine(const std::string& text)
{
    std::map<std::pair<std::string, std::string>, GradedAbelianGroup> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line))
    {
        if (line.rfind("hom ", 0) != 0)
            continue;
        std::istringstream ls(line.substr(4));
        std::string y, z;
        ls >> y >> z;
        std::string rest;
        std::getline(ls, rest);
        std::size_t flag = rest.rfind(' ');
        out[{y, z}] = parse_graded_group(rest.substr(0, flag));
    }
    return out;
}

inline std::string complex_report(const FinitePoset& p, const Subset& y, const Subset& z,
                                  ReportFormat format)
{
    SimplicialPair pair = relative_S(p, y, z);
    std::ostringstream os;
    auto chain_name = [&](const std::vector<int>& s) {
        std::string out;
        for (std::size_t i = 0; i < s.size(); ++i)
            out += (i ? "<" : "") + p.name(s[i]);
        return out;
    };
    if (format == ReportFormat::machine)
    {
        for (const auto& s : pair.total.simplices)
            os << "total " << chain_name(s) << "\n";
        for (const auto& s : pair.sub.simplices)
            os << "sub " << chain_name(s) << "\n";
        return os.str();
    }
    os << "pair for S(" << subset_name(p, y) << "," << subset_name(p, z) << ")\n";
    os << "total:";
    for (const auto& s : pair.total.simplices)
        os << " " << chain_name(s);
    os << "\nsub:  ";
    for (const auto& s : pair.sub.simplices)
        os << " " << chain_name(s);
    KTheoryResult k = graded_k_theory(pair);
    os << "\nK-theory: " << to_string(k.groups) << " ("
       << (k.flag == ExactnessFlag::exact ? "exact" : "heuristic") << ")\n";
    return os.str();
}

inline std::string ring_report(const CategoryRing& ring, ReportFormat format)
{
    std::ostringstream os;
    if (format == ReportFormat::machine)
    {
        for (const auto& n : ring.object_names)
            os << "object " << n << "\n";
        for (const auto& b : ring.basis)
            os << "basis " << ring.object_names[b.src] << " " << ring.object_names[b.tgt]
               << " " << b.degree << " " << b.label << "\n";
        return os.str();
    }
    os << "ring " << ring.name << "\nobjects:";
    for (const auto& n : ring.object_names)
        os << " " << n;
    os << "\nbasis (" << ring.basis.size() << " morphisms):\n";
    for (const auto& b : ring.basis)
        os << "  [" << b.degree << "] " << ring.object_names[b.src] << " -> "
           << ring.object_names[b.tgt] << ": " << b.label << "\n";
    os << "six-term sequences: " << ring.six_terms.size() << "\n";
    return os.str();
}

}  // namespace fkt
