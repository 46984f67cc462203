#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace fkt {

struct ParseError : std::runtime_error
{
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

struct NotAPartialOrder : std::runtime_error
{
    explicit NotAPartialOrder(const std::string& what) : std::runtime_error(what) {}
};

struct UnknownElement : std::runtime_error
{
    explicit UnknownElement(const std::string& what) : std::runtime_error(what) {}
};

/**
 * A finite T0 space encoded by its specialisation partial order.
 *
 * x <= y means cl{x} is contained in cl{y}; a subset is open iff it is
 * up-closed (x >= y in Y implies x in Y) and closed iff down-closed.
 */
class FinitePoset
{
public:
    FinitePoset(std::vector<std::string> elements, std::vector<std::pair<int, int>> covers)
        : names_(std::move(elements))
    {
        const std::size_t n = names_.size();
        {
            std::set<std::string> seen(names_.begin(), names_.end());
            if (seen.size() != n)
                throw ParseError("duplicate element identifiers");
        }
        leq_.assign(n, std::vector<bool>(n, false));
        for (std::size_t i = 0; i < n; ++i)
            leq_[i][i] = true;
        for (auto [a, b] : covers)
            leq_[a][b] = true;
        // transitive closure
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t i = 0; i < n; ++i)
                if (leq_[i][k])
                    for (std::size_t j = 0; j < n; ++j)
                        if (leq_[k][j])
                            leq_[i][j] = true;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j && leq_[i][j] && leq_[j][i])
                    throw NotAPartialOrder("cycle through '" + names_[i] + "' and '" +
                                           names_[j] + "'");
    }

    std::size_t size() const { return names_.size(); }
    const std::vector<std::string>& element_names() const { return names_; }
    const std::string& name(int x) const { return names_[x]; }

    bool leq(int x, int y) const { return leq_[x][y]; }
    bool comparable(int x, int y) const { return leq_[x][y] || leq_[y][x]; }

    int index_of(const std::string& name) const
    {
        for (std::size_t i = 0; i < names_.size(); ++i)
            if (names_[i] == name)
                return static_cast<int>(i);
        throw UnknownElement("unknown element '" + name + "'");
    }

    /** The opposite space: same points, reversed specialisation order. */
    FinitePoset opposite() const
    {
        std::vector<std::pair<int, int>> covers;
        for (std::size_t i = 0; i < size(); ++i)
            for (std::size_t j = 0; j < size(); ++j)
                if (i != j && leq_[i][j])
                    covers.emplace_back(static_cast<int>(j), static_cast<int>(i));
        return FinitePoset(names_, covers);
    }

private:
    std::vector<std::string> names_;
    std::vector<std::vector<bool>> leq_;
};

/** A subset of a poset, kept as a sorted index list. */
using Subset = std::vector<int>;

inline Subset sorted_subset(Subset s)
{
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
}

inline bool subset_contains(const Subset& s, int x)
{
    return std::binary_search(s.begin(), s.end(), x);
}

inline Subset subset_difference(const Subset& a, const Subset& b)
{
    Subset out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline Subset subset_intersection(const Subset& a, const Subset& b)
{
    Subset out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline Subset subset_union(const Subset& a, const Subset& b)
{
    Subset out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline bool subset_includes(const Subset& big, const Subset& small)
{
    return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

inline std::string subset_name(const FinitePoset& p, const Subset& s)
{
    if (s.empty())
        return "{}";
    std::string out;
    for (int x : s)
        out += p.name(x);
    return out;
}

/**
 * Parse the poset-spec text format:
 *   elements 1 2 3 4
 *   cover 1<4, 2<4, 3<4      # a<b means a is below b (b nearer the open end)
 * Statements are separated by newlines or semicolons; '#' starts a comment.
 */
inline FinitePoset parse_poset(const std::string& text)
{
    std::vector<std::string> elements;
    std::vector<std::pair<std::string, std::string>> cover_names;
    bool have_elements = false;

    std::vector<std::string> statements;
    std::string cur;
    for (std::size_t i = 0; i <= text.size(); ++i)
    {
        char c = i < text.size() ? text[i] : '\n';
        if (c == '#')
        {
            while (i < text.size() && text[i] != '\n')
                ++i;
            c = '\n';
        }
        if (c == '\n' || c == ';')
        {
            statements.push_back(cur);
            cur.clear();
        }
        else
        {
            cur += c;
        }
    }

    auto tokenize = [](const std::string& s) {
        std::vector<std::string> toks;
        std::string t;
        for (char c : s)
        {
            if (isspace(static_cast<unsigned char>(c)) || c == ',')
            {
                if (!t.empty())
                {
                    toks.push_back(t);
                    t.clear();
                }
            }
            else
            {
                t += c;
            }
        }
        if (!t.empty())
            toks.push_back(t);
        return toks;
    };

    for (const std::string& stmt : statements)
    {
        std::vector<std::string> toks = tokenize(stmt);
        if (toks.empty())
            continue;
        if (toks[0] == "elements")
        {
            elements.insert(elements.end(), toks.begin() + 1, toks.end());
            have_elements = true;
        }
        else if (toks[0] == "cover")
        {
            for (std::size_t i = 1; i < toks.size(); ++i)
            {
                const std::string& t = toks[i];
                std::size_t lt = t.find('<');
                if (lt == std::string::npos || lt == 0 || lt + 1 >= t.size())
                    throw ParseError("malformed cover '" + t + "' (expected a<b)");
                cover_names.emplace_back(t.substr(0, lt), t.substr(lt + 1));
            }
        }
        else
        {
            throw ParseError("unknown statement '" + toks[0] + "'");
        }
    }
    if (!have_elements)
        throw ParseError("missing 'elements' statement");

    auto index = [&](const std::string& name) -> int {
        for (std::size_t i = 0; i < elements.size(); ++i)
            if (elements[i] == name)
                return static_cast<int>(i);
        throw ParseError("cover mentions unknown element '" + name + "'");
    };
    std::vector<std::pair<int, int>> covers;
    for (auto& [a, b] : cover_names)
    {
        if (a == b)
            throw NotAPartialOrder("self-loop on '" + a + "'");
        covers.emplace_back(index(a), index(b));
    }
    return FinitePoset(std::move(elements), std::move(covers));
}

/** Chain 1 < 2 < ... < n, with n the open point. */
inline FinitePoset chain_poset(int n)
{
    if (n < 1)
        throw std::invalid_argument("chain_poset: n must be positive");
    std::vector<std::string> names;
    std::vector<std::pair<int, int>> covers;
    for (int i = 0; i < n; ++i)
        names.push_back(std::to_string(i + 1));
    for (int i = 0; i + 1 < n; ++i)
        covers.emplace_back(i, i + 1);
    return FinitePoset(std::move(names), std::move(covers));
}

/** The four-point space with 1,2,3 < 4; {4} is the minimal open set. */
inline FinitePoset d4_poset()
{
    return FinitePoset({"1", "2", "3", "4"}, {{0, 3}, {1, 3}, {2, 3}});
}

inline bool is_open(const FinitePoset& p, const Subset& s)
{
    for (int y : s)
        for (std::size_t x = 0; x < p.size(); ++x)
            if (p.leq(y, static_cast<int>(x)) && !subset_contains(s, static_cast<int>(x)))
                return false;
    return true;
}

inline bool is_closed(const FinitePoset& p, const Subset& s)
{
    for (int y : s)
        for (std::size_t x = 0; x < p.size(); ++x)
            if (p.leq(static_cast<int>(x), y) && !subset_contains(s, static_cast<int>(x)))
                return false;
    return true;
}

/** Locally closed = order convex: x <= y <= z with x,z in Y forces y in Y. */
inline bool is_locally_closed(const FinitePoset& p, const Subset& s)
{
    for (int x : s)
        for (int z : s)
            if (p.leq(x, z))
                for (std::size_t y = 0; y < p.size(); ++y)
                    if (p.leq(x, static_cast<int>(y)) && p.leq(static_cast<int>(y), z) &&
                        !subset_contains(s, static_cast<int>(y)))
                        return false;
    return true;
}

/** Connected in the undirected comparability graph restricted to s. */
inline bool is_connected(const FinitePoset& p, const Subset& s)
{
    if (s.empty())
        return false;
    std::vector<int> stack = {s[0]};
    std::set<int> seen = {s[0]};
    while (!stack.empty())
    {
        int x = stack.back();
        stack.pop_back();
        for (int y : s)
            if (!seen.count(y) && p.comparable(x, y))
            {
                seen.insert(y);
                stack.push_back(y);
            }
    }
    return seen.size() == s.size();
}

namespace detail {

/** Canonical subset order: cardinality first, then lexicographic members. */
inline bool canonical_less(const FinitePoset& p, const Subset& a, const Subset& b)
{
    if (a.size() != b.size())
        return a.size() < b.size();
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i])
            return p.name(a[i]) < p.name(b[i]);
    return false;
}

inline std::vector<Subset> all_subsets(const FinitePoset& p)
{
    const std::size_t n = p.size();
    if (n > 16)
        throw std::invalid_argument(
            "subset enumeration supports at most 16 points (designed scale is 8)");
    std::vector<Subset> out;
    for (std::size_t mask = 0; mask < (std::size_t(1) << n); ++mask)
    {
        Subset s;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (std::size_t(1) << i))
                s.push_back(static_cast<int>(i));
        out.push_back(std::move(s));
    }
    return out;
}

inline void canonical_sort(const FinitePoset& p, std::vector<Subset>& v)
{
    std::sort(v.begin(), v.end(),
              [&](const Subset& a, const Subset& b) { return canonical_less(p, a, b); });
}

}  // namespace detail

/** All open subsets, including the empty set and X, in canonical order. */
inline std::vector<Subset> open_sets(const FinitePoset& p)
{
    std::vector<Subset> out;
    for (Subset& s : detail::all_subsets(p))
        if (is_open(p, s))
            out.push_back(std::move(s));
    detail::canonical_sort(p, out);
    return out;
}

/** All locally closed subsets (including the empty set), canonical order. */
inline std::vector<Subset> locally_closed_sets(const FinitePoset& p)
{
    std::vector<Subset> out;
    for (Subset& s : detail::all_subsets(p))
        if (is_locally_closed(p, s))
            out.push_back(std::move(s));
    detail::canonical_sort(p, out);
    return out;
}

/** LC(X)*: non-empty connected locally closed subsets, canonical order. */
inline std::vector<Subset> connected_lc_sets(const FinitePoset& p)
{
    std::vector<Subset> out;
    for (Subset& s : detail::all_subsets(p))
        if (!s.empty() && is_locally_closed(p, s) && is_connected(p, s))
            out.push_back(std::move(s));
    detail::canonical_sort(p, out);
    return out;
}

/** Connected components of a locally closed set, as relatively open pieces. */
inline std::vector<Subset> components(const FinitePoset& p, const Subset& y)
{
    std::vector<Subset> out;
    std::set<int> left(y.begin(), y.end());
    while (!left.empty())
    {
        int seed = *left.begin();
        std::vector<int> stack = {seed};
        Subset comp = {seed};
        left.erase(seed);
        while (!stack.empty())
        {
            int x = stack.back();
            stack.pop_back();
            for (auto it = left.begin(); it != left.end();)
            {
                if (p.comparable(x, *it))
                {
                    comp.push_back(*it);
                    stack.push_back(*it);
                    it = left.erase(it);
                }
                else
                {
                    ++it;
                }
            }
        }
        out.push_back(sorted_subset(std::move(comp)));
    }
    detail::canonical_sort(p, out);
    return out;
}

struct ClosureOps
{
    Subset cl;           // closure (down-closure)
    Subset cl_boundary;  // cl \ Y
    Subset up;           // closure in X^op (up-closure)
    Subset up_boundary;  // up \ Y
};

inline Subset down_closure(const FinitePoset& p, const Subset& y)
{
    Subset out;
    for (std::size_t x = 0; x < p.size(); ++x)
        for (int z : y)
            if (p.leq(static_cast<int>(x), z))
            {
                out.push_back(static_cast<int>(x));
                break;
            }
    return sorted_subset(std::move(out));
}

inline Subset up_closure(const FinitePoset& p, const Subset& y)
{
    Subset out;
    for (std::size_t x = 0; x < p.size(); ++x)
        for (int z : y)
            if (p.leq(z, static_cast<int>(x)))
            {
                out.push_back(static_cast<int>(x));
                break;
            }
    return sorted_subset(std::move(out));
}

inline ClosureOps closure_ops(const FinitePoset& p, const Subset& y)
{
    ClosureOps ops;
    ops.cl = down_closure(p, y);
    ops.up = up_closure(p, y);
    ops.cl_boundary = subset_difference(ops.cl, y);
    ops.up_boundary = subset_difference(ops.up, y);
    return ops;
}

/** Minimal open subset containing x: the up-closure of {x}. */
inline Subset min_open(const FinitePoset& p, int x)
{
    if (x < 0 || static_cast<std::size_t>(x) >= p.size())
        throw UnknownElement("min_open: element index out of range");
    return up_closure(p, {x});
}

}  // namespace fkt
