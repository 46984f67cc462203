#include <catch2/catch_amalgamated.hpp>

#include <fkt/chain_category.hpp>
#include <fkt/d4_category.hpp>

#include <map>

using namespace fkt;

namespace {

/** Independent statement of the three-case law for chain hom groups. */
std::pair<int, int> chain_law(int a1, int b1, int a2, int b2)
{
    if (a2 <= a1 && a1 <= b2 && b2 <= b1)
        return {1, 0};
    if (a2 - 1 <= b1 && a1 < a2 && b1 < b2)
        return {0, 1};
    return {0, 0};
}

std::pair<int, int> basis_ranks(const CategoryRing& ring, int y, int z)
{
    return {static_cast<int>(ring.hom_basis(y, z, 0).size()),
            static_cast<int>(ring.hom_basis(y, z, 1).size())};
}

/** Expected Table 1 for the four-point space, rows Y, columns Z. */
const std::map<std::string, std::pair<int, int>>& d4_table()
{
    static std::map<std::string, std::pair<int, int>> table = [] {
        std::map<std::string, std::pair<int, int>> t;
        const char* names[11] = {"4",   "14",  "24",  "34",  "124", "134",
                                 "234", "1234", "1",   "2",   "3"};
        // 0 = zero, 1 = Z[0], 2 = Z[1], 3 = Z[1]^2
        const int grid[11][11] = {
            // 4  14 24 34 124 134 234 1234 1  2  3
            {1, 1, 1, 1, 1, 1, 1, 1, 0, 0, 0},  // 4
            {0, 1, 0, 0, 1, 1, 0, 1, 1, 0, 0},  // 14
            {0, 0, 1, 0, 1, 0, 1, 1, 0, 1, 0},  // 24
            {0, 0, 0, 1, 0, 1, 1, 1, 0, 0, 1},  // 34
            {2, 0, 0, 2, 1, 0, 0, 1, 1, 1, 0},  // 124
            {2, 0, 2, 0, 0, 1, 0, 1, 1, 0, 1},  // 134
            {2, 2, 0, 0, 0, 0, 1, 1, 0, 1, 1},  // 234
            {3, 2, 2, 2, 0, 0, 0, 1, 1, 1, 1},  // 1234
            {2, 0, 2, 2, 0, 0, 2, 0, 1, 0, 0},  // 1
            {2, 2, 0, 2, 0, 2, 0, 0, 0, 1, 0},  // 2
            {2, 2, 2, 0, 2, 0, 0, 0, 0, 0, 1},  // 3
        };
        for (int y = 0; y < 11; ++y)
            for (int z = 0; z < 11; ++z)
            {
                std::pair<int, int> ranks = {0, 0};
                if (grid[y][z] == 1)
                    ranks = {1, 0};
                else if (grid[y][z] == 2)
                    ranks = {0, 1};
                else if (grid[y][z] == 3)
                    ranks = {0, 2};
                t[std::string(names[y]) + "|" + names[z]] = ranks;
            }
        return t;
    }();
    return table;
}

}  // namespace

TEST_CASE("chain category ranks match the three-case law and the K-theory oracle")
{
    for (int n = 2; n <= 5; ++n)
    {
        CategoryRing ring = chain_category(n);
        for (std::size_t y = 0; y < ring.num_objects(); ++y)
            for (std::size_t z = 0; z < ring.num_objects(); ++z)
            {
                int a1 = ring.object_sets[y].front() + 1;
                int b1 = ring.object_sets[y].back() + 1;
                int a2 = ring.object_sets[z].front() + 1;
                int b2 = ring.object_sets[z].back() + 1;
                REQUIRE(basis_ranks(ring, static_cast<int>(y), static_cast<int>(z)) ==
                        chain_law(a1, b1, a2, b2));
            }
    }
    // the full cross-check against cohomology sits inside validate_ring
    for (int n : {2, 3, 4})
    {
        ValidationReport report = validate_ring(chain_category(n));
        INFO(std::string(report.failures.empty() ? "ok" : report.failures.front()));
        REQUIRE(report.ok);
    }
}

TEST_CASE("chain composition rules")
{
    CategoryRing ring = chain_category(3);
    auto mu = [&](const std::string& y, const std::string& z) {
        return ring.basis_element(ring.basis_index("mu(" + y + "->" + z + ")"));
    };
    auto delta = [&](const std::string& y, const std::string& z) {
        return ring.basis_element(ring.basis_index("delta(" + y + "->" + z + ")"));
    };

    SECTION("mu mu collapses or dies by the gap rule")
    {
        CategoryRing r2 = chain_category(2);
        RingElement a = r2.basis_element(r2.basis_index("mu(2->12)"));
        RingElement b = r2.basis_element(r2.basis_index("mu(12->1)"));
        REQUIRE(compose(r2, b, a).is_zero());  // 2 >> 1
        RingElement c = compose(ring, mu("12", "1"), mu("123", "12"));
        REQUIRE(c == mu("123", "1"));
    }
    SECTION("delta factorizations exist as basis elements")
    {
        // delta([1,2] -> [2,3]) factors as delta_2 after mu (Eq. 3.2 shape)
        RingElement d = compose(ring, delta("1", "23"), mu("12", "1"));
        REQUIRE(d == delta("12", "23"));
    }
    SECTION("odd times odd vanishes")
    {
        for (const auto& f : ring.basis)
            for (const auto& g : ring.basis)
                if (f.degree == 1 && g.degree == 1 && g.tgt == f.src)
                    REQUIRE(compose(ring,
                                    ring.basis_element(ring.basis_index(f.label)),
                                    ring.basis_element(ring.basis_index(g.label)))
                                .is_zero());
    }
    SECTION("identity laws")
    {
        RingElement f = mu("123", "12");
        REQUIRE(compose(ring, ring.identity_element(f.tgt), f) == f);
        REQUIRE(compose(ring, f, ring.identity_element(f.src)) == f);
    }
    SECTION("composing mismatched objects throws")
    {
        REQUIRE_THROWS_AS(compose(ring, mu("12", "1"), mu("12", "1")), ObjectMismatch);
    }
}

TEST_CASE("d4 category matches Table 1 and the printed relations")
{
    CategoryRing ring = d4_category();
    REQUIRE(ring.num_objects() == 11);

    SECTION("hom ranks reproduce Table 1 entry for entry")
    {
        for (std::size_t y = 0; y < 11; ++y)
            for (std::size_t z = 0; z < 11; ++z)
            {
                auto expected = d4_table().at(ring.object_names[y] + "|" +
                                              ring.object_names[z]);
                INFO("(" << ring.object_names[y] << "," << ring.object_names[z] << ")");
                REQUIRE(basis_ranks(ring, static_cast<int>(y), static_cast<int>(z)) ==
                        expected);
            }
    }
    SECTION("ring validates: associativity, identities, six-term data, oracle ranks")
    {
        ValidationReport report = validate_ring(ring);
        INFO(std::string(report.failures.empty() ? "ok" : report.failures.front()));
        REQUIRE(report.ok);
    }
    SECTION("restriction kills the complementary open set")
    {
        RingElement i124 = ring.basis_element(ring.basis_index("i(124->1234)"));
        RingElement r3 = ring.basis_element(ring.basis_index("r(1234->3)"));
        REQUIRE(compose(ring, r3, i124).is_zero());
    }
    SECTION("the commuting cube")
    {
        auto e = [&](const std::string& l) { return ring.basis_element(ring.basis_index(l)); };
        REQUIRE(compose(ring, e("i(24->124)"), e("i(4->24)")) ==
                compose(ring, e("i(14->124)"), e("i(4->14)")));
        REQUIRE(compose(ring, e("i(124->1234)"), e("i(14->124)")) ==
                compose(ring, e("i(134->1234)"), e("i(14->134)")));
    }
    SECTION("anti-commuting squares")
    {
        auto e = [&](const std::string& l) { return ring.basis_element(ring.basis_index(l)); };
        // delta_2 r^2 = -delta_1 r^1 out of 124, where r is restriction from 124
        RingElement r1_124 = compose(ring, e("r(1234->1)"), e("i(124->1234)"));
        RingElement r2_124 = compose(ring, e("r(1234->2)"), e("i(124->1234)"));
        RingElement lhs = compose(ring, e("delta(2->4)"), r2_124);
        RingElement rhs = compose(ring, e("delta(1->4)"), r1_124);
        REQUIRE(!lhs.is_zero());
        REQUIRE(lhs == scale(rhs, -1));
    }
    SECTION("the three boundary paths out of 1234 sum to zero")
    {
        auto e = [&](const std::string& l) { return ring.basis_element(ring.basis_index(l)); };
        RingElement sum = compose(ring, e("delta(1->4)"), e("r(1234->1)"));
        sum = add(sum, compose(ring, e("delta(2->4)"), e("r(1234->2)")));
        sum = add(sum, compose(ring, e("delta(3->4)"), e("r(1234->3)")));
        REQUIRE(sum.is_zero());
    }
    SECTION("odd composed with odd vanishes")
    {
        for (std::size_t f = 0; f < ring.basis.size(); ++f)
            for (std::size_t g = 0; g < ring.basis.size(); ++g)
                if (ring.basis[f].degree == 1 && ring.basis[g].degree == 1 &&
                    ring.basis[g].tgt == ring.basis[f].src)
                    REQUIRE(compose(ring, ring.basis_element(static_cast<int>(f)),
                                    ring.basis_element(static_cast<int>(g)))
                                .is_zero());
    }
    SECTION("a perturbed structure constant is caught by validation")
    {
        CategoryRing bad = ring;
        bool flipped = false;
        for (const auto& [pair, terms] : ring.structure())
        {
            if (ring.basis[pair.first].degree == 1 && !terms.empty())
            {
                auto t = terms;
                t.front().first = -t.front().first;
                bad.set_structure(pair.first, pair.second, t);
                flipped = true;
                break;
            }
        }
        REQUIRE(flipped);
        REQUIRE(!validate_ring(bad).ok);
    }
}

TEST_CASE("d4 opposite ring")
{
    CategoryRing ring = d4op_category();
    ValidationReport report = validate_ring(ring);
    INFO(std::string(report.failures.empty() ? "ok" : report.failures.front()));
    REQUIRE(report.ok);

    // hom ranks are the transpose of Table 1
    CategoryRing d4 = d4_category();
    for (std::size_t y = 0; y < 11; ++y)
        for (std::size_t z = 0; z < 11; ++z)
            REQUIRE(basis_ranks(ring, static_cast<int>(y), static_cast<int>(z)) ==
                    basis_ranks(d4, static_cast<int>(z), static_cast<int>(y)));
}

TEST_CASE("refined category hom groups")
{
    CategoryRing ring = d4_refined_category();
    REQUIRE(ring.num_objects() == 12);
    const int v = ring.object_index("12344");

    SECTION("old objects still give Table 1")
    {
        for (std::size_t y = 0; y < 11; ++y)
            for (std::size_t z = 0; z < 11; ++z)
            {
                INFO("(" << ring.object_names[y] << "," << ring.object_names[z] << ")");
                REQUIRE(basis_ranks(ring, static_cast<int>(y), static_cast<int>(z)) ==
                        d4_table().at(ring.object_names[y] + "|" +
                                      ring.object_names[z]));
            }
    }
    SECTION("the column of the new object")
    {
        auto rk = [&](const char* y) { return basis_ranks(ring, ring.object_index(y), v); };
        REQUIRE(rk("4") == std::pair<int, int>{2, 0});
        REQUIRE(rk("14") == std::pair<int, int>{1, 0});
        REQUIRE(rk("24") == std::pair<int, int>{1, 0});
        REQUIRE(rk("34") == std::pair<int, int>{1, 0});
        REQUIRE(rk("124") == std::pair<int, int>{0, 0});
        REQUIRE(rk("134") == std::pair<int, int>{0, 0});
        REQUIRE(rk("234") == std::pair<int, int>{0, 0});
        REQUIRE(rk("1234") == std::pair<int, int>{0, 1});
        REQUIRE(rk("1") == std::pair<int, int>{0, 1});
        REQUIRE(rk("2") == std::pair<int, int>{0, 1});
        REQUIRE(rk("3") == std::pair<int, int>{0, 1});
        REQUIRE(basis_ranks(ring, v, v) == std::pair<int, int>{1, 0});
    }
    SECTION("the row of the new object equals the counterexample module")
    {
        auto rk = [&](const char* z) { return basis_ranks(ring, v, ring.object_index(z)); };
        REQUIRE(rk("4") == std::pair<int, int>{0, 1});
        REQUIRE(rk("14") == std::pair<int, int>{0, 0});
        REQUIRE(rk("24") == std::pair<int, int>{0, 0});
        REQUIRE(rk("34") == std::pair<int, int>{0, 0});
        REQUIRE(rk("124") == std::pair<int, int>{1, 0});
        REQUIRE(rk("134") == std::pair<int, int>{1, 0});
        REQUIRE(rk("234") == std::pair<int, int>{1, 0});
        REQUIRE(rk("1234") == std::pair<int, int>{2, 0});
        REQUIRE(rk("1") == std::pair<int, int>{1, 0});
        REQUIRE(rk("2") == std::pair<int, int>{1, 0});
        REQUIRE(rk("3") == std::pair<int, int>{1, 0});
    }
    SECTION("ring validates")
    {
        ValidationReport report = validate_ring(ring);
        INFO(std::string(report.failures.empty() ? "ok" : report.failures.front()));
        REQUIRE(report.ok);
    }
}

TEST_CASE("nil/ss split and nilpotency indices")
{
    SECTION("antichain: only identities, index 1")
    {
        RingPresentation pres;
        pres.name = "antichain:2";
        pres.poset = parse_poset("elements 1 2");
        for (const Subset& s : connected_lc_sets(pres.poset))
        {
            pres.object_names.push_back(subset_name(pres.poset, s));
            pres.object_sets.push_back(s);
            pres.object_is_virtual.push_back(false);
        }
        detail::PathAlgebra algebra(pres);
        detail::attach_six_terms(algebra.ring(), algebra);
        CategoryRing ring = algebra.ring();
        REQUIRE(validate_ring(ring).ok);
        NilSsSplit split = nil_ss_split(ring);
        REQUIRE(split.nil_basis.empty());
        REQUIRE(split.nil_index == 1);
    }
    SECTION("chain indices stay below 2n")
    {
        for (int n : {2, 3, 4})
        {
            CategoryRing ring = chain_category(n);
            NilSsSplit split = nil_ss_split(ring);
            REQUIRE(split.ss_basis.size() == ring.num_objects());
            REQUIRE(split.nil_index >= 2);
            REQUIRE(split.nil_index <= 2 * n);
        }
    }
    SECTION("d4 nil index is at least 3 and stable")
    {
        NilSsSplit split = nil_ss_split(d4_category());
        REQUIRE(split.nil_index >= 3);
        REQUIRE(split.nil_index == nil_ss_split(d4_category()).nil_index);
    }
}

TEST_CASE("the non-identity span is a two-sided ideal")
{
    for (const CategoryRing& ring : {chain_category(3), d4_category()})
    {
        std::vector<bool> is_id(ring.basis.size(), false);
        for (int b : ring.identity_of)
            is_id[b] = true;
        for (std::size_t f = 0; f < ring.basis.size(); ++f)
            for (std::size_t g = 0; g < ring.basis.size(); ++g)
            {
                if (ring.basis[g].tgt != ring.basis[f].src)
                    continue;
                if (is_id[f] && is_id[g])
                    continue;
                RingElement prod =
                    compose(ring, ring.basis_element(static_cast<int>(f)),
                            ring.basis_element(static_cast<int>(g)));
                for (const auto& [c, h] : prod.terms)
                    REQUIRE(!is_id[h]);
            }
    }
}
