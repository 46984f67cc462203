#include <catch2/catch_amalgamated.hpp>

#include <fkt/reports.hpp>
#include <fkt/verify_paper.hpp>

#include <fstream>
#include <sstream>

using namespace fkt;

namespace {

std::string read_file(const std::string& path)
{
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::string data_path(const std::string& name)
{
    return std::string(FKT_DATA_DIR) + "/" + name;
}

bool modules_identical(const Module& a, const Module& b)
{
    if (a.slots.size() != b.slots.size() || a.actions.size() != b.actions.size())
        return false;
    for (std::size_t o = 0; o < a.slots.size(); ++o)
        for (int p = 0; p < 2; ++p)
        {
            if (a.slots[o].part(p).gens != b.slots[o].part(p).gens)
                return false;
            if (column_hermite(a.slots[o].part(p).rels) !=
                column_hermite(b.slots[o].part(p).rels))
                return false;
        }
    for (std::size_t i = 0; i < a.actions.size(); ++i)
        if (a.actions[i].from_even != b.actions[i].from_even ||
            a.actions[i].from_odd != b.actions[i].from_odd)
            return false;
    return true;
}

}  // namespace

TEST_CASE("module files round-trip through the parser")
{
    CategoryRing ring = d4_category();
    detail::Counterexample cex = detail::build_counterexample(ring);

    SECTION("writer output parses back to the normalized module")
    {
        for (const Module* m :
             {&cex.m, &cex.p1234.module, &cex.p0.module})
        {
            std::string text = module_to_text(*m);
            Module parsed = parse_module(ring, text);
            REQUIRE(validate_module(parsed).ok);
            REQUIRE(modules_identical(parsed, normalize_module(*m)));
            REQUIRE(module_to_text(parsed) == text);  // byte-stable
        }
    }
    SECTION("torsion modules survive the round trip")
    {
        Module mk = quotient_mod_k(cex.m, 6);
        Module parsed = parse_module(ring, module_to_text(mk));
        REQUIRE(validate_module(parsed).ok);
        for (std::size_t o = 0; o < ring.num_objects(); ++o)
            REQUIRE(parsed.slot_group(static_cast<int>(o)) ==
                    mk.slot_group(static_cast<int>(o)));
    }
    SECTION("shipped data files match the computed modules")
    {
        Module m_file = parse_module(ring, read_file(data_path("M.mod")));
        REQUIRE(modules_identical(m_file, normalize_module(cex.m)));
        Module p_file = parse_module(ring, read_file(data_path("P1234.mod")));
        REQUIRE(modules_identical(p_file, normalize_module(cex.p1234.module)));
        Module mk_file = parse_module(ring, read_file(data_path("Mk2.mod")));
        REQUIRE(modules_identical(mk_file, normalize_module(quotient_mod_k(cex.m, 2))));

        CategoryRing refined = d4_refined_category();
        Module lift = parse_module(refined, read_file(data_path("Mprime.mod")));
        REQUIRE(validate_module(lift).ok);
        REQUIRE(is_exact(lift).ok);
        REQUIRE(is_free(lift).free);
    }
    SECTION("shipped poset files parse to the builtin spaces")
    {
        FinitePoset d4 = parse_poset(read_file(data_path("d4.poset")));
        REQUIRE(subset_name(d4, min_open(d4, d4.index_of("4"))) == "4");
        FinitePoset c4 = parse_poset(read_file(data_path("chain4.poset")));
        REQUIRE(open_sets(c4).size() == 5);
    }
    SECTION("malformed files are rejected")
    {
        REQUIRE_THROWS_AS(parse_module(ring, "object 124\n even: Z\n"), ParseError);
        REQUIRE_THROWS_AS(parse_module(ring, "module over chain:2\n"), SpecMismatch);
        REQUIRE_THROWS_AS(
            parse_module(ring, "module over d4\nobject 124\n  even: Z\n  odd: 0\n"
                               "action nosuch: [[1]]\n"),
            ObjectMismatch);
        // wrong shape
        REQUIRE_THROWS_AS(
            parse_module(ring, "module over d4\nobject 4\n  even: Z\n  odd: 0\n"
                               "object 14\n  even: Z\n  odd: 0\n"
                               "action i(4->14): [[1],[2]]\n"),
            SpecMismatch);
        // an even generator cannot hit an odd one through an even morphism
        REQUIRE_THROWS_AS(
            parse_module(ring, "module over d4\nobject 4\n  even: Z\n  odd: Z\n"
                               "object 14\n  even: Z\n  odd: Z\n"
                               "action i(4->14): [[1,1],[1,1]]\n"),
            SpecMismatch);
    }
}

TEST_CASE("normalized modules stay valid and isomorphic")
{
    CategoryRing ring = chain_category(3);
    detail::ModuleZoo zoo(123456);
    for (int i = 0; i < 8; ++i)
    {
        Module m = zoo.random_mixed(ring, i);
        Module n = normalize_module(m);
        REQUIRE(validate_module(n).ok);
        for (std::size_t o = 0; o < ring.num_objects(); ++o)
            REQUIRE(n.slot_group(static_cast<int>(o)) ==
                    m.slot_group(static_cast<int>(o)));
        REQUIRE(is_exact(n).ok == is_exact(m).ok);
    }
}

TEST_CASE("homtable reports")
{
    SECTION("machine block round-trips through the parser")
    {
        for (const char* name : {"chain:2", "chain:3", "d4"})
        {
            FinitePoset p = builtin_poset(name);
            std::string block = homtable_report(p, ReportFormat::machine);
            auto parsed = parse_homtable_machine(block);
            std::vector<Subset> lc = connected_lc_sets(p);
            REQUIRE(parsed.size() == lc.size() * lc.size());
            for (const Subset& y : lc)
                for (const Subset& z : lc)
                    REQUIRE(parsed.at({subset_name(p, y), subset_name(p, z)}) ==
                            hom_group(p, y, z).groups);
        }
    }
    SECTION("byte-identical across runs")
    {
        FinitePoset p = builtin_poset("d4");
        REQUIRE(homtable_report(p, ReportFormat::machine) ==
                homtable_report(p, ReportFormat::machine));
        REQUIRE(space_report(p, ReportFormat::machine) ==
                space_report(p, ReportFormat::machine));
    }
    SECTION("frozen golden block for the two-point chain")
    {
        std::string expected =
            "hom 1 1 Z[0] exact\n"
            "hom 1 2 Z[1] exact\n"
            "hom 1 12 0 exact\n"
            "hom 2 1 0 exact\n"
            "hom 2 2 Z[0] exact\n"
            "hom 2 12 Z[0] exact\n"
            "hom 12 1 Z[0] exact\n"
            "hom 12 2 0 exact\n"
            "hom 12 12 Z[0] exact\n";
        REQUIRE(homtable_report(builtin_poset("chain:2"), ReportFormat::machine) ==
                expected);
    }
}

TEST_CASE("subset parsing for the CLI")
{
    FinitePoset p = d4_poset();
    REQUIRE(subset_name(p, parse_subset(p, "2,3,4")) == "234");
    REQUIRE(subset_name(p, parse_subset(p, "234")) == "234");
    REQUIRE(subset_name(p, parse_subset(p, "4")) == "4");
    REQUIRE_THROWS_AS(parse_subset(p, "9"), UnknownElement);

    FinitePoset named = parse_poset("elements alpha beta; cover alpha<beta");
    REQUIRE(parse_subset(named, "alpha").size() == 1);
    REQUIRE(parse_subset(named, "alpha,beta").size() == 2);
}

TEST_CASE("verify-paper subset selection")
{
    PaperVerification v = run_verify_paper("example210");
    REQUIRE(v.results.size() == 1);
    REQUIRE(v.results[0].pass);
    REQUIRE(verification_report(v).rfind("PASS criterion 1", 0) == 0);
}
