// Command-line front end for the filtrated K-theory engine: finite T0
// spaces, hom tables of natural transformations, and homological algebra
// over the builtin category rings.

#include <CLI11.hpp>

#include <fkt/verify_paper.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

std::string read_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw fkt::ParseError("cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

fkt::FinitePoset load_poset(const std::string& positional, const std::string& file)
{
    if (!file.empty())
        return fkt::parse_poset(read_file(file));
    if (positional.empty())
        throw fkt::ParseError("no space given (positional name or --poset file)");
    if (fkt::is_builtin_poset(positional))
        return fkt::builtin_poset(positional);
    return fkt::parse_poset(read_file(positional));
}

fkt::ReportFormat parse_format(const std::string& f)
{
    if (f == "text")
        return fkt::ReportFormat::text;
    if (f == "machine")
        return fkt::ReportFormat::machine;
    throw fkt::ParseError("unknown format '" + f + "'");
}

constexpr const char* kPosetHelp =
    "space: builtin name (chain:n, d4, d4op) or a poset-spec file.\n"
    "Poset files list 'elements a b c' and covering relations 'cover a<b,...'\n"
    "where a<b means a lies below b in the specialisation order; open sets\n"
    "are upward closed, so the open points sit at the top.  The four-point\n"
    "counterexample space is 'elements 1 2 3 4; cover 1<4, 2<4, 3<4' with\n"
    "{4} the minimal open set.";

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"exact engine for filtrated K-theory over finite T0 spaces"};
    app.require_subcommand(1);

    std::string format = "text";
    std::string space_arg, poset_file, y_arg, z_arg, ring_arg, module_a, module_b,
        only_tag;
    std::size_t max_length = 8;
    std::size_t ext_degree = 1;

    CLI::App* space = app.add_subcommand("space", "describe a finite T0 space");
    space->add_option("space", space_arg, kPosetHelp);
    space->add_option("--poset", poset_file, "poset-spec file");
    space->add_option("--format", format, "text or machine");

    CLI::App* homtable = app.add_subcommand(
        "homtable", "the LC* x LC* table of graded natural-transformation groups");
    homtable->add_option("space", space_arg, kPosetHelp);
    homtable->add_option("--poset", poset_file, "poset-spec file");
    homtable->add_option("--format", format, "text or machine");

    CLI::App* complex = app.add_subcommand(
        "complex", "the simplicial pair carrying S(Y,Z) inside the order complex");
    complex->add_option("space", space_arg, kPosetHelp);
    complex->add_option("--poset", poset_file, "poset-spec file");
    complex->add_option("Y", y_arg, "subset, e.g. 234 or 2,3,4")->required();
    complex->add_option("Z", z_arg, "subset, e.g. 14 or 1,4")->required();
    complex->add_option("--format", format, "text or machine");

    CLI::App* ring = app.add_subcommand(
        "ring", "objects and basis morphisms of a builtin category ring");
    ring->add_option("ring", ring_arg, "chain:n, d4, d4op, or d4refined")->required();
    ring->add_option("--format", format, "text or machine");

    CLI::App* mcheck = app.add_subcommand(
        "module-check", "validate a module file and test exactness and freeness");
    mcheck->add_option("ring", ring_arg, "chain:n, d4, d4op, or d4refined")->required();
    mcheck->add_option("module", module_a, "module-spec file")->required();

    CLI::App* mresolve =
        app.add_subcommand("module-resolve", "free resolution of a module file");
    mresolve->add_option("ring", ring_arg, "chain:n, d4, d4op, or d4refined")
        ->required();
    mresolve->add_option("module", module_a, "module-spec file")->required();
    mresolve->add_option("--max-length", max_length, "resolution depth cap");

    CLI::App* mext = app.add_subcommand("module-ext", "Ext^n(A, B) for module files");
    mext->add_option("ring", ring_arg, "chain:n, d4, d4op, or d4refined")->required();
    mext->add_option("A", module_a, "module-spec file")->required();
    mext->add_option("B", module_b, "module-spec file")->required();
    mext->add_option("--degree", ext_degree, "cohomological degree n");
    mext->add_option("--max-length", max_length, "resolution depth cap");

    CLI::App* verify = app.add_subcommand(
        "verify-paper", "rerun every tabulated value and theorem-level property");
    verify->add_option("--only", only_tag, "run criteria whose tag contains this");

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (space->parsed())
        {
            std::cout << fkt::space_report(load_poset(space_arg, poset_file), parse_format(format));
            return 0;
        }
        if (homtable->parsed())
        {
            std::cout << fkt::homtable_report(load_poset(space_arg, poset_file),
                                              parse_format(format));
            return 0;
        }
        if (complex->parsed())
        {
            fkt::FinitePoset p = load_poset(space_arg, poset_file);
            fkt::Subset y = fkt::parse_subset(p, y_arg);
            fkt::Subset z = fkt::parse_subset(p, z_arg);
            std::cout << fkt::complex_report(p, y, z, parse_format(format));
            return 0;
        }
        if (ring->parsed())
        {
            std::cout << fkt::ring_report(fkt::builtin_ring(ring_arg),
                                          parse_format(format));
            return 0;
        }
        if (mcheck->parsed())
        {
            fkt::CategoryRing r = fkt::builtin_ring(ring_arg);
            fkt::Module m = fkt::parse_module(r, read_file(module_a));
            fkt::ModuleReport valid = fkt::validate_module(m);
            if (!valid.ok)
            {
                std::cout << "invalid module:\n";
                for (const auto& f : valid.failures)
                    std::cout << "  " << f << "\n";
                return 1;
            }
            std::cout << "module is valid\nslots:\n";
            for (std::size_t o = 0; o < r.num_objects(); ++o)
                std::cout << "  " << r.object_names[o] << ": "
                          << fkt::to_string(m.slot_group(static_cast<int>(o))) << "\n";
            fkt::ModuleReport exact = fkt::is_exact(m);
            std::cout << "exact: " << (exact.ok ? "yes" : "no") << "\n";
            for (const auto& f : exact.failures)
                std::cout << "  " << f << "\n";
            fkt::FreenessResult fr = fkt::is_free(m);
            std::cout << "free: " << (fr.free ? "yes" : "no");
            if (fr.free)
            {
                std::cout << " (";
                for (std::size_t g = 0; g < fr.spec.gens.size(); ++g)
                    std::cout << (g ? " + " : "") << "P_"
                              << r.object_names[fr.spec.gens[g].first] << "["
                              << fr.spec.gens[g].second << "]";
                std::cout << ")";
            }
            else
            {
                std::cout << " (" << fr.reason << ")";
            }
            std::cout << "\n";
            return 0;
        }
        if (mresolve->parsed())
        {
            fkt::CategoryRing r = fkt::builtin_ring(ring_arg);
            fkt::Module m = fkt::parse_module(r, read_file(module_a));
            fkt::ModuleReport valid = fkt::validate_module(m);
            if (!valid.ok)
            {
                std::cerr << "invalid module: " << valid.failures.front() << "\n";
                return 1;
            }
            fkt::FreeResolution res = fkt::free_resolution(m, max_length);
            for (std::size_t i = 0; i < res.stages.size(); ++i)
            {
                std::cout << "F" << i << " =";
                if (res.stages[i].spec.gens.empty())
                    std::cout << " 0";
                for (auto [obj, shift] : res.stages[i].spec.gens)
                    std::cout << " P_" << r.object_names[obj] << "[" << shift << "]";
                std::cout << "\n";
            }
            std::cout << "length " << res.length() << ", "
                      << (res.complete ? "complete" : "truncated") << "\n";
            return res.complete ? 0 : 1;
        }
        if (mext->parsed())
        {
            fkt::CategoryRing r = fkt::builtin_ring(ring_arg);
            fkt::Module a = fkt::parse_module(r, read_file(module_a));
            fkt::Module b = fkt::parse_module(r, read_file(module_b));
            for (const fkt::Module* m : {&a, &b})
            {
                fkt::ModuleReport valid = fkt::validate_module(*m);
                if (!valid.ok)
                {
                    std::cerr << "invalid module: " << valid.failures.front() << "\n";
                    return 1;
                }
            }
            fkt::GradedAbelianGroup e = fkt::ext(a, b, ext_degree, max_length);
            std::cout << "Ext^" << ext_degree << " = " << fkt::to_string(e) << "\n";
            return 0;
        }
        if (verify->parsed())
        {
            fkt::PaperVerification v = fkt::run_verify_paper(only_tag);
            std::cout << fkt::verification_report(v);
            return v.all_pass() ? 0 : 1;
        }
    }
    catch (const std::exception& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
