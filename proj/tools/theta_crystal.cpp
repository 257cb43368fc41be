#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "thetacrystal/parallel.hpp"
#include "thetacrystal/verify.hpp"

namespace {

struct Options {
    int degree = 2;
    int max = -1;
    int precision = 64;
    std::string cutoff = "3.5";
    bool json = false;
    std::uint64_t seed = 20240607;
    int threads = 0;
};

tc::VerificationReport dispatch(const std::string& cmd, const Options& o) {
    using namespace tc::verify;
    auto max_or = [&](int d) { return o.max < 0 ? d : o.max; };
    tc::RankParams rp;
    rp.seed = o.seed;
    if (cmd == "group") return group_report();
    if (cmd == "symplectic") return symplectic_report();
    if (cmd == "rep") return rep_report(o.degree, o.seed);
    if (cmd == "character") return character_report(o.degree);
    if (cmd == "hilbert") return hilbert_report(max_or(42));
    if (cmd == "jacobian") return jacobian_report(o.precision, parse_cutoff(o.cutoff));
    if (cmd == "rank") return rank_report(rp);
    if (cmd == "relation") return relation_report(rp);
    if (cmd == "ehrhart") return ehrhart_report(max_or(12));
    if (cmd == "toric") return toric_report(max_or(20));
    AllParams a;
    a.digits = o.precision;
    a.cutoff = parse_cutoff(o.cutoff);
    a.seed = o.seed;
    return verify_all(a);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"theta_crystal: reproduce the computations on the Klein-quartic Jacobian quotient"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    app.add_flag("--json", o.json, "emit the report as JSON");
    app.add_option("--seed", o.seed, "random seed");
    app.add_option("--threads", o.threads, "worker threads (THETA_CRYSTAL_THREADS overrides)")->check(CLI::NonNegativeNumber);

    auto even = CLI::Validator(
        [](std::string& s) -> std::string {
            int k = 0;
            try {
                std::size_t pos = 0;
                k = std::stoi(s, &pos);
                if (pos != s.size()) k = 0;
            } catch (const std::exception&) {
            }
            return k >= 2 && k % 2 == 0 ? "" : "degree must be an even integer >= 2";
        },
        "EVEN");
    struct Sub {
        const char* name;
        const char* help;
    };
    const Sub subs[] = {{"group", "root system, relations, conjugacy classes"},
                        {"symplectic", "period matrix, symplectic lifts, determinant identities, parity"},
                        {"rep", "relations, unitarity and homomorphism of the theta representation"},
                        {"character", "character table comparison and the Gauss-sum path"},
                        {"hilbert", "Hilbert function of the invariant ring"},
                        {"jacobian", "certified Jacobian determinant at the base point"},
                        {"rank", "independence of the degree-8 monomials"},
                        {"relation", "numerical null space in degree 8 with phi4"},
                        {"ehrhart", "lattice points in dilates of the fundamental domain"},
                        {"toric", "sections of the toric divisors and the fan"},
                        {"verify-all", "every check with default parameters"}};
    for (const auto& s : subs) {
        auto* sc = app.add_subcommand(s.name, s.help);
        std::string n = s.name;
        if (n == "rep" || n == "character") sc->add_option("--degree", o.degree, "even level k")->check(even);
        if (n == "hilbert" || n == "ehrhart" || n == "toric") sc->add_option("--max", o.max, "largest index")->check(CLI::NonNegativeNumber);
        if (n == "jacobian" || n == "verify-all") {
            sc->add_option("--precision", o.precision, "decimal digits")->check(CLI::Range(20, 2000));
            sc->add_option("--cutoff", o.cutoff, "truncation cutoff c (rational or decimal)");
        }
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    tc::set_default_threads(tc::resolve_threads(o.threads));
    std::string cmd = app.get_subcommands().front()->get_name();
    tc::VerificationReport r;
    try {
        r = dispatch(cmd, o);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    if (o.json)
        std::cout << tc::emit_json(r) << "\n";
    else
        tc::print_text(std::cout, r);
    return r.exit_code();
}
