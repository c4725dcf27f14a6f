#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "endo/io.hpp"
#include "endo/poly.hpp"
#include "endo/verify.hpp"

namespace {

using namespace endo;

constexpr int kExitPass = 0;
constexpr int kExitGate = 1;
constexpr int kExitPrecision = 2;
constexpr int kExitMalformed = 3;

CtxPtr make_ctx(long p, int n_digits) {
    try {
        return PrecisionCtx::make(p, n_digits);
    } catch (const std::invalid_argument& e) {
        throw parse_error(e.what());
    }
}

int cmd_newton(const std::string& poly, long p, int n_digits) {
    CtxPtr ctx = make_ctx(p, n_digits);
    NewtonPolygon np = newton_polygon(parse_poly(ctx, poly));
    std::cout << "segments:";
    for (const auto& s : np.segments) std::cout << " (" << s.slope.str() << ", " << s.length << ")";
    std::cout << "\n";
    return kExitPass;
}

int cmd_slope_factor(const std::string& poly, const std::string& nu_text, long p, int n_digits) {
    CtxPtr ctx = make_ctx(p, n_digits);
    HalfInt nu = parse_half_int(nu_text);
    SlopeSplit split = slope_factor(parse_poly(ctx, poly), nu);
    std::cout << "Q: " << to_string(split.q) << "\n";
    std::cout << "R: " << to_string(split.r) << "\n";
    return kExitPass;
}

int cmd_check(const std::string& path) {
    ClassicalPoint pt = point_from_json(read_file(path));
    bool all = true;

    bool regular = is_regular(pt);
    std::cout << (regular ? "PASS" : "FAIL") << " regularity\n";
    all = all && regular;

    GateResult zn = is_Zn_member(pt);
    std::cout << (zn.pass ? "PASS" : "FAIL") << " Z(n) membership";
    if (!zn.pass) std::cout << ": " << zn.reason;
    std::cout << "\n";
    all = all && zn.pass;

    if (pt.weight.strictly_decreasing()) {
        Scalar lambda = u0_eigenvalue(pt);
        bool classical = check_classical(pt.weight, lambda);
        std::cout << (classical ? "PASS" : "FAIL") << " classicality (v(lambda) = "
                  << valuation(lambda).str() << ", bound " << pt.weight.slope_bound().str()
                  << ")\n";
        all = all && classical;
    } else {
        std::cout << "FAIL classicality: weight not strictly decreasing\n";
        all = false;
    }

    if (!all) std::cerr << "point fails a gate\n";
    return all ? kExitPass : kExitGate;
}

int cmd_nice(const std::string& path) {
    auto [z1, z2] = pair_from_json(read_file(path));
    auto report = [](const char* tag, bool ok, const std::string& why) {
        std::cout << (ok ? "PASS " : "FAIL ") << tag;
        if (!ok && !why.empty()) std::cout << ": " << why;
        std::cout << "\n";
        return ok;
    };
    bool ok = true;
    ok &= report("z1 regular", is_regular(z1), "");
    ok &= report("z2 regular", is_regular(z2), "");
    GateResult g1 = is_Zn_member(z1);
    ok &= report("z1 in Z(n1)", g1.pass, g1.reason);
    GateResult g2 = is_Zn_member(z2);
    ok &= report("z2 in Z(n2)", g2.pass, g2.reason);
    GateResult nice = is_nice_pair(z1, z2);
    ok &= report("nice (k_{n1} > k'_1)", nice.pass, nice.reason);
    if (!ok) std::cerr << "pair is not nice\n";
    return ok ? kExitPass : kExitGate;
}

int cmd_transfer(const std::string& pair_path, const std::string& out_path) {
    auto [z1, z2] = pair_from_json(read_file(pair_path));
    TransferReport rep = transfer_point(z1, z2);
    write_file(out_path, point_to_json(rep.result));

    std::cout << "transferred (n1, n2) = (" << z1.n << ", " << z2.n << ") -> n = "
              << rep.result.n << "\n";
    std::cout << "gates: z1 Z(n) PASS, z2 Z(n) PASS, nice PASS, z1 classical "
              << (rep.z1_classical ? "PASS" : "FAIL") << ", z2 classical "
              << (rep.z2_classical ? "PASS" : "FAIL") << "\n";
    std::cout << "F(result):";
    for (const auto& v : rep.f_result) std::cout << " " << to_string(v);
    std::cout << "\n";
    std::cout << "refinement recovery identity: " << (rep.recovery_ok ? "PASS" : "FAIL") << "\n";
    std::cout << "wrote " << out_path << "\n";
    return kExitPass;
}

int cmd_fiber(const std::string& module_path, const std::string& u0, const std::string& nu_text) {
    FiniteModule m = module_from_json(read_file(module_path));
    HalfInt nu = parse_half_int(nu_text);
    LocalPiece piece = local_piece(m, u0, nu);
    std::cout << "local piece at nu = " << nu.str() << ": dimension "
              << piece.total_multiplicity() << ", " << piece.systems.size() << " eigensystems\n";
    int idx = 0;
    for (const auto& s : piece.systems) {
        std::cout << "  system " << ++idx << " (multiplicity " << s.multiplicity << "):";
        for (const auto& [label, v] : s.values)
            std::cout << " " << label << "=" << to_string(v);
        std::cout << "\n";
    }
    return kExitPass;
}

int cmd_verify(const std::string& suite, long trials, std::uint64_t seed) {
    std::vector<verify::SuiteResult> results;
    if (suite == "scalars") {
        results.push_back(verify::scalar_field_suite(trials, seed));
    } else if (suite == "slopes") {
        results.push_back(verify::slope_factor_suite(trials, seed));
    } else if (suite == "lemmas") {
        results.push_back(verify::lemmas_suite(trials, seed));
        results.push_back(verify::slope_submodule_suite(seed));
    } else if (suite == "identities") {
        results.push_back(verify::identity_suite(trials, seed));
    } else if (suite == "transfer") {
        results.push_back(verify::transfer_suite(trials, seed));
        results.push_back(verify::classicality_suite(trials, seed));
    } else if (suite == "uniqueness") {
        results.push_back(verify::uniqueness_suite(seed));
    } else {
        throw parse_error("unknown suite '" + suite +
                          "' (expected scalars|slopes|lemmas|identities|transfer|uniqueness)");
    }
    bool all = true;
    for (const auto& r : results) {
        std::cout << (r.pass ? "PASS" : "FAIL") << " " << r.name << " (" << r.trials
                  << " trials, " << r.seconds << " s)";
        if (!r.pass) std::cout << " -- " << r.detail;
        std::cout << "\n";
        all = all && r.pass;
    }
    if (!all) std::cerr << "verification failed\n";
    return all ? kExitPass : kExitGate;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact p-adic endoscopic transfer toolkit"};
    app.require_subcommand(1);

    std::string poly, nu_text, point_path, pair_path, out_path, module_path, u0_label, suite;
    long p = 0;
    int n_digits = 0;
    long trials = 100;
    std::uint64_t seed = 1;

    auto* newton = app.add_subcommand("newton", "Newton polygon of a polynomial");
    newton->add_option("--poly", poly, "comma-separated scalar coefficients, constant first")
        ->required();
    newton->add_option("-p", p, "prime")->required();
    newton->add_option("-N", n_digits, "precision cap in pi-adic digits")->required();

    auto* sf = app.add_subcommand("slope-factor", "slope factorization P = Q*R at nu");
    sf->add_option("--poly", poly)->required();
    sf->add_option("--nu", nu_text, "slope cut (integer or half-integer)")->required();
    sf->add_option("-p", p)->required();
    sf->add_option("-N", n_digits)->required();

    auto* check = app.add_subcommand("check", "run Z(n), regularity and classicality gates");
    check->add_option("--point", point_path, "point.json")->required();

    auto* nice = app.add_subcommand("nice", "test whether a pair of points is nice");
    nice->add_option("--pair", pair_path, "pair.json")->required();

    auto* transfer = app.add_subcommand("transfer", "endoscopic transfer of a nice pair");
    transfer->add_option("--pair", pair_path, "pair.json")->required();
    transfer->add_option("--out", out_path, "output point.json")->required();

    auto* fiber = app.add_subcommand("fiber", "local piece of a finite module");
    fiber->add_option("--module", module_path, "module.json")->required();
    fiber->add_option("--u0", u0_label, "label of the compact operator")->required();
    fiber->add_option("--nu", nu_text, "slope bound")->required();

    auto* verify_cmd = app.add_subcommand("verify", "randomized verification suites");
    verify_cmd
        ->add_option("--suite", suite, "scalars|slopes|lemmas|identities|transfer|uniqueness")
        ->required();
    verify_cmd->add_option("--trials", trials, "trial count (default 100)");
    verify_cmd->add_option("--seed", seed, "base seed; trial i uses seed+i");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitMalformed;
    }

    try {
        if (newton->parsed()) return cmd_newton(poly, p, n_digits);
        if (sf->parsed()) return cmd_slope_factor(poly, nu_text, p, n_digits);
        if (check->parsed()) return cmd_check(point_path);
        if (nice->parsed()) return cmd_nice(pair_path);
        if (transfer->parsed()) return cmd_transfer(pair_path, out_path);
        if (fiber->parsed()) return cmd_fiber(module_path, u0_label, nu_text);
        if (verify_cmd->parsed()) return cmd_verify(suite, trials, seed);
    } catch (const gate_error& e) {
        std::cerr << "gate failure: " << e.what() << "\n";
        return kExitGate;
    } catch (const module_error& e) {
        std::cerr << "module error: " << e.what() << "\n";
        return kExitGate;
    } catch (const outside_scalar_field& e) {
        std::cerr << "outside scalar field: " << e.what() << "\n";
        return kExitGate;
    } catch (const precision_error& e) {
        std::cerr << "precision error: " << e.what() << "\n";
        return kExitPrecision;
    } catch (const parse_error& e) {
        std::cerr << "malformed input: " << e.what() << "\n";
        return kExitMalformed;
    } catch (const std::invalid_argument& e) {
        std::cerr << "malformed input: " << e.what() << "\n";
        return kExitMalformed;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitMalformed;
    }
    return kExitMalformed;
}
