// Command-line driver: batch verification runs plus small exploratory
// subcommands (faa term tables, coefficient recovery, the counterexample
// construction, and cube-equation fitting demos).

#include <cstdio>
#include <iostream>
#include <memory>
#include <numbers>
#include <string>

#include "CLI11.hpp"

#include "leibniz/aichinger.hpp"
#include "leibniz/counterexample.hpp"
#include "leibniz/faa_di_bruno.hpp"
#include "leibniz/rng.hpp"
#include "leibniz/suites.hpp"

namespace {

using namespace leibniz;

int cmd_verify(const std::string& config_path, bool have_seed, std::uint64_t seed,
               bool have_tol, double tol, const std::string& report,
               const std::string& format) {
    RunConfig config =
        config_path.empty() ? RunConfig::defaults() : RunConfig::parse_file(config_path);
    // flags win over the config file
    if (have_seed) config.seed = seed;
    if (have_tol) config.tolerance = tol;
    if (!report.empty()) config.report_path = report;
    if (!format.empty()) config.format = format;
    config.validate();
    return run_and_write(config);
}

int cmd_faa(int order) {
    auto terms = partitions(order);
    std::printf("(ln f)^(%d) expansion: %zu partition terms\n", order, terms.size());
    std::printf("%-20s %12s %4s %14s %16s\n", "multiplicities", "multinomial", "M",
                "sign*(M-1)!", "monomial coeff");
    for (const auto& t : terms) {
        std::string m = "(";
        for (std::size_t i = 0; i < t.multiplicities.size(); ++i)
            m += (i ? "," : "") + std::to_string(t.multiplicities[i]);
        m += ")";
        std::printf("%-20s %12lld %4d %14lld %16.6g\n", m.c_str(), t.multinomial,
                    t.block_count, t.sign_factorial, t.monomial_coefficient());
    }
    return 0;
}

int cmd_recover(const std::string& descriptor, int points, std::uint64_t seed) {
    if (descriptor == "counterexample") {
        auto psi = std::make_shared<const PsiSolution>();
        Operator comp = composition(build_d(psi));
        for (double x : sample_points(DomainSet::reals(), points, seed)) {
            try {
                recover_coefficients(comp, x);
                std::printf("%12.6f  unexpectedly recovered\n", x);
            } catch (const family_error& e) {
                std::printf("%12.6f  rejected: %s\n", x, e.what());
                return 1;
            }
        }
        return 0;
    }
    OperatorConfig oc;
    // descriptor: family:p1,p2,... e.g. characterized:1,2,3,4
    auto colon = descriptor.find(':');
    oc.family = descriptor.substr(0, colon);
    if (colon != std::string::npos) {
        std::string rest = descriptor.substr(colon + 1);
        std::vector<std::string> parts;
        std::size_t pos = 0;
        while (pos <= rest.size()) {
            auto comma = rest.find(',', pos);
            parts.push_back(rest.substr(pos, comma - pos));
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        const char* keys_characterized[] = {"c0", "c1", "c2", "d00", "k"};
        const char* keys_linear[] = {"c1", "c2"};
        const char* keys_second[] = {"c2"};
        const char** keys = oc.family == "characterized" ? keys_characterized
                            : oc.family == "linear"      ? keys_linear
                                                         : keys_second;
        std::size_t nkeys = oc.family == "characterized" ? 5 : (oc.family == "linear" ? 2 : 1);
        for (std::size_t i = 0; i < parts.size() && i < nkeys; ++i)
            oc.params[keys[i]] = parts[i];
    }
    Operator op = build_operator(oc);

    auto xs = sample_points(DomainSet::reals(), points, seed);
    std::printf("%12s %14s %14s %14s %14s %12s\n", "x", "c0", "c1", "c2", "d00", "misfit");
    for (double x : xs) {
        try {
            auto r = recover_coefficients(op, x);
            std::printf("%12.6f %14.8g %14.8g %14.8g %14.8g %12.3g\n", x, r.c0, r.c1, r.c2,
                        r.d00, r.verification_misfit);
        } catch (const family_error& e) {
            std::printf("%12.6f  rejected: %s\n", x, e.what());
            return 1;
        }
    }
    return 0;
}

int cmd_counterexample(int trials, double threshold, std::uint64_t seed) {
    auto psi = std::make_shared<const PsiSolution>();
    ScalarMap d = build_d(psi);

    SplitMix64 rng(mix_seed(seed, 1));
    double rec = 0.0;
    for (int i = 0; i < 128; ++i) {
        double u = rng.uniform(0.0, 5.0);
        rec = std::max(rec, std::abs(psi->recurrence_residual(u)));
    }
    std::printf("recurrence residual (128 pts, raw):      %.3e\n", rec);

    const FunctionSpec& f = corpus_lookup("three_plus_square");
    double pow_res = 0.0;
    for (double x : sample_points(f.domain(), 16, mix_seed(seed, 2))) {
        Residual r = residual_powers_composition(d, f, x);
        pow_res = std::max(pow_res, std::abs(r.value) / std::max(1.0, r.scale));
    }
    std::printf("diagonal identity residual (scaled):     %.3e\n", pow_res);

    try {
        ViolationTriple t = find_violation_triple(d, seed, trials, threshold);
        std::printf("trilinear violation triple:              x*=%.6f y*=%.6f z*=%.6f\n", t.x,
                    t.y, t.z);
        std::printf("trilinear residual at the triple:        %.6e\n", t.residual);
    } catch (const no_violation_error& e) {
        std::printf("no violation: %s\n", e.what());
        return 1;
    }

    SplitMix64 rng2(mix_seed(seed, 3));
    std::vector<FitSample> samples;
    for (int i = 0; i < 64; ++i) {
        double t = rng2.uniform(1.0 + 1e-4, 10.0);
        samples.emplace_back(std::vector<double>{t}, psi->phi(t));
    }
    std::printf("phi quadratic-fit misfit on (1,10):      %.6e\n",
                fit_quadratic(samples, 1).residual);
    return 0;
}

int cmd_aichinger(int dim, int nsamples, std::uint64_t seed) {
    if (dim < 1 || dim > 3) {
        std::cerr << "aichinger: --dim must be 1..3\n";
        return 2;
    }
    // induced symbol of a sample characterized operator, restricted to dim
    Operator op = dim >= 3 ? characterized(CoeffFn::constant(1), CoeffFn::constant(2),
                                           CoeffFn::constant(3), CoeffFn::constant(4), 2)
                 : dim == 2 ? characterized(CoeffFn::constant(1), CoeffFn::constant(2),
                                            CoeffFn::constant(0), CoeffFn::constant(4), 1)
                            : characterized(CoeffFn::constant(1), CoeffFn::constant(0),
                                            CoeffFn::constant(0), CoeffFn::constant(4), 0);
    SymbolG G = SymbolG::induced(op);
    SplitMix64 rng(seed);
    const double x = 0.25;

    double worst_cube = 0.0;
    for (int t = 0; t < nsamples; ++t) {
        std::vector<double> v1(static_cast<std::size_t>(dim)), v2(v1), v3(v1);
        for (int i = 0; i < dim; ++i) {
            v1[static_cast<std::size_t>(i)] = rng.uniform(-1, 1);
            v2[static_cast<std::size_t>(i)] = rng.uniform(-1, 1);
            v3[static_cast<std::size_t>(i)] = rng.uniform(-1, 1);
        }
        Residual r = cube_residual(G, x, v1, v2, v3);
        worst_cube = std::max(worst_cube, std::abs(r.value) / std::max(1.0, r.scale));
    }

    std::vector<FitSample> samples;
    for (int s = 0; s < std::max(nsamples, 3 * (1 + dim + dim * (dim + 1) / 2)); ++s) {
        std::vector<double> v(static_cast<std::size_t>(dim));
        for (auto& vi : v) vi = rng.uniform(-1, 1);
        double value = G(x, v);
        samples.emplace_back(std::move(v), value);
    }
    QuadraticModel model = fit_quadratic(samples, dim);

    std::printf("operator: %s\n", op.name().c_str());
    std::printf("cube-equation residual (scaled, %d triples): %.3e\n", nsamples, worst_cube);
    std::printf("quadratic fit misfit: %.3e   condition: %.3g\n", model.residual,
                model.condition);
    std::printf("fit constant: %.6g\n", model.constant);
    for (int i = 0; i < dim; ++i)
        std::printf("fit linear[%d] = %.6g\n", i, model.linear[static_cast<std::size_t>(i)]);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j <= i; ++j)
            std::printf("fit quad[%d][%d] = %.6g\n", i, j, model.coeff(i, j));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Verification of Leibniz-type operator identities via jet arithmetic"};
    app.require_subcommand(1);

    // verify
    auto* verify = app.add_subcommand("verify", "run configured verification suites");
    std::string config_path, report_path, format;
    std::uint64_t seed = 42;
    double tol = 1e-9;
    auto* seed_opt = verify->add_option("--seed", seed, "override the config seed");
    auto* tol_opt = verify->add_option("--tol", tol, "override the config tolerance");
    verify->add_option("--config", config_path, "config file (defaults are built in)");
    verify->add_option("--report", report_path, "report output path (default stdout)");
    verify->add_option("--format", format, "json or csv");

    // faa
    auto* faa = app.add_subcommand("faa", "print the log-derivative expansion for an order");
    int order = 3;
    faa->add_option("--order", order, "derivative order l (1..8)")->required();

    // recover
    auto* recover = app.add_subcommand("recover", "recover coefficients of an operator");
    std::string descriptor = "characterized:1,2,3,4";
    int points = 8;
    std::uint64_t rec_seed = 42;
    recover->add_option("--operator", descriptor,
                        "family:params, e.g. characterized:1,2,3,4 or second_only:5");
    recover->add_option("--points", points, "number of sample points");
    recover->add_option("--seed", rec_seed, "sampling seed");

    // counterexample
    auto* ce = app.add_subcommand("counterexample",
                                  "build the diagonal-but-not-trilinear operator");
    int trials = 1000;
    double threshold = 1e-6;
    std::uint64_t ce_seed = 42;
    ce->add_option("--trials", trials, "search budget");
    ce->add_option("--threshold", threshold, "violation threshold");
    ce->add_option("--seed", ce_seed, "search seed");

    // aichinger
    auto* ai = app.add_subcommand("aichinger", "cube-equation and quadratic-fit demo");
    int dim = 3, nsamples = 64;
    std::uint64_t ai_seed = 42;
    ai->add_option("--dim", dim, "probe dimension (k+1)");
    ai->add_option("--samples", nsamples, "number of probes");
    ai->add_option("--seed", ai_seed, "probe seed");

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(verify))
            return cmd_verify(config_path, seed_opt->count() > 0, seed, tol_opt->count() > 0,
                              tol, report_path, format);
        if (app.got_subcommand(faa)) return cmd_faa(order);
        if (app.got_subcommand(recover)) return cmd_recover(descriptor, points, rec_seed);
        if (app.got_subcommand(ce)) return cmd_counterexample(trials, threshold, ce_seed);
        if (app.got_subcommand(ai)) return cmd_aichinger(dim, nsamples, ai_seed);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
