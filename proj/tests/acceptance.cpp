// Acceptance suite: runs every release criterion at its pinned tolerance and
// prints one PASS/FAIL line per criterion. Exit status is nonzero if any
// criterion fails.

#include <cmath>
#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include "leibniz/aichinger.hpp"
#include "leibniz/counterexample.hpp"
#include "leibniz/faa_di_bruno.hpp"
#include "leibniz/rng.hpp"
#include "leibniz/suites.hpp"

using namespace leibniz;

namespace {

int g_failures = 0;

void criterion(int num, const std::string& label, bool ok, const std::string& detail = "") {
    std::printf("[%s] criterion %d: %s%s%s\n", ok ? "PASS" : "FAIL", num, label.c_str(),
                detail.empty() ? "" : " -- ", detail.c_str());
    if (!ok) ++g_failures;
}

const ReportCase* find_case(const SuiteReport& suite, const std::string& name) {
    for (const auto& c : suite.cases)
        if (c.name == name) return &c;
    return nullptr;
}

int count_passing_prefix(const SuiteReport& suite, const std::string& prefix, bool& all_ok) {
    int count = 0;
    for (const auto& c : suite.cases) {
        if (c.name.rfind(prefix, 0) == 0) {
            ++count;
            if (!c.pass) all_ok = false;
        }
    }
    return count;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

} // namespace

int main() {
    RunConfig config = RunConfig::defaults();
    config.points_per_check = 16;
    config.tolerance = 1e-9;

    // ---- criterion 1: trilinear identity across the operator set ----------
    SuiteReport identities = run_identities_suite(config);
    {
        bool ok = true;
        int id2_cases = count_passing_prefix(identities, "id2/", ok);
        double worst = 0.0;
        for (const auto& c : identities.cases)
            if (c.name.rfind("id2/", 0) == 0)
                worst = std::max(worst, c.max_residual / std::max(1.0, c.scale));
        ok = ok && id2_cases >= 13;  // f'' plus twelve characterized variants
        criterion(1, "trilinear identity residual <= 1e-9 for f'' and 12 characterized operators",
                  ok, "cases=" + std::to_string(id2_cases) + " worst_scaled=" + fmt(worst));
    }

    // ---- criterion 2: Leibniz-rule suites ----------------------------------
    {
        bool ok = true;
        const char* names[] = {"leibniz_rule/f_log_family",
                               "second_leibniz/log_square_pair",
                               "second_leibniz/km_corollary_pair(c=1.3,b=0.7)",
                               "eq_rem2/log_square_pair",
                               "eq_rem2/km_corollary_pair(c=1.3,b=0.7)"};
        std::string missing;
        for (const char* n : names) {
            const ReportCase* c = find_case(identities, n);
            if (!c || !c->pass) {
                ok = false;
                missing += std::string(n) + " ";
            }
        }
        criterion(2, "Leibniz and second-order Leibniz residuals <= 1e-9", ok,
                  missing.empty() ? "" : "failing: " + missing);
    }

    // ---- criterion 3: Faa di Bruno oracle equivalence ----------------------
    {
        SuiteReport faa = run_faa_suite(config);
        const ReportCase* counts = find_case(faa, "partition_counts");
        const ReportCase* vs_jet = find_case(faa, "log_derivative_vs_jet");
        bool counts_ok = counts && counts->pass;
        // re-derive the count sequence here as an independent gate
        const int expected[] = {1, 2, 3, 5, 7, 11};
        for (int l = 1; l <= 6; ++l)
            counts_ok = counts_ok &&
                        static_cast<int>(partitions(l).size()) == expected[l - 1];
        bool ok = counts_ok && vs_jet && vs_jet->pass;
        criterion(3, "partition-sum log derivative matches jets (l=1..6, 64 jets, 1e-9)", ok,
                  vs_jet ? "worst=" + fmt(vs_jet->max_residual / std::max(1.0, vs_jet->scale))
                         : "missing case");
    }

    // ---- criterion 4: cube equation and quadratic fits ---------------------
    {
        SuiteReport aich = run_aichinger_suite(config);
        bool cubes_ok = true, fits_ok = true;
        int n_cube = count_passing_prefix(aich, "cube/", cubes_ok);
        int n_fit = count_passing_prefix(aich, "quadratic_fit/", fits_ok);
        const ReportCase* control = find_case(aich, "nonquadratic_control");
        bool ok = cubes_ok && fits_ok && n_cube >= 13 && n_fit >= 13 && control &&
                  control->pass;
        criterion(4, "induced symbols: cube residual <= 1e-9, fit <= 1e-8; |v|^3 control > 0.01",
                  ok,
                  "cube_cases=" + std::to_string(n_cube) + " fit_cases=" + std::to_string(n_fit) +
                      (control ? " control_misfit=" + fmt(control->max_residual) : ""));
    }

    // ---- criterion 5: coefficient recovery round trip ----------------------
    {
        SuiteReport rec = run_recover_suite(config);
        bool roundtrips_ok = true;
        int n_round = count_passing_prefix(rec, "roundtrip/", roundtrips_ok);
        const ReportCase* rej_cube = find_case(rec, "reject/pointwise_cube");
        const ReportCase* rej_comp = find_case(rec, "reject/counterexample_composition");
        bool ok = roundtrips_ok && n_round >= 8 && rej_cube && rej_cube->pass && rej_comp &&
                  rej_comp->pass;
        criterion(5, "build-then-recover within 1e-8 at 16 points; out-of-family rejected", ok,
                  "roundtrip_cases=" + std::to_string(n_round));
    }

    // ---- criterion 6: the counterexample -----------------------------------
    {
        SuiteReport ce = run_counterexample_suite(config);
        const ReportCase* rec = find_case(ce, "recurrence_residual");
        const ReportCase* pow = find_case(ce, "id_powers_composition");
        const ReportCase* vio = find_case(ce, "id2_violation");
        const ReportCase* fit = find_case(ce, "phi_not_quadratic");
        bool ok = rec && rec->pass && pow && pow->pass && vio && vio->pass && fit &&
                  fit->pass;
        criterion(6,
                  "counterexample: recurrence <= 1e-10, diagonal identity holds, trilinear "
                  "violation > 1e-6 found, phi fit > 0.01",
                  ok,
                  (vio && vio->measured ? "violation_residual=" + fmt(*vio->measured) : "") +
                      (fit ? " phi_misfit=" + fmt(fit->max_residual) : ""));
    }

    // ---- criterion 7: structural lemmas -------------------------------------
    {
        bool units_ok = true, loc_ok = true, shift_ok = true;
        int n_units = count_passing_prefix(identities, "annihilates_units/", units_ok);
        int n_loc = count_passing_prefix(identities, "localization/", loc_ok);
        int n_shift = count_passing_prefix(identities, "shift_commutator/", shift_ok);
        const ReportCase* delta3 = find_case(identities, "delta3_diagonal_constant");
        bool delta_ok = delta3 && delta3->pass && delta3->measured &&
                        std::abs(*delta3->measured - 6.0) <= 1e-6;
        bool ok = units_ok && loc_ok && shift_ok && n_units >= 13 && n_loc >= 13 &&
                  n_shift >= 5 && delta_ok;
        criterion(7,
                  "D(1)=D(-1)=0 exactly; localization exact; constant-coefficient shift "
                  "commutators <= 1e-9; triple-difference diagonal constant recorded",
                  ok,
                  delta3 && delta3->measured
                      ? "measured_delta3_constant=" + fmt(*delta3->measured) +
                            " (3! = 6, not 6!)"
                      : "delta3 case missing");
    }

    // ---- criterion 8: determinism -------------------------------------------
    {
        RunConfig det = RunConfig::defaults();
        det.suites = {"identities", "faa", "aichinger", "recover", "counterexample"};
        det.points_per_check = 4;
        RunReport a = run_all(det);
        RunReport b = run_all(det);
        bool ok = report_to_json(a, false) == report_to_json(b, false) &&
                  report_to_csv(a, false) == report_to_csv(b, false);
        criterion(8, "identical config and seed give byte-identical reports (timing excluded)",
                  ok);
    }

    if (g_failures == 0) {
        std::printf("all acceptance criteria passed\n");
        return 0;
    }
    std::printf("%d acceptance criteria FAILED\n", g_failures);
    return 1;
}
