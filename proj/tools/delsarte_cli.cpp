#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "delsarte/io.hpp"

using namespace delsarte;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitMalformed = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitTolerance = 3;
constexpr int kExitPropertyViolation = 4;

void emit(const json& j, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::ofstream f(out_path);
        f << j.dump(2) << "\n";
    }
}

json parse_inline(const std::string& text) { return json::parse(text); }

std::string resolve_mode(const std::string& cli_mode, const json& problem, const GroupSpec& g) {
    if (!cli_mode.empty()) return cli_mode;
    if (problem.is_object() && problem.contains("mode")) return problem.at("mode").get<std::string>();
    if (const char* env = std::getenv("DELSARTE_MODE"); env && *env) return env;
    return g.exact_available || g.kind == GroupKind::FreeDiscrete ? "exact" : "float";
}

template <class S>
int do_solve(const json& problem, const std::string& mode, const std::string& out_path) {
    DelsarteInstance<S> inst = instance_from_json<S>(problem);
    PrimalResult<S> primal = solve_primal(inst);
    DualResult<S> dual = solve_dual(inst);
    json rep;
    rep["mode"] = mode;
    if (primal.status == LPStatus::Infeasible) {
        rep["status"] = "infeasible";
        rep["alpha"] = "inf";
        rep["dual_status"] = to_string(dual.status);
        emit(rep, out_path);
        return kExitInfeasible;
    }
    if (primal.status != LPStatus::Optimal || dual.status != LPStatus::Optimal) {
        rep["status"] = to_string(primal.status);
        rep["dual_status"] = to_string(dual.status);
        emit(rep, out_path);
        return kExitTolerance;
    }
    GapCertificate<S> gap = certify_no_gap(primal, dual);
    VerifyReport<S> check = verify_dual_certificate(inst, dual.cert);
    rep["status"] = "optimal";
    rep["alpha"] = scalar_to_json(primal.alpha);
    rep["omega"] = scalar_to_json(dual.omega);
    rep["gap"] = scalar_to_json(gap.gap);
    bool plain = inst.sigma.atoms.values == dirac<S>(inst.group).atoms.values &&
                 inst.rho.atoms.values == MeasureFunctional<S>(inst.group, S(-1)).atoms.values;
    if (plain) rep["delsarte_constant"] = scalar_to_json(S(-primal.alpha));
    rep["primal_witness"] = function_to_json(primal.f);
    rep["dual_certificate"] = certificate_to_json(dual.cert);
    rep["certified"] = gap.certified && check.valid;
    if (!check.valid) rep["verification_failure"] = check.failure;
    if (!gap.certified) rep["gap_failure"] = gap.failure;
    emit(rep, out_path);
    return (gap.certified && check.valid) ? kExitOk : kExitTolerance;
}

int run_solve(const json& problem, const std::string& cli_mode, const std::string& out_path) {
    GroupSpec g = group_from_json(problem.at("group"));
    std::string mode = resolve_mode(cli_mode, problem, g);
    if (mode != "exact" && mode != "float")
        throw std::invalid_argument("mode must be exact or float");
    if (mode == "exact" && !g.exact_available)
        throw std::domain_error("exact mode unavailable: exponent " + std::to_string(g.exponent));
    return mode == "exact" ? do_solve<Rational>(problem, mode, out_path)
                           : do_solve<double>(problem, mode, out_path);
}

int run_verify(const json& file, const std::string& out_path) {
    json rep;
    bool ok = false;
    if (file.contains("periodic_certificate")) {
        PeriodicDualCertificate cert = periodic_certificate_from_json(file.at("periodic_certificate"));
        GroupSpec g = make_free_group(cert.d, 1);
        Region omega = region_from_json(file.at("problem").at("omega"), g);
        std::string why;
        ok = verify_periodic_certificate(omega, cert, &why);
        rep["valid"] = ok;
        if (!ok) rep["failure"] = why;
        rep["upper_bound"] = scalar_to_json(Rational(-cert.s));
    } else {
        const json& problem = file.at("problem");
        GroupSpec g = group_from_json(problem.at("group"));
        std::string mode = resolve_mode("", problem, g);
        if (mode == "exact" && g.exact_available) {
            DelsarteInstance<Rational> inst = instance_from_json<Rational>(problem);
            DualCertificate<Rational> cert =
                certificate_from_json<Rational>(file.at("certificate"), g);
            VerifyReport<Rational> v = verify_dual_certificate(inst, cert);
            ok = v.valid;
            rep["valid"] = ok;
            if (!ok) rep["failure"] = v.failure;
        } else {
            DelsarteInstance<double> inst = instance_from_json<double>(problem);
            DualCertificate<double> cert = certificate_from_json<double>(file.at("certificate"), g);
            VerifyReport<double> v = verify_dual_certificate(inst, cert);
            ok = v.valid;
            rep["valid"] = ok;
            if (!ok) rep["failure"] = v.failure;
        }
    }
    emit(rep, out_path);
    return ok ? kExitOk : kExitTolerance;
}

int run_construct_kernel(const GroupSpec& g, const Region& K, double eps,
                         const std::string& out_path) {
    GroupFunction<Rational> k = urysohn_pd_kernel<Rational>(g, K, eps);
    bool at_zero = k.at(g.zero()) == 1;
    bool nonneg = true;
    for (long i = 0; i < k.size(); ++i)
        if (k.values[i] < 0) nonneg = false;
    bool pd;
    if (g.kind == GroupKind::FreeDiscrete) {
        // k factors as a product of per-axis triangle profiles; certify the
        // 1-D profile exactly and check the factorization
        long side = k.box + 1;
        GroupSpec z1 = make_free_group(1, std::max<long>(k.box, 1));
        GroupFunction<Rational> prof(z1, k.box);
        for (long c = -k.box; c <= k.box; ++c) prof.set({c}, Rational(side - std::labs(c), side));
        pd = trig_nonneg_exact(prof);
        for (long i = 0; i < k.size(); ++i) {
            Rational prod(1);
            for (long c : k.element_at(i)) prod *= prof.at({c});
            if (k.values[i] != prod) pd = false;
        }
    } else {
        pd = is_positive_definite(k).pd;
    }
    Rational min_on_K(1);
    for (const Element& e : materialize(g, K)) min_on_K = std::min(min_on_K, k.at(e));
    bool covers = to_double(min_on_K) >= 1.0 - eps;
    json rep{{"k", function_to_json(k)},
             {"checks",
              {{"value_at_zero_is_one", at_zero},
               {"nonnegative", nonneg},
               {"finitely_supported", true},
               {"positive_definite", pd},
               {"min_on_K_clears_eps", covers}}},
             {"min_on_K", scalar_to_json(min_on_K)}};
    emit(rep, out_path);
    return (at_zero && nonneg && pd && covers) ? kExitOk : kExitPropertyViolation;
}

int run_construct_sign_swap(const GroupSpec& g, const Region& S, const Region& V,
                            const std::string& out_path) {
    SignSwapReport<Rational> rep = sign_swap<Rational>(g, S, V);
    emit(sign_swap_report_to_json(rep), out_path);
    bool ok = rep.positivity_in_W && rep.negativity_in_SWW && rep.sum_zero &&
              rep.minus_one_on_S && rep.pd_certified;
    return ok ? kExitOk : kExitPropertyViolation;
}

int run_construct_decompose(const GroupSpec& g, const json& fj, const Region& A,
                            const std::string& out_path) {
    GroupFunction<Rational> f = function_from_json<Rational>(fj, g);
    Decomposition<Rational> d = pd_minorant_decompose(f, A);
    json rep{{"p", function_to_json(d.p)},
             {"q", function_to_json(d.q)},
             {"norm_bound_constant", scalar_to_json(d.norm_bound_constant)},
             {"checks",
              {{"pd_certified", d.pd_certified},
               {"minorant_on_A", d.minorant_on_A},
               {"norm_bound_holds", d.norm_bound_holds}}}};
    emit(rep, out_path);
    return (d.pd_certified && d.minorant_on_A && d.norm_bound_holds) ? kExitOk
                                                                     : kExitPropertyViolation;
}

int run_sandwich(int d, const Region& omega, std::vector<std::pair<long, long>> schedule,
                 double tol, const std::string& out_path, const std::string& witness_path) {
    if (schedule.empty())
        for (long m = 0; m <= 6; ++m) schedule.emplace_back(m, 2 * m);
    std::vector<SandwichRow> rows = sandwich(d, omega, schedule, tol);
    std::ostringstream csv;
    csv << "m,n,lower,upper,gap,lower_margin\n";
    json witnesses = json::array();
    for (const SandwichRow& r : rows) {
        csv << r.m << "," << r.n << "," << to_string(r.lower) << ","
            << (r.has_upper ? to_string(r.upper) : "inf") << ","
            << (r.has_upper ? to_string(r.upper - r.lower) : "inf") << ","
            << r.lower_result.certified_margin << "\n";
        json w{{"m", r.m}, {"n", r.n}};
        if (r.lower_result.feasible) w["lower_witness"] = function_to_json(r.lower_result.witness);
        if (r.upper_result.found)
            w["periodic_certificate"] = periodic_certificate_to_json(r.upper_result.cert);
        witnesses.push_back(w);
    }
    if (out_path.empty())
        std::cout << csv.str();
    else
        std::ofstream(out_path) << csv.str();
    if (!witness_path.empty()) std::ofstream(witness_path) << witnesses.dump(2) << "\n";
    return kExitOk;
}

int run_selftest() {
    int failures = 0;
    auto check = [&](const char* name, bool ok) {
        std::cout << (ok ? "pass" : "FAIL") << "  " << name << "\n";
        if (!ok) ++failures;
    };
    {
        GroupSpec g = make_finite_group({4});
        auto rep = delsarte_constant<Rational>(g, Region::of({{0}, {1}, {3}}));
        check("delsarte constant Z_4 omega={0,1,3} equals 2",
              rep.status == LPStatus::Optimal && rep.constant == 2 && rep.gap.certified);
        check("Z_4 dual certificate verifies",
              verify_dual_certificate(delsarte_problem<Rational>(g, Region::of({{0}, {1}, {3}})),
                                      rep.dual.cert)
                  .valid);
    }
    {
        GroupSpec z = make_free_group(1, 8);
        auto ss = sign_swap<Rational>(z, Region::of({{2}, {-2}}), Region::of({{0}}));
        check("sign swap golden case",
              ss.k.at({0}) == 2 && ss.k.at({2}) == -1 && ss.sum_zero && ss.pd_certified);
        auto k = urysohn_pd_kernel<Rational>(z, Region::of({{-2}, {-1}, {0}, {1}, {2}}), 0.5);
        check("urysohn kernel golden case", k.at({0}) == 1 && k.at({2}) == Rational(3, 5));
    }
    {
        auto rows = sandwich(1, Region::of({{-1}, {0}, {1}}), {{0, 0}, {1, 2}});
        check("Z sandwich closes at 2",
              rows.back().closed && rows.back().lower == 2 && rows.back().upper == 2);
    }
    return failures == 0 ? kExitOk : kExitTolerance;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Extremal constants of positive definite functions on Abelian groups"};
    app.require_subcommand(1);

    std::string group_text = R"({"free":{"rank":1,"window":20}})";
    std::string mode, input_path, out_path, witness_path;
    std::string omega_text, omega_minus_text, rho_text, sigma_text;
    std::string set_text, v_text = "[0]", a_text, f_text, k_text, schedule_text;
    double eps = 0.5, tol = 0.0;
    int dim = 1;

    CLI::App* solve = app.add_subcommand("solve", "solve the primal/dual pair and certify the gap");
    solve->add_option("--input", input_path, "problem JSON file");
    solve->add_option("--group", group_text, "group JSON");
    solve->add_option("--omega", omega_text, "omega region JSON");
    solve->add_option("--omega-minus", omega_minus_text, "omega_minus region JSON");
    solve->add_option("--rho", rho_text, "rho functional JSON");
    solve->add_option("--sigma", sigma_text, "sigma functional JSON");
    solve->add_option("--mode", mode, "exact|float");
    solve->add_option("--output", out_path, "write the report here instead of stdout");

    CLI::App* construct = app.add_subcommand("construct", "run a constructive lemma");
    construct->require_subcommand(1);
    CLI::App* kernel = construct->add_subcommand("kernel", "Urysohn-type positive definite kernel");
    kernel->add_option("--group", group_text);
    kernel->add_option("--K", k_text, "target region JSON")->required();
    kernel->add_option("--eps", eps);
    kernel->add_option("--output", out_path);
    CLI::App* swap = construct->add_subcommand("sign-swap", "kernel equal to -1 on S");
    swap->add_option("--group", group_text);
    swap->add_option("--S", set_text, "symmetric set JSON")->required();
    swap->add_option("--V", v_text, "neighborhood of 0, JSON");
    swap->add_option("--output", out_path);
    CLI::App* decomp = construct->add_subcommand("decompose", "split f = p - q with p PD, p <= f on A");
    decomp->add_option("--group", group_text);
    decomp->add_option("--f", f_text, "function JSON (atoms object)")->required();
    decomp->add_option("--A", a_text, "region JSON")->required();
    decomp->add_option("--output", out_path);

    CLI::App* verify = app.add_subcommand("verify", "independently recheck a certificate file");
    verify->add_option("file", input_path, "certificate JSON file")->required();
    verify->add_option("--output", out_path);

    CLI::App* sw = app.add_subcommand("sandwich", "two-sided bounds for the constant on Z^d");
    sw->add_option("--omega", omega_text, "finite symmetric region JSON")->required();
    sw->add_option("--d", dim, "dimension (1 or 2)");
    sw->add_option("--schedule", schedule_text, "JSON array of [m,n] pairs");
    sw->add_option("--tol", tol, "stop when the gap reaches this");
    sw->add_option("--output", out_path, "CSV output path");
    sw->add_option("--witnesses", witness_path, "witness JSON output path");

    app.add_subcommand("selftest", "run the built-in golden cases");

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve->parsed()) {
            json problem;
            if (!input_path.empty()) {
                std::ifstream f(input_path);
                if (!f) throw std::invalid_argument("cannot read " + input_path);
                f >> problem;
            } else {
                if (omega_text.empty()) throw std::invalid_argument("--omega or --input is required");
                problem["group"] = parse_inline(group_text);
                problem["omega"] = parse_inline(omega_text);
                if (!omega_minus_text.empty()) problem["omega_minus"] = parse_inline(omega_minus_text);
                if (!rho_text.empty()) problem["rho"] = parse_inline(rho_text);
                if (!sigma_text.empty()) problem["sigma"] = parse_inline(sigma_text);
            }
            return run_solve(problem, mode, out_path);
        }
        if (construct->parsed()) {
            GroupSpec g = group_from_json(parse_inline(group_text));
            if (kernel->parsed())
                return run_construct_kernel(g, region_from_json(parse_inline(k_text), g), eps,
                                            out_path);
            if (swap->parsed())
                return run_construct_sign_swap(g, region_from_json(parse_inline(set_text), g),
                                               region_from_json(parse_inline(v_text), g), out_path);
            return run_construct_decompose(g, parse_inline(f_text),
                                           region_from_json(parse_inline(a_text), g), out_path);
        }
        if (verify->parsed()) {
            std::ifstream f(input_path);
            if (!f) throw std::invalid_argument("cannot read " + input_path);
            json file;
            f >> file;
            return run_verify(file, out_path);
        }
        if (sw->parsed()) {
            if (tol < 0) throw std::invalid_argument("tolerance must be >= 0");
            GroupSpec g = make_free_group(dim, 1);
            Region omega = region_from_json(parse_inline(omega_text), g);
            std::vector<std::pair<long, long>> schedule;
            if (!schedule_text.empty())
                for (const json& p : parse_inline(schedule_text))
                    schedule.emplace_back(p.at(0).get<long>(), p.at(1).get<long>());
            return run_sandwich(dim, omega, schedule, tol, out_path, witness_path);
        }
        return run_selftest();
    } catch (const json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitMalformed;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitMalformed;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitMalformed;
    }
}
