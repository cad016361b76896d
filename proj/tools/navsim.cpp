#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "navsim/record_io.hpp"
#include "navsim/scenario.hpp"
#include "navsim/simulate.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitIo = 2;

navsim::Scenario load_or_die(const std::string& path) {
    return navsim::load_scenario(path);  // throws ScenarioError
}

void apply_policy_override(navsim::Scenario& sc, const std::string& policy) {
    if (policy.empty()) return;
    sc.nav.policy = navsim::detail::policy_from_string(policy);
}

double default_dt(const navsim::Scenario& sc) {
    return sc.vehicle.min_turn_radius() / (200.0 * sc.vehicle.v);
}

double default_tmax(const navsim::Scenario& sc) {
    return 50.0 * sc.obstacle.perimeter() / sc.vehicle.v;
}

int cmd_check(const std::string& path) {
    const navsim::Scenario sc = load_or_die(path);
    const navsim::ValidationReport rep = navsim::validate_scenario(sc);
    std::cout << navsim::format_report(rep);
    std::cout << (rep.ok ? "valid" : "invalid") << "\n";
    return rep.ok ? kExitOk : kExitViolation;
}

int cmd_run(const std::string& path, std::uint64_t seed, double dt,
            double tmax, const std::string& policy,
            const std::string& out) {
    navsim::Scenario sc = load_or_die(path);
    apply_policy_override(sc, policy);
    if (dt <= 0.0) dt = default_dt(sc);
    if (tmax <= 0.0) tmax = default_tmax(sc);

    const navsim::RunRecord rec = navsim::run_simulation(sc, seed, dt, tmax);
    std::cout << "termination=" << navsim::termination_name(rec.termination)
              << " t=" << rec.t_end << " min_d=" << rec.min_d
              << " switches=" << rec.switches
              << " final_target_dist=" << rec.final_target_dist << "\n";
    if (!out.empty()) navsim::write_csv(rec, out);
    return rec.termination == navsim::Termination::TargetReached
               ? kExitOk
               : kExitViolation;
}

int cmd_mc(const std::string& path, int n, std::uint64_t seed, double dt,
           double tmax, const std::string& policy, int threads) {
    navsim::Scenario sc = load_or_die(path);
    apply_policy_override(sc, policy);
    if (dt <= 0.0) dt = default_dt(sc);
    if (tmax <= 0.0) tmax = default_tmax(sc);

    const navsim::McResult res =
        navsim::monte_carlo(sc, n, seed, dt, tmax, threads);
    std::cout << "runs=" << res.n << " reached=" << res.reached
              << " fraction=" << (res.n ? double(res.reached) / res.n : 0.0)
              << " mean_time=" << res.mean_time
              << " max_time=" << res.max_time
              << " min_clearance=" << res.min_clearance
              << " max_switches=" << res.max_switches << "\n";
    for (const auto& run : res.runs)
        std::cout << "run " << run.run_index << ": "
                  << navsim::termination_name(run.termination)
                  << " t=" << run.t_end << " min_d=" << run.min_d
                  << " switches=" << run.switches << "\n";
    return res.reached == res.n ? kExitOk : kExitViolation;
}

int cmd_plot(const std::string& record_path, const std::string& scenario_path,
             const std::string& out) {
    const navsim::Scenario sc = load_or_die(scenario_path);
    const std::vector<navsim::Sample> series = navsim::read_csv(record_path);
    navsim::write_svg(series, sc, out);
    std::cout << "wrote " << out << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Reactive navigation simulator"};
    app.require_subcommand(1);

    std::string scenario_path, record_path, out, policy;
    std::uint64_t seed = 0;
    double dt = 0.0, tmax = 0.0;
    int n = 100, threads = 0;

    auto* check = app.add_subcommand("check", "validate a scenario");
    check->add_option("scenario", scenario_path)->required();

    auto* run = app.add_subcommand("run", "simulate one run");
    run->add_option("scenario", scenario_path)->required();
    run->add_option("--seed", seed);
    run->add_option("--dt", dt);
    run->add_option("--tmax", tmax);
    run->add_option("--policy", policy)
        ->check(CLI::IsMember({"basic", "randomized", "deterministic"}));
    run->add_option("--out", out);

    auto* mc = app.add_subcommand("mc", "Monte Carlo over seeds");
    mc->add_option("scenario", scenario_path)->required();
    mc->add_option("--n", n);
    mc->add_option("--seed", seed);
    mc->add_option("--dt", dt);
    mc->add_option("--tmax", tmax);
    mc->add_option("--policy", policy)
        ->check(CLI::IsMember({"basic", "randomized", "deterministic"}));
    mc->add_option("--threads", threads);

    auto* plot = app.add_subcommand("plot", "render a record to SVG");
    plot->add_option("record", record_path)->required();
    plot->add_option("--scenario", scenario_path)->required();
    plot->add_option("--out", out)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (check->parsed()) return cmd_check(scenario_path);
        if (run->parsed())
            return cmd_run(scenario_path, seed, dt, tmax, policy, out);
        if (mc->parsed())
            return cmd_mc(scenario_path, n, seed, dt, tmax, policy, threads);
        if (plot->parsed()) return cmd_plot(record_path, scenario_path, out);
    } catch (const navsim::ScenarioError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const navsim::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitViolation;
    }
    return kExitIo;
}
