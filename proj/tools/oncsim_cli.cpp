// Command-line front end: outage sweeps, tradeoff curves, cross-validation
// and a protocol walk-through. Exit codes: 0 success, 1 validation or
// runtime failure, 2 configuration error.

#include <cstdint>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "oncsim/commands.hpp"
#include "oncsim/scenario.hpp"

namespace {

oncsim::ScenarioConfig load_or_default(const std::string& config_path) {
    if (!config_path.empty()) return oncsim::load_config(config_path);
    oncsim::ScenarioConfig cfg;
    cfg.equal_sir_db = 10.0;
    cfg.validate();
    return cfg;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Outage and tradeoff laboratory for an opportunistic "
                 "network-coded relay scheme"};
    app.require_subcommand(1);

    std::string config_path;
    app.add_option("-c,--config", config_path, "scenario config file (key = value lines)")
        ->check(CLI::ExistingFile);

    // sweep ------------------------------------------------------------
    auto* sweep_cmd =
        app.add_subcommand("sweep", "outage probability versus SIR, analytic and Monte Carlo");
    oncsim::SweepOptions sweep_opts;
    std::string sweep_out = "outage_sweep.csv";
    sweep_cmd->add_option("--sir-db", sweep_opts.sir_grid_db,
                          "SIR grid in dB (default 0 5 10 15 20 25 30)");
    sweep_cmd->add_option("--rates", sweep_opts.rates, "data rates in bit/s/Hz (default 0.5 1.0)");
    sweep_cmd->add_option("-o,--out", sweep_out, "output CSV path");

    // dmt ---------------------------------------------------------------
    auto* dmt_cmd = app.add_subcommand("dmt", "diversity-multiplexing tradeoff curves");
    oncsim::DmtOptions dmt_opts;
    std::string dmt_out = "dmt.csv";
    dmt_cmd->add_option("--n-points", dmt_opts.n_points, "points per closed-form curve")
        ->check(CLI::Range(std::size_t{2}, std::size_t{100000}));
    dmt_cmd->add_option("--estimate", dmt_opts.estimate_at,
                        "multiplexing gains to estimate numerically");
    dmt_cmd->add_option("--k", dmt_opts.k_interferers, "interferer count for estimates");
    dmt_cmd->add_option("-o,--out", dmt_out, "output CSV path");

    // validate -----------------------------------------------------------
    auto* validate_cmd =
        app.add_subcommand("validate", "cross-check analytic, Monte Carlo and packet routes");
    oncsim::ValidateOptions validate_opts;
    validate_cmd->add_flag("--inject-fault", validate_opts.inject_fault,
                           "negative control: perturb one analytic value")
        ->group(""); // hidden; exists for the test suite
    validate_cmd->add_option("--packet-trials", validate_opts.packet_trials,
                             "coupled packet trials (default 100000)");

    // packet-demo ---------------------------------------------------------
    auto* demo_cmd = app.add_subcommand("packet-demo", "trace one protocol round");
    std::string payload1_hex = "48656c6c6f2031";
    std::string payload2_hex = "48656c6c6f2032";
    std::uint64_t demo_seed = oncsim::kDefaultSeed;
    std::vector<std::string> fail_list;
    demo_cmd->add_option("--payload1", payload1_hex, "first payload, hex");
    demo_cmd->add_option("--payload2", payload2_hex, "second payload, hex (same length)");
    demo_cmd->add_option("--seed", demo_seed, "corruption seed");
    demo_cmd->add_option("--fail", fail_list,
                         "hops to force-fail: rs-n rs-n1 u1-n u1-n1 u1-n2 u2-n u2-n1 u2-n2");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2; // bad usage is a configuration error
    }

    try {
        const oncsim::ScenarioConfig cfg = load_or_default(config_path);
        if (sweep_cmd->parsed()) {
            oncsim::cmd_outage_sweep(cfg, sweep_opts, sweep_out);
            std::cout << "wrote " << sweep_out << "\n";
        } else if (dmt_cmd->parsed()) {
            oncsim::cmd_dmt(dmt_opts, dmt_out);
            std::cout << "wrote " << dmt_out << "\n";
        } else if (validate_cmd->parsed()) {
            if (!oncsim::cmd_validate(cfg, std::cout, validate_opts)) return 1;
        } else if (demo_cmd->parsed()) {
            const std::set<std::string> fails(fail_list.begin(), fail_list.end());
            oncsim::cmd_packet_demo(payload1_hex, payload2_hex, demo_seed, fails, std::cout);
        }
    } catch (const oncsim::config_error& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
