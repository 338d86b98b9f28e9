#include <iostream>

#include <CLI11.hpp>

#include "eulertop/harness.hpp"

using namespace eulertop;

namespace {

void add_common(CLI::App* cmd, RunConfig& cfg, std::vector<uint64_t>& a) {
    cmd->add_option("--prime,-p", cfg.prime, "odd prime p")->capture_default_str();
    cmd->add_option("--precision,-N", cfg.precision, "p-adic precision N")->capture_default_str();
    cmd->add_option("--a", a, "a1,a2,a3 residues, pairwise distinct mod p")
        ->delimiter(',')
        ->expected(3);
    cmd->add_flag("!--no-teichmuller", cfg.teichmuller_lift,
                  "take the a_i exactly instead of lifting to Teichmuller form");
    cmd->add_option("--seed", cfg.seed, "seed for every randomized suite")->capture_default_str();
    cmd->add_option("--specs", cfg.spec_samples, "number of sampled level sets")
        ->capture_default_str();
    cmd->add_option("--trials", cfg.trials, "curves per randomized point-count family")
        ->capture_default_str();
    cmd->add_option("--jobs,-j", cfg.jobs, "worker threads (0 = auto)")->capture_default_str();
    cmd->add_option("--out,-o", cfg.out_path, "output file path");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact construction and verification of arithmetic Euler flows"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::vector<uint64_t> a{0, 1, 2};

    auto* construct = app.add_subcommand("construct", "build a flow and write it as JSON");
    add_common(construct, cfg, a);
    construct->add_flag("!--no-roots", cfg.extract_roots, "skip extracting phi1, phi2 roots");

    std::string flow_path;
    auto* verify = app.add_subcommand("verify", "run the verification suite against a flow file");
    add_common(verify, cfg, a);
    verify->add_option("flow", flow_path, "flow JSON file")->required();

    auto* hasse = app.add_subcommand("hasse", "randomized point-count and homogeneity suite");
    add_common(hasse, cfg, a);

    DemoConfig demo;
    std::vector<double> demo_a{1.0, 2.0, 3.0};
    std::vector<double> demo_x0{1.0, 1.0, 1.0};
    auto* demo_cmd = app.add_subcommand("demo", "floating-point integration of the classical flow");
    demo_cmd->add_option("--a", demo_a, "real coefficients a1,a2,a3")->delimiter(',')->expected(3);
    demo_cmd->add_option("--x0", demo_x0, "initial state")->delimiter(',')->expected(3);
    demo_cmd->add_option("--dt", demo.dt, "step size")->capture_default_str();
    demo_cmd->add_option("--steps", demo.steps, "step count")->capture_default_str();
    demo_cmd->add_option("--sample-every", demo.sample_every, "store every k-th state")
        ->capture_default_str();
    demo_cmd->add_option("--out,-o", cfg.out_path, "CSV output path");

    CLI11_PARSE(app, argc, argv);
    for (int i = 0; i < 3; ++i) cfg.a[i] = a[i];

    try {
        if (construct->parsed()) return run_construct(cfg, std::cout);
        if (verify->parsed()) return run_verify(cfg, flow_path, std::cout);
        if (hasse->parsed()) return run_hasse(cfg, std::cout);
        if (demo_cmd->parsed()) {
            for (int i = 0; i < 3; ++i) {
                demo.a[i] = demo_a[i];
                demo.x0[i] = demo_x0[i];
            }
            return run_demo(demo, cfg, std::cout);
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitCheckFailure;
    }
    return kExitConfigError;
}
