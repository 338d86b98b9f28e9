#pragma once

#include <array>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "eulertop/rng.hpp"
#include "eulertop/serialize.hpp"

namespace eulertop {

/*
 * Batch harness behind the CLI: configuration, the verification check
 * suite, and report generation. Reports written to disk are canonical:
 * identical (config, seed) produce byte-identical files. Wall-clock
 * timings are printed to the console but kept out of the persisted
 * report for that reason.
 */

inline constexpr int kExitPass = 0;
inline constexpr int kExitCheckFailure = 1;
inline constexpr int kExitConfigError = 2;

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kOutDirEnv = "EULERTOP_OUT_DIR";

struct RunConfig {
    uint32_t prime = 5;
    uint32_t precision = 3;
    std::array<uint64_t, 3> a{0, 1, 2};
    bool teichmuller_lift = true; // lift the a-residues to Teichmuller form
    uint32_t spec_samples = 10;
    uint64_t seed = 1;
    uint32_t trials = 100; // randomized point-count curves per family
    bool extract_roots = true;
    uint32_t jobs = 0; // 0 = hardware concurrency
    std::string out_path; // overrides the default file name in the out dir
};

// Validates the config and builds parameters; throws Error with a
// human-readable message on bad input (prime not prime, a_i colliding
// mod p, ...).
SystemParams params_from_config(const RunConfig& cfg);

// Output directory: $EULERTOP_OUT_DIR or ".".
std::string output_directory();
std::string resolve_out_path(const RunConfig& cfg, const std::string& default_name);

struct CheckResult {
    enum class Status { Pass, Fail, Skipped };
    std::string name;
    Status status = Status::Fail;
    std::string detail;
    json data; // cleared differences and other exact evidence
    double elapsed_ms = 0.0;
};

struct VerificationReport {
    json fingerprint;
    std::vector<CheckResult> checks;

    bool all_passed() const;
    // Canonical form; timings included only on request.
    json to_json(bool include_timings) const;
};

// Runs independent checks on a small worker pool; the result order is
// the submission order regardless of scheduling.
using CheckTask = std::pair<std::string, std::function<CheckResult(const std::string&)>>;
std::vector<CheckResult> run_check_pool(std::vector<CheckTask> tasks, uint32_t jobs);

// The full verification suite for one flow (prime integrals,
// linearization across sampled levels, torsor forward/difference, the
// Lie-derivative suite, point-count and homogeneity suites).
VerificationReport build_verification_report(const FlowDescriptor& flow, const RunConfig& cfg);

// Randomized curve suite at one prime: `trials` monic cubics and
// `trials` unit-leading quartics, all congruence deltas must vanish.
struct CurveSuiteResult {
    uint32_t trials = 0;
    uint32_t passed_cubics = 0;
    uint32_t passed_quartics = 0;
    std::vector<json> failures;
    bool all_hold() const { return failures.empty(); }
};
CurveSuiteResult run_curve_suite(uint32_t prime, uint32_t trials, Rng rng);

// Random polynomial in x1, x2, x3 of total degree <= max_degree.
MultiPoly random_poly_x(Rng& rng, PAdicContext ctx, uint32_t max_degree, uint32_t term_count);
// Random monic cubic / unit-leading quartic in Var::x.
MultiPoly random_cubic(Rng& rng, PAdicContext ctx);
MultiPoly random_quartic(Rng& rng, PAdicContext ctx);

// CLI entry points; return process exit codes and log to `out`.
int run_construct(const RunConfig& cfg, std::ostream& out);
int run_verify(const RunConfig& cfg, const std::string& flow_path, std::ostream& out);
int run_hasse(const RunConfig& cfg, std::ostream& out);
int run_demo(const DemoConfig& demo, const RunConfig& cfg, std::ostream& out);

} // namespace eulertop
