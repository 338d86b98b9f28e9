#include "eulertop/harness.hpp"

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <thread>

namespace eulertop {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

const char* status_tag(CheckResult::Status s) {
    switch (s) {
        case CheckResult::Status::Pass: return "PASS";
        case CheckResult::Status::Fail: return "FAIL";
        default: return "SKIP";
    }
}

} // namespace

SystemParams params_from_config(const RunConfig& cfg) {
    const PAdicContext ctx = PAdicContext::make(cfg.prime, cfg.precision);
    std::array<PAdicScalar, 3> a{PAdicScalar(ctx, 0), PAdicScalar(ctx, 0), PAdicScalar(ctx, 0)};
    for (int i = 0; i < 3; ++i) {
        a[i] = cfg.teichmuller_lift ? teichmuller(ctx, cfg.a[i] % cfg.prime)
                                    : PAdicScalar(ctx, cfg.a[i]);
    }
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (a[i].residue() % cfg.prime == a[j].residue() % cfg.prime)
                throw Error("a_i not distinct mod p");
    return SystemParams::make(ctx, a[0], a[1], a[2]);
}

std::string output_directory() {
    const char* dir = std::getenv(kOutDirEnv);
    return dir && *dir ? dir : ".";
}

std::string resolve_out_path(const RunConfig& cfg, const std::string& default_name) {
    if (!cfg.out_path.empty()) return cfg.out_path;
    return output_directory() + "/" + default_name;
}

bool VerificationReport::all_passed() const {
    for (const auto& c : checks)
        if (c.status == CheckResult::Status::Fail) return false;
    return true;
}

json VerificationReport::to_json(bool include_timings) const {
    json out{{"fingerprint", fingerprint}, {"checks", json::array()}};
    for (const auto& c : checks) {
        json entry{{"name", c.name},
                   {"status", status_tag(c.status)},
                   {"detail", c.detail}};
        if (!c.data.is_null()) entry["data"] = c.data;
        if (include_timings) entry["elapsed_ms"] = c.elapsed_ms;
        out["checks"].push_back(entry);
    }
    return out;
}

std::vector<CheckResult> run_check_pool(std::vector<CheckTask> tasks, uint32_t jobs) {
    std::vector<CheckResult> results(tasks.size());
    if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
    jobs = std::min<uint32_t>(jobs, tasks.size() ? tasks.size() : 1);
    std::atomic<size_t> cursor{0};
    const auto worker = [&] {
        for (size_t i = cursor.fetch_add(1); i < tasks.size(); i = cursor.fetch_add(1)) {
            const auto t0 = Clock::now();
            CheckResult r;
            try {
                r = tasks[i].second(tasks[i].first);
            } catch (const std::exception& e) {
                r.name = tasks[i].first;
                r.status = CheckResult::Status::Fail;
                r.detail = std::string("exception: ") + e.what();
            }
            r.name = tasks[i].first;
            r.elapsed_ms = ms_since(t0);
            results[i] = std::move(r);
        }
    };
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (uint32_t i = 0; i < jobs; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    return results;
}

MultiPoly random_poly_x(Rng& rng, PAdicContext ctx, uint32_t max_degree, uint32_t term_count) {
    std::vector<MultiPoly::Term> terms;
    for (uint32_t k = 0; k < term_count; ++k) {
        MultiPoly::Term t;
        const uint32_t e1 = static_cast<uint32_t>(rng.below(max_degree + 1));
        const uint32_t e2 = static_cast<uint32_t>(rng.below(max_degree - e1 + 1));
        const uint32_t e3 = static_cast<uint32_t>(rng.below(max_degree - e1 - e2 + 1));
        t.exp[static_cast<size_t>(Var::x1)] = static_cast<uint16_t>(e1);
        t.exp[static_cast<size_t>(Var::x2)] = static_cast<uint16_t>(e2);
        t.exp[static_cast<size_t>(Var::x3)] = static_cast<uint16_t>(e3);
        t.coeff = rng.below(ctx.modulus);
        terms.push_back(t);
    }
    return MultiPoly::from_terms(ctx, std::move(terms));
}

MultiPoly random_cubic(Rng& rng, PAdicContext ctx) {
    std::vector<MultiPoly::Term> terms;
    for (uint32_t e = 0; e < 3; ++e) {
        MultiPoly::Term t;
        t.exp[static_cast<size_t>(Var::x)] = static_cast<uint16_t>(e);
        t.coeff = rng.below(ctx.modulus);
        terms.push_back(t);
    }
    MultiPoly::Term lead;
    lead.exp[static_cast<size_t>(Var::x)] = 3;
    lead.coeff = 1; // monic
    terms.push_back(lead);
    return MultiPoly::from_terms(ctx, std::move(terms));
}

MultiPoly random_quartic(Rng& rng, PAdicContext ctx) {
    std::vector<MultiPoly::Term> terms;
    for (uint32_t e = 0; e < 4; ++e) {
        MultiPoly::Term t;
        t.exp[static_cast<size_t>(Var::x)] = static_cast<uint16_t>(e);
        t.coeff = rng.below(ctx.modulus);
        terms.push_back(t);
    }
    MultiPoly::Term lead;
    lead.exp[static_cast<size_t>(Var::x)] = 4;
    do {
        lead.coeff = rng.below(ctx.modulus);
    } while (lead.coeff % ctx.prime == 0);
    terms.push_back(lead);
    return MultiPoly::from_terms(ctx, std::move(terms));
}

CurveSuiteResult run_curve_suite(uint32_t prime, uint32_t trials, Rng rng) {
    const PAdicContext ctx = PAdicContext::make(prime, 2);
    CurveSuiteResult out;
    out.trials = trials;
    for (uint32_t i = 0; i < trials; ++i) {
        const PointCountReport r = point_count_congruences(random_cubic(rng, ctx));
        if (r.all_hold())
            ++out.passed_cubics;
        else
            out.failures.push_back(to_json(r));
    }
    for (uint32_t i = 0; i < trials; ++i) {
        const PointCountReport r = point_count_congruences(random_quartic(rng, ctx));
        if (r.all_hold())
            ++out.passed_quartics;
        else
            out.failures.push_back(to_json(r));
    }
    return out;
}

namespace {

CheckResult pass_fail(const std::string& name, bool ok, std::string detail_pass,
                      std::string detail_fail, json data = {}) {
    CheckResult r;
    r.name = name;
    r.status = ok ? CheckResult::Status::Pass : CheckResult::Status::Fail;
    r.detail = ok ? std::move(detail_pass) : std::move(detail_fail);
    r.data = std::move(data);
    return r;
}

CheckResult skipped(const std::string& name, std::string why) {
    CheckResult r;
    r.name = name;
    r.status = CheckResult::Status::Skipped;
    r.detail = std::move(why);
    return r;
}

} // namespace

VerificationReport build_verification_report(const FlowDescriptor& flow, const RunConfig& cfg) {
    const SystemParams& params = flow.ring->params();
    const PAdicContext ctx = params.ctx;
    const uint32_t p = ctx.prime;
    const Rng root(cfg.seed);

    VerificationReport report;
    report.fingerprint = json{{"version", kVersion},
                              {"seed", cfg.seed},
                              {"spec_samples", cfg.spec_samples},
                              {"trials", cfg.trials},
                              {"params", params_to_json(params)}};

    // sampled level sets drive every fiberwise check
    std::vector<LevelSpec> specs;
    std::string no_levels_reason;
    try {
        specs = sample_admissible_levels(params, cfg.spec_samples);
    } catch (const NoAdmissibleLevel&) {
        no_levels_reason =
            "skipped: no admissible level sets over F_" + std::to_string(p);
    }

    // torsor shift library: certified prime integrals mod p
    const SystemParams pbar = params.reduce_to(1);
    const XRingPtr ring1 = flow.ring->reduce_to(1);
    const MultiPoly h1_bar = energy_form(pbar);
    const MultiPoly h2_bar = casimir_form(pbar);
    Rng fp_rng = root.fork("frobenius-power-shift");
    const MultiPoly f_bar = random_poly_x(fp_rng, pbar.ctx, 2, 4);
    std::vector<std::pair<std::string, LocalizedElement>> shift_library;
    shift_library.emplace_back("h1", LocalizedElement::from_poly(ring1, h1_bar));
    shift_library.emplace_back("h2", LocalizedElement::from_poly(ring1, h2_bar));
    shift_library.emplace_back("h1h2", LocalizedElement::from_poly(ring1, h1_bar * h2_bar));
    shift_library.emplace_back("frobenius-power", LocalizedElement::from_poly(ring1, f_bar.pow(p)));
    shift_library.emplace_back(
        "h1-over-hasse", LocalizedElement(ring1, h1_bar, DenomExponents{1, 0, 0, 0}));

    std::vector<std::pair<std::string, FlowDescriptor>> flows;
    flows.emplace_back("base", flow);
    for (const auto& [name, k_bar] : shift_library)
        flows.emplace_back("shift-" + name, torsor_shift(flow, k_bar));

    std::vector<CheckTask> tasks;

    tasks.emplace_back("prime-integrals", [&flow](const std::string& name) {
        const PrimeIntegralOutcome o = prime_integral_differences(flow);
        if (o.holds)
            return pass_fail(name, true, "phi(a_ij)-weighted squares recombine to H_i^p exactly", "");
        // carry the offending cleared difference as evidence
        const LocalizedElement& bad = o.difference_h1.is_zero() ? o.difference_h2 : o.difference_h1;
        std::string shown = bad.numerator().to_string();
        if (shown.size() > 160) shown = shown.substr(0, 160) + "...";
        return pass_fail(name, false, "",
                         "defining system violated, cleared difference " + shown,
                         json{{"difference_h1", to_json(o.difference_h1)},
                              {"difference_h2", to_json(o.difference_h2)}});
    });
    tasks.emplace_back("phi-congruences", [&flow](const std::string& name) {
        return pass_fail(name, phi_mod_p_congruences(flow),
                         "Phi_i^2 = x_i^(2p) and Phi3 = x3^p mod p",
                         "mod-p shape of the Frobenius lift violated");
    });
    tasks.emplace_back("level-samples", [&specs, &no_levels_reason](const std::string& name) {
        if (specs.empty()) return skipped(name, no_levels_reason);
        CheckResult r;
        r.name = name;
        r.status = CheckResult::Status::Pass;
        r.detail = "found " + std::to_string(specs.size()) + " admissible Teichmuller levels";
        return r;
    });

    if (specs.empty()) {
        for (const char* name : {"canonical-form", "duality", "isogeny", "linearization",
                                 "lie-identity"})
            tasks.emplace_back(name, [&no_levels_reason](const std::string& n) {
                return skipped(n, no_levels_reason);
            });
    } else {
        for (size_t i = 0; i < specs.size(); ++i) {
            const LevelSpec spec = specs[i];
            const std::string suffix = "/" + std::to_string(i);
            tasks.emplace_back("canonical-form" + suffix, [params, spec](const std::string& n) {
                const LevelFramePtr frame = LevelFrame::make(params, spec);
                return pass_fail(n, canonical_form_identity_check(frame),
                                 "chart expressions of the canonical form agree",
                                 "chart expressions disagree in normal form");
            });
            tasks.emplace_back("duality" + suffix, [params, spec](const std::string& n) {
                const LevelFramePtr frame = LevelFrame::make(params, spec);
                return pass_fail(n, duality_check(frame),
                                 "<delta, omega> = 1 on every chart",
                                 "duality pairing is not 1");
            });
            tasks.emplace_back("isogeny" + suffix, [params, spec](const std::string& n) {
                const LevelFramePtr frame = LevelFrame::make(params, spec);
                return pass_fail(n, isogeny_identity_check(frame),
                                 "degree-2 cover and form pullback identities hold",
                                 "cover identities violated");
            });
            tasks.emplace_back("linearization" + suffix, [&flow, spec](const std::string& n) {
                const LinearizationOutcome o = verify_linearization(flow, spec);
                json data;
                data["cleared_difference"] = to_json(*o.cleared_difference);
                if (o.defect_mod_p_squared)
                    data["defect_mod_p2"] = to_json(*o.defect_mod_p_squared);
                return pass_fail(n, o.holds, "cleared mod-p identity is exactly zero",
                                 "cleared difference is nonzero", std::move(data));
            });
        }
        tasks.emplace_back("lie-identity", [params, &specs, &root](const std::string& n) {
            Rng rng = root.fork("lie-identity");
            const SystemParams pb = params.reduce_to(1);
            uint32_t checked = 0;
            for (uint32_t t = 0; t < 20; ++t) {
                const MultiPoly k_bar = random_poly_x(rng, pb.ctx, 4, 6);
                for (const LevelSpec& spec : specs) {
                    const LevelFramePtr frame = LevelFrame::make(pb, spec.reduce_to(1));
                    if (!lie_identity_check(frame, k_bar))
                        return pass_fail(n, false, "", "identity failed for a random function",
                                         json{{"k_bar", to_json(k_bar)}});
                    ++checked;
                }
            }
            return pass_fail(n, true,
                             "20 random functions of degree <= 4 on " +
                                 std::to_string(specs.size()) + " levels (" +
                                 std::to_string(checked) + " identities)",
                             "");
        });
    }

    for (size_t fi = 1; fi < flows.size(); ++fi) {
        // flows is fully built above, so element addresses are stable
        const FlowDescriptor* shifted = &flows[fi].second;
        const std::string label = "torsor-forward/" + flows[fi].first.substr(6);
        tasks.emplace_back(label, [shifted, &specs](const std::string& n) {
            if (!verify_prime_integrals(*shifted))
                return pass_fail(n, false, "", "shifted flow loses the prime integrals");
            for (const LevelSpec& spec : specs) {
                const LinearizationOutcome o = verify_linearization(*shifted, spec);
                if (!o.holds)
                    return pass_fail(n, false, "", "shifted flow fails linearization",
                                     json{{"cleared_difference", to_json(*o.cleared_difference)}});
            }
            return pass_fail(n, true,
                             specs.empty()
                                 ? std::string("prime integrals exact (no levels to sample)")
                                 : "prime integrals exact, linearization holds on " +
                                       std::to_string(specs.size()) + " levels",
                             "");
        });
    }

    for (size_t i = 0; i < flows.size(); ++i) {
        for (size_t j = i + 1; j < flows.size(); ++j) {
            const std::string label = "torsor-difference/" + flows[i].first + "-" + flows[j].first;
            const FlowDescriptor* fa = &flows[i].second;
            const FlowDescriptor* fb = &flows[j].second;
            tasks.emplace_back(label, [fa, fb, &specs](const std::string& n) {
                const FlowDifference d = flow_difference(*fa, *fb, specs);
                bool closed = true;
                for (bool v : d.differential_vanishes) closed = closed && v;
                return pass_fail(n, d.prime_integral && closed,
                                 "difference reduces to a prime integral mod p",
                                 "difference is not a prime integral",
                                 json{{"candidate", to_json(d.candidate)}});
            });
        }
    }

    tasks.emplace_back("perturbation-mod-p2", [&flow, &root](const std::string& n) {
        const PAdicContext c = flow.context();
        if (c.precision < 2) return skipped(n, "needs precision >= 2");
        Rng rng = root.fork("perturbation-mod-p2");
        const MultiPoly f = random_poly_x(rng, c, 3, 4);
        const FlowDescriptor base = flow.has_roots() ? flow : with_roots(flow);
        const LocalizedElement bump = LocalizedElement::from_poly(flow.ring, f).times_p();
        const FlowDescriptor other = make_flow(flow.ring, flow.delta_x3 + bump, true);
        const bool ok = equal_mod(*base.phi1, *other.phi1, 2) &&
                        equal_mod(*base.phi2, *other.phi2, 2) &&
                        equal_mod(base.phi_x3, other.phi_x3, 2);
        return pass_fail(n, ok, "p-shift of the x3 value moves phi(x_i) only mod p^2",
                         "phi images differ mod p^2 under a p-shift");
    });

    tasks.emplace_back("hasse-counts", [p, &cfg, &root](const std::string& n) {
        const CurveSuiteResult r = run_curve_suite(p, cfg.trials, root.fork("hasse-counts"));
        json data{{"trials", r.trials},
                  {"passed_cubics", r.passed_cubics},
                  {"passed_quartics", r.passed_quartics}};
        if (!r.failures.empty()) data["failures"] = r.failures;
        return pass_fail(n, r.all_hold(),
                         std::to_string(r.passed_cubics) + "/" + std::to_string(r.trials) +
                             " cubics and " + std::to_string(r.passed_quartics) + "/" +
                             std::to_string(r.trials) + " quartics match the count oracle",
                         "a congruence delta was nonzero", std::move(data));
    });

    tasks.emplace_back("hasse-homogeneity", [&params, p](const std::string& n) {
        const MultiPoly a_poly = hasse_invariant(isogeny_quartic(params), Var::x);
        const bool homog = a_poly.weighted_homogeneous(
            ExponentWeights{}.set(Var::z1, 1).set(Var::z2, 1), (p - 1) / 2);
        const bool nonzero = !a_poly.reduce_mod_p().is_zero();
        return pass_fail(n, homog && nonzero,
                         "invariant homogeneous of degree (p-1)/2 and nonzero mod p",
                         homog ? "invariant vanishes mod p" : "invariant is not homogeneous");
    });

    report.checks = run_check_pool(std::move(tasks), cfg.jobs);
    return report;
}

namespace {

void print_report(const VerificationReport& report, std::ostream& out) {
    for (const auto& c : report.checks) {
        out << "[" << status_tag(c.status) << "] " << c.name;
        if (!c.detail.empty()) out << ": " << c.detail;
        out << " (" << std::fixed << std::setprecision(1) << c.elapsed_ms << " ms)\n";
    }
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw Error("cannot open output file: " + path);
    f << contents;
}

} // namespace

int run_construct(const RunConfig& cfg, std::ostream& out) {
    const SystemParams params = params_from_config(cfg);
    const XRingPtr ring = XRingData::make(params);
    const FlowDescriptor flow = make_flow(ring, std::nullopt, cfg.extract_roots);

    std::vector<FlowCheckStamp> stamps;
    stamps.push_back({"prime-integrals", verify_prime_integrals(flow), iso8601_utc_now()});
    stamps.push_back({"phi-congruences", phi_mod_p_congruences(flow), iso8601_utc_now()});

    const std::string path = resolve_out_path(cfg, "flow.json");
    write_file(path, flow_to_json(flow, stamps).dump(2) + "\n");

    const auto& num = flow.delta_x3.numerator();
    out << "constructed arithmetic Euler flow: p=" << cfg.prime << " N=" << cfg.precision << "\n";
    out << "  delta(x3) numerator: degree " << num.total_degree() << " (expected "
        << 2 * cfg.prime - 1 << "), " << num.terms().size() << " terms\n";
    out << "  delta(x3) = (" << num.to_string() << ") / hasse(H1,H2)^"
        << flow.delta_x3.denominator().hasse << "\n";
    const DenomExponents& d = flow.delta_x3.denominator();
    out << "  denominator exponents: hasse=" << d.hasse << " disc=" << d.disc << " x1=" << d.x1
        << " x2=" << d.x2 << "\n";
    out << "  roots extracted: " << (flow.has_roots() ? "yes" : "no") << "\n";
    bool ok = true;
    for (const auto& s : stamps) {
        out << "  [" << (s.passed ? "PASS" : "FAIL") << "] " << s.name << "\n";
        ok = ok && s.passed;
    }
    out << "  wrote " << path << "\n";
    return ok ? kExitPass : kExitCheckFailure;
}

int run_verify(const RunConfig& cfg, const std::string& flow_path, std::ostream& out) {
    json j;
    {
        std::ifstream f(flow_path);
        if (!f) throw Error("cannot read flow file: " + flow_path);
        try {
            f >> j;
        } catch (const std::exception& e) {
            throw Error(std::string("malformed flow file: ") + e.what());
        }
    }
    const FlowDescriptor flow = flow_from_json(j);
    // one spare power of p is needed for every delta application
    if (flow.context().precision < 2) throw Error("flow verification needs precision >= 2");
    const VerificationReport report = build_verification_report(flow, cfg);

    const std::string path = resolve_out_path(cfg, "report.json");
    write_file(path, report.to_json(false).dump(2) + "\n");
    print_report(report, out);
    out << "report written to " << path << "\n";
    return report.all_passed() ? kExitPass : kExitCheckFailure;
}

int run_hasse(const RunConfig& cfg, std::ostream& out) {
    const SystemParams params = params_from_config(cfg);
    const Rng root(cfg.seed);
    const CurveSuiteResult suite = run_curve_suite(cfg.prime, cfg.trials, root.fork("hasse-counts"));
    const MultiPoly a_poly = hasse_invariant(isogeny_quartic(params), Var::x);
    const bool homog = a_poly.weighted_homogeneous(
        ExponentWeights{}.set(Var::z1, 1).set(Var::z2, 1), (cfg.prime - 1) / 2);
    const bool nonzero = !a_poly.reduce_mod_p().is_zero();

    json report{{"fingerprint",
                 json{{"version", kVersion}, {"seed", cfg.seed}, {"trials", cfg.trials},
                      {"params", params_to_json(params)}}},
                {"curve_suite",
                 json{{"trials", suite.trials},
                      {"passed_cubics", suite.passed_cubics},
                      {"passed_quartics", suite.passed_quartics},
                      {"failures", suite.failures}}},
                {"invariant",
                 json{{"degree", (cfg.prime - 1) / 2},
                      {"homogeneous", homog},
                      {"nonzero_mod_p", nonzero}}}};
    const std::string path = resolve_out_path(cfg, "hasse.json");
    write_file(path, report.dump(2) + "\n");

    out << suite.passed_cubics << "/" << suite.trials << " cubic and " << suite.passed_quartics
        << "/" << suite.trials << " quartic congruences hold\n";
    out << "invariant homogeneous of degree " << (cfg.prime - 1) / 2 << ": "
        << (homog ? "yes" : "NO") << ", nonzero mod p: " << (nonzero ? "yes" : "NO") << "\n";
    out << "report written to " << path << "\n";
    return suite.all_hold() && homog && nonzero ? kExitPass : kExitCheckFailure;
}

int run_demo(const DemoConfig& demo, const RunConfig& cfg, std::ostream& out) {
    const DemoResult r = integrate_demo(demo);
    std::string csv = "t,x1,x2,x3,H1,H2\n";
    if (demo.steps > 0) {
        std::ostringstream rows;
        rows << std::setprecision(17);
        for (const auto& row : r.rows) {
            rows << row[0];
            for (int i = 1; i < 6; ++i) rows << "," << row[i];
            rows << "\n";
        }
        csv += rows.str();
    }
    const std::string path = resolve_out_path(cfg, "trajectory.csv");
    write_file(path, csv);
    out << std::scientific << std::setprecision(3) << "max |H1 drift| = " << r.max_drift_h1
        << ", max |H2 drift| = " << r.max_drift_h2 << "\n";
    out << "trajectory written to " << path << "\n";
    return kExitPass;
}

} // namespace eulertop
