// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <omp.h>
#include <unistd.h>

#include "squint/harness.hpp"
#include "squint/jointdesign.hpp"
#include "squint/kernels.hpp"
#include "squint/metrics.hpp"
#include "squint/qp.hpp"
#include "squint/rng.hpp"
#include "squint/ttdsizing.hpp"

using namespace squint;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what)
    {
        if (!ok) {
            pass = false;
            detail << " [failed: " << what << "]";
        }
    }
};

std::vector<double> repeat(const SystemConfig& cfg, double psi)
{
    return std::vector<double>(static_cast<std::size_t>(cfg.N_RF), psi);
}

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void ac1_oracle(Outcome& o)
{
    const auto t0 = std::chrono::steady_clock::now();
    const auto inst = random_oracle_instances(1000, 20240601);
    const auto rows = oracle_sweep_omp(inst, 1e-10L);
    const double elapsed = seconds_since(t0);
    double worst = 0.0;
    int upper = 0;
    for (const auto& r : rows) {
        worst = std::max(worst, r.max_abs_diff);
        upper += r.kkt_case == "upper";
    }
    o.detail << "branches=" << rows.size() << " clamped=" << upper << " max|diff|=" << worst
             << " time=" << elapsed << "s";
    o.require(rows.size() == 1000, "1000 branches");
    o.require(worst <= 1e-8, "max |diff| <= 1e-8");
    o.require(elapsed <= 60.0, "runtime <= 60 s");
}

void ac2_sizing(Outcome& o)
{
    SystemConfig cfg;
    cfg.N_t = 720;
    cfg.M = 60;
    cfg.N = 12;
    cfg.t_max = 1e-9;
    const int m_star = m_star_closed_form(cfg, 0.9, 0.8);
    const std::vector<double> psi = {0.8};
    const DivisorAudit a60 = audit_divisor(cfg, 60, 0.9, psi);
    const DivisorAudit a48 = audit_divisor(cfg, 48, 0.9, psi);
    // Cross-check the M = 60 claim with a realized design and direct inner products.
    const auto g = gain_profile_serial(design_theorem1(cfg, repeat(cfg, 0.8)).design, cfg, 0, 0.8);
    const double min_design = *std::min_element(g.begin(), g.end());
    o.detail << "M*=" << m_star << " min_gain(M=60)=" << a60.worst_gain << " design_min=" << min_design
             << " below(M=48)=" << a48.fraction_below;
    o.require(m_star == 60, "M* == 60");
    o.require(a60.worst_gain >= 0.9 && min_design >= 0.9, "all gains >= 0.9 at M=60");
    o.require(std::abs(a48.fraction_below - 0.18) <= 0.02, "M=48 fraction in 0.18 +- 0.02");
}

void ac3_headline(Outcome& o)
{
    SystemConfig cfg;
    cfg.t_max = 340e-12;
    const auto psi = repeat(cfg, 0.8);
    const EmpiricalCdf prop(gain_profile_serial(design_theorem1(cfg, psi).design, cfg, 0, 0.8));
    const EmpiricalCdf bench(gain_profile_serial(design_benchmark(cfg, psi), cfg, 0, 0.8));
    SystemConfig wide = cfg;
    wide.t_max = 400e-12;
    const auto gp = gain_profile_serial(design_theorem1(wide, psi).design, wide, 0, 0.8);
    const auto gb = gain_profile_serial(design_benchmark(wide, psi), wide, 0, 0.8);
    double diff = 0.0;
    for (std::size_t k = 0; k < gp.size(); ++k)
        diff = std::max(diff, std::abs(gp[k] - gb[k]));
    o.detail << "proposed>=0.9: " << prop.fraction_at_least(0.9) << " benchmark>=0.9: "
             << bench.fraction_at_least(0.9) << " max|diff|@400ps=" << diff;
    o.require(prop.fraction_at_least(0.9) >= 0.75, "proposed fraction >= 0.75");
    o.require(bench.fraction_at_least(0.9) == 0.0, "benchmark fraction == 0");
    o.require(diff <= 1e-10, "400 ps profiles agree to 1e-10");
}

void ac4_prop1(Outcome& o)
{
    double prev = 2.0;
    bool decreasing = true, center_ok = true;
    for (int nt : {128, 256, 512, 1024}) {
        SystemConfig cfg;
        cfg.N_t = nt;
        cfg.N = nt / cfg.M;
        const CVector f = steering_vector(nt, 1.0, 0.8);
        const double edge = array_gain(f, cfg, cfg.K, 0.8);
        const double center = array_gain(f, cfg, (cfg.K + 1) / 2, 0.8);
        decreasing = decreasing && edge < prev;
        center_ok = center_ok && std::abs(center - 1.0) <= 1e-12;
        o.detail << "N_t=" << nt << ":" << edge << " ";
        prev = edge;
    }
    o.require(decreasing, "edge gain strictly decreasing");
    o.require(prev < 0.05, "edge gain < 0.05 at N_t=1024");
    o.require(center_ok, "central gain == 1");
}

void ac5_rates(Outcome& o)
{
    const SystemConfig cfg;
    const auto trials = rate_trials_omp(cfg, 200, 5150);
    long long violations = 0;
    int ordered = 0, ties = 0;
    double sum[3] = {0, 0, 0};
    for (const auto& t : trials) {
        for (std::size_t d = 0; d < 3; ++d) {
            for (std::size_t k = 0; k < t.rate[d].size(); ++k)
                if (t.bound[d][k] > t.rate[d][k] + 1e-9)
                    ++violations;
            sum[d] += t.mean(static_cast<Design>(d));
        }
        // Below the clamp threshold both designs differ by a per-chain phase the digital stage absorbs,
        // so their rates tie up to rounding.
        const double p = t.mean(Design::Proposed), b = t.mean(Design::Benchmark);
        if (p >= b * (1.0 - 1e-12)) {
            ++ordered;
            ties += p < b;
        }
    }
    const double n = static_cast<double>(trials.size());
    const double share = ordered / n;
    o.detail << "trials=" << trials.size() << " bound_violations=" << violations << " mean ideal/proposed/benchmark="
             << sum[2] / n << "/" << sum[0] / n << "/" << sum[1] / n << " proposed>=benchmark in " << share
             << " (rounding-level ties: " << ties << ")";
    o.require(violations == 0, "no bound violations");
    o.require(sum[2] >= sum[0] && sum[0] >= sum[1], "ideal >= proposed >= benchmark on pooled mean");
    o.require(share >= 0.95, ">= 95% of trials ordered");
}

void ac6_structure(Outcome& o)
{
    const SystemConfig cfg;
    const std::vector<double> psi = {0.8, -0.45, 0.2, -0.9};
    const AnalogDesign d = design_theorem1(cfg, psi).design;
    Rng rng(606);
    const auto ch = sample_channel(cfg, rng);
    double modulus = 0.0, norm = 0.0;
    for (int k = 1; k <= cfg.K; ++k) {
        const CMatrix F = composite(d, cfg, k);
        modulus = std::max(modulus, (F.cwiseAbs().array() - 1.0 / std::sqrt(256.0)).abs().maxCoeff());
        const CMatrix W = digital_precoder(ch.at(k), F, cfg.N_s);
        norm = std::max(norm, std::abs((F * W).squaredNorm() - cfg.N_s));
    }

    double ident = 0.0;
    const auto inst = random_oracle_instances(200, 66);
    for (const auto& i : inst) {
        const BranchQP qp = assemble_branch(i.cfg, i.psi, 0, i.m);
        const RMatrix Ci = inverse_closed_form(qp);
        const int N = qp.N;
        const Real inv = (qp.C * Ci - RMatrix::Identity(N + 1, N + 1)).cwiseAbs().maxCoeff() * qp.eta;
        const Real quad = std::abs(Ci(N, N) * qp.eta - 1);
        const Real lin = std::abs(Ci.row(N).dot(qp.d) - ((2.0L * (i.m + 1) - 1) * N - 1) / 2 * i.psi);
        Real z2 = 0;
        for (Real z : qp.zeta)
            z2 += z * z;
        const Real gam = std::abs(N * z2 / qp.zeta.size() - (N + qp.eta));
        ident = std::max(ident, static_cast<double>(std::max({inv, quad, lin, gam})));
    }

    std::vector<double> gram;
    for (int nt : {64, 256, 1024}) {
        SystemConfig c;
        c.N_t = nt;
        c.N = nt / c.M;
        const CMatrix F = ideal_precoder(c, psi, (c.K + 1) / 2);
        gram.push_back((F.adjoint() * F - CMatrix::Identity(4, 4)).norm());
    }
    o.detail << "modulus_err=" << modulus << " norm_err=" << norm << " identity_err=" << ident
             << " gram=" << gram[0] << "/" << gram[1] << "/" << gram[2];
    o.require(modulus <= 1e-12, "entry modulus");
    o.require(norm <= 1e-10, "F W normalization");
    o.require(ident <= 1e-10, "closed-form identities");
    o.require(gram[0] > gram[1] && gram[1] > gram[2], "Gram deviation shrinks with N_t");
}

void ac7_criteria(Outcome& o)
{
    SystemConfig cfg;
    cfg.t_max = 340e-12;
    const long long nt = criterion_nt(cfg, 0.8);
    const double tm = criterion_tmax(cfg, 0.8);
    o.detail << "Nt_max=" << nt << " tmax_min=" << tm * 1e12 << "ps";
    o.require(nt == 263, "criterion_nt == 263");
    o.require(std::abs(tm - 330e-12) <= 1e-20, "criterion_tmax == 330 ps");
}

std::string run_and_collect(const Scenario& s, int threads, const fs::path& dir)
{
    RunOptions opts;
    opts.out_dir = dir;
    opts.threads = threads;
    const RunResult r = run(s, opts);
    std::string all;
    for (const auto& f : r.files) {
        std::ifstream in(dir / f, std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        all += f + '\n' + ss.str();
    }
    fs::remove_all(dir);
    return all;
}

void ac8_determinism(Outcome& o)
{
    const std::vector<std::string> scenarios = {
        R"({"experiment": "rate_cdf", "config": {"K": 33, "seed": 9}, "trials": 12})",
        R"({"experiment": "gain_cdf", "sweep": {"t_max": [3.2e-10, 3.4e-10]}})",
        R"({"experiment": "sizing", "config": {"N_t": 720, "M": 60, "N": 12, "t_max": 1e-9}})",
        R"({"experiment": "prop1_sweep"})",
        R"({"experiment": "criteria_report"})"};
    const fs::path base = fs::temp_directory_path() / ("squint_acceptance_" + std::to_string(::getpid()));
    int identical = 0;
    for (std::size_t i = 0; i < scenarios.size(); ++i) {
        const Scenario s = parse_scenario(scenarios[i]);
        const std::string ref = run_and_collect(s, 1, base / ("a" + std::to_string(i)));
        bool same = true;
        for (int threads : {2, 4, 7})
            same = same && run_and_collect(s, threads, base / ("b" + std::to_string(i))) == ref;
        identical += same;
        o.require(same, std::string(to_string(s.experiment)) + " byte-identical");
    }
    fs::remove_all(base);
    o.detail << identical << "/" << scenarios.size() << " scenarios byte-identical across 1/2/4/7 threads";
}

}  // namespace

int main()
{
    const std::vector<std::pair<const char*, std::function<void(Outcome&)>>> criteria = {
        {"AC1 closed-form design vs iterative oracle", ac1_oracle},
        {"AC2 TTD sizing reference case", ac2_sizing},
        {"AC3 gain CDF headline", ac3_headline},
        {"AC4 frequency-flat gain loss sweep", ac4_prop1},
        {"AC5 rate bound ordering", ac5_rates},
        {"AC6 structural invariants", ac6_structure},
        {"AC7 array-size and delay criteria", ac7_criteria},
        {"AC8 determinism across thread counts", ac8_determinism},
    };
    int failed = 0;
    for (const auto& [name, fn] : criteria) {
        Outcome o;
        try {
            fn(o);
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail << " [exception: " << e.what() << "]";
        }
        std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.str().c_str());
        std::fflush(stdout);
        failed += !o.pass;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed ? 1 : 0;
}
