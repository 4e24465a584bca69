#include "squint/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numeric>

#include "squint/jointdesign.hpp"
#include "squint/metrics.hpp"
#include "squint/rng.hpp"

namespace squint {

namespace {

// Runs body(i) for i in [0, n) across threads and rethrows the first failure.
template <class Body>
void parallel_for(int n, Body body)
{
    std::exception_ptr err = nullptr;
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < n; ++i) {
        try {
            body(i);
        } catch (...) {
#pragma omp critical(squint_parallel_for_error)
            if (!err)
                err = std::current_exception();
        }
    }
    if (err)
        std::rethrow_exception(err);
}

}  // namespace

CompositeCache::CompositeCache(const AnalogDesign& design, const SystemConfig& cfg)
    : cfg_(&cfg), design_(&design), ps_(cfg.N_t, cfg.N_RF)
{
    design.validate(cfg);
    const double scale = 1.0 / std::sqrt(static_cast<double>(cfg.N_t));
    for (int l = 0; l < cfg.N_RF; ++l)
        for (int m = 0; m < cfg.M; ++m)
            for (int n = 0; n < cfg.N; ++n)
                ps_(m * cfg.N + n, l) = std::polar(scale, kPi * design.phase(l, m, n));
}

CMatrix CompositeCache::composite(int k) const
{
    const SystemConfig& cfg = *cfg_;
    const double fk = subcarrier_frequency(cfg, k);
    CMatrix F(cfg.N_t, cfg.N_RF);
    for (int l = 0; l < cfg.N_RF; ++l)
        for (int m = 0; m < cfg.M; ++m) {
            const cdouble ttd = std::polar(1.0, -2.0 * kPi * fk * design_->delay(l, m));
            F.col(l).segment(m * cfg.N, cfg.N) = ps_.col(l).segment(m * cfg.N, cfg.N) * ttd;
        }
    return F;
}

std::vector<double> gain_profile_serial(const AnalogDesign& design, const SystemConfig& cfg, int l,
                                        double psi_eval)
{
    std::vector<double> g(static_cast<std::size_t>(cfg.K));
    for (int k = 1; k <= cfg.K; ++k)
        g[static_cast<std::size_t>(k - 1)] =
            array_gain(composite_column(design, cfg, k, l), cfg, k, psi_eval);
    return g;
}

std::vector<double> gain_profile_omp(const AnalogDesign& design, const SystemConfig& cfg, int l,
                                     double psi_eval)
{
    std::vector<double> g(static_cast<std::size_t>(cfg.K));
    parallel_for(cfg.K, [&](int i) {
        g[static_cast<std::size_t>(i)] =
            array_gain(composite_column(design, cfg, i + 1, l), cfg, i + 1, psi_eval);
    });
    return g;
}

const char* to_string(Design d)
{
    switch (d) {
    case Design::Proposed: return "proposed";
    case Design::Benchmark: return "benchmark";
    case Design::Ideal: return "ideal";
    }
    return "unknown";
}

double TrialRates::mean(Design d) const
{
    const auto& r = rate[static_cast<std::size_t>(d)];
    return r.empty() ? 0.0 : std::accumulate(r.begin(), r.end(), 0.0) / static_cast<double>(r.size());
}

TrialRates rate_trial(const SystemConfig& cfg, std::uint64_t seed, int trial)
{
    Rng rng(seed, static_cast<std::uint64_t>(trial));
    const ChannelRealization ch = sample_channel(cfg, rng);
    const std::vector<double>& psi = ch.paths.psi;

    const AnalogDesign proposed = design_theorem1(cfg, psi).design;
    const AnalogDesign benchmark = design_benchmark(cfg, psi);
    const CompositeCache cache_p(proposed, cfg);
    const CompositeCache cache_b(benchmark, cfg);

    TrialRates out;
    for (auto& v : out.rate)
        v.resize(static_cast<std::size_t>(cfg.K));
    for (auto& v : out.bound)
        v.resize(static_cast<std::size_t>(cfg.K));

    for (int k = 1; k <= cfg.K; ++k) {
        const CMatrix& H = ch.at(k);
        const std::array<CMatrix, 3> F = {cache_p.composite(k), cache_b.composite(k),
                                          ideal_precoder(cfg, psi, k)};
        for (std::size_t d = 0; d < F.size(); ++d) {
            const CMatrix W = digital_precoder(H, F[d], cfg.N_s);
            out.rate[d][static_cast<std::size_t>(k - 1)] = achievable_rate(H, F[d], W, cfg.rho, cfg.N_s);
            out.bound[d][static_cast<std::size_t>(k - 1)] = rate_lower_bound(H, F[d], W, cfg.rho, cfg.N_s);
        }
    }
    return out;
}

std::vector<TrialRates> rate_trials_serial(const SystemConfig& cfg, int trials, std::uint64_t seed)
{
    std::vector<TrialRates> out;
    out.reserve(static_cast<std::size_t>(std::max(trials, 0)));
    for (int t = 0; t < trials; ++t)
        out.push_back(rate_trial(cfg, seed, t));
    return out;
}

std::vector<TrialRates> rate_trials_omp(const SystemConfig& cfg, int trials, std::uint64_t seed)
{
    std::vector<TrialRates> out(static_cast<std::size_t>(std::max(trials, 0)));
    parallel_for(trials, [&](int t) { out[static_cast<std::size_t>(t)] = rate_trial(cfg, seed, t); });
    return out;
}

std::vector<OracleInstance> random_oracle_instances(int count, std::uint64_t seed)
{
    std::vector<OracleInstance> out;
    out.reserve(static_cast<std::size_t>(std::max(count, 0)));
    Rng rng(seed, 0);
    auto pick = [&](int lo, int hi) {
        return lo + static_cast<int>(std::min<double>(std::floor(rng.uniform() * (hi - lo + 1)), hi - lo));
    };
    for (int i = 0; i < count; ++i) {
        OracleInstance inst;
        SystemConfig& c = inst.cfg;
        c.f_c = 300e9;
        c.N = pick(2, 32);
        c.M = pick(1, 32);
        c.N_t = c.M * c.N;
        c.N_r = c.N_RF = c.N_s = 1;
        c.K = 2 * pick(1, 128) + 1;
        c.B = rng.uniform(0.01, 0.2) * c.f_c;
        c.t_max = rng.uniform(10e-12, 1e-9);
        inst.psi = rng.uniform();
        inst.m = pick(0, c.M - 1);
        out.push_back(inst);
    }
    return out;
}

OracleRecord oracle_check(const OracleInstance& inst, Real tol)
{
    const SystemConfig& cfg = inst.cfg;
    const BranchQP qp = assemble_branch(cfg, inst.psi, 0, inst.m);
    const KktSolution kkt = solve_kkt(qp);
    const ProjectedResult proj = solve_projected(qp, tol);

    std::vector<double> psi(static_cast<std::size_t>(cfg.N_RF), inst.psi);
    const AnalogDesign d = design_theorem1(cfg, psi).design;

    OracleRecord r;
    r.l = 0;
    r.m = inst.m;
    r.N = cfg.N;
    r.psi = inst.psi;
    r.f_c = cfg.f_c;
    r.t_max = cfg.t_max;
    r.kkt_case = to_string(kkt.tag);
    r.theta_kkt = static_cast<double>(kkt.a[cfg.N]);
    r.theta_projected = static_cast<double>(proj.a[cfg.N]);
    r.theta_design = d.theta(0, inst.m, cfg.f_c);
    r.iterations = proj.iterations;
    double diff = 0.0;
    for (int n = 0; n <= cfg.N; ++n) {
        const double design_v = n < cfg.N ? d.phase(0, inst.m, n) : r.theta_design;
        const double kkt_v = static_cast<double>(kkt.a[n]);
        const double proj_v = static_cast<double>(proj.a[n]);
        diff = std::max({diff, std::abs(design_v - proj_v), std::abs(design_v - kkt_v),
                         std::abs(kkt_v - proj_v)});
    }
    r.max_abs_diff = diff;
    return r;
}

std::vector<OracleRecord> oracle_sweep_serial(const std::vector<OracleInstance>& inst, Real tol)
{
    std::vector<OracleRecord> out;
    out.reserve(inst.size());
    for (const auto& i : inst)
        out.push_back(oracle_check(i, tol));
    return out;
}

std::vector<OracleRecord> oracle_sweep_omp(const std::vector<OracleInstance>& inst, Real tol)
{
    std::vector<OracleRecord> out(inst.size());
    parallel_for(static_cast<int>(inst.size()),
                 [&](int i) { out[static_cast<std::size_t>(i)] = oracle_check(inst[static_cast<std::size_t>(i)], tol); });
    return out;
}

}  // namespace squint
