#include "squint/jointdesign.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace squint {

namespace {

void check_directions(const SystemConfig& cfg, std::span<const double> psi)
{
    cfg.validate();
    if (psi.size() != static_cast<std::size_t>(cfg.N_RF))
        throw std::invalid_argument("expected one direction per RF chain");
    for (double p : psi)
        if (!(std::abs(p) <= 1.0))
            throw std::invalid_argument("spatial direction must satisfy |psi| <= 1");
}

double max_abs(std::span<const double> psi)
{
    double out = 0.0;
    for (double p : psi)
        out = std::max(out, std::abs(p));
    return out;
}

void mirror(AnalogDesign& d, const SystemConfig& cfg, int l)
{
    for (int m = 0; m < d.M; ++m) {
        for (int n = 0; n < d.N; ++n)
            d.phase(l, m, n) = -d.phase(l, m, n);
        d.delay(l, m) = cfg.t_max - d.delay(l, m);
    }
}

}  // namespace

double clamp_threshold(const SystemConfig& cfg, int m)
{
    const double span = (2.0 * (m + 1) - 1.0) * cfg.N - 1.0;
    if (span <= 0.0)
        return std::numeric_limits<double>::infinity();
    return 4.0 * cfg.f_c * cfg.t_max / span;
}

DesignReport design_theorem1(const SystemConfig& cfg, std::span<const double> psi)
{
    check_directions(cfg, psi);
    DesignReport rep;
    rep.design = AnalogDesign::zeros(cfg);
    rep.clamped.assign(static_cast<std::size_t>(cfg.N_RF),
                       std::vector<bool>(static_cast<std::size_t>(cfg.M), false));
    const double theta_max = cfg.theta_max();
    const int N = cfg.N;

    for (int l = 0; l < cfg.N_RF; ++l) {
        const double a = std::abs(psi[static_cast<std::size_t>(l)]);
        for (int m = 0; m < cfg.M; ++m) {
            const int m1 = m + 1;
            const bool clamped = a > clamp_threshold(cfg, m);
            rep.clamped[static_cast<std::size_t>(l)][static_cast<std::size_t>(m)] = clamped;
            if (!clamped) {
                const double t = ((2.0 * m1 - 1.0) * N - 1.0) * a / (4.0 * cfg.f_c);
                rep.design.delay(l, m) = std::min(t, cfg.t_max);
                for (int n = 0; n < N; ++n)
                    rep.design.phase(l, m, n) = (N - 2.0 * (n + 1) + 1.0) / 2.0 * a;
            } else {
                rep.design.delay(l, m) = cfg.t_max;
                for (int n = 0; n < N; ++n) {
                    const double gamma = (static_cast<double>(m1 - 1) * N + n) * a;
                    rep.design.phase(l, m, n) = theta_max - gamma;
                }
            }
        }
        if (psi[static_cast<std::size_t>(l)] < 0.0)
            mirror(rep.design, cfg, l);
    }

    const double pmax = max_abs(psi);
    rep.criterion_Nt_max = criterion_nt(cfg, pmax);
    rep.criterion_tmax_min = criterion_tmax(cfg, pmax);
    return rep;
}

AnalogDesign design_benchmark(const SystemConfig& cfg, std::span<const double> psi)
{
    check_directions(cfg, psi);
    AnalogDesign d = AnalogDesign::zeros(cfg);
    for (int l = 0; l < cfg.N_RF; ++l) {
        const double a = std::abs(psi[static_cast<std::size_t>(l)]);
        for (int m = 0; m < cfg.M; ++m) {
            const double t = (m + 1.0) * cfg.N * a / (2.0 * cfg.f_c);
            d.delay(l, m) = std::clamp(t, 0.0, cfg.t_max);
            for (int n = 0; n < cfg.N; ++n)
                d.phase(l, m, n) = -static_cast<double>(n) * a;
        }
        if (psi[static_cast<std::size_t>(l)] < 0.0)
            mirror(d, cfg, l);
    }
    return d;
}

long long criterion_nt(const SystemConfig& cfg, double psi_max)
{
    if (!(psi_max >= 0.0))
        throw std::invalid_argument("criterion_nt: psi_max must be >= 0");
    if (psi_max == 0.0)
        return kUnbounded;
    const double M = cfg.M;
    const double bound = M / (2.0 * M - 1.0) +
                         4.0 * M / (2.0 * M - 1.0) * cfg.f_c * cfg.t_max / psi_max;
    if (bound >= static_cast<double>(kUnbounded))
        return kUnbounded;
    return static_cast<long long>(std::floor(bound));
}

double criterion_tmax(const SystemConfig& cfg, double psi_max)
{
    if (!(psi_max >= 0.0))
        throw std::invalid_argument("criterion_tmax: psi_max must be >= 0");
    const double M = cfg.M;
    return psi_max * ((2.0 * M - 1.0) * cfg.N_t - M) / (4.0 * M * cfg.f_c);
}

}  // namespace squint
