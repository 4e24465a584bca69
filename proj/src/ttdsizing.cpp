#include "squint/ttdsizing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "squint/metrics.hpp"

namespace squint {

namespace {

void check_gain_target(double g0)
{
    if (!(g0 > 0.0 && g0 < 1.0))
        throw std::invalid_argument("gain target g0 must lie in (0, 1)");
}

void check_psi(double psi_max)
{
    if (!(psi_max > 0.0 && psi_max <= 1.0))
        throw std::invalid_argument("psi_max must lie in (0, 1]");
}

}  // namespace

std::vector<int> divisors(int n)
{
    if (n < 1)
        throw std::invalid_argument("divisors: n must be >= 1");
    std::vector<int> low, high;
    for (int d = 1; static_cast<long long>(d) * d <= n; ++d)
        if (n % d == 0) {
            low.push_back(d);
            if (d != n / d)
                high.push_back(n / d);
        }
    low.insert(low.end(), high.rbegin(), high.rend());
    return low;
}

int divisor_ceiling(double x, int n)
{
    if (x > n)
        throw std::invalid_argument("divisor_ceiling: " + std::to_string(x) + " exceeds " +
                                    std::to_string(n));
    for (int d : divisors(n))
        if (d >= x)
            return d;
    return n;
}

double taylor_gain(int n_t, int m, double delta)
{
    if (m < 1)
        throw std::invalid_argument("taylor_gain: M must be >= 1");
    const double r = static_cast<double>(n_t) / m;
    return 1.0 + (1.0 - r * r) * delta * delta / 6.0;
}

double omega(const SystemConfig& cfg, double g0, double psi_max)
{
    check_gain_target(g0);
    check_psi(psi_max);
    const double edge = kPi / 2.0 * (cfg.B / cfg.f_c) * (cfg.K - 1.0) / (2.0 * cfg.K) * psi_max;
    if (edge == 0.0)
        return std::numeric_limits<double>::infinity();
    return 6.0 * (1.0 - g0) / (edge * edge);
}

double m_star_raw(const SystemConfig& cfg, double g0, double psi_max)
{
    const double n_t = cfg.N_t;
    return std::sqrt(n_t * n_t / (1.0 + omega(cfg, g0, psi_max)));
}

int m_star_closed_form(const SystemConfig& cfg, double g0, double psi_max)
{
    return divisor_ceiling(m_star_raw(cfg, g0, psi_max), cfg.N_t);
}

DivisorAudit audit_divisor(const SystemConfig& cfg, int m, double g0, std::span<const double> psi)
{
    if (m < 1 || cfg.N_t % m != 0)
        throw std::invalid_argument("audit_divisor: M must divide N_t");
    const int sub = cfg.N_t / m;
    DivisorAudit a;
    a.M = m;
    std::size_t below = 0;
    for (int k = 1; k <= cfg.K; ++k)
        for (double p : psi) {
            const double g = gain_closed_form(sub, squint_offset(cfg, k, p));
            a.worst_gain = std::min(a.worst_gain, g);
            if (g < g0)
                ++below;
        }
    const std::size_t total = static_cast<std::size_t>(cfg.K) * psi.size();
    a.fraction_below = total ? static_cast<double>(below) / static_cast<double>(total) : 0.0;
    return a;
}

int m_star_exact(const SystemConfig& cfg, double g0, std::span<const double> psi)
{
    if (!(g0 >= 0.0 && g0 <= 1.0))
        throw std::invalid_argument("gain target g0 must lie in [0, 1]");
    for (int m : divisors(cfg.N_t))
        if (audit_divisor(cfg, m, g0, psi).worst_gain >= g0)
            return m;
    return cfg.N_t;
}

double m_star_linear_bandwidth(const SystemConfig& cfg, double g0, double psi_max)
{
    if (g0 >= 1.0)
        return std::numeric_limits<double>::infinity();
    if (!(g0 >= 0.0))
        throw std::invalid_argument("gain target g0 must be >= 0");
    return kPi * cfg.N_t / (4.0 * cfg.f_c) * std::sqrt(psi_max * psi_max / (6.0 * (1.0 - g0))) * cfg.B;
}

double total_power(const SystemConfig& cfg, int m, const PowerModel& pm)
{
    return cfg.N_RF * (static_cast<double>(m) * pm.P_TTD + static_cast<double>(cfg.N_t) * pm.P_PS);
}

SizingResult size_ttds(const SystemConfig& cfg, double g0, double psi_max, const PowerModel& pm)
{
    SizingResult r;
    r.g0 = g0;
    r.psi_max = psi_max;
    r.omega = omega(cfg, g0, psi_max);
    r.raw = m_star_raw(cfg, g0, psi_max);
    r.M_star = divisor_ceiling(r.raw, cfg.N_t);
    const double psi[] = {psi_max};
    r.exact_M = m_star_exact(cfg, g0, psi);
    r.linear_estimate = m_star_linear_bandwidth(cfg, g0, psi_max);
    r.power_W = total_power(cfg, r.M_star, pm);
    for (int m : divisors(cfg.N_t))
        r.trace.push_back(audit_divisor(cfg, m, g0, psi));
    return r;
}

}  // namespace squint
