#pragma once

#include <span>
#include <vector>

#include "squint/model.hpp"

namespace squint {

// Ascending divisors of n (n >= 1), by trial division up to sqrt(n).
std::vector<int> divisors(int n);

// Smallest divisor of n that is >= x. Throws std::invalid_argument if x > n.
int divisor_ceiling(double x, int n);

// Second-order surrogate 1 + (1 - (N_t/M)^2) delta^2 / 6 of the sub-array gain.
double taylor_gain(int n_t, int m, double delta);

// 6 (1 - g0) / ((pi/2)(B/f_c)(K-1)/(2K) psi_max)^2; +inf when the squint is zero.
double omega(const SystemConfig& cfg, double g0, double psi_max);

// sqrt(N_t^2 / (1 + Omega)) before rounding up to a divisor of N_t.
double m_star_raw(const SystemConfig& cfg, double g0, double psi_max);
int m_star_closed_form(const SystemConfig& cfg, double g0, double psi_max);

// Worst per-subcarrier gain and fraction of (k, psi) pairs below g0 when the
// array is split into m TTD groups.
struct DivisorAudit {
    int M = 0;
    double worst_gain = 1.0;
    double fraction_below = 0.0;
};
DivisorAudit audit_divisor(const SystemConfig& cfg, int m, double g0, std::span<const double> psi);

// First divisor of N_t whose exact sub-array gain is >= g0 for every
// subcarrier and every psi in the set.
int m_star_exact(const SystemConfig& cfg, double g0, std::span<const double> psi);

// (pi N_t / (4 f_c)) sqrt(psi_max^2 / (6 (1 - g0))) B; +inf for g0 >= 1.
double m_star_linear_bandwidth(const SystemConfig& cfg, double g0, double psi_max);

struct PowerModel {
    double P_TTD = 0.1;   // W per TTD
    double P_PS = 0.02;   // W per phase shifter
};
double total_power(const SystemConfig& cfg, int m, const PowerModel& pm = {});

struct SizingResult {
    double g0 = 0.0;
    double psi_max = 0.0;
    double omega = 0.0;
    double raw = 0.0;
    int M_star = 0;
    int exact_M = 0;
    double linear_estimate = 0.0;
    double power_W = 0.0;        // at M_star
    std::vector<DivisorAudit> trace;  // every divisor of N_t
};

// Evaluates the closed form, the exact oracle over {psi_max} and the audit trace.
SizingResult size_ttds(const SystemConfig& cfg, double g0, double psi_max, const PowerModel& pm = {});

}  // namespace squint
