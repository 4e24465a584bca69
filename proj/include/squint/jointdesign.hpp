#pragma once

#include <limits>
#include <span>
#include <vector>

#include "squint/precoders.hpp"

namespace squint {

struct DesignReport {
    AnalogDesign design;
    std::vector<std::vector<bool>> clamped;  // [l][m], delay pinned at t_max
    long long criterion_Nt_max = 0;
    double criterion_tmax_min = 0.0;  // seconds
};

// Largest |psi| for which TTD m (0-based) of an N-element group stays below t_max.
double clamp_threshold(const SystemConfig& cfg, int m);

// Closed-form joint PS/TTD design. Negative directions are handled by
// designing for |psi| and mirroring (x -> -x, t -> t_max - t).
DesignReport design_theorem1(const SystemConfig& cfg, std::span<const double> psi);

// Linear-delay baseline: t_m = m N |psi| / (2 f_c) clipped to t_max,
// x_n = -(n-1)|psi|, with the same mirroring for negative psi.
AnalogDesign design_benchmark(const SystemConfig& cfg, std::span<const double> psi);

// Largest admissible N_t for the given M, t_max and direction span. Not
// rounded to a multiple of M. Returns kUnbounded when psi_max == 0.
inline constexpr long long kUnbounded = std::numeric_limits<long long>::max();
long long criterion_nt(const SystemConfig& cfg, double psi_max);

// Smallest t_max (seconds) that keeps every TTD unclamped.
double criterion_tmax(const SystemConfig& cfg, double psi_max);

}  // namespace squint
