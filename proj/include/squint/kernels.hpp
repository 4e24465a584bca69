#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "squint/precoders.hpp"
#include "squint/qp.hpp"

namespace squint {

// Each kernel has a serial reference and an OpenMP variant that must produce
// bit-identical output for any thread count.

// Precomputed PS phasors of a design; composite(k) rebuilds F[k] from them.
class CompositeCache {
public:
    CompositeCache(const AnalogDesign& design, const SystemConfig& cfg);
    CMatrix composite(int k) const;

private:
    const SystemConfig* cfg_;
    const AnalogDesign* design_;
    CMatrix ps_;  // N_t x N_RF, e^{j pi x} / sqrt(N_t) laid out per chain
};

// Gain of RF chain l of the design at psi_eval, k = 1..K.
std::vector<double> gain_profile_serial(const AnalogDesign& design, const SystemConfig& cfg, int l,
                                        double psi_eval);
std::vector<double> gain_profile_omp(const AnalogDesign& design, const SystemConfig& cfg, int l,
                                     double psi_eval);

enum class Design { Proposed = 0, Benchmark = 1, Ideal = 2 };
inline constexpr std::array<Design, 3> kAllDesigns = {Design::Proposed, Design::Benchmark, Design::Ideal};
const char* to_string(Design d);

struct TrialRates {
    std::array<std::vector<double>, 3> rate;   // [design][k-1]
    std::array<std::vector<double>, 3> bound;  // lower bound, same layout
    double mean(Design d) const;
};

// One channel draw per trial from Rng(seed, trial); designs use the realized
// path directions.
TrialRates rate_trial(const SystemConfig& cfg, std::uint64_t seed, int trial);
std::vector<TrialRates> rate_trials_serial(const SystemConfig& cfg, int trials, std::uint64_t seed);
std::vector<TrialRates> rate_trials_omp(const SystemConfig& cfg, int trials, std::uint64_t seed);

// One random branch for the closed-form vs iterative comparison.
struct OracleInstance {
    SystemConfig cfg;
    double psi = 0.0;
    int m = 0;  // 0-based TTD index
};

// N in 2..32, M in 1..32, psi in [0, 1], t_max in [10 ps, 1 ns],
// B/f_c in [0.01, 0.2], K odd in 3..257, f_c = 300 GHz.
std::vector<OracleInstance> random_oracle_instances(int count, std::uint64_t seed);

OracleRecord oracle_check(const OracleInstance& inst, Real tol);
std::vector<OracleRecord> oracle_sweep_serial(const std::vector<OracleInstance>& inst, Real tol);
std::vector<OracleRecord> oracle_sweep_omp(const std::vector<OracleInstance>& inst, Real tol);

}  // namespace squint
