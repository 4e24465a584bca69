#pragma once

#include <span>
#include <vector>

#include "squint/model.hpp"

namespace squint {

// PS phases and TTD delays for every RF chain. Phases are stored in pi-units
// (the applied phase is pi * x); delays are in seconds.
struct AnalogDesign {
    int N_RF = 0;
    int M = 0;
    int N = 0;
    std::vector<double> x;  // (l * M + m) * N + n, 0-based
    std::vector<double> t;  // l * M + m

    AnalogDesign() = default;
    AnalogDesign(int n_rf, int m, int n);
    static AnalogDesign zeros(const SystemConfig& cfg) { return {cfg.N_RF, cfg.M, cfg.N}; }

    double& phase(int l, int m, int n) { return x[index(l, m, n)]; }
    double phase(int l, int m, int n) const { return x[index(l, m, n)]; }
    double& delay(int l, int m) { return t[static_cast<std::size_t>(l * M + m)]; }
    double delay(int l, int m) const { return t[static_cast<std::size_t>(l * M + m)]; }
    // 2 f_c t, the delay expressed in the same pi-units as the phases.
    double theta(int l, int m, double f_c) const { return 2.0 * f_c * delay(l, m); }

    // Checks dimensions against cfg and 0 <= t <= t_max.
    void validate(const SystemConfig& cfg) const;

private:
    std::size_t index(int l, int m, int n) const
    {
        return static_cast<std::size_t>((l * M + m) * N + n);
    }
};

// F1 = (1/sqrt(N_t)) [X_1 ... X_NRF], N_t x (M N_RF).
CMatrix build_ps_matrix(const AnalogDesign& design, const SystemConfig& cfg);

// F2[k] = blk(e^{-j 2 pi f_k t_1}, ..., e^{-j 2 pi f_k t_NRF}), (M N_RF) x N_RF.
CMatrix build_ttd_matrix(const AnalogDesign& design, const SystemConfig& cfg, int k);

// F[k] = F1 F2[k].
CMatrix composite(const AnalogDesign& design, const SystemConfig& cfg, int k);

// Column l of F[k] built entry by entry, without forming F1 or F2.
CVector composite_column(const AnalogDesign& design, const SystemConfig& cfg, int k, int l);

// Per-subcarrier matched steering matrix [v_{k,1} ... v_{k,L}].
CMatrix ideal_precoder(const SystemConfig& cfg, std::span<const double> psi, int k);

// Top-N_s eigenvectors of (H F)^H (H F), scaled by one scalar so that
// ||F W||_F^2 = N_s.
CMatrix digital_precoder(const CMatrix& H, const CMatrix& F, int n_s);

struct PrecoderSet {
    CMatrix F1;
    std::vector<CMatrix> F2;
    std::vector<CMatrix> F;
    std::vector<CMatrix> F_ideal;
    std::vector<CMatrix> W;  // empty unless a channel was supplied
};

// Materializes every matrix for all K subcarriers. psi gives the directions
// used for the ideal precoder.
PrecoderSet materialize(const AnalogDesign& design, const SystemConfig& cfg,
                        std::span<const double> psi, const ChannelRealization* channel = nullptr);

}  // namespace squint
