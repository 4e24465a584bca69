#pragma once

#include <iosfwd>
#include <utility>
#include <vector>

#include "squint/model.hpp"

namespace squint {

// |v_k(psi)^H f| by direct inner product. f must have unit norm (1e-9).
double array_gain(const CVector& f, const SystemConfig& cfg, int k, double psi);

// |sin(N delta) / (N sin delta)|, 1 at the removable singularity.
double gain_closed_form(int n_subarray, double delta);

// Squint offset (pi/2)(zeta_k - 1) psi seen by a sub-array after TTD compensation.
double squint_offset(const SystemConfig& cfg, int k, double psi);

// log2 det(I + rho/N_s H F W W^H F^H H^H), via Hermitian eigenvalues.
double achievable_rate(const CMatrix& H, const CMatrix& F, const CMatrix& W, double rho, int n_s);

// log2(1 + rho * det(S^2 V^H F W W^H F^H V)^{1/N_s}) with S, V the leading
// N_s singular values / right vectors of H. Zero when H has rank < N_s.
double rate_lower_bound(const CMatrix& H, const CMatrix& F, const CMatrix& W, double rho, int n_s);

// Empirical CDF over a finite sample; G(x) = fraction of samples <= x.
class EmpiricalCdf {
public:
    EmpiricalCdf() = default;
    explicit EmpiricalCdf(std::vector<double> samples);

    double operator()(double x) const;
    double fraction_at_least(double x) const;
    double fraction_below(double x) const;
    std::size_t size() const { return sorted_.size(); }
    const std::vector<double>& samples() const { return sorted_; }

    // (x, G(x)) at each distinct sample value.
    std::vector<std::pair<double, double>> steps() const;
    std::vector<std::pair<double, double>> on_grid(const std::vector<double>& grid) const;

    // Pools the samples of both CDFs; order of merging does not matter.
    EmpiricalCdf& merge(const EmpiricalCdf& other);

private:
    std::vector<double> sorted_;
};

// Throws std::invalid_argument on empty input.
std::vector<std::pair<double, double>> empirical_cdf(const std::vector<double>& values,
                                                     const std::vector<double>& grid);

struct GainProfile {
    double psi = 0.0;
    std::vector<double> g;  // per subcarrier, k = 1..K
    EmpiricalCdf cdf;
};

struct RateProfile {
    std::vector<double> R;  // per subcarrier, bits/s/Hz
    double mean = 0.0;
    EmpiricalCdf cdf;
};

GainProfile make_gain_profile(double psi, std::vector<double> g);
RateProfile make_rate_profile(std::vector<double> R);

// CSV "k,f_k,value".
void write_profile_csv(std::ostream& os, const SystemConfig& cfg, const std::vector<double>& values);
// CSV "x,G".
void write_cdf_csv(std::ostream& os, const std::vector<std::pair<double, double>>& cdf);

}  // namespace squint
