#include "squint/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "squint/linalg.hpp"

namespace squint {

double array_gain(const CVector& f, const SystemConfig& cfg, int k, double psi)
{
    if (f.size() != cfg.N_t)
        throw std::invalid_argument("array_gain: precoder length differs from N_t");
    const double norm = f.norm();
    if (!(std::abs(norm - 1.0) <= 1e-9))
        throw std::invalid_argument("array_gain: precoder must have unit norm, got " +
                                    std::to_string(norm));
    return std::abs(ula_response(cfg, k, psi).dot(f));
}

double gain_closed_form(int n_subarray, double delta)
{
    if (n_subarray < 1)
        throw std::invalid_argument("gain_closed_form: sub-array size must be >= 1");
    const double s = std::sin(delta);
    if (std::abs(s) < 1e-9)
        return 1.0;
    return std::abs(std::sin(n_subarray * delta) / (n_subarray * s));
}

double squint_offset(const SystemConfig& cfg, int k, double psi)
{
    return kPi / 2.0 * (zeta(cfg, k) - 1.0) * psi;
}

double achievable_rate(const CMatrix& H, const CMatrix& F, const CMatrix& W, double rho, int n_s)
{
    if (n_s < 1)
        throw std::invalid_argument("achievable_rate: N_s must be >= 1");
    const CMatrix G = H * F * W;
    const HermitianEigen eig = hermitian_eigen((rho / n_s) * (G.adjoint() * G));
    double r = 0.0;
    for (Eigen::Index i = 0; i < eig.values.size(); ++i)
        r += std::log2(1.0 + std::max(0.0, eig.values[i]));
    return r;
}

double rate_lower_bound(const CMatrix& H, const CMatrix& F, const CMatrix& W, double rho, int n_s)
{
    if (n_s < 1 || n_s > H.rows())
        throw std::invalid_argument("rate_lower_bound: N_s must be in 1..N_r");
    const HermitianEigen eig = hermitian_eigen(H * H.adjoint());
    const double top = std::max(eig.values[0], 0.0);
    if (!(top > 0.0))
        return 0.0;
    // Right singular vectors V = H^H U S^{-1}; a direction counts only if its
    // singular value is clearly nonzero.
    CMatrix V(H.cols(), n_s);
    double sigma2_prod = 1.0;
    for (int i = 0; i < n_s; ++i) {
        const double s2 = eig.values[i];
        if (!(s2 > 1e-12 * top))
            return 0.0;
        V.col(i) = H.adjoint() * eig.vectors.col(i) / std::sqrt(s2);
        sigma2_prod *= s2;
    }
    const cdouble det = (V.adjoint() * F * W).determinant();
    const double gm = std::pow(sigma2_prod * std::norm(det), 1.0 / n_s);
    return std::log2(1.0 + rho * gm);
}

EmpiricalCdf::EmpiricalCdf(std::vector<double> samples) : sorted_(std::move(samples))
{
    std::sort(sorted_.begin(), sorted_.end());
}

double EmpiricalCdf::operator()(double x) const
{
    if (sorted_.empty())
        throw std::logic_error("EmpiricalCdf: no samples");
    const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), x);
    return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
}

double EmpiricalCdf::fraction_below(double x) const
{
    if (sorted_.empty())
        throw std::logic_error("EmpiricalCdf: no samples");
    const auto it = std::lower_bound(sorted_.begin(), sorted_.end(), x);
    return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
}

double EmpiricalCdf::fraction_at_least(double x) const
{
    return 1.0 - fraction_below(x);
}

std::vector<std::pair<double, double>> EmpiricalCdf::steps() const
{
    std::vector<std::pair<double, double>> out;
    const auto n = static_cast<double>(sorted_.size());
    for (std::size_t i = 0; i < sorted_.size(); ++i)
        if (i + 1 == sorted_.size() || sorted_[i + 1] != sorted_[i])
            out.emplace_back(sorted_[i], static_cast<double>(i + 1) / n);
    return out;
}

std::vector<std::pair<double, double>> EmpiricalCdf::on_grid(const std::vector<double>& grid) const
{
    std::vector<std::pair<double, double>> out;
    out.reserve(grid.size());
    for (double x : grid)
        out.emplace_back(x, (*this)(x));
    return out;
}

EmpiricalCdf& EmpiricalCdf::merge(const EmpiricalCdf& other)
{
    std::vector<double> pooled;
    pooled.reserve(sorted_.size() + other.sorted_.size());
    std::merge(sorted_.begin(), sorted_.end(), other.sorted_.begin(), other.sorted_.end(),
               std::back_inserter(pooled));
    sorted_ = std::move(pooled);
    return *this;
}

std::vector<std::pair<double, double>> empirical_cdf(const std::vector<double>& values,
                                                     const std::vector<double>& grid)
{
    if (values.empty())
        throw std::invalid_argument("empirical_cdf: no values");
    const EmpiricalCdf cdf(values);
    auto out = cdf.on_grid(grid);
    const auto pts = cdf.steps();
    out.insert(out.end(), pts.begin(), pts.end());
    std::stable_sort(out.begin(), out.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

GainProfile make_gain_profile(double psi, std::vector<double> g)
{
    GainProfile p;
    p.psi = psi;
    p.cdf = EmpiricalCdf(g);
    p.g = std::move(g);
    return p;
}

RateProfile make_rate_profile(std::vector<double> R)
{
    RateProfile p;
    if (!R.empty())
        p.mean = std::accumulate(R.begin(), R.end(), 0.0) / static_cast<double>(R.size());
    p.cdf = EmpiricalCdf(R);
    p.R = std::move(R);
    return p;
}

void write_profile_csv(std::ostream& os, const SystemConfig& cfg, const std::vector<double>& values)
{
    if (values.size() != static_cast<std::size_t>(cfg.K))
        throw std::invalid_argument("write_profile_csv: expected K values");
    const auto old = os.precision(12);
    os << "k,f_k,value\n";
    for (int k = 1; k <= cfg.K; ++k)
        os << k << ',' << subcarrier_frequency(cfg, k) << ',' << values[static_cast<std::size_t>(k - 1)]
           << '\n';
    os.precision(old);
}

void write_cdf_csv(std::ostream& os, const std::vector<std::pair<double, double>>& cdf)
{
    const auto old = os.precision(12);
    os << "x,G\n";
    for (const auto& [x, g] : cdf)
        os << x << ',' << g << '\n';
    os.precision(old);
}

}  // namespace squint
