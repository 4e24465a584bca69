#include "squint/model.hpp"

#include <cmath>
#include <stdexcept>

#include "squint/rng.hpp"

namespace squint {

namespace {

void require(bool ok, const std::string& what)
{
    if (!ok)
        throw std::invalid_argument("invalid SystemConfig: " + what);
}

void check_subcarrier(const SystemConfig& cfg, int k)
{
    if (k < 1 || k > cfg.K)
        throw std::out_of_range("subcarrier index " + std::to_string(k) + " outside 1.." +
                                std::to_string(cfg.K));
}

// k - 1 - (K-1)/2, exact because K is odd.
double centered_index(const SystemConfig& cfg, int k)
{
    return static_cast<double>(k - 1) - static_cast<double>(cfg.K - 1) / 2.0;
}

}  // namespace

void SystemConfig::validate() const
{
    require(K >= 1 && K % 2 == 1, "K must be a positive odd integer");
    require(N_t >= 1 && N_r >= 1 && N_RF >= 1 && N_s >= 1 && M >= 1 && N >= 1,
            "all counts must be >= 1");
    require(static_cast<long long>(M) * N == N_t, "N_t must equal M * N");
    require(N_s == N_RF && N_RF == N_r, "N_s = N_RF = N_r is required");
    require(N_RF <= N_t, "N_RF must not exceed N_t");
    require(std::isfinite(f_c) && f_c > 0.0, "f_c must be positive");
    require(std::isfinite(B) && B >= 0.0 && B < f_c, "B must satisfy 0 <= B < f_c");
    require(std::isfinite(t_max) && t_max >= 0.0, "t_max must be >= 0");
    require(std::isfinite(rho) && rho >= 0.0, "rho must be >= 0");
    require(std::isfinite(tau_max) && tau_max >= 0.0, "tau_max must be >= 0");
}

std::vector<std::string> SystemConfig::warnings() const
{
    std::vector<std::string> out;
    if (4 * N_RF >= N_t)
        out.emplace_back("N_RF >= N_t/4: the large-array assumptions behind the design are weak");
    return out;
}

double snr_from_db(double db)
{
    return std::pow(10.0, db / 10.0);
}

double subcarrier_frequency(const SystemConfig& cfg, int k)
{
    check_subcarrier(cfg, k);
    return cfg.f_c + (cfg.B / cfg.K) * centered_index(cfg, k);
}

double zeta(const SystemConfig& cfg, int k)
{
    check_subcarrier(cfg, k);
    return 1.0 + (cfg.B / cfg.f_c) * (centered_index(cfg, k) / cfg.K);
}

double eta(const SystemConfig& cfg)
{
    const double ratio = cfg.B / cfg.f_c;
    const double k2 = static_cast<double>(cfg.K) * cfg.K;
    return cfg.N * ratio * ratio * (k2 - 1.0) / (12.0 * k2);
}

CVector steering_vector(int n_elems, double zeta_k, double psi)
{
    CVector v(n_elems);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n_elems));
    for (int n = 0; n < n_elems; ++n)
        v[n] = std::polar(scale, -kPi * n * zeta_k * psi);
    return v;
}

CVector ula_response(const SystemConfig& cfg, int k, double psi)
{
    if (!(std::abs(psi) <= 1.0))
        throw std::invalid_argument("spatial direction must satisfy |psi| <= 1");
    return steering_vector(cfg.N_t, zeta(cfg, k), psi);
}

CVector ura_response(const SystemConfig& cfg, int k, double azimuth, double elevation,
                     int n1, int n2)
{
    if (n1 < 1 || n2 < 1 || static_cast<long long>(n1) * n2 != cfg.N_t)
        throw std::invalid_argument("URA dimensions must satisfy N1 * N2 = N_t");
    const double z = zeta(cfg, k);
    const CVector vy = steering_vector(n1, z, std::sin(azimuth) * std::sin(elevation));
    const CVector vz = steering_vector(n2, z, std::cos(elevation));
    CVector v(cfg.N_t);
    for (int i = 0; i < n1; ++i)
        v.segment(static_cast<Eigen::Index>(i) * n2, n2) = vy[i] * vz;
    return v;
}

PathSet PathSet::from_angles(std::vector<cdouble> alpha, std::vector<double> tau,
                             std::vector<double> aod, std::vector<double> aoa)
{
    if (tau.size() != alpha.size() || aod.size() != alpha.size() || aoa.size() != alpha.size())
        throw std::invalid_argument("path parameter vectors differ in length");
    PathSet p;
    p.alpha = std::move(alpha);
    p.tau = std::move(tau);
    p.aod = std::move(aod);
    p.aoa = std::move(aoa);
    p.psi.reserve(p.aod.size());
    p.psi_rx.reserve(p.aoa.size());
    for (double a : p.aod)
        p.psi.push_back(std::sin(a));
    for (double a : p.aoa)
        p.psi_rx.push_back(std::sin(a));
    return p;
}

ChannelRealization build_channel(const SystemConfig& cfg, PathSet paths)
{
    cfg.validate();
    const std::size_t L = paths.size();
    if (L == 0)
        throw std::invalid_argument("channel needs at least one path");
    if (paths.psi.size() != L || paths.psi_rx.size() != L || paths.tau.size() != L)
        throw std::invalid_argument("inconsistent PathSet");

    ChannelRealization ch;
    ch.config = cfg;
    ch.H.assign(static_cast<std::size_t>(cfg.K), CMatrix::Zero(cfg.N_r, cfg.N_t));
    const double scale = std::sqrt(static_cast<double>(cfg.N_r) * cfg.N_t / static_cast<double>(L));
    for (int k = 1; k <= cfg.K; ++k) {
        // Long double keeps the delay phase accurate when tau f reaches ~1e10 cycles.
        const long double fk = static_cast<long double>(cfg.f_c) +
                               static_cast<long double>(cfg.B) / cfg.K * (k - 1 - (cfg.K - 1) / 2.0L);
        const double zk = zeta(cfg, k);
        CMatrix& H = ch.H[static_cast<std::size_t>(k - 1)];
        for (std::size_t l = 0; l < L; ++l) {
            const long double cycles = paths.tau[l] * fk;
            const double frac = static_cast<double>(cycles - std::floor(cycles));
            const cdouble w = scale * paths.alpha[l] * std::polar(1.0, -2.0 * kPi * frac);
            const CVector u = steering_vector(cfg.N_r, zk, paths.psi_rx[l]);
            const CVector v = steering_vector(cfg.N_t, zk, paths.psi[l]);
            H.noalias() += (w * u) * v.adjoint();
        }
    }
    ch.paths = std::move(paths);
    return ch;
}

ChannelRealization sample_channel(const SystemConfig& cfg, Rng& rng)
{
    cfg.validate();
    const auto L = static_cast<std::size_t>(cfg.N_RF);
    std::vector<cdouble> alpha(L);
    std::vector<double> tau(L), aod(L), aoa(L);
    for (std::size_t l = 0; l < L; ++l) {
        alpha[l] = rng.complex_normal();
        tau[l] = rng.uniform(0.0, cfg.tau_max);
        aod[l] = rng.uniform(-kPi / 2.0, kPi / 2.0);
        aoa[l] = rng.uniform(-kPi / 2.0, kPi / 2.0);
    }
    return build_channel(cfg, PathSet::from_angles(std::move(alpha), std::move(tau),
                                                   std::move(aod), std::move(aoa)));
}

}  // namespace squint
