#include "squint/precoders.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "squint/linalg.hpp"

namespace squint {

namespace {

void check_shape(const AnalogDesign& d, const SystemConfig& cfg)
{
    if (d.N_RF != cfg.N_RF || d.M != cfg.M || d.N != cfg.N)
        throw std::invalid_argument("AnalogDesign dimensions do not match SystemConfig");
    const auto branches = static_cast<std::size_t>(d.N_RF) * d.M;
    if (d.t.size() != branches || d.x.size() != branches * static_cast<std::size_t>(d.N))
        throw std::invalid_argument("AnalogDesign storage size mismatch");
}

}  // namespace

AnalogDesign::AnalogDesign(int n_rf, int m, int n)
    : N_RF(n_rf), M(m), N(n),
      x(static_cast<std::size_t>(n_rf) * m * n, 0.0),
      t(static_cast<std::size_t>(n_rf) * m, 0.0)
{
}

void AnalogDesign::validate(const SystemConfig& cfg) const
{
    check_shape(*this, cfg);
    for (double v : t)
        if (!(v >= 0.0 && v <= cfg.t_max))
            throw std::invalid_argument("TTD delay " + std::to_string(v) +
                                        " s outside [0, t_max]");
}

CMatrix build_ps_matrix(const AnalogDesign& design, const SystemConfig& cfg)
{
    check_shape(design, cfg);
    const double scale = 1.0 / std::sqrt(static_cast<double>(cfg.N_t));
    CMatrix F1 = CMatrix::Zero(cfg.N_t, static_cast<Eigen::Index>(cfg.M) * cfg.N_RF);
    for (int l = 0; l < cfg.N_RF; ++l)
        for (int m = 0; m < cfg.M; ++m)
            for (int n = 0; n < cfg.N; ++n)
                F1(m * cfg.N + n, l * cfg.M + m) = std::polar(scale, kPi * design.phase(l, m, n));
    return F1;
}

CMatrix build_ttd_matrix(const AnalogDesign& design, const SystemConfig& cfg, int k)
{
    check_shape(design, cfg);
    const double fk = subcarrier_frequency(cfg, k);
    CMatrix F2 = CMatrix::Zero(static_cast<Eigen::Index>(cfg.M) * cfg.N_RF, cfg.N_RF);
    for (int l = 0; l < cfg.N_RF; ++l)
        for (int m = 0; m < cfg.M; ++m)
            F2(l * cfg.M + m, l) = std::polar(1.0, -2.0 * kPi * fk * design.delay(l, m));
    return F2;
}

CMatrix composite(const AnalogDesign& design, const SystemConfig& cfg, int k)
{
    return build_ps_matrix(design, cfg) * build_ttd_matrix(design, cfg, k);
}

CVector composite_column(const AnalogDesign& design, const SystemConfig& cfg, int k, int l)
{
    check_shape(design, cfg);
    if (l < 0 || l >= cfg.N_RF)
        throw std::out_of_range("RF chain index out of range");
    const double fk = subcarrier_frequency(cfg, k);
    const double scale = 1.0 / std::sqrt(static_cast<double>(cfg.N_t));
    CVector f(cfg.N_t);
    for (int m = 0; m < cfg.M; ++m) {
        const cdouble ttd = std::polar(1.0, -2.0 * kPi * fk * design.delay(l, m));
        for (int n = 0; n < cfg.N; ++n)
            f[m * cfg.N + n] = std::polar(scale, kPi * design.phase(l, m, n)) * ttd;
    }
    return f;
}

CMatrix ideal_precoder(const SystemConfig& cfg, std::span<const double> psi, int k)
{
    CMatrix F(cfg.N_t, static_cast<Eigen::Index>(psi.size()));
    for (std::size_t l = 0; l < psi.size(); ++l)
        F.col(static_cast<Eigen::Index>(l)) = ula_response(cfg, k, psi[l]);
    return F;
}

CMatrix digital_precoder(const CMatrix& H, const CMatrix& F, int n_s)
{
    if (H.cols() != F.rows())
        throw std::invalid_argument("digital_precoder: H and F are not conformable");
    if (n_s < 1 || n_s > F.cols())
        throw std::invalid_argument("digital_precoder: N_s must be in 1..N_RF");
    const CMatrix Ht = H * F;
    const HermitianEigen eig = hermitian_eigen(Ht.adjoint() * Ht);
    CMatrix W = eig.vectors.leftCols(n_s);
    const double norm = (F * W).norm();
    if (!(norm > 0.0))
        throw NumericalError("digital_precoder: F W vanishes, cannot normalize");
    W *= std::sqrt(static_cast<double>(n_s)) / norm;
    return W;
}

PrecoderSet materialize(const AnalogDesign& design, const SystemConfig& cfg,
                        std::span<const double> psi, const ChannelRealization* channel)
{
    PrecoderSet set;
    set.F1 = build_ps_matrix(design, cfg);
    const auto K = static_cast<std::size_t>(cfg.K);
    set.F2.resize(K);
    set.F.resize(K);
    set.F_ideal.resize(K);
    if (channel)
        set.W.resize(K);
    for (int k = 1; k <= cfg.K; ++k) {
        const auto i = static_cast<std::size_t>(k - 1);
        set.F2[i] = build_ttd_matrix(design, cfg, k);
        set.F[i] = set.F1 * set.F2[i];
        set.F_ideal[i] = ideal_precoder(cfg, psi, k);
        if (channel)
            set.W[i] = digital_precoder(channel->at(k), set.F[i], cfg.N_s);
    }
    return set;
}

}  // namespace squint
