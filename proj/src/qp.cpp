#include "squint/qp.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "squint/linalg.hpp"

namespace squint {

namespace {

Real eta_extended(const SystemConfig& cfg)
{
    const Real ratio = static_cast<Real>(cfg.B) / static_cast<Real>(cfg.f_c);
    const Real k2 = static_cast<Real>(cfg.K) * cfg.K;
    return cfg.N * ratio * ratio * (k2 - 1) / (12 * k2);
}

Real gamma_at(const BranchQP& qp, int n)
{
    return (static_cast<Real>(qp.m) * qp.N + n) * static_cast<Real>(qp.psi);
}

// C a without forming C.
RVector apply_c(const BranchQP& qp, const RVector& a)
{
    const int N = qp.N;
    RVector out(N + 1);
    const Real theta = a[N];
    Real sum = 0;
    for (int n = 0; n < N; ++n) {
        out[n] = a[n] - theta;
        sum += a[n];
    }
    out[N] = -sum + (static_cast<Real>(N) + qp.eta) * theta;
    return out;
}

void project(RVector& a, Real theta_max)
{
    const Eigen::Index last = a.size() - 1;
    a[last] = std::clamp(a[last], Real(0), theta_max);
}

}  // namespace

BranchQP assemble_branch(const SystemConfig& cfg, double psi, int l, int m)
{
    cfg.validate();
    if (!(std::abs(psi) <= 1.0))
        throw std::invalid_argument("spatial direction must satisfy |psi| <= 1");
    if (m < 0 || m >= cfg.M || l < 0 || l >= cfg.N_RF)
        throw std::out_of_range("branch index out of range");

    BranchQP qp;
    qp.l = l;
    qp.m = m;
    qp.N = cfg.N;
    qp.psi = psi;
    qp.eta = eta_extended(cfg);
    if (!(qp.eta > 0))
        throw std::domain_error("assemble_branch: eta = 0 (B = 0 or K = 1) makes C singular");
    qp.theta_max = 2 * static_cast<Real>(cfg.f_c) * static_cast<Real>(cfg.t_max);

    const Real ratio = static_cast<Real>(cfg.B) / static_cast<Real>(cfg.f_c);
    qp.zeta.resize(static_cast<std::size_t>(cfg.K));
    Real mean_z = 0;
    Real mean_z2 = 0;
    for (int k = 0; k < cfg.K; ++k) {
        const Real c = static_cast<Real>(k) - static_cast<Real>(cfg.K - 1) / 2;
        const Real z = 1 + ratio * (c / cfg.K);
        qp.zeta[static_cast<std::size_t>(k)] = z;
        mean_z += z;
        mean_z2 += z * z;
    }
    mean_z /= cfg.K;
    mean_z2 /= cfg.K;

    const int N = cfg.N;
    qp.C = RMatrix::Identity(N + 1, N + 1);
    for (int n = 0; n < N; ++n) {
        qp.C(n, N) = -1;
        qp.C(N, n) = -1;
    }
    qp.C(N, N) = static_cast<Real>(N) + qp.eta;

    // d = (1/K) sum_k C_k^T b_k with C_k = [I, -zeta_k 1], b_k = -zeta_k gamma.
    qp.d.resize(N + 1);
    Real sum_gamma = 0;
    for (int n = 0; n < N; ++n) {
        const Real g = gamma_at(qp, n);
        qp.d[n] = -g * mean_z;
        sum_gamma += g;
    }
    qp.d[N] = mean_z2 * sum_gamma;
    return qp;
}

RMatrix inverse_closed_form(const BranchQP& qp)
{
    const int N = qp.N;
    const Real inv = 1 / qp.eta;
    RMatrix Ci = RMatrix::Constant(N + 1, N + 1, inv);
    for (int n = 0; n < N; ++n)
        Ci(n, n) += 1;
    return Ci;
}

Real objective(const BranchQP& qp, const RVector& a)
{
    return a.dot(apply_c(qp, a)) - 2 * qp.d.dot(a);
}

Real residual_objective(const BranchQP& qp, const RVector& a)
{
    const int N = qp.N;
    Real total = 0;
    for (Real z : qp.zeta)
        for (int n = 0; n < N; ++n) {
            const Real r = a[n] - z * a[N] + z * gamma_at(qp, n);
            total += r * r;
        }
    return total / static_cast<Real>(qp.zeta.size());
}

const char* to_string(KktCase c)
{
    switch (c) {
    case KktCase::Interior: return "interior";
    case KktCase::UpperActive: return "upper";
    case KktCase::LowerActive: return "lower";
    }
    return "unknown";
}

KktSolution solve_kkt(const BranchQP& qp)
{
    const int N = qp.N;
    const RMatrix Ci = inverse_closed_form(qp);
    const RVector a_free = Ci * qp.d;
    const Real theta_free = a_free[N];
    const RVector ci_e = Ci.col(N);  // C^{-1} e

    KktSolution s;
    if (theta_free > qp.theta_max) {
        s.tag = KktCase::UpperActive;
        s.lambda_upper = 2 * qp.eta * (theta_free - qp.theta_max);
        s.a = a_free - (s.lambda_upper / 2) * ci_e;
        s.a[N] = qp.theta_max;
    } else if (theta_free < 0) {
        s.tag = KktCase::LowerActive;
        s.lambda_lower = -2 * qp.eta * theta_free;
        s.a = a_free + (s.lambda_lower / 2) * ci_e;
        s.a[N] = 0;
    } else {
        s.tag = KktCase::Interior;
        s.a = a_free;
    }

    RVector station = 2 * apply_c(qp, s.a) - 2 * qp.d;
    station[N] += s.lambda_upper - s.lambda_lower;
    const Real stat = station.cwiseAbs().maxCoeff();
    const Real slack_u = std::abs(s.lambda_upper * (s.a[N] - qp.theta_max));
    const Real slack_l = std::abs(s.lambda_lower * s.a[N]);
    const bool feasible = s.a[N] >= 0 && s.a[N] <= qp.theta_max;
    const bool signs = s.lambda_upper >= 0 && s.lambda_lower >= 0;
    if (!(stat < 1e-9L && slack_u < 1e-9L && slack_l < 1e-9L && feasible && signs)) {
        std::ostringstream msg;
        msg << "solve_kkt: case " << to_string(s.tag) << " fails its KKT check (stationarity "
            << static_cast<double>(stat) << ", slackness " << static_cast<double>(slack_u) << "/"
            << static_cast<double>(slack_l) << ")";
        throw std::logic_error(msg.str());
    }
    return s;
}

ProjectedResult solve_projected(const BranchQP& qp, Real tol, int max_iter)
{
    if (!(tol > 0))
        throw std::invalid_argument("solve_projected: tol must be > 0");
    const int N = qp.N;
    const Real gamma = static_cast<Real>(N) + qp.eta;
    const Real L = gamma + N;  // Gershgorin bound on lambda_max(C)
    // Smallest eigenvalue of C: the pair on span{1, e} has product eta and sum 1 + Gamma.
    const Real s = 1 + gamma;
    const Real mu = std::min(Real(1), 2 * qp.eta / (s + std::sqrt(s * s - 4 * qp.eta)));

    // Work with f(a) = a^T C a / 2 - d^T a, same minimizer, gradient C a - d.
    auto grad = [&](const RVector& a) { return RVector(apply_c(qp, a) - qp.d); };
    auto bound = [&](const RVector& a) {
        RVector next = a - grad(a) / L;
        project(next, qp.theta_max);
        return 2 * L * (a - next).norm() / mu;
    };

    RVector x = RVector::Zero(N + 1);
    RVector y = x;
    Real t = 1;
    ProjectedResult out;
    Real res = bound(x);
    int it = 0;
    while (res > tol) {
        if (it == max_iter) {
            std::ostringstream msg;
            msg << "solve_projected: no convergence after " << max_iter
                << " iterations, residual " << static_cast<double>(res);
            throw NumericalError(msg.str());
        }
        RVector x_new = y - grad(y) / L;
        project(x_new, qp.theta_max);
        if ((y - x_new).dot(x_new - x) > 0) {
            t = 1;
            y = x_new;
        } else {
            const Real t_new = (1 + std::sqrt(1 + 4 * t * t)) / 2;
            y = x_new + ((t - 1) / t_new) * (x_new - x);
            t = t_new;
        }
        x = std::move(x_new);
        ++it;
        res = bound(x);
    }
    out.a = std::move(x);
    out.iterations = it;
    out.residual = res;
    return out;
}

PhaseDistance phase_distance_equiv(double x, double y)
{
    return {std::abs(std::polar(1.0, x) - std::polar(1.0, y)), std::abs(x - y)};
}

void write_oracle_csv(std::ostream& os, const std::vector<OracleRecord>& rows)
{
    os << "l,m,N,psi,f_c,t_max,kkt_case,theta_kkt,theta_projected,theta_design,max_abs_diff,iterations\n";
    const auto old = os.precision(17);
    for (const auto& r : rows)
        os << r.l << ',' << r.m << ',' << r.N << ',' << r.psi << ',' << r.f_c << ',' << r.t_max << ','
           << r.kkt_case << ',' << r.theta_kkt << ',' << r.theta_projected << ',' << r.theta_design
           << ',' << r.max_abs_diff << ',' << r.iterations << '\n';
    os.precision(old);
}

}  // namespace squint
