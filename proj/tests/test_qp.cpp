#include <cmath>
#include <sstream>

#include "squint/jointdesign.hpp"
#include "squint/kernels.hpp"
#include "squint/linalg.hpp"
#include "squint/precoders.hpp"
#include "squint/qp.hpp"
#include "test_support.hpp"

using namespace squint;

namespace {

SystemConfig branch_cfg(int N, int M, double t_max, double b_ratio = 0.1, int K = 129)
{
    SystemConfig c;
    c.N = N;
    c.M = M;
    c.N_t = N * M;
    c.N_RF = c.N_r = c.N_s = 1;
    c.t_max = t_max;
    c.B = b_ratio * c.f_c;
    c.K = K;
    return c;
}

double d(Real v)
{
    return static_cast<double>(v);
}

}  // namespace

TEST_CASE("closed-form inverse and its scalar identities")
{
    Rng rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        const int N = 2 + static_cast<int>(rng.uniform() * 31);
        const int M = 1 + static_cast<int>(rng.uniform() * 32);
        const SystemConfig cfg = branch_cfg(N, M, rng.uniform(10e-12, 1e-9), rng.uniform(0.01, 0.2),
                                            3 + 2 * static_cast<int>(rng.uniform() * 127));
        const int m = static_cast<int>(rng.uniform() * M);
        const double psi = rng.uniform(-1.0, 1.0);
        const BranchQP qp = assemble_branch(cfg, psi, 0, m);
        const RMatrix Ci = inverse_closed_form(qp);
        const RMatrix I = RMatrix::Identity(N + 1, N + 1);
        // Entries of C C^{-1} scale like 1/eta; compare relative to that.
        CHECK(d((qp.C * Ci - I).cwiseAbs().maxCoeff() * qp.eta) < 1e-10);
        CHECK(d(Ci(N, N) * qp.eta) == doctest::Approx(1.0).epsilon(1e-12));
        const Real etd = Ci.row(N).dot(qp.d);
        CHECK(d(etd) == doctest::Approx(((2.0 * (m + 1) - 1.0) * N - 1.0) / 2.0 * psi).epsilon(1e-10).scale(1.0));
        // Gamma from the explicit grid equals N + eta.
        long double z2 = 0;
        for (Real z : qp.zeta)
            z2 += z * z;
        CHECK(d(N * z2 / qp.zeta.size()) == doctest::Approx(d(N + qp.eta)).epsilon(1e-13));
        CHECK(qp.C.isApprox(qp.C.transpose()));
        Eigen::LLT<RMatrix> llt(qp.C);
        CHECK(llt.info() == Eigen::Success);
    }
}

TEST_CASE("reference branch values")
{
    const SystemConfig cfg = branch_cfg(16, 16, 340e-12);
    const BranchQP qp = assemble_branch(cfg, 0.8, 0, 0);
    CHECK(d(inverse_closed_form(qp).row(16).dot(qp.d)) == doctest::Approx(6.0).epsilon(1e-12));

    const BranchQP zero = assemble_branch(cfg, 0.0, 0, 3);
    CHECK(zero.d.isZero(0));
    const KktSolution s0 = solve_kkt(zero);
    CHECK(s0.a.isZero(0));
    CHECK(s0.lambda_upper == 0);
    CHECK(s0.lambda_lower == 0);
}

TEST_CASE("KKT interior case")
{
    const SystemConfig cfg = branch_cfg(16, 16, 340e-12);
    const KktSolution s = solve_kkt(assemble_branch(cfg, 0.8, 0, 0));
    CHECK(s.tag == KktCase::Interior);
    CHECK(d(s.a[16]) == doctest::Approx(6.0).epsilon(1e-12));
    for (int n = 1; n <= 16; ++n)
        CHECK(d(s.a[n - 1]) == doctest::Approx((16 - 2 * n + 1) / 2.0 * 0.8).epsilon(1e-11).scale(1.0));
}

TEST_CASE("KKT upper-active case")
{
    const SystemConfig cfg = branch_cfg(16, 16, 320e-12);
    const BranchQP qp = assemble_branch(cfg, 0.8, 0, 15);
    CHECK(d(qp.theta_max) == doctest::Approx(192.0).epsilon(1e-14));
    const KktSolution s = solve_kkt(qp);
    CHECK(s.tag == KktCase::UpperActive);
    CHECK(s.a[16] == qp.theta_max);
    CHECK(s.lambda_upper > 0);
    for (int n = 0; n < 16; ++n)
        CHECK(d(s.a[n]) == doctest::Approx(192.0 - (15 * 16 + n) * 0.8).epsilon(1e-11).scale(1.0));
}

TEST_CASE("KKT lower-active case for negative directions")
{
    const SystemConfig cfg = branch_cfg(8, 4, 100e-12);
    const KktSolution s = solve_kkt(assemble_branch(cfg, -0.5, 0, 2));
    CHECK(s.tag == KktCase::LowerActive);
    CHECK(s.a[8] == 0);
    CHECK(s.lambda_lower > 0);
}

TEST_CASE("KKT conditions hold on random branches")
{
    Rng rng(101);
    for (int trial = 0; trial < 500; ++trial) {
        const int N = 2 + static_cast<int>(rng.uniform() * 31);
        const int M = 1 + static_cast<int>(rng.uniform() * 32);
        const SystemConfig cfg = branch_cfg(N, M, rng.uniform(10e-12, 1e-9), rng.uniform(0.01, 0.2),
                                            3 + 2 * static_cast<int>(rng.uniform() * 127));
        const BranchQP qp = assemble_branch(cfg, rng.uniform(-1.0, 1.0), 0, static_cast<int>(rng.uniform() * M));
        const KktSolution s = solve_kkt(qp);
        RVector station = 2 * qp.C * s.a - 2 * qp.d;
        station[N] += s.lambda_upper - s.lambda_lower;
        CHECK(d(station.cwiseAbs().maxCoeff()) < 1e-9);
        CHECK(d(std::abs(s.lambda_upper * (s.a[N] - qp.theta_max))) < 1e-9);
        CHECK(d(std::abs(s.lambda_lower * s.a[N])) < 1e-9);
        CHECK(s.a[N] >= 0);
        CHECK(s.a[N] <= qp.theta_max);
        CHECK(s.lambda_upper >= 0);
        CHECK(s.lambda_lower >= 0);
    }
}

TEST_CASE("iterative solver agrees with KKT and the closed-form design")
{
    const auto inst = random_oracle_instances(200, 99);
    for (const auto& r : oracle_sweep_serial(inst, 1e-10L))
        CHECK(r.max_abs_diff < 1e-8);
}

TEST_CASE("iterative solver optimality and degenerate box")
{
    const SystemConfig cfg = branch_cfg(12, 6, 200e-12, 0.05, 33);
    const BranchQP qp = assemble_branch(cfg, 0.9, 0, 5);
    const ProjectedResult r = solve_projected(qp, 1e-10L);
    CHECK(r.residual <= 1e-10L);
    RVector clipped = inverse_closed_form(qp) * qp.d;
    clipped[12] = std::clamp(clipped[12], Real(0), qp.theta_max);
    CHECK(objective(qp, r.a) <= objective(qp, RVector::Zero(13)));
    CHECK(objective(qp, r.a) <= objective(qp, clipped) + 1e-12L);

    SystemConfig flat = cfg;
    flat.t_max = 0.0;
    const BranchQP q0 = assemble_branch(flat, 0.9, 0, 5);
    CHECK(solve_projected(q0, 1e-10L).a[12] == 0);
    CHECK(solve_kkt(q0).a[12] == 0);

    CHECK_THROWS_AS(solve_projected(qp, 1e-10L, 3), NumericalError);
    CHECK_THROWS_AS(solve_projected(qp, 0.0L), std::invalid_argument);
}

TEST_CASE("zero bandwidth is rejected as degenerate")
{
    SystemConfig cfg = branch_cfg(4, 4, 100e-12);
    cfg.B = 0.0;
    CHECK_THROWS_AS(assemble_branch(cfg, 0.5, 0, 0), std::domain_error);
    cfg = branch_cfg(4, 4, 100e-12, 0.1, 1);
    CHECK_THROWS_AS(assemble_branch(cfg, 0.5, 0, 0), std::domain_error);
    CHECK_THROWS_AS(assemble_branch(branch_cfg(4, 4, 1e-10), 0.5, 0, 4), std::out_of_range);
}

TEST_CASE("expanded and residual objectives differ by a constant")
{
    const SystemConfig cfg = branch_cfg(6, 3, 150e-12, 0.1, 11);
    const BranchQP qp = assemble_branch(cfg, 0.7, 0, 1);
    Rng rng(4);
    Real offset = 0;
    for (int trial = 0; trial < 20; ++trial) {
        RVector a(7);
        for (int i = 0; i < 7; ++i)
            a[i] = rng.uniform(-20.0, 20.0);
        const Real diff = residual_objective(qp, a) - objective(qp, a);
        if (trial == 0)
            offset = diff;
        CHECK(d(diff) == doctest::Approx(d(offset)).epsilon(1e-12));
    }
}

TEST_CASE("Frobenius mismatch equals the phase-domain chord sum")
{
    // Brute-force entry enumeration on small arrays; residuals kept inside
    // (-1, 1) pi-units so the chord/arc map is monotone.
    Rng rng(8);
    int checked = 0;
    for (int trial = 0; trial < 200 && checked < 40; ++trial) {
        SystemConfig cfg;
        cfg.N = 1 + static_cast<int>(rng.uniform() * 4);
        cfg.M = 1 + static_cast<int>(rng.uniform() * 4);
        cfg.N_t = cfg.N * cfg.M;
        cfg.N_RF = cfg.N_r = cfg.N_s = 1;
        cfg.K = 1 + 2 * static_cast<int>(rng.uniform() * 3);
        cfg.t_max = 1e-9;
        const double psi = rng.uniform(0.0, 0.3);
        // Perturb the matched design so the residuals stay small.
        AnalogDesign des = AnalogDesign::zeros(cfg);
        for (int m = 0; m < cfg.M; ++m) {
            const double th = m * cfg.N * psi + rng.uniform(0.0, 0.3);
            des.t[static_cast<std::size_t>(m)] = th / (2.0 * cfg.f_c);
            for (int n = 0; n < cfg.N; ++n)
                des.x[static_cast<std::size_t>(m * cfg.N + n)] = -n * psi + rng.uniform(-0.3, 0.3);
        }
        double frob = 0.0, chord = 0.0;
        bool in_range = true;
        for (int k = 1; k <= cfg.K; ++k) {
            const double z = zeta(cfg, k);
            const CMatrix ideal = ideal_precoder(cfg, std::vector<double>{psi}, k);
            frob += (ideal - composite(des, cfg, k)).squaredNorm();
            for (int m = 0; m < cfg.M; ++m)
                for (int n = 0; n < cfg.N; ++n) {
                    const double gamma = (m * cfg.N + n) * psi;
                    const double r = des.phase(0, m, n) - z * des.theta(0, m, cfg.f_c) + z * gamma;
                    in_range = in_range && std::abs(r) < 1.0;
                    chord += 4.0 / cfg.N_t * std::pow(std::sin(kPi * r / 2.0), 2);
                }
        }
        if (!in_range)
            continue;
        ++checked;
        CHECK(frob / cfg.K == doctest::Approx(chord / cfg.K).epsilon(1e-12).scale(1.0));
    }
    CHECK(checked >= 20);
}

TEST_CASE("chord and arc distances are minimized together")
{
    const auto same = phase_distance_equiv(0.4, 0.4);
    CHECK(same.chord == 0.0);
    CHECK(same.arc == 0.0);
    double prev_chord = -1.0;
    for (int i = 1; i < 1000; ++i) {
        const double gap = kPi * i / 1000.0;
        const auto pd = phase_distance_equiv(1.0, 1.0 + gap);
        CHECK(pd.chord == doctest::Approx(2.0 * std::sin(pd.arc / 2.0)).epsilon(1e-12));
        CHECK(pd.chord > prev_chord);
        prev_chord = pd.chord;
    }
}

TEST_CASE("oracle records export as CSV")
{
    const auto rows = oracle_sweep_serial(random_oracle_instances(3, 1), 1e-9L);
    std::ostringstream os;
    write_oracle_csv(os, rows);
    const std::string s = os.str();
    CHECK(s.rfind("l,m,N,psi,f_c,t_max,kkt_case,theta_kkt,theta_projected,theta_design,max_abs_diff,iterations\n", 0) ==
          0);
    CHECK(std::count(s.begin(), s.end(), '\n') == 4);
}
