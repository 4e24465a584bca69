#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "squint/model.hpp"

namespace squint {

// Extended precision for the oracle: C has condition numbers up to ~1e6 on
// realistic grids, which leaves too little headroom in double for 1e-8 checks.
using Real = long double;
using RMatrix = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
using RVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

// Per-(l, m) phase-domain least-squares problem over a = [x_1..x_N, theta]:
//   minimize a^T C a - 2 d^T a  subject to 0 <= theta <= theta_max.
// theta is the delay in pi-units (2 f_c t).
struct BranchQP {
    RMatrix C;
    RVector d;
    Real theta_max = 0;
    Real eta = 0;
    int l = 0;
    int m = 0;  // 0-based
    int N = 0;
    double psi = 0.0;
    std::vector<Real> zeta;  // subcarrier grid the branch was built on
};

// Throws std::domain_error when eta == 0 (B == 0 or K == 1): C is singular.
BranchQP assemble_branch(const SystemConfig& cfg, double psi, int l, int m);

// C^{-1} from the block identity; no factorization involved.
RMatrix inverse_closed_form(const BranchQP& qp);

// a^T C a - 2 d^T a.
Real objective(const BranchQP& qp, const RVector& a);
// (1/K) sum_k sum_n (x_n - zeta_k theta + zeta_k gamma_n)^2, the unexpanded
// form; differs from objective() by a constant.
Real residual_objective(const BranchQP& qp, const RVector& a);

enum class KktCase { Interior, UpperActive, LowerActive };
const char* to_string(KktCase c);

struct KktSolution {
    RVector a;
    Real lambda_upper = 0;  // multiplier of theta <= theta_max
    Real lambda_lower = 0;  // multiplier of theta >= 0
    KktCase tag = KktCase::Interior;
};

// Enumerates the KKT cases of the box-constrained problem. Throws
// std::logic_error if the selected case fails its own stationarity,
// slackness or sign checks.
KktSolution solve_kkt(const BranchQP& qp);

struct ProjectedResult {
    RVector a;
    int iterations = 0;
    Real residual = 0;  // bound on ||a - a*||_2 at exit
};

// Accelerated projected gradient with adaptive restart, step 1/(Gamma + N).
// Stops when the gradient-mapping bound on ||a - a*||_2 is <= tol; throws
// NumericalError with the reached residual after max_iter iterations.
ProjectedResult solve_projected(const BranchQP& qp, Real tol = 1e-11L, int max_iter = 2'000'000);

struct PhaseDistance {
    double chord;  // |e^{jx} - e^{jy}|
    double arc;    // |x - y|
};
PhaseDistance phase_distance_equiv(double x, double y);

struct OracleRecord {
    int l = 0;
    int m = 0;
    int N = 0;
    double psi = 0.0;
    double f_c = 0.0;
    double t_max = 0.0;
    std::string kkt_case;
    double theta_kkt = 0.0;
    double theta_projected = 0.0;
    double theta_design = 0.0;
    double max_abs_diff = 0.0;  // max over all N+1 coordinates, design vs KKT vs projected
    int iterations = 0;
};

void write_oracle_csv(std::ostream& os, const std::vector<OracleRecord>& rows);

}  // namespace squint
