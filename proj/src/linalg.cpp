#include "squint/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <vector>

namespace squint {

namespace {

double off_diagonal_mass(const CMatrix& A)
{
    double s = 0.0;
    for (Eigen::Index j = 0; j < A.cols(); ++j)
        for (Eigen::Index i = 0; i < A.rows(); ++i)
            if (i != j)
                s += std::norm(A(i, j));
    return std::sqrt(s);
}

// Zero A(p,q) with the unitary U = diag(1, e^{-i phi}) * [[c, s], [-s, c]]
// acting on the (p,q) plane, where A(p,q) = |a| e^{i phi}.
void rotate(CMatrix& A, CMatrix& V, Eigen::Index p, Eigen::Index q)
{
    const cdouble apq = A(p, q);
    const double mag = std::abs(apq);
    if (mag == 0.0)
        return;
    const cdouble phase = apq / mag;  // e^{i phi}
    const double app = A(p, p).real();
    const double aqq = A(q, q).real();
    const double theta = (aqq - app) / (2.0 * mag);
    const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
    const double c = 1.0 / std::sqrt(t * t + 1.0);
    const double s = t * c;

    const cdouble upp = c;
    const cdouble upq = s;
    const cdouble uqp = -s * std::conj(phase);
    const cdouble uqq = c * std::conj(phase);

    const Eigen::Index n = A.rows();
    for (Eigen::Index i = 0; i < n; ++i) {  // A <- A U
        const cdouble aip = A(i, p);
        const cdouble aiq = A(i, q);
        A(i, p) = aip * upp + aiq * uqp;
        A(i, q) = aip * upq + aiq * uqq;
    }
    for (Eigen::Index j = 0; j < n; ++j) {  // A <- U^H A
        const cdouble apj = A(p, j);
        const cdouble aqj = A(q, j);
        A(p, j) = std::conj(upp) * apj + std::conj(uqp) * aqj;
        A(q, j) = std::conj(upq) * apj + std::conj(uqq) * aqj;
    }
    for (Eigen::Index i = 0; i < V.rows(); ++i) {  // V <- V U
        const cdouble vip = V(i, p);
        const cdouble viq = V(i, q);
        V(i, p) = vip * upp + viq * uqp;
        V(i, q) = vip * upq + viq * uqq;
    }
    A(p, q) = 0.0;
    A(q, p) = 0.0;
    A(p, p) = A(p, p).real();
    A(q, q) = A(q, q).real();
}

}  // namespace

HermitianEigen hermitian_eigen(const CMatrix& input, double tol, int max_sweeps)
{
    if (input.rows() != input.cols())
        throw std::invalid_argument("hermitian_eigen: matrix must be square");
    const Eigen::Index n = input.rows();

    // Symmetrize; callers pass Gram matrices that are Hermitian up to rounding.
    CMatrix A = 0.5 * (input + input.adjoint());
    CMatrix V = CMatrix::Identity(n, n);
    const double scale = A.norm();

    int sweep = 0;
    double off = off_diagonal_mass(A);
    while (off > tol * scale) {
        if (sweep == max_sweeps) {
            std::ostringstream msg;
            msg << "hermitian_eigen: no convergence after " << max_sweeps
                << " sweeps, off-diagonal mass " << off << " vs bound " << tol * scale;
            throw NumericalError(msg.str());
        }
        for (Eigen::Index p = 0; p + 1 < n; ++p)
            for (Eigen::Index q = p + 1; q < n; ++q)
                rotate(A, V, p, q);
        ++sweep;
        off = off_diagonal_mass(A);
    }

    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
        return A(a, a).real() > A(b, b).real();
    });

    HermitianEigen out;
    out.sweeps = sweep;
    out.values.resize(n);
    out.vectors.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const Eigen::Index src = order[static_cast<std::size_t>(i)];
        out.values[i] = A(src, src).real();
        CVector v = V.col(src);
        Eigen::Index imax = 0;
        v.cwiseAbs().maxCoeff(&imax);
        const double mag = std::abs(v[imax]);
        if (mag > 0.0)
            v *= std::conj(v[imax]) / mag;
        v[imax] = v[imax].real();
        out.vectors.col(i) = v;
    }
    return out;
}

}  // namespace squint
