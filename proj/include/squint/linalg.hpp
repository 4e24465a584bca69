#pragma once

#include <stdexcept>
#include <string>

#include "squint/model.hpp"

namespace squint {

// Raised when an iterative numerical routine fails; the message carries the
// residual that was reached.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

struct HermitianEigen {
    Eigen::VectorXd values;  // descending
    CMatrix vectors;         // column i pairs with values[i]
    int sweeps = 0;
};

// Cyclic Jacobi for small Hermitian matrices. Stops once the off-diagonal
// Frobenius mass drops below tol * ||A||_F. Each eigenvector is rotated so
// that its largest-magnitude entry is real and positive.
HermitianEigen hermitian_eigen(const CMatrix& A, double tol = 1e-12, int max_sweeps = 100);

}  // namespace squint
