#ifndef MUNORM_TYPES_HPP
#define MUNORM_TYPES_HPP

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace munorm {

using Real = double;
using Complex = std::complex<Real>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

// Input that violates a documented precondition (bad weights, mismatched
// sizes, non-measure-preserving maps, ...).
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A configured computational cap (term count, band, period) would be exceeded.
class CapError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// 0 log 0 = 0.
inline Real xlogx(Real p) { return p > 0.0 ? p * std::log(p) : 0.0; }

}  // namespace munorm

#endif  // MUNORM_TYPES_HPP
