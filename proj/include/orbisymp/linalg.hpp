#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <vector>

namespace orbisymp {

using Mat2 = Eigen::Matrix2d;
using Mat3 = Eigen::Matrix3d;
using Vec3 = Eigen::Vector3d;

Mat2 matrix_exp(const Mat2& x);
Mat3 matrix_exp(const Mat3& x);

// Frobenius distance to the identity.
double identity_distance(const Mat3& m);

// --- Hyperbolic plane via SL(2,R) acting on the upper half plane ---

// [[cos phi, -sin phi], [sin phi, cos phi]]; as a Moebius map this rotates
// the upper half plane about i by the angle 2*phi.
Mat2 rotation_about_i(double phi);

// diag(e^{l/2}, e^{-l/2}): translation by l along the imaginary axis.
Mat2 translation_along_axis(double l);

// Unique upper-triangular positive element sending i to x + iy (y > 0).
Mat2 move_i_to(const std::complex<double>& target);

std::complex<double> mobius(const Mat2& g, const std::complex<double>& z);

// Points at hyperbolic distance `radius` from i, at equally spaced
// directions, as upper-half-plane coordinates.
std::vector<std::complex<double>> circle_centers(int count, double radius);

// --- The adjoint embedding SL(2,R) -> SO(2,1) < SL(3,R) ---

// Matrix of X -> g X g^{-1} on sl(2,R) in the basis
//   B1 = [[1,0],[0,-1]], B2 = [[0,1],[1,0]], B3 = [[0,1],[-1,0]],
// orthogonal for the form <A,B> = Tr(AB) of signature (+,+,-).
Mat3 adjoint_so21(const Mat2& g);

// Coordinates in the basis B1, B2, B3 above, and back.
Mat2 sl2_element(const Vec3& coords);
Vec3 sl2_coordinates(const Mat2& x);

// Fixed ordered basis of sl(3,R): the six off-diagonal units E_ij in
// row-major order (12,13,21,23,31,32), then diag(1,-1,0), diag(0,1,-1).
const std::array<Mat3, 8>& sl3_basis();

// Frobenius-orthonormal variant: same off-diagonal units, then
// diag(1,-1,0)/sqrt(2), diag(1,1,-2)/sqrt(6).
const std::array<Mat3, 8>& sl3_frob_basis();

// Row-major stacking of a 3x3 matrix into R^9 and back.
Eigen::Matrix<double, 9, 1> vec9(const Mat3& m);
Mat3 unvec9(const Eigen::Matrix<double, 9, 1>& v);

// Minimum-norm least-squares solution of J x = r via SVD, dropping singular
// values below cutoff * largest.
Eigen::VectorXd min_norm_solve(const Eigen::MatrixXd& J, const Eigen::VectorXd& r,
                               double cutoff = 1e-12);

}  // namespace orbisymp
