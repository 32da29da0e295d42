#include "orbisymp/linalg.hpp"

#include <cmath>
#include <unsupported/Eigen/MatrixFunctions>
#include <vector>

namespace orbisymp {

Mat2 matrix_exp(const Mat2& x) { return x.exp(); }
Mat3 matrix_exp(const Mat3& x) { return x.exp(); }

double identity_distance(const Mat3& m) { return (m - Mat3::Identity()).norm(); }

Mat2 rotation_about_i(double phi) {
  Mat2 r;
  r << std::cos(phi), -std::sin(phi), std::sin(phi), std::cos(phi);
  return r;
}

Mat2 translation_along_axis(double l) {
  Mat2 t = Mat2::Zero();
  t(0, 0) = std::exp(l / 2.0);
  t(1, 1) = std::exp(-l / 2.0);
  return t;
}

Mat2 move_i_to(const std::complex<double>& target) {
  double x = target.real(), y = target.imag();
  Mat2 g = Mat2::Zero();
  double s = std::sqrt(y);
  g(0, 0) = s;
  g(0, 1) = x / s;
  g(1, 1) = 1.0 / s;
  return g;
}

std::complex<double> mobius(const Mat2& g, const std::complex<double>& z) {
  return (g(0, 0) * z + g(0, 1)) / (g(1, 0) * z + g(1, 1));
}

std::vector<std::complex<double>> circle_centers(int count, double radius) {
  std::vector<std::complex<double>> points;
  points.reserve(count);
  for (int k = 0; k < count; ++k) {
    double theta = 2.0 * M_PI * k / count;
    Mat2 g = rotation_about_i(theta / 2.0) * translation_along_axis(radius);
    points.push_back(mobius(g, std::complex<double>(0.0, 1.0)));
  }
  return points;
}

Vec3 sl2_coordinates(const Mat2& x) {
  return Vec3(x(0, 0), (x(0, 1) + x(1, 0)) / 2.0, (x(0, 1) - x(1, 0)) / 2.0);
}

Mat2 sl2_element(const Vec3& v) {
  Mat2 x;
  x << v(0), v(1) + v(2), v(1) - v(2), -v(0);
  return x;
}

Mat3 adjoint_so21(const Mat2& g) {
  Mat2 ginv = Mat2::Zero();
  ginv(0, 0) = g(1, 1);
  ginv(0, 1) = -g(0, 1);
  ginv(1, 0) = -g(1, 0);
  ginv(1, 1) = g(0, 0);
  Mat3 ad;
  for (int j = 0; j < 3; ++j) {
    Vec3 e = Vec3::Zero();
    e(j) = 1.0;
    ad.col(j) = sl2_coordinates(g * sl2_element(e) * ginv);
  }
  return ad;
}

const std::array<Mat3, 8>& sl3_basis() {
  static const std::array<Mat3, 8> basis = [] {
    std::array<Mat3, 8> b;
    int n = 0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        if (i == j) continue;
        b[n] = Mat3::Zero();
        b[n](i, j) = 1.0;
        ++n;
      }
    b[6] = Mat3::Zero();
    b[6].diagonal() << 1.0, -1.0, 0.0;
    b[7] = Mat3::Zero();
    b[7].diagonal() << 0.0, 1.0, -1.0;
    return b;
  }();
  return basis;
}

const std::array<Mat3, 8>& sl3_frob_basis() {
  static const std::array<Mat3, 8> basis = [] {
    std::array<Mat3, 8> b = sl3_basis();
    b[6].diagonal() << 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0), 0.0;
    b[7].diagonal() << 1.0 / std::sqrt(6.0), 1.0 / std::sqrt(6.0), -2.0 / std::sqrt(6.0);
    return b;
  }();
  return basis;
}

Eigen::Matrix<double, 9, 1> vec9(const Mat3& m) {
  Eigen::Matrix<double, 9, 1> v;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) v(3 * i + j) = m(i, j);
  return v;
}

Mat3 unvec9(const Eigen::Matrix<double, 9, 1>& v) {
  Mat3 m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = v(3 * i + j);
  return m;
}

Eigen::VectorXd min_norm_solve(const Eigen::MatrixXd& J, const Eigen::VectorXd& r,
                               double cutoff) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(J, Eigen::ComputeThinU | Eigen::ComputeThinV);
  svd.setThreshold(cutoff);
  return svd.solve(r);
}

}  // namespace orbisymp
