// SPDX-License-Identifier: Apache-2.0
//
// chanex - lower bounds and estimators for frequency extrapolation of
// specular multipath channels.

#include "chanex/array_geometry.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace chanex {

namespace {
constexpr double kPi = std::numbers::pi;

Eigen::Vector3d direction(double phi, double theta) {
    return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
            std::cos(theta)};
}
}  // namespace

void ArrayGeometry::validate() const {
    if (positions.cols() < 1)
        throw std::invalid_argument("array: at least one element required");
    if (wavelength <= 0.0)
        throw std::invalid_argument("array: wavelength must be positive");
}

ArrayGeometry ArrayGeometry::single_element(double wavelength) {
    ArrayGeometry a;
    a.positions = Eigen::Matrix3Xd::Zero(3, 1);
    a.wavelength = wavelength;
    a.rows = a.cols = 1;
    a.validate();
    return a;
}

ArrayGeometry ArrayGeometry::rectangular(int horizontal, int vertical, double wavelength) {
    if (horizontal < 1 || vertical < 1)
        throw std::invalid_argument("array: grid dimensions must be positive");
    ArrayGeometry a;
    a.wavelength = wavelength;
    a.rows = vertical;
    a.cols = horizontal;
    a.positions.resize(3, static_cast<Eigen::Index>(horizontal) * vertical);
    const double d = wavelength / 2.0;
    Eigen::Index m = 0;
    for (int v = 0; v < vertical; ++v) {
        for (int h = 0; h < horizontal; ++h, ++m) {
            a.positions(0, m) = (h - (horizontal - 1) / 2.0) * d;
            a.positions(1, m) = 0.0;
            a.positions(2, m) = (v - (vertical - 1) / 2.0) * d;
        }
    }
    a.validate();
    return a;
}

Eigen::VectorXcd steering_vector(const ArrayGeometry& array, double phi, double theta) {
    const double k = 2.0 * kPi / array.wavelength;
    const Eigen::VectorXd proj = array.positions.transpose() * direction(phi, theta);
    Eigen::VectorXcd a(array.size());
    for (Eigen::Index m = 0; m < a.size(); ++m) a(m) = std::polar(1.0, -k * proj(m));
    return a;
}

SteeringDerivatives steering_derivatives(const ArrayGeometry& array, double phi, double theta) {
    const double k = 2.0 * kPi / array.wavelength;
    const Eigen::Vector3d u_phi{-std::sin(theta) * std::sin(phi),
                                std::sin(theta) * std::cos(phi), 0.0};
    const Eigen::Vector3d u_theta{std::cos(theta) * std::cos(phi),
                                  std::cos(theta) * std::sin(phi), -std::sin(theta)};
    const Eigen::VectorXcd a = steering_vector(array, phi, theta);
    const Eigen::VectorXd proj_phi = array.positions.transpose() * u_phi;
    const Eigen::VectorXd proj_theta = array.positions.transpose() * u_theta;
    SteeringDerivatives d;
    d.d_phi.resize(a.size());
    d.d_theta.resize(a.size());
    const std::complex<double> jk{0.0, k};
    for (Eigen::Index m = 0; m < a.size(); ++m) {
        d.d_phi(m) = -jk * proj_phi(m) * a(m);
        d.d_theta(m) = -jk * proj_theta(m) * a(m);
    }
    return d;
}

}  // namespace chanex
