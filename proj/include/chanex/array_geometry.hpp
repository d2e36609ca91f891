// SPDX-License-Identifier: Apache-2.0
//
// chanex - lower bounds and estimators for frequency extrapolation of
// specular multipath channels.

#pragma once

#include <Eigen/Dense>

namespace chanex {

/// Receive array: element positions in meters plus the carrier wavelength
/// that converts geometry into phase. Elements are isotropic, so the steering
/// response is a pure phase per element.
struct ArrayGeometry {
    Eigen::Matrix3Xd positions;  ///< one column per element
    double wavelength = 0.0;     ///< carrier wavelength (meters)
    int rows = 0;                ///< vertical count for planar arrays (0 if n/a)
    int cols = 0;                ///< horizontal count for planar arrays (0 if n/a)

    int size() const { return static_cast<int>(positions.cols()); }
    bool is_siso() const { return size() == 1; }

    void validate() const;

    /// Single isotropic element at the origin (SISO semantics downstream).
    static ArrayGeometry single_element(double wavelength);

    /// Rectangular planar array in the x-z plane with half-wavelength spacing,
    /// `horizontal` columns along x and `vertical` rows along z, centered on
    /// the origin. Centering gives the phase pattern odd spatial symmetry.
    static ArrayGeometry rectangular(int horizontal, int vertical, double wavelength);
};

/// Steering response a(phi, theta): entry m is
/// exp(-j (2 pi / wavelength) <u(phi, theta), p_m>) with unit-norm direction
/// u = (sin theta cos phi, sin theta sin phi, cos theta). All entries have
/// unit magnitude.
Eigen::VectorXcd steering_vector(const ArrayGeometry& array, double phi, double theta);

struct SteeringDerivatives {
    Eigen::VectorXcd d_phi;
    Eigen::VectorXcd d_theta;
};

/// Exact analytic derivatives of the steering response with respect to
/// azimuth and elevation.
SteeringDerivatives steering_derivatives(const ArrayGeometry& array, double phi, double theta);

}  // namespace chanex
