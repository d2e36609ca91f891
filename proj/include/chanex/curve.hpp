// SPDX-License-Identifier: Apache-2.0
//
// chanex - lower bounds and estimators for frequency extrapolation of
// specular multipath channels.

#pragma once

#include <string>
#include <vector>

namespace chanex {

/// One exported result series. Frequencies carry both the normalized value
/// f * T (comparable across bandwidths) and the absolute offset in Hz.
/// Values are finite or +infinity; infinities serialize as "inf".
struct Curve {
    std::string kind;  ///< lb_full, lb_simplified, mse_ls, mse_ls_analytic, mse_sage
    std::vector<double> f_norm;
    std::vector<double> f_hz;
    std::vector<double> values;
};

/// Writes `f_norm,f_hz,value,kind` rows, 17 significant digits, LF endings.
void write_curve_csv(const Curve& curve, const std::string& path);
Curve read_curve_csv(const std::string& path);

/// Combined bound export: `f_hz,f_norm,lb_full,lb_simplified`.
void write_bound_csv(const std::string& path, const std::vector<double>& f_hz,
                     const std::vector<double>& f_norm, const std::vector<double>& lb_full,
                     const std::vector<double>& lb_simplified);

enum class CurveMetric { MaxRatioDb, Rmse };

/// Scalar discrepancy between two curves on identical frequency grids.
/// MaxRatioDb is max |10 log10(a/b)| (points where both are infinite agree);
/// Rmse is the root mean squared difference. Throws on grid mismatch.
double compare_curves(const Curve& a, const Curve& b, CurveMetric metric);

}  // namespace chanex
