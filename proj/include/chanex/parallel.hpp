// SPDX-License-Identifier: Apache-2.0
//
// chanex - lower bounds and estimators for frequency extrapolation of
// specular multipath channels.

#pragma once

namespace chanex::parallel {

/// Global switch consulted by the OpenMP kernels. Defaults to on; the serial
/// reference entry points and the benchmark turn it off to force the plain
/// loops. Kernels are written so that results are bit-identical either way.
bool enabled();
void set_enabled(bool on);

/// Number of worker threads the parallel kernels may use (1 without OpenMP).
int max_threads();

/// RAII guard that forces serial execution for its lifetime.
struct ScopedSerial {
    ScopedSerial();
    ~ScopedSerial();
    ScopedSerial(const ScopedSerial&) = delete;
    ScopedSerial& operator=(const ScopedSerial&) = delete;

private:
    bool prev_;
};

}  // namespace chanex::parallel
