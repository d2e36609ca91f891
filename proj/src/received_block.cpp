// SPDX-License-Identifier: Apache-2.0
//
// chanex - lower bounds and estimators for frequency extrapolation of
// specular multipath channels.

#include "chanex/received_block.hpp"

#include <cstdio>
#include <stdexcept>

#include "chanex/channel.hpp"
#include "chanex/rng.hpp"

namespace chanex {

void ReceivedBlock::write_csv(const std::string& path) const {
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f) throw std::runtime_error("cannot open " + path);
    std::fprintf(f, "m,n,re,im\n");
    for (Eigen::Index m = 0; m < samples.rows(); ++m)
        for (Eigen::Index n = 0; n < samples.cols(); ++n)
            std::fprintf(f, "%lld,%lld,%.17g,%.17g\n", static_cast<long long>(m),
                         static_cast<long long>(n), samples(m, n).real(),
                         samples(m, n).imag());
    std::fclose(f);
}

Eigen::MatrixXcd noiseless_received(const PathSet& paths, const ArrayGeometry& array,
                                    const TrainingPulse& pulse) {
    const int M = array.size();
    const int N = pulse.N;
    const SteeringSet st = build_steering_set(array, paths);
    Eigen::MatrixXcd mean = Eigen::MatrixXcd::Zero(M, N);
    for (int l = 0; l < paths.size(); ++l) {
        const auto& p = paths.paths[l];
        const Eigen::VectorXcd col = p.alpha * st.a.col(l);
        for (int n = 0; n < N; ++n) {
            const double s = rrc_value(pulse, pulse.sample_time(n) - p.tau);
            if (s != 0.0) mean.col(n) += s * col;
        }
    }
    return mean;
}

ReceivedBlock synthesize_received(const PathSet& paths, const ArrayGeometry& array,
                                  const TrainingPulse& pulse, double noise_var,
                                  std::uint64_t seed, const SynthesisOptions& options) {
    pulse.validate();
    if (noise_var < 0.0) throw std::invalid_argument("noise variance must be >= 0");
    if (!options.allow_uncovered_window) {
        const double tail = options.tail_symbols * pulse.T;
        const double t0 = pulse.sample_time(0);
        const double t_end = pulse.window_end();
        if (paths.min_delay() - tail < t0 || paths.max_delay() + tail > t_end)
            throw std::invalid_argument(
                "observation window does not cover the delay span plus pulse tails; "
                "enlarge the window or set allow_uncovered_window");
    }

    ReceivedBlock block;
    block.pulse = pulse;
    block.noise_var = noise_var;
    block.samples = noiseless_received(paths, array, pulse);
    if (noise_var > 0.0) {
        SplitMix64 rng(seed);
        for (int n = 0; n < pulse.N; ++n)
            for (int m = 0; m < array.size(); ++m)
                block.samples(m, n) += rng.next_complex_gaussian(noise_var);
    }
    return block;
}

}  // namespace chanex
