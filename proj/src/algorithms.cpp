#include "pathsum/algorithms.hpp"

#include <cmath>
#include <stdexcept>

namespace pathsum {

GroverInstance::GroverInstance(int n_, std::uint64_t w_) : n(n_), w(w_) {
    if (n < 1 || n > 20) throw std::invalid_argument("GroverInstance: n must be in [1, 20]");
    if (w >= item_count()) throw std::invalid_argument("GroverInstance: w must satisfy 0 <= w < 2^n");
}

DeutschResult deutsch_run(const std::array<std::uint8_t, 2>& f) {
    for (std::uint8_t v : f) {
        if (v > 1) throw std::invalid_argument("deutsch_run: truth table entries must be 0 or 1");
    }
    DeutschResult result;
    result.circuit = Circuit(2, {
        Gate::hadamard(1),
        Gate::hadamard(0),
        Gate::bit_flip_oracle({f[0], f[1]}, 1),
        Gate::hadamard(0),
    });
    const std::uint64_t z_in = 0b01;  // q1 = 0, q2 = 1
    for (std::uint64_t z_out = 0; z_out < 4; ++z_out) {
        auto paths = enumerate_paths(result.circuit, z_in, z_out);
        result.trace.insert(result.trace.end(), paths.begin(), paths.end());
    }
    const Vector column = propagator_column(result.circuit, z_in);
    double p1 = 0.0;
    for (std::uint64_t z = 0; z < 4; ++z) {
        if (z >> 1) p1 += std::norm(column(static_cast<Eigen::Index>(z)));
    }
    result.measured_bit = p1 > 0.5 ? 1 : 0;
    result.outcome_probability = result.measured_bit ? p1 : 1.0 - p1;
    result.verdict = (f[0] ^ f[1]) ? DeutschVerdict::Balanced : DeutschVerdict::Constant;
    return result;
}

double grover_step_element(const GroverInstance& instance, std::uint64_t z_out,
                           std::uint64_t z_in) {
    const std::uint64_t N = instance.item_count();
    if (z_out >= N || z_in >= N) {
        throw std::invalid_argument("grover_step_element: basis index out of range");
    }
    const double sign = z_in == instance.w ? -1.0 : 1.0;
    const double diag = z_out == z_in ? 1.0 : 0.0;
    return sign * (2.0 / static_cast<double>(N) - diag);
}

AmplitudeProfile grover_uniform_profile(const GroverInstance& instance) {
    const Eigen::Index N = static_cast<Eigen::Index>(instance.item_count());
    AmplitudeProfile profile;
    profile.amplitudes = Vector::Constant(N, Amplitude(1.0 / std::sqrt(static_cast<double>(N)), 0.0));
    profile.iteration = 0;
    return profile;
}

AmplitudeProfile grover_iterate(const AmplitudeProfile& profile, const GroverInstance& instance) {
    const Eigen::Index N = static_cast<Eigen::Index>(instance.item_count());
    if (profile.amplitudes.size() != N) {
        throw std::invalid_argument("grover_iterate: profile size does not match the instance");
    }
    Vector a = profile.amplitudes;
    a(static_cast<Eigen::Index>(instance.w)) = -a(static_cast<Eigen::Index>(instance.w));
    const Amplitude mean = a.sum() / static_cast<double>(N);
    AmplitudeProfile next;
    next.amplitudes = Vector::Constant(N, 2.0 * mean) - a;
    next.iteration = profile.iteration + 1;
    return next;
}

std::vector<std::pair<int, double>> grover_success_curve(const GroverInstance& instance,
                                                         int k_max) {
    if (k_max < 0 || k_max > 10000) {
        throw std::invalid_argument("grover_success_curve: k_max must be in [0, 10^4]");
    }
    std::vector<std::pair<int, double>> curve;
    curve.reserve(static_cast<std::size_t>(k_max) + 1);
    AmplitudeProfile profile = grover_uniform_profile(instance);
    const Eigen::Index w = static_cast<Eigen::Index>(instance.w);
    curve.emplace_back(0, std::norm(profile.amplitudes(w)));
    for (int k = 1; k <= k_max; ++k) {
        profile = grover_iterate(profile, instance);
        curve.emplace_back(k, std::norm(profile.amplitudes(w)));
    }
    return curve;
}

Gate phase_oracle_from_bitflip(const std::vector<std::uint8_t>& f, int target, int n) {
    if (n < 2) throw std::invalid_argument("phase_oracle_from_bitflip: n must be at least 2");
    if (target < 0 || target >= n) {
        throw std::invalid_argument("phase_oracle_from_bitflip: target out of range");
    }
    if (f.size() != (std::uint64_t{1} << (n - 1))) {
        throw std::invalid_argument("phase_oracle_from_bitflip: truth table must have 2^(n-1) entries");
    }
    const int shift_t = n - 1 - target;
    std::vector<std::uint8_t> g(std::uint64_t{1} << n, 0);
    for (std::uint64_t z = 0; z < g.size(); ++z) {
        const std::uint64_t high = z >> (shift_t + 1);
        const std::uint64_t low = z & ((std::uint64_t{1} << shift_t) - 1);
        const std::uint64_t input = (high << shift_t) | low;
        const std::uint64_t q = (z >> shift_t) & 1u;
        g[z] = static_cast<std::uint8_t>(f[input] & q);
    }
    return Gate::phase_oracle(std::move(g));
}

}  // namespace pathsum
