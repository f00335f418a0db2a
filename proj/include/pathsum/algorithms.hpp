#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "pathsum/core.hpp"
#include "pathsum/paths.hpp"

namespace pathsum {

/// Unstructured search over N = 2^n items with one marked state w.
struct GroverInstance {
    int n = 1;
    std::uint64_t w = 0;

    GroverInstance(int n_, std::uint64_t w_);
    std::uint64_t item_count() const { return std::uint64_t{1} << n; }
};

/// Amplitudes over the N basis states plus the iteration counter.
struct AmplitudeProfile {
    Vector amplitudes;
    int iteration = 0;
};

enum class DeutschVerdict { Constant, Balanced };

struct DeutschResult {
    DeutschVerdict verdict = DeutschVerdict::Constant;
    int measured_bit = 0;          // first-register qubit, deterministic
    double outcome_probability = 0.0;
    std::vector<Path> trace;       // every four-step path with its sign
    Circuit circuit;
};

/// Runs Deutsch's algorithm for a one-bit black box f (truth table
/// {f(0), f(1)}): the input qubit starts in |0>, the target in |1>, the
/// circuit is H(1), H(0), O_f, H(0), and measuring the first qubit yields
/// f(0) xor f(1) with probability one.
DeutschResult deutsch_run(const std::array<std::uint8_t, 2>& f);

/// Single-iteration propagator element
///   <z_out| U_D O_w |z_in> = (-1)^{delta(w, z_in)} (2/N - delta(z_out, z_in)).
double grover_step_element(const GroverInstance& instance, std::uint64_t z_out,
                           std::uint64_t z_in);

AmplitudeProfile grover_uniform_profile(const GroverInstance& instance);

/// One Grover iteration: flip the sign of the marked amplitude, then
/// reflect every amplitude about the mean.
AmplitudeProfile grover_iterate(const AmplitudeProfile& profile, const GroverInstance& instance);

/// Success probability |a_w|^2 after k = 0, ..., k_max iterations from
/// the uniform start.
std::vector<std::pair<int, double>> grover_success_curve(const GroverInstance& instance,
                                                         int k_max);

/// Phase-kickback conversion: lifts a bit-flip oracle to the full-register
/// phase oracle with g(z) = f(z without target bit) * q_target, so that
/// H_t O_f H_t equals the returned phase oracle exactly.
Gate phase_oracle_from_bitflip(const std::vector<std::uint8_t>& f, int target, int n);

}  // namespace pathsum
