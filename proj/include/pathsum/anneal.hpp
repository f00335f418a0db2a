#pragma once

#include <cstdint>
#include <vector>

#include "pathsum/core.hpp"

namespace pathsum {

/// Interpolation schedule lambda(t) on [0, T] with lambda(0) = 0 and
/// lambda(T) = 1. Non-linear schedules are tabulated on 2^10 + 1 uniform
/// samples with monotone linear interpolation.
struct Schedule {
    enum class Kind { Linear, LocalAdiabatic, Tabulated };

    Kind kind = Kind::Linear;
    double total_time = 1.0;
    std::vector<double> samples;  // empty for the linear schedule

    static Schedule linear(double total_time);
    static Schedule tabulated(double total_time, std::vector<double> samples);

    double lambda(double t) const;
};

inline constexpr int kScheduleSamples = 1025;  // 2^10 + 1

/// Mixer (kinetic) and problem (potential) Hamiltonians of an
/// interpolation; both hermitian-tagged.
struct HamiltonianPair {
    DenseOperator kinetic;
    DenseOperator potential;
};

/// K_G = I - |s><s| and V_G = I - |w><w| on n qubits.
HamiltonianPair grover_hamiltonians(int n, std::uint64_t w);

enum class MixerSign {
    MinusX,  // K = -sum_j X_j: the uniform superposition is the ground state
    PlusX,   // K = +sum_j X_j as displayed in some conventions
};

/// Transverse-field mixer and ring disagreement objective
/// V = sum_j Z_j Z_{j+1} with periodic boundary.
HamiltonianPair ring_hamiltonians(int n, MixerSign sign = MixerSign::MinusX);

/// (1 - lambda) K + lambda V.
DenseOperator interpolated_hamiltonian(const HamiltonianPair& pair, double lambda);

/// Spectral gap of the interpolated Grover Hamiltonian:
/// g(lambda) = sqrt(1 - 4 (N-1)/N lambda (1 - lambda)); minimum 1/sqrt(N)
/// at lambda = 1/2.
double grover_gap(double lambda, std::uint64_t N);

/// Local-adiabatic schedule for the Grover interpolation. The rate follows
/// dlambda/dt proportional to g^2(lambda), normalized so the total time is
/// exactly T = (pi / 2 eps) sqrt(N).
Schedule local_adiabatic_schedule(std::uint64_t N, double eps);

/// Global adiabatic bound for the linear interpolation: N / eps, from
/// ||dH/dlambda|| <= 1 and min g^2 = 1/N.
double linear_schedule_time_bound(std::uint64_t N, double eps);

struct QaoaAngles {
    std::vector<double> beta;
    std::vector<double> gamma;

    double total_time() const;
};

/// Slices a schedule into M QAOA angle pairs:
/// beta^(l) = Delta (1 - lambda(l Delta)), gamma^(l) = Delta lambda(l Delta),
/// Delta = T / M. The angle sum telescopes to T.
QaoaAngles trotterize(const Schedule& schedule, int M);

/// Applies prod_l e^{-i beta_l K} e^{-i gamma_l V} to the initial state
/// (the potential factor of each slice acts first).
QuantumState qaoa_evolve(const QaoaAngles& angles, const HamiltonianPair& pair,
                         const QuantumState& initial);

/// Fixed-step 4th-order integration of i d/dt psi = H(lambda(t)) psi.
/// Throws when the norm drifts beyond 1e-6; the returned state is not
/// renormalized.
QuantumState schedule_evolve(const Schedule& schedule, const HamiltonianPair& pair,
                             const QuantumState& initial, int steps);

}  // namespace pathsum
