#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "pathsum/core.hpp"

namespace pathsum {

/// 2x2 transfer matrix of the classical Ising ring with field, entries
/// exp(beta (h sigma sigma' + J sigma)); index 0 is sigma = +1.
struct TransferMatrix {
    Eigen::Matrix2d entries;
    double h = 0.0;
    double J = 0.0;
    double beta = 0.0;
};

TransferMatrix transfer_matrix(double h, double J, double beta);

/// Factorization T = T1 T2 with T2 = e^{beta J Z}.
std::pair<Eigen::Matrix2d, Eigen::Matrix2d> transfer_matrix_factors(const TransferMatrix& t);

/// Z = Tr(T^n) for a ring of n classical spins.
double partition_transfer(int n, double h, double J, double beta);

/// Temporal coupling and prefactor of the Suzuki mapping:
/// h' = (1/2) log coth(dtau h), C = sqrt((1/2) sinh(2 dtau h)), so that
/// C e^{+h'} = cosh(dtau h) and C e^{-h'} = sinh(dtau h).
struct SuzukiCoefficients {
    double h_prime = 0.0;
    double C = 0.0;
};

SuzukiCoefficients suzuki_coefficients(double h, double dtau);

/// Tr[(e^{dtau h X} e^{dtau J Z})^M] with dtau = beta / M; converges to
/// 2 cosh(beta sqrt(h^2 + J^2)) as M grows and is exact for J = 0.
double trotter_partition_single_spin(double h, double J, double beta, int M);

enum class SignModel {
    XZInZBasis,  // slices e^{dtau h X} e^{dtau J Z}: every path weight positive
    XYInZBasis,  // slices e^{dtau J X} e^{dtau h Y}: weights pick up phases +-1, +-i
};

/// Histogram of path-weight phases over all closed Z-basis paths at the
/// granularity of the individual exponential factors. Buckets are indexed
/// by the quadrant: 0 -> +1, 1 -> +i, 2 -> -1, 3 -> -i.
struct SignHistogram {
    std::array<std::uint64_t, 4> counts{};
    std::array<double, 4> weight{};  // summed |weight| per phase
    Amplitude weighted_sum{0.0, 0.0};  // equals the slice-product trace
    std::uint64_t paths = 0;
};

SignHistogram sign_statistics(SignModel model, double h, double J, double beta, int M);

/// Periodic M x n grid of classical spins sigma in {-1, +1}; index
/// arithmetic wraps in both the Trotter (slice) and spatial directions.
struct SpinConfiguration {
    int slices = 0;
    int sites = 0;
    std::vector<std::int8_t> spins;  // row-major: slice * sites + site

    static SpinConfiguration all_up(int slices, int sites);

    int spin(int l, int j) const;
    void flip(int l, int j);
};

/// Euclidean action of a (1+1)D configuration in the squared-difference
/// form, with the constant offset (n M (h' + dtau J)) tracked separately;
/// the Boltzmann weight is C^{nM} e^{offset} e^{-value}.
struct EuclideanAction {
    double temporal = 0.0;
    double spatial = 0.0;
    double offset = 0.0;
    std::int64_t temporal_disagreements = 0;  // temporal = 2 h' * this
    std::int64_t spatial_disagreements = 0;   // spatial = 2 dtau J * this

    double value() const { return temporal + spatial; }
};

EuclideanAction tfim_euclidean_action(const SpinConfiguration& config, double h, double J,
                                      double dtau);

/// Free-particle kernel sqrt(m / (2 pi i t)) e^{i m (xF - xI)^2 / (2 t)},
/// hbar = 1; the principal square root carries phase e^{-i pi/4}.
Amplitude free_propagator_exact(double m, double t, double xI, double xF);

struct PropagatorGrid {
    double extent = 0.0;   // domain [-extent/2, extent/2]
    double spacing = 0.0;  // grid step a
};

/// M-fold discrete convolution of the one-slice kernel over the grid,
/// hard-truncated at the domain boundary. Throws when the sampled chirp
/// would alias (phase step above pi at the domain-edge displacement);
/// M = 1 reproduces the closed form exactly at grid points.
Amplitude free_propagator_discretized(double m, double t, double xI, double xF, int M,
                                      const PropagatorGrid& grid);

/// The full final slice psi^M over the grid (entry j corresponds to
/// x = -extent/2 + j * spacing); free_propagator_discretized reads one entry.
std::vector<Amplitude> free_propagator_profile(double m, double t, double xI, int M,
                                               const PropagatorGrid& grid);

/// Discrete action sum_l dt (m/2) ((x_{l+1} - x_l)/dt)^2 of a lattice path.
double free_particle_path_action(double m, double dt, const std::vector<double>& positions);

}  // namespace pathsum
