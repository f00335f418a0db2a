#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "pathsum/core.hpp"

namespace pathsum {

/// Regular graphs used as walk domains; the Laplacian A - D has zero row
/// sums.
struct Graph {
    enum class Kind { Ring, Hypercube, Complete };

    Kind kind = Kind::Ring;
    int parameter = 0;  // N for ring/complete, qubit count for hypercube
    Eigen::MatrixXd adjacency;
    Eigen::MatrixXd degree;

    Eigen::MatrixXd laplacian() const { return adjacency - degree; }

    static Graph ring(int N);
    static Graph hypercube(int n);
    static Graph complete(int N);
};

/// Symmetric classical random walk on Z after n steps: probability table
/// over displacements j = -n..n (index j + n), zero at parity-mismatched
/// j. Entries are exact binomial rationals C(n, (n+j)/2) / 2^n converted
/// to double.
std::vector<double> classical_rw_distribution(int n_steps);

/// Gaussian limit of the walk: variance-t density e^{-z^2/(2t)}/sqrt(2 pi t).
double gaussian_limit_density(double t, double z);

/// Continuous-time quantum walk kernel on the N-ring, with the constant
/// diagonal of the Laplacian dropped (a configuration-independent phase):
/// K(d) = (1/N) sum_p e^{-2 i t cos(2 pi p / N)} e^{2 pi i p d / N}.
Amplitude ctqrw_exact(int N, double t, int d);

/// Large-N closed form e^{2 i t} (-i)^d J_d(2 t).
Amplitude ctqrw_bessel(double t, int d);

/// Success probability |<w| e^{-i H T} |s>|^2 for H = -gamma N |s><s| - |w><w|,
/// evolved in the invariant 2-dimensional subspace spanned by |w> and the
/// flat state on the rest.
double grover_walk(std::uint64_t N, double gamma, double T);

/// Discrete-time walk state: coin-up / coin-down amplitudes over the
/// integer positions [min_z, min_z + size); grows by one site per step.
struct WalkerState {
    int min_z = 0;
    std::vector<Amplitude> up;    // coin |0> = up = right-mover
    std::vector<Amplitude> down;  // coin |1> = down = left-mover
    int steps = 0;

    static WalkerState at_origin(Amplitude coin_up, Amplitude coin_down);
    static WalkerState symmetrized_origin();  // coin (|0> + i|1>)/sqrt(2)

    int max_z() const { return min_z + static_cast<int>(up.size()) - 1; }
    double probability(int z) const;
    double total_probability() const;
};

/// One DTQRW step: Hadamard on the coin, then the conditional shift
/// |z>|q> -> |z + (-1)^q>|q>.
WalkerState dtqrw_step(const WalkerState& state);

struct SpinorAmplitude {
    Amplitude left;
    Amplitude right;
};

/// Closed-form walk amplitudes after n steps from |0>|up> (right-moving
/// initial coin), by counting runs of left moves:
///   psi_L = 2^{-n/2} sum_b C(n_l - 1, b) C(n_r, b)     (-1)^{n_l - b - 1}
///   psi_R = 2^{-n/2} sum_b C(n_l - 1, b) C(n_r, b + 1) (-1)^{n_l - b - 1}
/// with n_l = (n - z)/2, n_r = (n + z)/2. Parity-mismatched z gives (0, 0).
SpinorAmplitude dtqrw_combinatorial(int n_steps, int z);

enum class CheckerboardStart { Right, Left, Superposed };

/// N(R): the number of n-step lattice paths from 0 to z with exactly R
/// reverses, counted by the same binomial products as the walk
/// amplitudes. Index R of the result runs over 0..n-1.
std::vector<double> checkerboard_reversal_counts(int n_steps, int z, CheckerboardStart start);

/// Checkerboard kernel K(z) = sum_R N(R) (i mass_a)^R. The superposed
/// start averages the right and left counts.
Amplitude checkerboard_kernel(int n_steps, int z, double mass_a,
                              CheckerboardStart start = CheckerboardStart::Right);

}  // namespace pathsum
