#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include <unsupported/Eigen/KroneckerProduct>

#include "pathsum/statmech.hpp"
#include "test_helpers.hpp"

using namespace pathsum;

namespace {

// Brute-force ring partition sum over all 2^n configurations.
double brute_force_partition(int n, double h, double J, double beta) {
    double total = 0.0;
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
        double energy = 0.0;
        for (int l = 0; l < n; ++l) {
            const int s = (bits >> l) & 1 ? -1 : 1;
            const int s_next = (bits >> ((l + 1) % n)) & 1 ? -1 : 1;
            energy += h * s * s_next + J * s;
        }
        total += std::exp(beta * energy);
    }
    return total;
}

Eigen::Matrix2d exp_x(double a) {
    Eigen::Matrix2d m;
    m << std::cosh(a), std::sinh(a), std::sinh(a), std::cosh(a);
    return m;
}

}  // namespace

TEST_CASE("transfer matrix entries and factorization") {
    const TransferMatrix t0 = transfer_matrix(1.0, 0.5, 0.0);
    CHECK((t0.entries - Eigen::Matrix2d::Ones()).cwiseAbs().maxCoeff() == 0.0);

    const TransferMatrix t = transfer_matrix(1.0, 0.5, 1.0);
    CHECK(t.entries(0, 0) == doctest::Approx(std::exp(1.5)));
    CHECK(t.entries(0, 1) == doctest::Approx(std::exp(-1.5)));
    CHECK(t.entries(1, 0) == doctest::Approx(std::exp(-0.5)));
    CHECK(t.entries(1, 1) == doctest::Approx(std::exp(0.5)));

    const auto [t1, t2] = transfer_matrix_factors(t);
    CHECK(((t1 * t2) - t.entries).cwiseAbs().maxCoeff() < 1e-14);
    CHECK(t2(0, 0) == doctest::Approx(std::exp(0.5)));
    CHECK(t2(1, 1) == doctest::Approx(std::exp(-0.5)));
    CHECK(t2(0, 1) == 0.0);

    const TransferMatrix sym = transfer_matrix(0.8, 0.0, 1.3);
    CHECK(sym.entries(0, 0) == doctest::Approx(sym.entries(1, 1)));
    CHECK(sym.entries(0, 1) == doctest::Approx(sym.entries(1, 0)));
}

TEST_CASE("partition function: trace route equals brute force") {
    CHECK(partition_transfer(5, 0.3, 0.8, 0.0) == doctest::Approx(32.0));
    CHECK(partition_transfer(3, 1.0, 0.5, 1.0) ==
          doctest::Approx(brute_force_partition(3, 1.0, 0.5, 1.0)).epsilon(1e-12));
    // J = 0: eigenvalues 2cosh, 2sinh give a closed form.
    const double z12 = partition_transfer(12, 0.7, 0.0, 2.0);
    const double expected = std::pow(2.0 * std::cosh(1.4), 12) + std::pow(2.0 * std::sinh(1.4), 12);
    CHECK(z12 == doctest::Approx(expected).epsilon(1e-12));

    struct Coupling {
        double h, J, beta;
    };
    const Coupling triples[] = {
        {0.25, -0.5, 0.7}, {1.1, 0.3, 0.4}, {-0.6, 0.2, 1.5}, {0.9, 0.9, 0.9}, {2.0, -1.0, 0.3}};
    for (int n = 2; n <= 12; ++n) {
        for (const Coupling& c : triples) {
            const double lhs = partition_transfer(n, c.h, c.J, c.beta);
            const double rhs = brute_force_partition(n, c.h, c.J, c.beta);
            CHECK(std::abs(lhs - rhs) / rhs < 1e-12);
        }
    }
}

TEST_CASE("suzuki coefficients and the cosh/sinh reconstruction") {
    const SuzukiCoefficients c = suzuki_coefficients(1.0, 0.5);
    CHECK(c.h_prime == doctest::Approx(0.5 * std::log(1.0 / std::tanh(0.5))));
    CHECK(c.C * std::exp(c.h_prime) == doctest::Approx(std::cosh(0.5)).epsilon(1e-12));
    CHECK(c.C * std::exp(-c.h_prime) == doctest::Approx(std::sinh(0.5)).epsilon(1e-12));

    // Entrywise against the 2x2 matrix exponential of dtau h X.
    const Eigen::Matrix2d direct = exp_x(0.5);
    CHECK(direct(0, 0) == doctest::Approx(c.C * std::exp(c.h_prime)));
    CHECK(direct(0, 1) == doctest::Approx(c.C * std::exp(-c.h_prime)));

    // Limits: strong coupling frees the flips, weak coupling freezes them.
    CHECK(suzuki_coefficients(1.0, 50.0).h_prime == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(suzuki_coefficients(1.0, 1e-6).h_prime > 6.0);
    CHECK_THROWS_AS(suzuki_coefficients(-1.0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(suzuki_coefficients(1.0, 0.0), std::invalid_argument);
}

TEST_CASE("single-spin trotter partition: commuting limit and convergence") {
    // J = 0 is exact at any M.
    for (int M : {1, 2, 7}) {
        CHECK(trotter_partition_single_spin(1.3, 0.0, 0.9, M) ==
              doctest::Approx(2.0 * std::cosh(0.9 * 1.3)).epsilon(1e-13));
    }

    const double exact = 2.0 * std::cosh(std::sqrt(2.0));
    std::vector<double> errors;
    for (int M : {8, 16, 32, 64, 128}) {
        errors.push_back(trotter_partition_single_spin(1.0, 1.0, 1.0, M) - exact);
        CHECK(errors.back() > 0.0);  // sign-consistent decay
    }
    for (std::size_t i = 0; i + 1 < errors.size(); ++i) {
        CHECK(errors[i] / errors[i + 1] > 2.0);  // at least first order
    }
    // The trace kills the leading commutator term, so the observed decay
    // is second order: error ratio 4 per doubling of M.
    const double slope = std::log(errors.back() / errors.front()) / std::log(128.0 / 8.0);
    CHECK(slope == doctest::Approx(-2.0).epsilon(0.05));

    // Richardson extrapolation with first-order weights at M = 512 lands
    // within 1e-4 of the exact value for beta = 2.
    const double exact2 = 2.0 * std::cosh(2.0 * std::sqrt(2.0));
    const double z512 = trotter_partition_single_spin(1.0, 1.0, 2.0, 512);
    const double z1024 = trotter_partition_single_spin(1.0, 1.0, 2.0, 1024);
    CHECK(std::abs(2.0 * z1024 - z512 - exact2) < 1e-4);
    // Second-order weights match the observed order and land much closer.
    CHECK(std::abs((4.0 * z1024 - z512) / 3.0 - exact2) < 1e-9);
}

TEST_CASE("sign statistics: XZ positive, XY mixed, both sum to the trace") {
    for (int M : {2, 4, 8, 16}) {
        const SignHistogram h = sign_statistics(SignModel::XZInZBasis, 1.0, 0.7, 1.2, M);
        CHECK(h.paths == std::uint64_t{1} << M);
        CHECK(h.counts[0] == h.paths);  // every path weight positive
        CHECK(h.counts[1] == 0);
        CHECK(h.counts[2] == 0);
        CHECK(h.counts[3] == 0);
        const double trace = trotter_partition_single_spin(1.0, 0.7, 1.2, M);
        CHECK(h.weighted_sum.real() == doctest::Approx(trace).epsilon(1e-12));
        CHECK(std::abs(h.weighted_sum.imag()) < 1e-12);
    }

    const SignHistogram xy = sign_statistics(SignModel::XYInZBasis, 1.0, 1.0, 1.0, 2);
    CHECK(xy.paths == 16);
    CHECK(xy.counts[1] + xy.counts[2] + xy.counts[3] > 0);

    // Trace oracle: Tr[(e^{dtau J X} e^{dtau h Y})^M].
    const double dtau = 0.5;
    Eigen::Matrix2cd ey;
    ey << std::cosh(dtau), Amplitude(0, -std::sinh(dtau)),
          Amplitude(0, std::sinh(dtau)), std::cosh(dtau);
    Eigen::Matrix2cd slice = exp_x(dtau).cast<Amplitude>() * ey;
    const Amplitude trace = (slice * slice).trace();
    CHECK(std::abs(xy.weighted_sum - trace) < 1e-12);

    CHECK_THROWS_AS(sign_statistics(SignModel::XZInZBasis, 1.0, 1.0, 1.0, 25),
                    std::runtime_error);
    CHECK_THROWS_AS(sign_statistics(SignModel::XYInZBasis, 1.0, 1.0, 1.0, 13),
                    std::runtime_error);
}

TEST_CASE("tfim euclidean action: flat, single flip, Hamming identity") {
    const double h = 1.1, J = 0.6, dtau = 0.3;
    SpinConfiguration flat = SpinConfiguration::all_up(4, 4);
    const EuclideanAction zero = tfim_euclidean_action(flat, h, J, dtau);
    CHECK(zero.temporal == 0.0);
    CHECK(zero.spatial == 0.0);
    CHECK(zero.value() == 0.0);

    SpinConfiguration flipped = flat;
    flipped.flip(1, 2);
    const EuclideanAction one = tfim_euclidean_action(flipped, h, J, dtau);
    const double h_prime = suzuki_coefficients(h, dtau).h_prime;
    CHECK(one.temporal == doctest::Approx(4.0 * h_prime));
    CHECK(one.spatial == doctest::Approx(4.0 * dtau * J));
    CHECK(one.temporal_disagreements == 2);
    CHECK(one.spatial_disagreements == 2);

    // Temporal term / h' is twice the summed Hamming distance, exactly.
    SpinConfiguration mixed = SpinConfiguration::all_up(3, 5);
    mixed.flip(0, 0);
    mixed.flip(0, 3);
    mixed.flip(2, 1);
    const EuclideanAction action = tfim_euclidean_action(mixed, h, J, dtau);
    std::int64_t hamming = 0;
    for (int l = 0; l < 3; ++l) {
        for (int j = 0; j < 5; ++j) {
            if (mixed.spin(l, j) != mixed.spin(l + 1, j)) ++hamming;
        }
    }
    CHECK(action.temporal_disagreements == hamming);
    CHECK(action.temporal == 2.0 * h_prime * static_cast<double>(hamming));
}

TEST_CASE("boltzmann sum over a 2x2 grid equals the 2-site slice trace") {
    const int sites = 2, slices = 2;
    const double h = 1.3, J = 0.7, dtau = 0.21;
    const SuzukiCoefficients suzuki = suzuki_coefficients(h, dtau);

    double config_sum = 0.0;
    SpinConfiguration config = SpinConfiguration::all_up(slices, sites);
    for (int bits = 0; bits < 16; ++bits) {
        for (int i = 0; i < 4; ++i) {
            const int want = (bits >> i) & 1 ? -1 : 1;
            if (config.spins[static_cast<std::size_t>(i)] != want) config.flip(i / sites, i % sites);
        }
        const EuclideanAction action = tfim_euclidean_action(config, h, J, dtau);
        config_sum += std::pow(suzuki.C, sites * slices) * std::exp(action.offset - action.value());
    }

    // Dense route: Tr[(e^{dtau h sum X} e^{dtau J sum ZZ})^M] on 2 sites.
    const Eigen::Matrix4d big_x = Eigen::kroneckerProduct(exp_x(dtau * h), exp_x(dtau * h));
    Eigen::Vector4d zz;
    zz << 2.0, -2.0, -2.0, 2.0;  // both ring bonds coincide at n = 2
    const Eigen::Matrix4d big_z = (dtau * J * zz.array()).exp().matrix().asDiagonal();
    const Eigen::Matrix4d slice = big_x * big_z;
    const double trace = (slice * slice).trace();
    CHECK(config_sum == doctest::Approx(trace).epsilon(1e-12));
}

TEST_CASE("free propagator closed form") {
    const Amplitude at_zero = free_propagator_exact(1.0, 1.0, 0.0, 0.0);
    CHECK(std::abs(at_zero - std::sqrt(Amplitude(0, -1) / (2.0 * kPi))) < 1e-15);
    CHECK(std::abs(at_zero) == doctest::Approx(std::sqrt(1.0 / (2.0 * kPi))));

    // Phase difference between displacement 2 and 0 is e^{i m d^2 / 2t} = e^{2i}.
    const Amplitude moved = free_propagator_exact(1.0, 1.0, 0.0, 2.0);
    const Amplitude ratio = moved / at_zero;
    CHECK(std::abs(ratio - std::exp(Amplitude(0, 2.0))) < 1e-14);

    // The modulus does not depend on the displacement.
    for (double d : {0.0, 0.5, 3.0, 10.0}) {
        CHECK(std::abs(free_propagator_exact(2.0, 0.7, 0.0, d)) ==
              doctest::Approx(std::sqrt(2.0 / (2.0 * kPi * 0.7))));
    }
    CHECK_THROWS_AS(free_propagator_exact(1.0, 0.0, 0.0, 1.0), std::invalid_argument);
}

TEST_CASE("discretized propagator: M = 1 exactness on any grid") {
    const PropagatorGrid grid{40.0, 0.05};
    for (double xf : {0.0, 1.0, -2.5, 7.05}) {
        const Amplitude lhs = free_propagator_discretized(1.0, 1.0, 0.0, xf, 1, grid);
        const Amplitude rhs = free_propagator_exact(1.0, 1.0, 0.0, xf);
        CHECK(std::abs(lhs - rhs) < 1e-12);
    }
}

TEST_CASE("discretized propagator converges to the closed form") {
    const double a = 40.0 / 10240.0;
    const Amplitude k16 = free_propagator_discretized(1.0, 1.0, 0.0, 0.0, 16, {40.0, a});
    const double exact_mod = std::sqrt(1.0 / (2.0 * kPi));
    CHECK(std::abs(std::abs(k16) - exact_mod) / exact_mod < 0.02);

    // Error shrinks at order >= 1 when M doubles with the spacing
    // tightened to match.
    const Amplitude k8 = free_propagator_discretized(1.0, 1.0, 0.0, 0.0, 8, {40.0, 2.0 * a});
    const double err8 = std::abs(std::abs(k8) - exact_mod);
    const double err16 = std::abs(std::abs(k16) - exact_mod);
    CHECK(err8 / err16 >= 2.0);
}

TEST_CASE("discretized propagator rejects an aliasing grid") {
    CHECK_THROWS_AS(free_propagator_discretized(1.0, 1.0, 0.0, 0.0, 32, {40.0, 0.05}),
                    std::domain_error);
    CHECK_THROWS_AS(free_propagator_discretized(1.0, 1.0, 0.301, 0.0, 1, {40.0, 0.05}),
                    std::invalid_argument);  // xI off the grid
}

TEST_CASE("straight line minimizes the discrete action over a 3-slice scan") {
    const double m = 1.0, dt = 1.0;
    const double xI = 0.0, xF = 1.5;
    double best = 1e300;
    std::vector<double> best_path;
    for (int i = -6; i <= 6; ++i) {
        for (int j = -6; j <= 6; ++j) {
            const std::vector<double> path{xI, 0.5 * i, 0.5 * j, xF};
            const double action = free_particle_path_action(m, dt, path);
            if (action < best) {
                best = action;
                best_path = path;
            }
        }
    }
    CHECK(best_path == std::vector<double>{0.0, 0.5, 1.0, 1.5});
    CHECK(best == doctest::Approx(3.0 * 0.5 * 0.25));
}
