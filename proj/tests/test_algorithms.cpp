#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "pathsum/algorithms.hpp"
#include "test_helpers.hpp"

using namespace pathsum;
using pathsum::testing::max_abs_diff;

namespace {

// Dense one-iteration Grover operator U_D O_w, the oracle route for the
// closed-form element and the O(N) iteration.
Matrix dense_grover_step(const GroverInstance& g) {
    const Eigen::Index N = static_cast<Eigen::Index>(g.item_count());
    const Matrix ss = Matrix::Constant(N, N, Amplitude(1.0 / static_cast<double>(N), 0));
    Matrix oracle = Matrix::Identity(N, N);
    oracle(static_cast<Eigen::Index>(g.w), static_cast<Eigen::Index>(g.w)) = -1.0;
    return (2.0 * ss - Matrix::Identity(N, N)) * oracle;
}

}  // namespace

TEST_CASE("deutsch classifies all four one-bit functions deterministically") {
    struct Case {
        std::array<std::uint8_t, 2> f;
        DeutschVerdict verdict;
        int bit;
    };
    const Case cases[] = {
        {{0, 0}, DeutschVerdict::Constant, 0},
        {{1, 1}, DeutschVerdict::Constant, 0},
        {{0, 1}, DeutschVerdict::Balanced, 1},  // identity
        {{1, 0}, DeutschVerdict::Balanced, 1},  // negation
    };
    for (const Case& c : cases) {
        const DeutschResult r = deutsch_run(c.f);
        CHECK(r.verdict == c.verdict);
        CHECK(r.measured_bit == c.bit);
        CHECK(r.outcome_probability == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("deutsch trace holds the eight four-step paths with signs") {
    const DeutschResult r = deutsch_run({1, 0});
    CHECK(r.trace.size() == 8);  // three Hadamards branch into 2^3 paths
    for (const Path& p : r.trace) {
        CHECK(p.states.size() == 5);  // four gates
        CHECK(p.log2_magnitude == doctest::Approx(-1.5));
        const double ratio = p.action / kPi;
        CHECK(std::abs(ratio - std::round(ratio)) < 1e-12);
    }
    // Paths to each endpoint cancel or reinforce in pairs.
    Amplitude to_00(0, 0);
    for (const Path& p : r.trace) {
        if (p.states.back() == 0b00) to_00 += p.amplitude();
    }
    CHECK(std::abs(to_00) < 1e-12);
}

TEST_CASE("grover_step_element closed-form values at N = 4") {
    const GroverInstance g(2, 1);
    CHECK(grover_step_element(g, 0, 0) == doctest::Approx(-0.5));   // z_in = z_out != w
    CHECK(grover_step_element(g, 0, 1) == doctest::Approx(-0.5));   // z_in = w, z_out != w
    CHECK(grover_step_element(g, 1, 1) == doctest::Approx(0.5));    // z_in = z_out = w
    CHECK(grover_step_element(g, 1, 0) == doctest::Approx(0.5));
}

TEST_CASE("grover_step_element equals the dense product entrywise") {
    for (int n : {1, 2, 3, 4}) {
        const GroverInstance g(n, (std::uint64_t{1} << n) - 1);
        const Matrix dense = dense_grover_step(g);
        for (std::uint64_t r = 0; r < g.item_count(); ++r) {
            for (std::uint64_t c = 0; c < g.item_count(); ++c) {
                CHECK(std::abs(grover_step_element(g, r, c) -
                               dense(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c))
                                   .real()) < 1e-12);
            }
        }
    }
}

TEST_CASE("one iteration at N = 4 reaches the marked state exactly") {
    const GroverInstance g(2, 1);
    const AmplitudeProfile one = grover_iterate(grover_uniform_profile(g), g);
    CHECK(std::abs(one.amplitudes(1) - Amplitude(1, 0)) < 1e-12);
    CHECK(std::abs(one.amplitudes(0)) < 1e-12);
    CHECK(std::abs(one.amplitudes(2)) < 1e-12);
    CHECK(std::abs(one.amplitudes(3)) < 1e-12);
    CHECK(one.iteration == 1);
}

TEST_CASE("grover_iterate agrees with the dense oracle and preserves norm") {
    const GroverInstance g(3, 0);
    const Matrix step = dense_grover_step(g);

    AmplitudeProfile p = grover_uniform_profile(g);
    Vector dense = p.amplitudes;
    for (int k = 0; k < 2; ++k) {
        p = grover_iterate(p, g);
        dense = step * dense;
        CHECK(max_abs_diff(p.amplitudes, dense) < 1e-13);
        CHECK(std::abs(p.amplitudes.norm() - 1.0) < 1e-10);
    }
    // Success probability after 2 iterations at N = 8 (dense-oracle value).
    CHECK(std::norm(p.amplitudes(0)) == doctest::Approx(0.9453125).epsilon(1e-9));

    // Starting exactly on |w>: two iterations tracked entrywise.
    AmplitudeProfile at_w{Vector::Zero(8), 0};
    at_w.amplitudes(0) = 1.0;
    Vector dense_w = at_w.amplitudes;
    for (int k = 0; k < 2; ++k) {
        at_w = grover_iterate(at_w, g);
        dense_w = step * dense_w;
    }
    CHECK(max_abs_diff(at_w.amplitudes, dense_w) < 1e-13);
}

TEST_CASE("unmarked amplitudes stay equal: the two-dimensional subspace") {
    const GroverInstance g(4, 7);
    AmplitudeProfile p = grover_uniform_profile(g);
    for (int k = 0; k < 6; ++k) {
        p = grover_iterate(p, g);
        Amplitude reference(0, 0);
        bool first = true;
        for (std::uint64_t z = 0; z < g.item_count(); ++z) {
            if (z == g.w) continue;
            if (first) {
                reference = p.amplitudes(static_cast<Eigen::Index>(z));
                first = false;
            } else {
                CHECK(std::abs(p.amplitudes(static_cast<Eigen::Index>(z)) - reference) < 1e-12);
            }
        }
    }
}

TEST_CASE("success curve: start, maximum, and argmax scaling") {
    const GroverInstance g4(2, 3);
    const auto curve4 = grover_success_curve(g4, 3);
    CHECK(curve4[0].second == doctest::Approx(0.25));  // uniform overlap 1/N
    CHECK(curve4[1].second == doctest::Approx(1.0).epsilon(1e-10));

    const GroverInstance g1024(10, 511);
    const auto curve = grover_success_curve(g1024, 60);
    int first_max = 0;
    while (first_max + 1 < static_cast<int>(curve.size()) &&
           curve[static_cast<std::size_t>(first_max) + 1].second >
               curve[static_cast<std::size_t>(first_max)].second) {
        ++first_max;
    }
    const int predicted = static_cast<int>(std::lround(kPi / 4.0 * 32.0));
    CHECK(std::abs(first_max - predicted) <= 1);

    CHECK_THROWS_AS(grover_success_curve(g4, 10001), std::invalid_argument);
}

TEST_CASE("phase kickback: H_t O_f H_t equals the lifted phase oracle") {
    for (std::uint8_t f0 : {0, 1}) {
        for (std::uint8_t f1 : {0, 1}) {
            const std::vector<std::uint8_t> f{f0, f1};
            const Gate lifted = phase_oracle_from_bitflip(f, 1, 2);
            const Circuit conjugated(2, {Gate::hadamard(1), Gate::bit_flip_oracle(f, 1),
                                         Gate::hadamard(1)});
            const Matrix lhs = dense_propagator(conjugated).entries;
            const Matrix rhs = dense_propagator(Circuit(2, {lifted})).entries;
            CHECK(max_abs_diff(global_phase_normalized(lhs), global_phase_normalized(rhs)) <
                  1e-12);
        }
    }
}
