#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "pathsum/core.hpp"
#include "test_helpers.hpp"

using namespace pathsum;
using pathsum::testing::max_abs_diff;
using pathsum::testing::unitarity_defect;

namespace {

QuantumState random_state(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Vector v(Eigen::Index{1} << n);
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = Amplitude(gauss(rng), gauss(rng));
    v /= v.norm();
    return QuantumState(n, std::move(v));
}

}  // namespace

TEST_CASE("basis state bit convention: bit 0 is the most significant") {
    BasisState z(3, 0b110);  // |q1 q2 q3> = |110>
    CHECK(z.bit(0) == 1);
    CHECK(z.bit(1) == 1);
    CHECK(z.bit(2) == 0);
    CHECK(z.with_bit(2, 1).z == 0b111);
    CHECK(z.with_bit(0, 0).z == 0b010);
    CHECK_THROWS_AS(BasisState(3, 8), std::invalid_argument);
}

TEST_CASE("dense_apply: Hadamard, Toffoli and identity columns") {
    const Circuit h1(1, {Gate::hadamard(0)});
    const DenseOperator h = dense_propagator(h1);
    const QuantumState out = dense_apply(h, QuantumState::basis(1, 0));
    const double s = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(out.amplitudes(0) - Amplitude(s, 0)) < 1e-15);
    CHECK(std::abs(out.amplitudes(1) - Amplitude(s, 0)) < 1e-15);

    const Circuit toff(3, {Gate::toffoli(0, 1, 2)});
    const QuantumState t = dense_apply(dense_propagator(toff), QuantumState::basis(3, 0b110));
    CHECK(std::abs(t.amplitudes(0b111) - Amplitude(1, 0)) < 1e-15);

    const QuantumState any = random_state(3, 11);
    const QuantumState same = dense_apply(DenseOperator::identity(3), any);
    CHECK(max_abs_diff(same.amplitudes, any.amplitudes) == 0.0);
}

TEST_CASE("dense_apply rejects mismatched or untagged operators") {
    const QuantumState psi = QuantumState::basis(2, 0);
    CHECK_THROWS_AS(dense_apply(DenseOperator::identity(3), psi), std::invalid_argument);
    DenseOperator not_unitary = DenseOperator::untagged(Matrix::Ones(4, 4));
    CHECK_THROWS_AS(dense_apply(not_unitary, psi), std::invalid_argument);
    CHECK_THROWS_AS(DenseOperator::unitary(Matrix::Ones(4, 4)), std::invalid_argument);
}

TEST_CASE("dense_propagator: [H, H] is the identity, empty circuit too") {
    const Circuit hh(1, {Gate::hadamard(0), Gate::hadamard(0)});
    CHECK(max_abs_diff(dense_propagator(hh).entries, Matrix::Identity(2, 2)) < 1e-15);
    const Circuit empty(2, {});
    CHECK(max_abs_diff(dense_propagator(empty).entries, Matrix::Identity(4, 4)) == 0.0);
}

TEST_CASE("random circuits are unitary and norm-preserving") {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        const Circuit c = random_h_toffoli_circuit(4, 10, seed);
        const DenseOperator u = dense_propagator(c);
        CHECK(unitarity_defect(u.entries) < 1e-10);
        for (int i = 0; i < 100; ++i) {
            const QuantumState psi = random_state(4, 1000 * seed + i);
            CHECK(std::abs(dense_apply(u, psi).norm() - 1.0) < 1e-10);
        }
    }
}

TEST_CASE("dense_propagator concatenation is the reversed matrix product") {
    const Circuit c1 = random_h_toffoli_circuit(3, 5, 7);
    const Circuit c2 = random_h_toffoli_circuit(3, 5, 8);
    std::vector<Gate> both = c1.gates;
    both.insert(both.end(), c2.gates.begin(), c2.gates.end());
    const Matrix lhs = dense_propagator(Circuit(3, both)).entries;
    const Matrix rhs = dense_propagator(c2).entries * dense_propagator(c1).entries;
    CHECK(max_abs_diff(lhs, rhs) < 1e-10);
}

TEST_CASE("matrix_exponential_hermitian: pauli Z, zero time, projector") {
    Matrix z(2, 2);
    z << 1, 0, 0, -1;
    const DenseOperator hz = DenseOperator::hermitian(z);
    const Matrix ez = matrix_exponential_hermitian(hz, kPi).entries;
    CHECK(max_abs_diff(ez, -Matrix::Identity(2, 2)) < 1e-12);
    CHECK(max_abs_diff(matrix_exponential_hermitian(hz, 0.0).entries, Matrix::Identity(2, 2)) <
          1e-15);

    // e^{-i pi (I - |s><s|)} = 2|s><s| - I for the 4-state uniform projector
    const Eigen::Index N = 4;
    Matrix ss = Matrix::Constant(N, N, Amplitude(0.25, 0));
    const DenseOperator kg = DenseOperator::hermitian(Matrix::Identity(N, N) - ss);
    const Matrix diffusion = matrix_exponential_hermitian(kg, kPi).entries;
    CHECK(max_abs_diff(diffusion, 2.0 * ss - Matrix::Identity(N, N)) < 1e-12);
}

TEST_CASE("matrix exponential composes over time and stays unimodular") {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix a(8, 8);
    for (Eigen::Index r = 0; r < 8; ++r) {
        for (Eigen::Index c = 0; c < 8; ++c) a(r, c) = Amplitude(gauss(rng), gauss(rng));
    }
    const DenseOperator h = DenseOperator::hermitian(Matrix(0.5 * (a + a.adjoint())));
    const Matrix u12 = matrix_exponential_hermitian(h, 0.7).entries;
    const Matrix u1 = matrix_exponential_hermitian(h, 0.3).entries;
    const Matrix u2 = matrix_exponential_hermitian(h, 0.4).entries;
    CHECK(max_abs_diff(u12, u1 * u2) < 1e-9);

    Eigen::ComplexEigenSolver<Matrix> eig(u12);
    for (Eigen::Index i = 0; i < eig.eigenvalues().size(); ++i) {
        CHECK(std::abs(std::abs(eig.eigenvalues()(i)) - 1.0) < 1e-9);
    }
    CHECK_THROWS_AS(matrix_exponential_hermitian(DenseOperator::untagged(a), 1.0),
                    std::invalid_argument);
}

TEST_CASE("global phase normalization makes the first nonzero entry real") {
    Vector v(2);
    v << Amplitude(0, 0.5), Amplitude(0.5, 0);
    const Vector w = global_phase_normalized(v);
    CHECK(w(0).real() == doctest::Approx(0.5));
    CHECK(std::abs(w(0).imag()) < 1e-15);
}

TEST_CASE("expectation of a diagonal operator") {
    Matrix d = Matrix::Zero(2, 2);
    d(0, 0) = 1.0;
    d(1, 1) = -1.0;
    const DenseOperator op = DenseOperator::hermitian(d);
    const QuantumState plus = dense_apply(
        dense_propagator(Circuit(1, {Gate::hadamard(0)})), QuantumState::basis(1, 0));
    CHECK(std::abs(expectation(op, plus)) < 1e-15);
}
