#pragma once

#include <complex>
#include <cstdint>

#include <Eigen/Dense>

#include "pathsum/circuit.hpp"

namespace pathsum {

using Amplitude = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr double kPi = 3.14159265358979323846264338327950288;

/// Dense simulation is capped at 12 qubits (4096-dimensional operators).
inline constexpr int kMaxDenseQubits = 12;

/// Entrywise tolerance for the unitary/hermitian tags.
inline constexpr double kFlagTolerance = 1e-10;

/// Basis state |z> of an n-qubit register. Bit j of z, counted from the
/// most significant end (j = 0 is the MSB), is q_{j+1} in |q_1 ... q_n>.
struct BasisState {
    int n = 1;
    std::uint64_t z = 0;

    BasisState(int n_, std::uint64_t z_);

    std::uint64_t dim() const { return std::uint64_t{1} << n; }
    int bit(int j) const;
    BasisState with_bit(int j, int value) const;
};

/// State vector over the 2^n computational basis states.
struct QuantumState {
    int n = 0;
    Vector amplitudes;

    QuantumState(int n_, Vector amplitudes_);

    static QuantumState basis(int n, std::uint64_t z);
    static QuantumState uniform(int n);

    std::uint64_t dim() const { return std::uint64_t{1} << n; }
    double norm() const { return amplitudes.norm(); }
    double probability(std::uint64_t z) const { return std::norm(amplitudes(static_cast<Eigen::Index>(z))); }
};

/// Dense 2^n x 2^n operator with explicit unitary/hermitian tags.
/// The tagging factories verify their claim entrywise at 1e-10; operators
/// produced by the library (gate products, exponentials of tagged
/// hermitians) are tagged by construction.
struct DenseOperator {
    int n = 0;
    Matrix entries;
    bool unitary_flag = false;
    bool hermitian_flag = false;

    static DenseOperator identity(int n);
    static DenseOperator unitary(Matrix m);
    static DenseOperator hermitian(Matrix m);
    static DenseOperator untagged(Matrix m);

    std::uint64_t dim() const { return std::uint64_t{1} << n; }
};

/// Applies a unitary-tagged operator; preserves the norm within 1e-10.
QuantumState dense_apply(const DenseOperator& op, const QuantumState& state);

/// Dense matrix of one gate on an n-qubit register (Kronecker embedding
/// for Hadamard, permutation/diagonal construction for the classical and
/// oracle gates).
Matrix dense_gate(const Gate& gate, int n);

/// Product of the gate matrices in time order: U = U^(M) ... U^(1).
/// The empty circuit yields the identity.
DenseOperator dense_propagator(const Circuit& circuit);

/// e^{-i t H} for a hermitian-tagged H, via eigendecomposition.
DenseOperator matrix_exponential_hermitian(const DenseOperator& h, double t);

Amplitude expectation(const DenseOperator& op, const QuantumState& state);

/// Rescales so the first entry with |entry| > tol (row-major scan) is
/// real positive; used wherever operators or states are compared up to a
/// global phase.
Matrix global_phase_normalized(const Matrix& m, double tol = 1e-12);
Vector global_phase_normalized(const Vector& v, double tol = 1e-12);

bool is_unitary(const Matrix& m, double tol = kFlagTolerance);
bool is_hermitian(const Matrix& m, double tol = kFlagTolerance);

}  // namespace pathsum
