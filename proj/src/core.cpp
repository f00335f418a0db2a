#include "pathsum/core.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace pathsum {

BasisState::BasisState(int n_, std::uint64_t z_) : n(n_), z(z_) {
    if (n < 1 || n > 63) {
        throw std::invalid_argument("BasisState: qubit count must be in [1, 63]");
    }
    if (z >= dim()) {
        throw std::invalid_argument("BasisState: z must satisfy 0 <= z < 2^n");
    }
}

int BasisState::bit(int j) const {
    if (j < 0 || j >= n) throw std::invalid_argument("BasisState::bit: index out of range");
    return static_cast<int>((z >> (n - 1 - j)) & 1u);
}

BasisState BasisState::with_bit(int j, int value) const {
    if (j < 0 || j >= n) throw std::invalid_argument("BasisState::with_bit: index out of range");
    const std::uint64_t mask = std::uint64_t{1} << (n - 1 - j);
    return BasisState(n, value ? (z | mask) : (z & ~mask));
}

QuantumState::QuantumState(int n_, Vector amplitudes_) : n(n_), amplitudes(std::move(amplitudes_)) {
    if (n < 1) throw std::invalid_argument("QuantumState: qubit count must be positive");
    if (amplitudes.size() != static_cast<Eigen::Index>(dim())) {
        throw std::invalid_argument("QuantumState: amplitude vector must have 2^n entries");
    }
}

QuantumState QuantumState::basis(int n, std::uint64_t z) {
    BasisState check(n, z);
    Vector v = Vector::Zero(static_cast<Eigen::Index>(check.dim()));
    v(static_cast<Eigen::Index>(z)) = 1.0;
    return QuantumState(n, std::move(v));
}

QuantumState QuantumState::uniform(int n) {
    if (n < 1) throw std::invalid_argument("QuantumState: qubit count must be positive");
    const Eigen::Index d = Eigen::Index{1} << n;
    Vector v = Vector::Constant(d, Amplitude(1.0 / std::sqrt(static_cast<double>(d)), 0.0));
    return QuantumState(n, std::move(v));
}

bool is_unitary(const Matrix& m, double tol) {
    if (m.rows() != m.cols()) return false;
    const Matrix gram = m.adjoint() * m;
    const Matrix id = Matrix::Identity(m.rows(), m.cols());
    return (gram - id).cwiseAbs().maxCoeff() <= tol;
}

bool is_hermitian(const Matrix& m, double tol) {
    if (m.rows() != m.cols()) return false;
    return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

namespace {

int qubits_for_dim(Eigen::Index rows, Eigen::Index cols) {
    if (rows != cols || rows < 2) {
        throw std::invalid_argument("DenseOperator: matrix must be square with dim >= 2");
    }
    int n = 0;
    Eigen::Index d = rows;
    while (d > 1) {
        if (d % 2 != 0) throw std::invalid_argument("DenseOperator: dimension must be a power of two");
        d /= 2;
        ++n;
    }
    if (n > kMaxDenseQubits) {
        std::ostringstream msg;
        msg << "DenseOperator: dimension 2^" << n << " exceeds the dense cap 2^" << kMaxDenseQubits;
        throw std::invalid_argument(msg.str());
    }
    return n;
}

}  // namespace

DenseOperator DenseOperator::identity(int n) {
    DenseOperator op;
    op.n = n;
    op.entries = Matrix::Identity(Eigen::Index{1} << n, Eigen::Index{1} << n);
    op.unitary_flag = true;
    op.hermitian_flag = true;
    return op;
}

DenseOperator DenseOperator::unitary(Matrix m) {
    DenseOperator op;
    op.n = qubits_for_dim(m.rows(), m.cols());
    if (!is_unitary(m)) {
        throw std::invalid_argument("DenseOperator::unitary: U†U deviates from identity beyond 1e-10");
    }
    op.entries = std::move(m);
    op.unitary_flag = true;
    op.hermitian_flag = is_hermitian(op.entries);
    return op;
}

DenseOperator DenseOperator::hermitian(Matrix m) {
    DenseOperator op;
    op.n = qubits_for_dim(m.rows(), m.cols());
    if (!is_hermitian(m)) {
        throw std::invalid_argument("DenseOperator::hermitian: M deviates from M† beyond 1e-10");
    }
    op.entries = std::move(m);
    op.hermitian_flag = true;
    return op;
}

DenseOperator DenseOperator::untagged(Matrix m) {
    DenseOperator op;
    op.n = qubits_for_dim(m.rows(), m.cols());
    op.entries = std::move(m);
    return op;
}

QuantumState dense_apply(const DenseOperator& op, const QuantumState& state) {
    if (op.n != state.n) {
        throw std::invalid_argument("dense_apply: operator and state have different qubit counts");
    }
    if (!op.unitary_flag) {
        throw std::invalid_argument("dense_apply: operator is not flagged unitary");
    }
    return QuantumState(state.n, op.entries * state.amplitudes);
}

Matrix dense_gate(const Gate& gate, int n) {
    const Eigen::Index d = Eigen::Index{1} << n;
    switch (gate.kind) {
        case GateKind::Hadamard: {
            Matrix h2(2, 2);
            const double s = 1.0 / std::sqrt(2.0);
            h2 << s, s, s, -s;
            Matrix m = Matrix::Identity(1, 1);
            for (int j = 0; j < n; ++j) {
                const Matrix& factor = (j == gate.target)
                    ? h2
                    : static_cast<const Matrix&>(Matrix::Identity(2, 2));
                Matrix next(m.rows() * 2, m.cols() * 2);
                for (Eigen::Index r = 0; r < m.rows(); ++r) {
                    for (Eigen::Index c = 0; c < m.cols(); ++c) {
                        next.block(2 * r, 2 * c, 2, 2) = m(r, c) * factor;
                    }
                }
                m = std::move(next);
            }
            return m;
        }
        case GateKind::PhaseOracle: {
            Matrix m = Matrix::Zero(d, d);
            for (Eigen::Index z = 0; z < d; ++z) {
                m(z, z) = gate.truth[static_cast<std::size_t>(z)] ? -1.0 : 1.0;
            }
            return m;
        }
        default: {
            // Classical gates: a permutation built column by column.
            Matrix m = Matrix::Zero(d, d);
            const int shift_t = n - 1 - gate.target;
            for (Eigen::Index z = 0; z < d; ++z) {
                std::uint64_t out = static_cast<std::uint64_t>(z);
                switch (gate.kind) {
                    case GateKind::Not:
                        out ^= std::uint64_t{1} << shift_t;
                        break;
                    case GateKind::Cnot:
                        if ((out >> (n - 1 - gate.control1)) & 1u) out ^= std::uint64_t{1} << shift_t;
                        break;
                    case GateKind::Toffoli:
                        if (((out >> (n - 1 - gate.control1)) & 1u) &&
                            ((out >> (n - 1 - gate.control2)) & 1u)) {
                            out ^= std::uint64_t{1} << shift_t;
                        }
                        break;
                    case GateKind::BitFlipOracle: {
                        const std::uint64_t high = out >> (shift_t + 1);
                        const std::uint64_t low = out & ((std::uint64_t{1} << shift_t) - 1);
                        const std::uint64_t input = (high << shift_t) | low;
                        if (gate.truth[input]) out ^= std::uint64_t{1} << shift_t;
                        break;
                    }
                    default:
                        break;
                }
                m(static_cast<Eigen::Index>(out), z) = 1.0;
            }
            return m;
        }
    }
}

DenseOperator dense_propagator(const Circuit& circuit) {
    validate_circuit(circuit);
    if (circuit.n > kMaxDenseQubits) {
        throw std::invalid_argument("dense_propagator: register exceeds the dense cap of 12 qubits");
    }
    const Eigen::Index d = Eigen::Index{1} << circuit.n;
    Matrix u = Matrix::Identity(d, d);
    for (const Gate& g : circuit.gates) {
        u = dense_gate(g, circuit.n) * u;
    }
    DenseOperator op;
    op.n = circuit.n;
    op.entries = std::move(u);
    op.unitary_flag = true;
    op.hermitian_flag = false;
    return op;
}

DenseOperator matrix_exponential_hermitian(const DenseOperator& h, double t) {
    if (!h.hermitian_flag || !is_hermitian(h.entries)) {
        throw std::invalid_argument("matrix_exponential_hermitian: input is not hermitian within 1e-10");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(h.entries);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("matrix_exponential_hermitian: eigendecomposition failed");
    }
    const auto& vals = solver.eigenvalues();
    const Matrix& vecs = solver.eigenvectors();
    Vector phases(vals.size());
    for (Eigen::Index i = 0; i < vals.size(); ++i) {
        phases(i) = std::exp(Amplitude(0.0, -t * vals(i)));
    }
    DenseOperator op;
    op.n = h.n;
    op.entries = vecs * phases.asDiagonal() * vecs.adjoint();
    op.unitary_flag = true;
    op.hermitian_flag = false;
    return op;
}

Amplitude expectation(const DenseOperator& op, const QuantumState& state) {
    if (op.n != state.n) {
        throw std::invalid_argument("expectation: operator and state have different qubit counts");
    }
    return state.amplitudes.dot(op.entries * state.amplitudes);
}

namespace {

template <typename Mat>
Mat phase_normalized_impl(const Mat& m, double tol) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            const Amplitude v = m(r, c);
            if (std::abs(v) > tol) {
                return m * (std::conj(v) / std::abs(v));
            }
        }
    }
    return m;
}

}  // namespace

Matrix global_phase_normalized(const Matrix& m, double tol) { return phase_normalized_impl(m, tol); }
Vector global_phase_normalized(const Vector& v, double tol) {
    Matrix m = v;
    return phase_normalized_impl(m, tol).col(0);
}

}  // namespace pathsum
