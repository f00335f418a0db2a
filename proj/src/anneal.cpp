#include "pathsum/anneal.hpp"

#include <cmath>
#include <stdexcept>

namespace pathsum {

Schedule Schedule::linear(double total_time) {
    if (!(total_time > 0.0)) throw std::invalid_argument("Schedule: total time must be positive");
    Schedule s;
    s.kind = Kind::Linear;
    s.total_time = total_time;
    return s;
}

Schedule Schedule::tabulated(double total_time, std::vector<double> samples) {
    if (!(total_time > 0.0)) throw std::invalid_argument("Schedule: total time must be positive");
    if (samples.size() < 2) throw std::invalid_argument("Schedule: need at least two samples");
    if (std::abs(samples.front()) > 1e-12 || std::abs(samples.back() - 1.0) > 1e-12) {
        throw std::invalid_argument("Schedule: samples must run from 0 to 1");
    }
    for (std::size_t i = 1; i < samples.size(); ++i) {
        if (samples[i] + 1e-12 < samples[i - 1]) {
            throw std::invalid_argument("Schedule: samples must be nondecreasing");
        }
    }
    Schedule s;
    s.kind = Kind::Tabulated;
    s.total_time = total_time;
    s.samples = std::move(samples);
    return s;
}

double Schedule::lambda(double t) const {
    if (kind == Kind::Linear) {
        if (t <= 0.0) return 0.0;
        if (t >= total_time) return 1.0;
        return t / total_time;
    }
    if (t <= 0.0) return samples.front();
    if (t >= total_time) return samples.back();
    const double x = t / total_time * static_cast<double>(samples.size() - 1);
    const std::size_t i = static_cast<std::size_t>(x);
    if (i + 1 >= samples.size()) return samples.back();
    const double frac = x - static_cast<double>(i);
    return samples[i] + frac * (samples[i + 1] - samples[i]);
}

HamiltonianPair grover_hamiltonians(int n, std::uint64_t w) {
    if (n < 1 || n > kMaxDenseQubits) {
        throw std::invalid_argument("grover_hamiltonians: n must be in [1, 12]");
    }
    const Eigen::Index N = Eigen::Index{1} << n;
    if (w >= static_cast<std::uint64_t>(N)) {
        throw std::invalid_argument("grover_hamiltonians: w out of range");
    }
    Matrix k = Matrix::Identity(N, N) -
               Matrix::Constant(N, N, Amplitude(1.0 / static_cast<double>(N), 0.0));
    Matrix v = Matrix::Identity(N, N);
    v(static_cast<Eigen::Index>(w), static_cast<Eigen::Index>(w)) = 0.0;
    return HamiltonianPair{DenseOperator::hermitian(std::move(k)),
                           DenseOperator::hermitian(std::move(v))};
}

HamiltonianPair ring_hamiltonians(int n, MixerSign sign) {
    if (n < 2 || n > 10) throw std::invalid_argument("ring_hamiltonians: n must be in [2, 10]");
    const Eigen::Index N = Eigen::Index{1} << n;
    const double mixer = sign == MixerSign::MinusX ? -1.0 : 1.0;
    Matrix k = Matrix::Zero(N, N);
    Matrix v = Matrix::Zero(N, N);
    for (Eigen::Index z = 0; z < N; ++z) {
        for (int j = 0; j < n; ++j) {
            k(z ^ (Eigen::Index{1} << (n - 1 - j)), z) += mixer;  // X_j
            const int sj = ((z >> (n - 1 - j)) & 1) ? -1 : 1;
            const int sj1 = ((z >> (n - 1 - (j + 1) % n)) & 1) ? -1 : 1;
            v(z, z) += static_cast<double>(sj * sj1);             // Z_j Z_{j+1}
        }
    }
    return HamiltonianPair{DenseOperator::hermitian(std::move(k)),
                           DenseOperator::hermitian(std::move(v))};
}

DenseOperator interpolated_hamiltonian(const HamiltonianPair& pair, double lambda) {
    if (!(lambda >= 0.0 && lambda <= 1.0)) {
        throw std::invalid_argument("interpolated_hamiltonian: lambda must lie in [0, 1]");
    }
    if (pair.kinetic.n != pair.potential.n) {
        throw std::invalid_argument("interpolated_hamiltonian: mismatched pair dimensions");
    }
    return DenseOperator::hermitian((1.0 - lambda) * pair.kinetic.entries +
                                    lambda * pair.potential.entries);
}

double grover_gap(double lambda, std::uint64_t N) {
    if (!(lambda >= 0.0 && lambda <= 1.0)) {
        throw std::invalid_argument("grover_gap: lambda must lie in [0, 1]");
    }
    if (N < 2) throw std::invalid_argument("grover_gap: N must be at least 2");
    const double frac = static_cast<double>(N - 1) / static_cast<double>(N);
    return std::sqrt(1.0 - 4.0 * frac * lambda * (1.0 - lambda));
}

namespace {

// Time to reach lambda along dlambda/dt = rate * g^2(lambda), in closed
// form: t(lambda) = (1/rate) N/(2 sqrt(N-1)) [atan(sqrt(N-1)(2l-1)) + atan(sqrt(N-1))].
double local_time_of_lambda(double lambda, double N, double rate) {
    const double r = std::sqrt(N - 1.0);
    return (N / (2.0 * r * rate)) * (std::atan(r * (2.0 * lambda - 1.0)) + std::atan(r));
}

}  // namespace

Schedule local_adiabatic_schedule(std::uint64_t N, double eps) {
    if (N < 2) throw std::invalid_argument("local_adiabatic_schedule: N must be at least 2");
    if (!(eps > 0.0 && eps < 1.0)) {
        throw std::invalid_argument("local_adiabatic_schedule: eps must lie in (0, 1)");
    }
    const double Nd = static_cast<double>(N);
    const double total = kPi / (2.0 * eps) * std::sqrt(Nd);
    // Raw integral of 1/(eps g^2); the rate is rescaled so the tabulated
    // schedule spans exactly T = (pi / 2 eps) sqrt(N).
    const double raw_total = local_time_of_lambda(1.0, Nd, eps);
    const double rate = eps * raw_total / total;

    std::vector<double> samples(kScheduleSamples);
    samples.front() = 0.0;
    samples.back() = 1.0;
    for (int i = 1; i + 1 < kScheduleSamples; ++i) {
        const double t = total * static_cast<double>(i) / (kScheduleSamples - 1);
        // Invert t(lambda) by bisection plus a few Newton polish steps.
        double lo = 0.0, hi = 1.0;
        for (int it = 0; it < 60; ++it) {
            const double mid = 0.5 * (lo + hi);
            (local_time_of_lambda(mid, Nd, rate) < t ? lo : hi) = mid;
        }
        double lam = 0.5 * (lo + hi);
        for (int it = 0; it < 4; ++it) {
            const double g = grover_gap(lam, N);
            const double f = local_time_of_lambda(lam, Nd, rate) - t;
            lam -= f * rate * g * g;
            if (lam < 0.0) lam = 0.0;
            if (lam > 1.0) lam = 1.0;
        }
        samples[i] = lam;
    }
    Schedule s = Schedule::tabulated(total, std::move(samples));
    s.kind = Schedule::Kind::LocalAdiabatic;
    return s;
}

double linear_schedule_time_bound(std::uint64_t N, double eps) {
    if (N < 2) throw std::invalid_argument("linear_schedule_time_bound: N must be at least 2");
    if (!(eps > 0.0 && eps < 1.0)) {
        throw std::invalid_argument("linear_schedule_time_bound: eps must lie in (0, 1)");
    }
    return static_cast<double>(N) / eps;
}

double QaoaAngles::total_time() const {
    double total = 0.0;
    for (std::size_t l = 0; l < beta.size(); ++l) total += beta[l] + gamma[l];
    return total;
}

QaoaAngles trotterize(const Schedule& schedule, int M) {
    if (M < 1) throw std::invalid_argument("trotterize: M must be at least 1");
    const double delta = schedule.total_time / M;
    QaoaAngles angles;
    angles.beta.resize(static_cast<std::size_t>(M));
    angles.gamma.resize(static_cast<std::size_t>(M));
    for (int l = 1; l <= M; ++l) {
        const double lam = schedule.lambda(l * delta);
        angles.gamma[static_cast<std::size_t>(l - 1)] = delta * lam;
        angles.beta[static_cast<std::size_t>(l - 1)] = delta - angles.gamma[l - 1];
    }
    return angles;
}

QuantumState qaoa_evolve(const QaoaAngles& angles, const HamiltonianPair& pair,
                         const QuantumState& initial) {
    if (angles.beta.size() != angles.gamma.size()) {
        throw std::invalid_argument("qaoa_evolve: beta and gamma must have equal length");
    }
    if (pair.kinetic.n != initial.n || pair.potential.n != initial.n) {
        throw std::invalid_argument("qaoa_evolve: pair and state dimensions differ");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> k_solver(pair.kinetic.entries);
    Eigen::SelfAdjointEigenSolver<Matrix> v_solver(pair.potential.entries);
    if (k_solver.info() != Eigen::Success || v_solver.info() != Eigen::Success) {
        throw std::runtime_error("qaoa_evolve: eigendecomposition failed");
    }
    Vector psi = initial.amplitudes;
    auto apply_exp = [](const Eigen::SelfAdjointEigenSolver<Matrix>& solver, double angle,
                        const Vector& v) {
        Vector in_basis = solver.eigenvectors().adjoint() * v;
        for (Eigen::Index i = 0; i < in_basis.size(); ++i) {
            in_basis(i) *= std::exp(Amplitude(0.0, -angle * solver.eigenvalues()(i)));
        }
        return Vector(solver.eigenvectors() * in_basis);
    };
    for (std::size_t l = 0; l < angles.beta.size(); ++l) {
        psi = apply_exp(v_solver, angles.gamma[l], psi);
        psi = apply_exp(k_solver, angles.beta[l], psi);
    }
    return QuantumState(initial.n, std::move(psi));
}

QuantumState schedule_evolve(const Schedule& schedule, const HamiltonianPair& pair,
                             const QuantumState& initial, int steps) {
    if (steps < 1) throw std::invalid_argument("schedule_evolve: steps must be positive");
    if (pair.kinetic.n != initial.n || pair.potential.n != initial.n) {
        throw std::invalid_argument("schedule_evolve: pair and state dimensions differ");
    }
    const Matrix& K = pair.kinetic.entries;
    const Matrix& V = pair.potential.entries;
    const double dt = schedule.total_time / steps;
    auto rhs = [&](double t, const Vector& v) {
        const double lam = schedule.lambda(t);
        return Vector(Amplitude(0.0, -1.0) * ((1.0 - lam) * (K * v) + lam * (V * v)));
    };
    Vector psi = initial.amplitudes;
    for (int i = 0; i < steps; ++i) {
        const double t = i * dt;
        const Vector k1 = rhs(t, psi);
        const Vector k2 = rhs(t + 0.5 * dt, psi + (0.5 * dt) * k1);
        const Vector k3 = rhs(t + 0.5 * dt, psi + (0.5 * dt) * k2);
        const Vector k4 = rhs(t + dt, psi + dt * k3);
        psi += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    const double drift = std::abs(psi.norm() - 1.0);
    if (drift > 1e-6) {
        throw std::runtime_error("schedule_evolve: step size too coarse, norm drift " +
                                 std::to_string(drift));
    }
    return QuantumState(initial.n, std::move(psi));
}

}  // namespace pathsum
