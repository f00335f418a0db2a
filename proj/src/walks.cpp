#include "pathsum/walks.hpp"

#include <cmath>
#include <stdexcept>

#include <boost/multiprecision/cpp_int.hpp>

#include "pathsum/bessel.hpp"

namespace pathsum {

Graph Graph::ring(int N) {
    if (N < 3) throw std::invalid_argument("Graph::ring: N must be at least 3");
    Graph g;
    g.kind = Kind::Ring;
    g.parameter = N;
    g.adjacency = Eigen::MatrixXd::Zero(N, N);
    for (int i = 0; i < N; ++i) {
        g.adjacency(i, (i + 1) % N) = 1.0;
        g.adjacency((i + 1) % N, i) = 1.0;
    }
    g.degree = Eigen::MatrixXd::Identity(N, N) * 2.0;
    return g;
}

Graph Graph::hypercube(int n) {
    if (n < 1 || n > 12) throw std::invalid_argument("Graph::hypercube: n must be in [1, 12]");
    const int N = 1 << n;
    Graph g;
    g.kind = Kind::Hypercube;
    g.parameter = n;
    g.adjacency = Eigen::MatrixXd::Zero(N, N);
    for (int z = 0; z < N; ++z) {
        for (int j = 0; j < n; ++j) g.adjacency(z ^ (1 << j), z) = 1.0;
    }
    g.degree = Eigen::MatrixXd::Identity(N, N) * static_cast<double>(n);
    return g;
}

Graph Graph::complete(int N) {
    if (N < 2) throw std::invalid_argument("Graph::complete: N must be at least 2");
    Graph g;
    g.kind = Kind::Complete;
    g.parameter = N;
    g.adjacency = Eigen::MatrixXd::Ones(N, N) - Eigen::MatrixXd::Identity(N, N);
    g.degree = Eigen::MatrixXd::Identity(N, N) * static_cast<double>(N - 1);
    return g;
}

std::vector<double> classical_rw_distribution(int n_steps) {
    if (n_steps < 0 || n_steps > 1000) {
        throw std::invalid_argument("classical_rw_distribution: n_steps must be in [0, 10^3]");
    }
    using boost::multiprecision::cpp_int;
    const int n = n_steps;
    std::vector<double> table(2 * n + 1, 0.0);
    cpp_int binom = 1;  // C(n, 0)
    for (int k = 0; k <= n; ++k) {
        const int j = 2 * k - n;
        // C(n, k) / 2^n with an exact integer numerator; ldexp keeps the
        // scaling exact after the one rounding in the conversion.
        table[static_cast<std::size_t>(j + n)] =
            std::ldexp(binom.convert_to<double>(), -n);
        binom = binom * (n - k) / (k + 1);
    }
    return table;
}

double gaussian_limit_density(double t, double z) {
    if (!(t > 0.0)) throw std::invalid_argument("gaussian_limit_density: t must be positive");
    return std::exp(-z * z / (2.0 * t)) / std::sqrt(2.0 * kPi * t);
}

Amplitude ctqrw_exact(int N, double t, int d) {
    if (N < 1 || N > 10000) throw std::invalid_argument("ctqrw_exact: N must be in [1, 10^4]");
    Amplitude sum(0.0, 0.0);
    for (int p = 0; p < N; ++p) {
        const double theta = 2.0 * kPi * p / N;
        sum += std::exp(Amplitude(0.0, -2.0 * t * std::cos(theta) + theta * d));
    }
    return sum / static_cast<double>(N);
}

Amplitude ctqrw_bessel(double t, int d) {
    if (std::abs(d) > 1000) throw std::invalid_argument("ctqrw_bessel: |d| must be at most 10^3");
    if (!(t >= 0.0 && t <= 100.0)) throw std::invalid_argument("ctqrw_bessel: t must be in [0, 10^2]");
    const Amplitude front = std::exp(Amplitude(0.0, 2.0 * t));
    // (-i)^d, exact by quadrant
    static constexpr Amplitude quadrant[4] = {{1, 0}, {0, -1}, {-1, 0}, {0, 1}};
    const Amplitude phase = quadrant[((d % 4) + 4) % 4];
    return front * phase * bessel_j(d, 2.0 * t);
}

double grover_walk(std::uint64_t N, double gamma, double T) {
    if (N < 2 || N > (std::uint64_t{1} << 12)) {
        throw std::invalid_argument("grover_walk: N must be in [2, 2^12]");
    }
    // H restricted to span{|w>, |r>} with |s> = a|w> + b|r>.
    const double Nd = static_cast<double>(N);
    const double a = 1.0 / std::sqrt(Nd);
    const double b = std::sqrt(1.0 - a * a);
    Eigen::Matrix2d h;
    h << -gamma * Nd * a * a - 1.0, -gamma * Nd * a * b,
         -gamma * Nd * a * b,       -gamma * Nd * b * b;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> solver(h);
    Eigen::Vector2cd psi(a, b);
    Eigen::Vector2cd in_basis = solver.eigenvectors().transpose() * psi;
    for (int i = 0; i < 2; ++i) {
        in_basis(i) *= std::exp(Amplitude(0.0, -T * solver.eigenvalues()(i)));
    }
    psi = solver.eigenvectors() * in_basis;
    return std::norm(psi(0));
}

WalkerState WalkerState::at_origin(Amplitude coin_up, Amplitude coin_down) {
    const double norm = std::sqrt(std::norm(coin_up) + std::norm(coin_down));
    if (norm < 1e-15) throw std::invalid_argument("WalkerState: zero initial coin state");
    WalkerState s;
    s.min_z = 0;
    s.up = {coin_up / norm};
    s.down = {coin_down / norm};
    return s;
}

WalkerState WalkerState::symmetrized_origin() {
    const double s = 1.0 / std::sqrt(2.0);
    return at_origin(Amplitude(s, 0.0), Amplitude(0.0, s));
}

double WalkerState::probability(int z) const {
    const int i = z - min_z;
    if (i < 0 || i >= static_cast<int>(up.size())) return 0.0;
    return std::norm(up[static_cast<std::size_t>(i)]) + std::norm(down[static_cast<std::size_t>(i)]);
}

double WalkerState::total_probability() const {
    double total = 0.0;
    for (std::size_t i = 0; i < up.size(); ++i) total += std::norm(up[i]) + std::norm(down[i]);
    return total;
}

WalkerState dtqrw_step(const WalkerState& state) {
    const std::size_t size = state.up.size();
    WalkerState next;
    next.min_z = state.min_z - 1;
    next.steps = state.steps + 1;
    next.up.assign(size + 2, Amplitude(0.0, 0.0));
    next.down.assign(size + 2, Amplitude(0.0, 0.0));
    const double s = 1.0 / std::sqrt(2.0);
    for (std::size_t i = 0; i < size; ++i) {
        const Amplitude coin_up = s * (state.up[i] + state.down[i]);
        const Amplitude coin_down = s * (state.up[i] - state.down[i]);
        next.up[i + 2] += coin_up;     // up moves z -> z + 1
        next.down[i] += coin_down;     // down moves z -> z - 1
    }
    return next;
}

namespace {

// Binomial table row as doubles; exact for n <= 50 or so, which covers
// every place the counts are compared against integer enumeration.
std::vector<double> binomial_row(int n) {
    std::vector<double> row(static_cast<std::size_t>(n) + 1);
    row[0] = 1.0;
    for (int k = 1; k <= n; ++k) {
        row[static_cast<std::size_t>(k)] =
            row[static_cast<std::size_t>(k - 1)] * (n - k + 1) / k;
    }
    return row;
}

double binom(const std::vector<double>& row, int k) {
    if (k < 0 || k >= static_cast<int>(row.size())) return 0.0;
    return row[static_cast<std::size_t>(k)];
}

}  // namespace

SpinorAmplitude dtqrw_combinatorial(int n_steps, int z) {
    if (n_steps < 1) throw std::invalid_argument("dtqrw_combinatorial: n_steps must be positive");
    SpinorAmplitude out{Amplitude(0, 0), Amplitude(0, 0)};
    if (std::abs(z) > n_steps || ((n_steps + z) & 1) != 0) return out;
    const int nl = (n_steps - z) / 2;
    const int nr = (n_steps + z) / 2;
    const double scale = std::pow(2.0, -0.5 * n_steps);
    if (nl == 0) {
        out.right = Amplitude(scale, 0.0);  // the single all-right path
        return out;
    }
    const std::vector<double> rows_l = binomial_row(nl - 1);
    const std::vector<double> rows_r = binomial_row(nr);
    double left = 0.0, right = 0.0;
    for (int b = 0; b <= nl - 1; ++b) {
        const double sign = ((nl - b - 1) & 1) ? -1.0 : 1.0;
        left += sign * binom(rows_l, b) * binom(rows_r, b);
        right += sign * binom(rows_l, b) * binom(rows_r, b + 1);
    }
    out.left = Amplitude(scale * left, 0.0);
    out.right = Amplitude(scale * right, 0.0);
    return out;
}

namespace {

// Reversal counts for paths whose first step is fixed; mirror symmetry
// maps the left start to the right start at -z.
std::vector<double> reversal_counts_right(int n, int z) {
    std::vector<double> counts(static_cast<std::size_t>(n > 0 ? n : 1), 0.0);
    if (std::abs(z) > n || ((n + z) & 1) != 0) return counts;
    const int nr = (n + z) / 2;
    const int nl = (n - z) / 2;
    if (nr == 0) return counts;  // cannot start to the right
    if (nl == 0) {
        counts[0] = 1.0;  // straight right-moving path
        return counts;
    }
    const std::vector<double> row_r = binomial_row(nr - 1);
    const std::vector<double> row_l = binomial_row(nl - 1);
    for (int rho = 1; rho <= nr; ++rho) {
        const double c = binom(row_r, rho - 1);
        if (rho >= 2) {
            // ends on a right run: rho right runs, rho - 1 left runs
            const int reverses = 2 * rho - 2;
            if (reverses < n) counts[static_cast<std::size_t>(reverses)] += c * binom(row_l, rho - 2);
        }
        // ends on a left run: rho right runs, rho left runs
        const int reverses = 2 * rho - 1;
        if (reverses < n) counts[static_cast<std::size_t>(reverses)] += c * binom(row_l, rho - 1);
    }
    return counts;
}

}  // namespace

std::vector<double> checkerboard_reversal_counts(int n_steps, int z, CheckerboardStart start) {
    if (n_steps < 1 || n_steps > 1000) {
        throw std::invalid_argument("checkerboard_reversal_counts: n_steps must be in [1, 10^3]");
    }
    switch (start) {
        case CheckerboardStart::Right:
            return reversal_counts_right(n_steps, z);
        case CheckerboardStart::Left:
            return reversal_counts_right(n_steps, -z);
        case CheckerboardStart::Superposed: {
            // Union of the two entry directions: paths are counted, not
            // amplitude-weighted, so both light-cone tips carry N(0) = 1.
            std::vector<double> right = reversal_counts_right(n_steps, z);
            const std::vector<double> left = reversal_counts_right(n_steps, -z);
            for (std::size_t i = 0; i < right.size(); ++i) right[i] += left[i];
            return right;
        }
    }
    throw std::invalid_argument("checkerboard_reversal_counts: unknown start");
}

Amplitude checkerboard_kernel(int n_steps, int z, double mass_a, CheckerboardStart start) {
    const std::vector<double> counts = checkerboard_reversal_counts(n_steps, z, start);
    Amplitude kernel(0.0, 0.0);
    Amplitude factor(1.0, 0.0);  // (i mass_a)^R
    const Amplitude step(0.0, mass_a);
    for (std::size_t r = 0; r < counts.size(); ++r) {
        if (counts[r] != 0.0) kernel += counts[r] * factor;
        factor *= step;
    }
    return kernel;
}

}  // namespace pathsum
