#include "pathsum/statmech.hpp"

#include <cmath>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include <fftw3.h>

namespace pathsum {

TransferMatrix transfer_matrix(double h, double J, double beta) {
    if (beta < 0.0) throw std::invalid_argument("transfer_matrix: beta must be nonnegative");
    TransferMatrix t;
    t.h = h;
    t.J = J;
    t.beta = beta;
    // Rows are sigma' in {+1, -1}, columns sigma in {+1, -1}.
    t.entries << std::exp(beta * (h + J)), std::exp(beta * (-h - J)),
                 std::exp(beta * (-h + J)), std::exp(beta * (h - J));
    return t;
}

std::pair<Eigen::Matrix2d, Eigen::Matrix2d> transfer_matrix_factors(const TransferMatrix& t) {
    Eigen::Matrix2d t1, t2;
    t1 << std::exp(t.beta * t.h), std::exp(-t.beta * t.h),
          std::exp(-t.beta * t.h), std::exp(t.beta * t.h);
    t2 << std::exp(t.beta * t.J), 0.0, 0.0, std::exp(-t.beta * t.J);
    return {t1, t2};
}

namespace {

Eigen::Matrix2d matrix_power(Eigen::Matrix2d base, int exponent) {
    Eigen::Matrix2d result = Eigen::Matrix2d::Identity();
    while (exponent > 0) {
        if (exponent & 1) result = result * base;
        base = base * base;
        exponent >>= 1;
    }
    return result;
}

}  // namespace

double partition_transfer(int n, double h, double J, double beta) {
    if (n < 2) throw std::invalid_argument("partition_transfer: n must be at least 2");
    const TransferMatrix t = transfer_matrix(h, J, beta);
    return matrix_power(t.entries, n).trace();
}

SuzukiCoefficients suzuki_coefficients(double h, double dtau) {
    if (!(h > 0.0) || !(dtau > 0.0)) {
        throw std::invalid_argument("suzuki_coefficients: h and dtau must be positive");
    }
    const double x = dtau * h;
    SuzukiCoefficients c;
    c.h_prime = 0.5 * std::log(std::cosh(x) / std::sinh(x));
    c.C = std::sqrt(0.5 * std::sinh(2.0 * x));
    return c;
}

double trotter_partition_single_spin(double h, double J, double beta, int M) {
    if (M < 1) throw std::invalid_argument("trotter_partition_single_spin: M must be positive");
    if (!(h > 0.0)) throw std::invalid_argument("trotter_partition_single_spin: h must be positive");
    if (!(beta > 0.0)) throw std::invalid_argument("trotter_partition_single_spin: beta must be positive");
    const double dtau = beta / M;
    Eigen::Matrix2d ex, ez;
    ex << std::cosh(dtau * h), std::sinh(dtau * h),
          std::sinh(dtau * h), std::cosh(dtau * h);
    ez << std::exp(dtau * J), 0.0, 0.0, std::exp(-dtau * J);
    return matrix_power(ex * ez, M).trace();
}

SignHistogram sign_statistics(SignModel model, double h, double J, double beta, int M) {
    if (M < 1) throw std::invalid_argument("sign_statistics: M must be positive");
    if (!(beta > 0.0)) throw std::invalid_argument("sign_statistics: beta must be positive");
    if (!(h > 0.0)) throw std::invalid_argument("sign_statistics: h must be positive");
    if (model == SignModel::XYInZBasis && !(J > 0.0)) {
        throw std::invalid_argument("sign_statistics: J must be positive for the XY model");
    }
    const double dtau = beta / M;

    // Two factor matrices per slice; diagonal factors pin the intermediate
    // state, so the XZ model enumerates 2^M paths and the XY model 2^{2M}.
    const int free_points = model == SignModel::XZInZBasis ? M : 2 * M;
    if (free_points > 24) {
        std::ostringstream msg;
        msg << "sign_statistics: enumeration budget exceeded (2^" << free_points
            << " paths, cap 2^24)";
        throw std::runtime_error(msg.str());
    }

    // Magnitudes and phase quadrants of the factor entries, [to][from].
    double first_mag[2][2], second_mag[2][2];
    int first_quad[2][2], second_quad[2][2];
    auto fill_exp_x = [&](double coupling, double mag[2][2], int quad[2][2]) {
        mag[0][0] = mag[1][1] = std::cosh(dtau * coupling);
        mag[0][1] = mag[1][0] = std::sinh(dtau * coupling);
        quad[0][0] = quad[0][1] = quad[1][0] = quad[1][1] = 0;
    };
    if (model == SignModel::XZInZBasis) {
        // slice = e^{dtau h X} e^{dtau J Z}; the Z factor is diagonal.
        fill_exp_x(h, first_mag, first_quad);
        second_mag[0][0] = std::exp(dtau * J);
        second_mag[1][1] = std::exp(-dtau * J);
        second_mag[0][1] = second_mag[1][0] = 0.0;
        second_quad[0][0] = second_quad[1][1] = second_quad[0][1] = second_quad[1][0] = 0;
    } else {
        // slice = e^{dtau J X} e^{dtau h Y}; Y off-diagonals carry +-i.
        fill_exp_x(J, first_mag, first_quad);
        second_mag[0][0] = second_mag[1][1] = std::cosh(dtau * h);
        second_mag[0][1] = second_mag[1][0] = std::sinh(dtau * h);
        second_quad[0][0] = second_quad[1][1] = 0;
        second_quad[1][0] = 1;  // <1|e^{a Y}|0> = +i sinh a
        second_quad[0][1] = 3;  // <0|e^{a Y}|1> = -i sinh a
    }

    SignHistogram histogram;
    static constexpr Amplitude kQuadrant[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    const std::uint64_t total = std::uint64_t{1} << free_points;
    for (std::uint64_t bits = 0; bits < total; ++bits) {
        double mag = 1.0;
        int quad = 0;
        if (model == SignModel::XZInZBasis) {
            for (int l = 0; l < M; ++l) {
                const int q = static_cast<int>((bits >> l) & 1u);
                const int qn = static_cast<int>((bits >> ((l + 1) % M)) & 1u);
                mag *= second_mag[q][q] * first_mag[qn][q];
            }
        } else {
            for (int l = 0; l < M; ++l) {
                const int q = static_cast<int>((bits >> (2 * l)) & 1u);
                const int r = static_cast<int>((bits >> (2 * l + 1)) & 1u);
                const int qn = static_cast<int>((bits >> ((2 * l + 2) % (2 * M))) & 1u);
                mag *= second_mag[r][q] * first_mag[qn][r];
                quad += second_quad[r][q] + first_quad[qn][r];
            }
        }
        quad &= 3;
        histogram.counts[static_cast<std::size_t>(quad)] += 1;
        histogram.weight[static_cast<std::size_t>(quad)] += mag;
        histogram.weighted_sum += mag * kQuadrant[quad];
        histogram.paths += 1;
    }
    return histogram;
}

SpinConfiguration SpinConfiguration::all_up(int slices, int sites) {
    if (slices < 1 || sites < 1) {
        throw std::invalid_argument("SpinConfiguration: grid dimensions must be positive");
    }
    SpinConfiguration c;
    c.slices = slices;
    c.sites = sites;
    c.spins.assign(static_cast<std::size_t>(slices) * sites, 1);
    return c;
}

int SpinConfiguration::spin(int l, int j) const {
    const int lw = ((l % slices) + slices) % slices;
    const int jw = ((j % sites) + sites) % sites;
    return spins[static_cast<std::size_t>(lw) * sites + jw];
}

void SpinConfiguration::flip(int l, int j) {
    const int lw = ((l % slices) + slices) % slices;
    const int jw = ((j % sites) + sites) % sites;
    auto& s = spins[static_cast<std::size_t>(lw) * sites + jw];
    s = static_cast<std::int8_t>(-s);
}

EuclideanAction tfim_euclidean_action(const SpinConfiguration& config, double h, double J,
                                      double dtau) {
    if (config.slices < 1 || config.sites < 1 ||
        config.spins.size() != static_cast<std::size_t>(config.slices) * config.sites) {
        throw std::invalid_argument("tfim_euclidean_action: malformed configuration");
    }
    for (std::int8_t s : config.spins) {
        if (s != 1 && s != -1) {
            throw std::invalid_argument("tfim_euclidean_action: spins must be +-1");
        }
    }
    const SuzukiCoefficients suzuki = suzuki_coefficients(h, dtau);
    EuclideanAction action;
    for (int l = 0; l < config.slices; ++l) {
        for (int j = 0; j < config.sites; ++j) {
            if (config.spin(l, j) != config.spin(l + 1, j)) ++action.temporal_disagreements;
            if (config.spin(l, j) != config.spin(l, j + 1)) ++action.spatial_disagreements;
        }
    }
    // (sigma' - sigma)^2 is 4 per disagreement, so each term is
    // (coupling/2) * 4 * count.
    action.temporal = 2.0 * suzuki.h_prime * static_cast<double>(action.temporal_disagreements);
    action.spatial = 2.0 * dtau * J * static_cast<double>(action.spatial_disagreements);
    action.offset = static_cast<double>(config.slices) * config.sites * (suzuki.h_prime + dtau * J);
    return action;
}

Amplitude free_propagator_exact(double m, double t, double xI, double xF) {
    if (!(m > 0.0)) throw std::invalid_argument("free_propagator_exact: m must be positive");
    if (!(t > 0.0)) {
        throw std::invalid_argument("free_propagator_exact: t must be positive (the t = 0 kernel is distributional)");
    }
    const double d = xF - xI;
    const double magnitude = std::sqrt(m / (2.0 * kPi * t));
    const Amplitude branch = std::exp(Amplitude(0.0, -kPi / 4.0));
    return magnitude * branch * std::exp(Amplitude(0.0, m * d * d / (2.0 * t)));
}

namespace {

std::mutex fftw_plan_mutex;

// Linear convolution out = kernel * in via zero-padded FFTs; kernel has
// length 2G-1 (displacement -(G-1)..(G-1)), in/out have length G.
class SliceConvolver {
  public:
    SliceConvolver(const std::vector<Amplitude>& kernel, std::size_t G) : G_(G) {
        P_ = 1;
        while (P_ < 2 * G - 1) P_ <<= 1;
        buffer_ = fftw_alloc_complex(P_);
        kernel_fft_.assign(P_, Amplitude(0, 0));
        {
            std::lock_guard<std::mutex> lock(fftw_plan_mutex);
            forward_ = fftw_plan_dft_1d(static_cast<int>(P_), buffer_, buffer_, FFTW_FORWARD,
                                        FFTW_ESTIMATE);
            backward_ = fftw_plan_dft_1d(static_cast<int>(P_), buffer_, buffer_, FFTW_BACKWARD,
                                         FFTW_ESTIMATE);
        }
        load(kernel);
        fftw_execute(forward_);
        store(kernel_fft_);
    }

    ~SliceConvolver() {
        std::lock_guard<std::mutex> lock(fftw_plan_mutex);
        fftw_destroy_plan(forward_);
        fftw_destroy_plan(backward_);
        fftw_free(buffer_);
    }

    SliceConvolver(const SliceConvolver&) = delete;
    SliceConvolver& operator=(const SliceConvolver&) = delete;

    void apply(std::vector<Amplitude>& psi) {
        load(psi);
        fftw_execute(forward_);
        for (std::size_t i = 0; i < P_; ++i) {
            const Amplitude a(buffer_[i][0], buffer_[i][1]);
            const Amplitude b = a * kernel_fft_[i];
            buffer_[i][0] = b.real();
            buffer_[i][1] = b.imag();
        }
        fftw_execute(backward_);
        // Valid section of the linear convolution starts at G-1; FFTW's
        // backward transform is unnormalized.
        const double scale = 1.0 / static_cast<double>(P_);
        for (std::size_t j = 0; j < G_; ++j) {
            psi[j] = Amplitude(buffer_[G_ - 1 + j][0], buffer_[G_ - 1 + j][1]) * scale;
        }
    }

  private:
    void load(const std::vector<Amplitude>& values) {
        for (std::size_t i = 0; i < P_; ++i) {
            const Amplitude v = i < values.size() ? values[i] : Amplitude(0, 0);
            buffer_[i][0] = v.real();
            buffer_[i][1] = v.imag();
        }
    }

    void store(std::vector<Amplitude>& out) {
        for (std::size_t i = 0; i < P_; ++i) out[i] = Amplitude(buffer_[i][0], buffer_[i][1]);
    }

    std::size_t G_;
    std::size_t P_;
    fftw_complex* buffer_;
    fftw_plan forward_;
    fftw_plan backward_;
    std::vector<Amplitude> kernel_fft_;
};

std::size_t grid_index(double x, const PropagatorGrid& grid, std::size_t G, const char* what) {
    const double pos = (x + 0.5 * grid.extent) / grid.spacing;
    const long long j = std::llround(pos);
    if (j < 0 || j >= static_cast<long long>(G) || std::abs(pos - static_cast<double>(j)) > 1e-6) {
        throw std::invalid_argument(std::string("free_propagator: ") + what +
                                    " must lie on the grid");
    }
    return static_cast<std::size_t>(j);
}

}  // namespace

std::vector<Amplitude> free_propagator_profile(double m, double t, double xI, int M,
                                               const PropagatorGrid& grid) {
    if (!(m > 0.0)) throw std::invalid_argument("free_propagator: m must be positive");
    if (!(t > 0.0)) throw std::invalid_argument("free_propagator: t must be positive");
    if (M < 1) throw std::invalid_argument("free_propagator: M must be at least 1");
    if (!(grid.extent > 0.0) || !(grid.spacing > 0.0) || grid.spacing > grid.extent) {
        throw std::invalid_argument("free_propagator: grid extent and spacing must be positive");
    }
    const std::size_t G = static_cast<std::size_t>(std::llround(grid.extent / grid.spacing)) + 1;
    if (G < 3 || G > (1u << 22)) throw std::invalid_argument("free_propagator: grid size out of range");
    const double dt = t / M;

    // Sampling gate: beyond a phase step of pi per sample the chirp
    // aliases and the repeated convolution amplifies instead of
    // cancelling. A single slice is a plain kernel evaluation and is
    // exact on any grid.
    const double phase_step = m * grid.extent * grid.spacing / dt;
    if (M > 1 && phase_step > kPi) {
        std::ostringstream msg;
        msg << "free_propagator: grid too coarse, estimated aliasing phase step " << phase_step
            << " rad per sample at the domain edge (cap pi); shrink spacing below "
            << kPi * dt / (m * grid.extent);
        throw std::domain_error(msg.str());
    }

    const std::size_t jI = grid_index(xI, grid, G, "xI");
    std::vector<Amplitude> kernel(2 * G - 1);
    const double magnitude = std::sqrt(m / (2.0 * kPi * dt));
    const Amplitude branch = std::exp(Amplitude(0.0, -kPi / 4.0));
    for (std::size_t i = 0; i < kernel.size(); ++i) {
        const double d = (static_cast<double>(i) - static_cast<double>(G - 1)) * grid.spacing;
        kernel[i] = magnitude * branch * std::exp(Amplitude(0.0, m * d * d / (2.0 * dt)));
    }

    std::vector<Amplitude> psi(G, Amplitude(0, 0));
    psi[jI] = Amplitude(1.0 / grid.spacing, 0.0);
    SliceConvolver convolver(kernel, G);
    for (int l = 0; l < M; ++l) {
        convolver.apply(psi);
        for (Amplitude& v : psi) v *= grid.spacing;
    }
    return psi;
}

Amplitude free_propagator_discretized(double m, double t, double xI, double xF, int M,
                                      const PropagatorGrid& grid) {
    const std::vector<Amplitude> profile = free_propagator_profile(m, t, xI, M, grid);
    const std::size_t jF = grid_index(xF, grid, profile.size(), "xF");
    return profile[jF];
}

double free_particle_path_action(double m, double dt, const std::vector<double>& positions) {
    if (positions.size() < 2) {
        throw std::invalid_argument("free_particle_path_action: need at least two positions");
    }
    if (!(dt > 0.0)) throw std::invalid_argument("free_particle_path_action: dt must be positive");
    double action = 0.0;
    for (std::size_t l = 0; l + 1 < positions.size(); ++l) {
        const double v = (positions[l + 1] - positions[l]) / dt;
        action += dt * 0.5 * m * v * v;
    }
    return action;
}

}  // namespace pathsum
