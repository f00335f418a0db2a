#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "pathsum/algorithms.hpp"
#include "pathsum/anneal.hpp"
#include "pathsum/bessel.hpp"
#include "pathsum/cli.hpp"
#include "pathsum/paths.hpp"
#include "pathsum/statmech.hpp"
#include "pathsum/walks.hpp"

namespace py = pybind11;
using namespace pathsum;

namespace {

Circuit build_circuit(int n, const std::string& text) { return parse_circuit(n, text); }

Matrix pathsum_matrix(int n, const std::string& text) {
    const Circuit circuit = build_circuit(n, text);
    const Eigen::Index dim = Eigen::Index{1} << n;
    Matrix m(dim, dim);
    for (Eigen::Index z = 0; z < dim; ++z) {
        m.col(z) = propagator_column(circuit, static_cast<std::uint64_t>(z));
    }
    return m;
}

HamiltonianPair pair_from(const Matrix& kinetic, const Matrix& potential) {
    return HamiltonianPair{DenseOperator::hermitian(kinetic), DenseOperator::hermitian(potential)};
}

}  // namespace

PYBIND11_MODULE(_pathsum, m) {
    m.doc() = "sum-over-path quantum computation toolkit";

    // ---- circuits and path sums ----
    m.def("dense_propagator",
          [](int n, const std::string& text) { return dense_propagator(build_circuit(n, text)).entries; },
          py::arg("n"), py::arg("circuit"),
          "Dense matrix product of the gate list (time order)");
    m.def("pathsum_matrix", &pathsum_matrix, py::arg("n"), py::arg("circuit"),
          "Propagator assembled column-by-column from path sums");
    m.def("propagator_element",
          [](int n, const std::string& text, std::uint64_t z_in, std::uint64_t z_out) {
              return propagator_element(build_circuit(n, text), z_in, z_out);
          },
          py::arg("n"), py::arg("circuit"), py::arg("z_in"), py::arg("z_out"));
    m.def("enumerate_paths",
          [](int n, const std::string& text, std::uint64_t z_in, std::uint64_t z_out) {
              py::list out;
              for (const Path& p : enumerate_paths(build_circuit(n, text), z_in, z_out)) {
                  out.append(py::make_tuple(p.states, p.action, p.log2_magnitude));
              }
              return out;
          },
          py::arg("n"), py::arg("circuit"), py::arg("z_in"), py::arg("z_out"),
          "List of (states, action, log2_magnitude) tuples");
    m.def("qft_element",
          [](const std::string& group, int n, std::uint64_t z_in, std::uint64_t z_out) {
              if (group == "z2n") return qft_element(QftGroup::Z2n, n, z_in, z_out);
              if (group == "zN") return qft_element(QftGroup::ZN, n, z_in, z_out);
              throw std::invalid_argument("qft_element: group must be 'z2n' or 'zN'");
          },
          py::arg("group"), py::arg("n"), py::arg("z_in"), py::arg("z_out"));

    // ---- algorithms ----
    m.def("deutsch_run",
          [](int f0, int f1) {
              const DeutschResult r = deutsch_run({static_cast<std::uint8_t>(f0),
                                                   static_cast<std::uint8_t>(f1)});
              py::dict out;
              out["verdict"] = r.verdict == DeutschVerdict::Balanced ? "balanced" : "constant";
              out["measured_bit"] = r.measured_bit;
              out["probability"] = r.outcome_probability;
              out["paths"] = r.trace.size();
              return out;
          },
          py::arg("f0"), py::arg("f1"));
    m.def("grover_step_element",
          [](int n, std::uint64_t w, std::uint64_t z_out, std::uint64_t z_in) {
              return grover_step_element(GroverInstance(n, w), z_out, z_in);
          },
          py::arg("n"), py::arg("w"), py::arg("z_out"), py::arg("z_in"));
    m.def("grover_profile",
          [](int n, std::uint64_t w, int iterations) {
              const GroverInstance g(n, w);
              AmplitudeProfile p = grover_uniform_profile(g);
              for (int k = 0; k < iterations; ++k) p = grover_iterate(p, g);
              return p.amplitudes;
          },
          py::arg("n"), py::arg("w"), py::arg("iterations"),
          "Amplitudes after the given number of Grover iterations");
    m.def("grover_success_curve",
          [](int n, std::uint64_t w, int k_max) {
              return grover_success_curve(GroverInstance(n, w), k_max);
          },
          py::arg("n"), py::arg("w"), py::arg("k_max"));

    // ---- annealing ----
    py::class_<Schedule>(m, "Schedule")
        .def_readonly("total_time", &Schedule::total_time)
        .def_readonly("samples", &Schedule::samples)
        .def("lambda_at", &Schedule::lambda, py::arg("t"))
        .def_static("linear", &Schedule::linear, py::arg("total_time"));
    m.def("local_adiabatic_schedule", &local_adiabatic_schedule, py::arg("N"), py::arg("eps"));
    m.def("linear_schedule_time_bound", &linear_schedule_time_bound, py::arg("N"), py::arg("eps"));
    m.def("grover_gap", &grover_gap, py::arg("lam"), py::arg("N"));
    m.def("grover_hamiltonians",
          [](int n, std::uint64_t w) {
              const HamiltonianPair p = grover_hamiltonians(n, w);
              return py::make_tuple(p.kinetic.entries, p.potential.entries);
          },
          py::arg("n"), py::arg("w"));
    m.def("ring_hamiltonians",
          [](int n, bool minus_x) {
              const HamiltonianPair p =
                  ring_hamiltonians(n, minus_x ? MixerSign::MinusX : MixerSign::PlusX);
              return py::make_tuple(p.kinetic.entries, p.potential.entries);
          },
          py::arg("n"), py::arg("minus_x") = true);
    m.def("trotterize",
          [](const Schedule& s, int M) {
              const QaoaAngles a = trotterize(s, M);
              return py::make_tuple(a.beta, a.gamma);
          },
          py::arg("schedule"), py::arg("M"));
    m.def("qaoa_evolve",
          [](const Matrix& kinetic, const Matrix& potential, const std::vector<double>& beta,
             const std::vector<double>& gamma, const Vector& initial) {
              QaoaAngles angles;
              angles.beta = beta;
              angles.gamma = gamma;
              const HamiltonianPair pair = pair_from(kinetic, potential);
              const int n = pair.kinetic.n;
              return qaoa_evolve(angles, pair, QuantumState(n, initial)).amplitudes;
          },
          py::arg("kinetic"), py::arg("potential"), py::arg("beta"), py::arg("gamma"),
          py::arg("initial"));
    m.def("schedule_evolve",
          [](const Schedule& s, const Matrix& kinetic, const Matrix& potential,
             const Vector& initial, int steps) {
              const HamiltonianPair pair = pair_from(kinetic, potential);
              return schedule_evolve(s, pair, QuantumState(pair.kinetic.n, initial), steps)
                  .amplitudes;
          },
          py::arg("schedule"), py::arg("kinetic"), py::arg("potential"), py::arg("initial"),
          py::arg("steps"));

    // ---- walks ----
    m.def("classical_rw_distribution", &classical_rw_distribution, py::arg("n_steps"));
    m.def("gaussian_limit_density", &gaussian_limit_density, py::arg("t"), py::arg("z"));
    m.def("ctqrw_exact", &ctqrw_exact, py::arg("N"), py::arg("t"), py::arg("d"));
    m.def("ctqrw_bessel", &ctqrw_bessel, py::arg("t"), py::arg("d"));
    m.def("bessel_j", &bessel_j, py::arg("order"), py::arg("x"));
    m.def("grover_walk", &grover_walk, py::arg("N"), py::arg("gamma"), py::arg("T"));
    m.def("dtqrw_distribution",
          [](int steps, const std::string& coin) {
              WalkerState s = coin == "up"   ? WalkerState::at_origin({1, 0}, {0, 0})
                              : coin == "down" ? WalkerState::at_origin({0, 0}, {1, 0})
                                               : WalkerState::symmetrized_origin();
              for (int i = 0; i < steps; ++i) s = dtqrw_step(s);
              std::vector<double> probs(static_cast<std::size_t>(2 * steps + 1));
              for (int z = -steps; z <= steps; ++z) {
                  probs[static_cast<std::size_t>(z + steps)] = s.probability(z);
              }
              return probs;
          },
          py::arg("steps"), py::arg("coin") = "symmetrized",
          "Position distribution over z = -steps..steps");
    m.def("dtqrw_combinatorial",
          [](int n, int z) {
              const SpinorAmplitude s = dtqrw_combinatorial(n, z);
              return py::make_tuple(s.left, s.right);
          },
          py::arg("n_steps"), py::arg("z"));
    m.def("checkerboard_kernel",
          [](int n, int z, double mass_a, const std::string& start) {
              const CheckerboardStart s = start == "right" ? CheckerboardStart::Right
                                          : start == "left" ? CheckerboardStart::Left
                                                            : CheckerboardStart::Superposed;
              return checkerboard_kernel(n, z, mass_a, s);
          },
          py::arg("n_steps"), py::arg("z"), py::arg("mass_a"), py::arg("start") = "right");

    // ---- statistical mechanics ----
    m.def("transfer_matrix",
          [](double h, double J, double beta) { return transfer_matrix(h, J, beta).entries; },
          py::arg("h"), py::arg("J"), py::arg("beta"));
    m.def("partition_transfer", &partition_transfer, py::arg("n"), py::arg("h"), py::arg("J"),
          py::arg("beta"));
    m.def("suzuki_coefficients",
          [](double h, double dtau) {
              const SuzukiCoefficients c = suzuki_coefficients(h, dtau);
              return py::make_tuple(c.h_prime, c.C);
          },
          py::arg("h"), py::arg("dtau"));
    m.def("trotter_partition_single_spin", &trotter_partition_single_spin, py::arg("h"),
          py::arg("J"), py::arg("beta"), py::arg("M"));
    m.def("sign_statistics",
          [](const std::string& model, double h, double J, double beta, int M) {
              const SignHistogram hist = sign_statistics(
                  model == "xz" ? SignModel::XZInZBasis : SignModel::XYInZBasis, h, J, beta, M);
              py::dict out;
              out["counts"] = hist.counts;
              out["weight"] = hist.weight;
              out["weighted_sum"] = hist.weighted_sum;
              out["paths"] = hist.paths;
              return out;
          },
          py::arg("model"), py::arg("h"), py::arg("J"), py::arg("beta"), py::arg("M"));
    m.def("tfim_euclidean_action",
          [](const std::vector<std::vector<int>>& grid, double h, double J, double dtau) {
              if (grid.empty() || grid.front().empty()) {
                  throw std::invalid_argument("tfim_euclidean_action: empty grid");
              }
              SpinConfiguration config;
              config.slices = static_cast<int>(grid.size());
              config.sites = static_cast<int>(grid.front().size());
              for (const auto& row : grid) {
                  if (static_cast<int>(row.size()) != config.sites) {
                      throw std::invalid_argument("tfim_euclidean_action: ragged grid");
                  }
                  for (int v : row) config.spins.push_back(static_cast<std::int8_t>(v));
              }
              const EuclideanAction a = tfim_euclidean_action(config, h, J, dtau);
              py::dict out;
              out["temporal"] = a.temporal;
              out["spatial"] = a.spatial;
              out["value"] = a.value();
              out["offset"] = a.offset;
              return out;
          },
          py::arg("grid"), py::arg("h"), py::arg("J"), py::arg("dtau"));
    m.def("free_propagator_exact", &free_propagator_exact, py::arg("m"), py::arg("t"),
          py::arg("xI"), py::arg("xF"));
    m.def("free_propagator_discretized",
          [](double mass, double t, double xI, double xF, int M, double extent, double spacing) {
              return free_propagator_discretized(mass, t, xI, xF, M, {extent, spacing});
          },
          py::arg("m"), py::arg("t"), py::arg("xI"), py::arg("xF"), py::arg("M"),
          py::arg("extent"), py::arg("spacing"));

    // ---- CLI passthrough ----
    m.def("cli",
          [](const std::vector<std::string>& args) {
              std::ostringstream out, err;
              const int code = run_cli(args, out, err);
              return py::make_tuple(code, out.str(), err.str());
          },
          py::arg("args"), "Run a CLI invocation; returns (exit_code, stdout, stderr)");
}
