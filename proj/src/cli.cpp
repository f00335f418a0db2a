#include "pathsum/cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <thread>
#include <variant>

#include <CLI11.hpp>
#include <json.hpp>

#include "pathsum/algorithms.hpp"
#include "pathsum/anneal.hpp"
#include "pathsum/bessel.hpp"
#include "pathsum/paths.hpp"
#include "pathsum/statmech.hpp"
#include "pathsum/walks.hpp"

namespace pathsum {

namespace {

using Cell = std::variant<std::int64_t, double, std::string>;

/// Columnar result of one subcommand; serialized as CSV (17 significant
/// digits, '.' decimal, comma delimiter, LF endings) or JSON.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add_row(std::vector<Cell> cells) { rows.push_back(std::move(cells)); }
};

std::string format_double(double v) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.17g", v);
    return buffer;
}

std::string to_csv(const Table& table) {
    std::string out;
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        if (c) out += ',';
        out += table.columns[c];
    }
    out += '\n';
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out += ',';
            if (std::holds_alternative<std::int64_t>(row[c])) {
                out += std::to_string(std::get<std::int64_t>(row[c]));
            } else if (std::holds_alternative<double>(row[c])) {
                out += format_double(std::get<double>(row[c]));
            } else {
                out += std::get<std::string>(row[c]);
            }
        }
        out += '\n';
    }
    return out;
}

std::string to_json(const Table& table) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        nlohmann::ordered_json obj;
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (std::holds_alternative<std::int64_t>(row[c])) {
                obj[table.columns[c]] = std::get<std::int64_t>(row[c]);
            } else if (std::holds_alternative<double>(row[c])) {
                obj[table.columns[c]] = std::get<double>(row[c]);
            } else {
                obj[table.columns[c]] = std::get<std::string>(row[c]);
            }
        }
        rows.push_back(std::move(obj));
    }
    return rows.dump(2) + "\n";
}

/// Deterministic index-partitioned parallel map; results land by index,
/// so the emitted bytes do not depend on the thread count.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn) {
    if (threads <= 1 || count < 2) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(threads), count);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < count; i += workers) fn(i);
        });
    }
    for (std::thread& t : pool) t.join();
}

struct OutputOptions {
    std::string format = "csv";
    std::string path;
    int threads = 0;  // 0: resolve from PATHSUM_THREADS, default 1
};

void add_output_options(CLI::App* cmd, OutputOptions& opts) {
    cmd->add_option("--format", opts.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    cmd->add_option("--output,-o", opts.path, "Output file (default: stdout)");
    cmd->add_option("--threads", opts.threads,
                    "Worker threads for sweeps (default: PATHSUM_THREADS or 1)");
}

int resolved_threads(const OutputOptions& opts) {
    if (opts.threads > 0) return opts.threads;
    if (const char* env = std::getenv("PATHSUM_THREADS")) {
        const int parsed = std::atoi(env);
        if (parsed > 0) return parsed;
    }
    return 1;
}

int emit(const Table& table, const OutputOptions& opts, std::ostream& out, std::ostream& err) {
    const std::string payload = opts.format == "json" ? to_json(table) : to_csv(table);
    if (opts.path.empty()) {
        out << payload;
        return 0;
    }
    std::ofstream file(opts.path, std::ios::binary);
    if (!file || !(file << payload) || !file.flush()) {
        err << "error: cannot write output file '" << opts.path << "'\n";
        return 1;
    }
    return 0;
}

std::string joined_states(const Path& path) {
    std::string out;
    for (std::size_t i = 0; i < path.states.size(); ++i) {
        if (i) out += '>';
        out += std::to_string(path.states[i]);
    }
    return out;
}

Circuit circuit_from_flags(int n, const std::string& text, int random_depth,
                           std::uint64_t seed, int max_hadamards) {
    if (!text.empty() && random_depth > 0) {
        throw std::invalid_argument("pathsum: --circuit and --random-depth are exclusive");
    }
    if (text.empty() && random_depth <= 0) {
        throw std::invalid_argument("pathsum: provide --circuit or --random-depth");
    }
    if (random_depth > 0) return random_h_toffoli_circuit(n, random_depth, seed, max_hadamards);
    return parse_circuit(n, text);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"sum-over-path quantum computation toolkit"};
    app.require_subcommand(1);
    // `--h` is a coupling option on the statmech subcommands, so the help
    // flag is long-form only, everywhere.
    app.set_help_flag("--help", "Print help and exit");
    const auto add_sub = [](CLI::App* parent, const std::string& name, const std::string& desc) {
        CLI::App* sub = parent->add_subcommand(name, desc);
        sub->set_help_flag("--help", "Print help and exit");
        return sub;
    };

    Table table;
    OutputOptions opts;

    // ---- pathsum ----------------------------------------------------
    auto* cmd_pathsum = add_sub(&app, 
        "pathsum", "Circuit propagator elements and path listings");
    struct {
        int n = 1;
        std::string circuit;
        int random_depth = 0;
        std::uint64_t seed = 0;
        int max_h = 12;
        std::int64_t z_in = -1;
        std::int64_t z_out = -1;
        bool paths = false;
    } ps;
    cmd_pathsum->add_option("--n", ps.n, "Register size in qubits")->required();
    cmd_pathsum->add_option("--circuit", ps.circuit, "Gate list, e.g. 'H 0; TOFFOLI 0 1 2'");
    cmd_pathsum->add_option("--random-depth", ps.random_depth, "Depth of a seeded random circuit");
    cmd_pathsum->add_option("--seed", ps.seed, "Random-circuit seed");
    cmd_pathsum->add_option("--max-hadamards", ps.max_h, "Hadamard cap for random circuits");
    cmd_pathsum->add_option("--zin", ps.z_in, "Restrict to one input basis state");
    cmd_pathsum->add_option("--zout", ps.z_out, "Restrict to one output basis state");
    cmd_pathsum->add_flag("--paths", ps.paths, "List individual paths (needs --zin and --zout)");
    add_output_options(cmd_pathsum, opts);
    cmd_pathsum->callback([&] {
        const Circuit circuit =
            circuit_from_flags(ps.n, ps.circuit, ps.random_depth, ps.seed, ps.max_h);
        const std::uint64_t dim = std::uint64_t{1} << ps.n;
        if (ps.z_in >= static_cast<std::int64_t>(dim) ||
            ps.z_out >= static_cast<std::int64_t>(dim)) {
            throw std::invalid_argument("pathsum: --zin/--zout must be below 2^n");
        }
        if (ps.paths) {
            if (ps.z_in < 0 || ps.z_out < 0) {
                throw std::invalid_argument("pathsum: --paths requires --zin and --zout");
            }
            table.columns = {"path", "states", "action_pi", "log2_magnitude"};
            const auto paths = enumerate_paths(circuit, static_cast<std::uint64_t>(ps.z_in),
                                               static_cast<std::uint64_t>(ps.z_out));
            for (std::size_t i = 0; i < paths.size(); ++i) {
                table.add_row({static_cast<std::int64_t>(i), joined_states(paths[i]),
                               paths[i].action / kPi, paths[i].log2_magnitude});
            }
            return;
        }
        table.columns = {"z_in", "z_out", "re", "im"};
        const std::uint64_t first = ps.z_in >= 0 ? static_cast<std::uint64_t>(ps.z_in) : 0;
        const std::uint64_t last = ps.z_in >= 0 ? first + 1 : dim;
        std::vector<Vector> columns(static_cast<std::size_t>(last - first));
        parallel_for(columns.size(), resolved_threads(opts), [&](std::size_t i) {
            columns[i] = propagator_column(circuit, first + i);
        });
        for (std::uint64_t z = first; z < last; ++z) {
            const Vector& column = columns[static_cast<std::size_t>(z - first)];
            const std::uint64_t zo_first = ps.z_out >= 0 ? static_cast<std::uint64_t>(ps.z_out) : 0;
            const std::uint64_t zo_last = ps.z_out >= 0 ? zo_first + 1 : dim;
            for (std::uint64_t zo = zo_first; zo < zo_last; ++zo) {
                const Amplitude a = column(static_cast<Eigen::Index>(zo));
                table.add_row({static_cast<std::int64_t>(z), static_cast<std::int64_t>(zo),
                               a.real(), a.imag()});
            }
        }
    });

    // ---- deutsch ----------------------------------------------------
    auto* cmd_deutsch = add_sub(&app, "deutsch", "Deutsch's algorithm with path trace");
    struct {
        std::string f = "not";
        bool trace = false;
    } de;
    cmd_deutsch->add_option("--f", de.f, "Black-box function")
        ->check(CLI::IsMember({"const0", "const1", "id", "not"}))
        ->capture_default_str();
    cmd_deutsch->add_flag("--trace", de.trace, "Emit the path trace instead of the verdict");
    add_output_options(cmd_deutsch, opts);
    cmd_deutsch->callback([&] {
        std::array<std::uint8_t, 2> truth{0, 0};
        if (de.f == "const1") truth = {1, 1};
        if (de.f == "id") truth = {0, 1};
        if (de.f == "not") truth = {1, 0};
        const DeutschResult result = deutsch_run(truth);
        if (de.trace) {
            table.columns = {"path", "states", "action_pi", "log2_magnitude"};
            for (std::size_t i = 0; i < result.trace.size(); ++i) {
                const Path& p = result.trace[i];
                table.add_row({static_cast<std::int64_t>(i), joined_states(p), p.action / kPi,
                               p.log2_magnitude});
            }
        } else {
            table.columns = {"f", "verdict", "outcome", "probability"};
            table.add_row({de.f,
                           std::string(result.verdict == DeutschVerdict::Balanced ? "balanced"
                                                                                  : "constant"),
                           static_cast<std::int64_t>(result.measured_bit),
                           result.outcome_probability});
        }
    });

    // ---- grover -----------------------------------------------------
    auto* cmd_grover = add_sub(&app, "grover", "Grover amplitude profiles per iteration");
    struct {
        int n = 2;
        std::uint64_t w = 0;
        int iters = 1;
    } gr;
    cmd_grover->add_option("--n", gr.n, "Qubit count")->required();
    cmd_grover->add_option("--w", gr.w, "Marked basis state")->required();
    cmd_grover->add_option("--iters", gr.iters, "Iteration count")->required();
    add_output_options(cmd_grover, opts);
    cmd_grover->callback([&] {
        if (gr.iters < 0 || gr.iters > 10000) {
            throw std::invalid_argument("grover: --iters must be in [0, 10^4]");
        }
        const GroverInstance instance(gr.n, gr.w);
        table.columns = {"iter", "z", "amplitude_re", "amplitude_im", "prob"};
        AmplitudeProfile profile = grover_uniform_profile(instance);
        for (int k = 0; k <= gr.iters; ++k) {
            if (k > 0) profile = grover_iterate(profile, instance);
            for (std::uint64_t z = 0; z < instance.item_count(); ++z) {
                const Amplitude a = profile.amplitudes(static_cast<Eigen::Index>(z));
                table.add_row({static_cast<std::int64_t>(k), static_cast<std::int64_t>(z),
                               a.real(), a.imag(), std::norm(a)});
            }
        }
    });

    // ---- anneal -----------------------------------------------------
    auto* cmd_anneal = add_sub(&app, "anneal", "Adiabatic schedules, gaps, QAOA angles");
    cmd_anneal->require_subcommand(1);

    auto* cmd_protocol = add_sub(cmd_anneal, 
        "protocol", "Linear vs local-adiabatic schedule curves (t, lambda, gap)");
    struct {
        std::uint64_t N = 128;
        double eps = 0.1;
        int points = 257;
    } proto;
    cmd_protocol->add_option("--N", proto.N, "Search-space size")->required();
    cmd_protocol->add_option("--eps", proto.eps, "Adiabatic error budget")->required();
    cmd_protocol->add_option("--points", proto.points, "Samples per schedule")
        ->capture_default_str();
    add_output_options(cmd_protocol, opts);
    cmd_protocol->callback([&] {
        if (proto.points < 2) throw std::invalid_argument("protocol: --points must be at least 2");
        const Schedule local = local_adiabatic_schedule(proto.N, proto.eps);
        const Schedule linear = Schedule::linear(local.total_time);
        table.columns = {"schedule", "t", "lambda", "gap"};
        const std::pair<std::string, const Schedule*> curves[] = {{"linear", &linear},
                                                                  {"local", &local}};
        for (const auto& [name, schedule] : curves) {
            for (int i = 0; i < proto.points; ++i) {
                const double t = schedule->total_time * i / (proto.points - 1);
                const double lam = schedule->lambda(t);
                table.add_row({name, t, lam, grover_gap(lam, proto.N)});
            }
        }
    });

    auto* cmd_gap = add_sub(cmd_anneal, "gap", "Grover spectral gap over lambda");
    struct {
        std::uint64_t N = 64;
        int points = 11;
    } gap;
    cmd_gap->add_option("--N", gap.N, "Search-space size")->required();
    cmd_gap->add_option("--points", gap.points, "Lambda grid points")->capture_default_str();
    add_output_options(cmd_gap, opts);
    cmd_gap->callback([&] {
        if (gap.points < 2) throw std::invalid_argument("gap: --points must be at least 2");
        table.columns = {"lambda", "gap"};
        std::vector<double> values(static_cast<std::size_t>(gap.points));
        parallel_for(values.size(), resolved_threads(opts), [&](std::size_t i) {
            values[i] = grover_gap(static_cast<double>(i) / (gap.points - 1), gap.N);
        });
        for (int i = 0; i < gap.points; ++i) {
            table.add_row({static_cast<double>(i) / (gap.points - 1),
                           values[static_cast<std::size_t>(i)]});
        }
    });

    auto* cmd_qaoa = add_sub(cmd_anneal, "qaoa", "QAOA angles from a trotterized schedule");
    struct {
        int M = 8;
        std::string schedule = "linear";
        double T = 1.0;
        std::uint64_t N = 64;
        double eps = 0.1;
    } qa;
    cmd_qaoa->add_option("--M", qa.M, "Trotter slices")->required();
    cmd_qaoa->add_option("--schedule", qa.schedule, "Schedule kind")
        ->check(CLI::IsMember({"linear", "local"}))
        ->capture_default_str();
    cmd_qaoa->add_option("--T", qa.T, "Total time (linear schedule)")->capture_default_str();
    cmd_qaoa->add_option("--N", qa.N, "Search-space size (local schedule)")->capture_default_str();
    cmd_qaoa->add_option("--eps", qa.eps, "Error budget (local schedule)")->capture_default_str();
    add_output_options(cmd_qaoa, opts);
    cmd_qaoa->callback([&] {
        const Schedule schedule = qa.schedule == "local"
                                      ? local_adiabatic_schedule(qa.N, qa.eps)
                                      : Schedule::linear(qa.T);
        const QaoaAngles angles = trotterize(schedule, qa.M);
        table.columns = {"l", "beta", "gamma"};
        for (std::size_t l = 0; l < angles.beta.size(); ++l) {
            table.add_row({static_cast<std::int64_t>(l + 1), angles.beta[l], angles.gamma[l]});
        }
    });

    // ---- walks ------------------------------------------------------
    auto* cmd_walks = add_sub(&app, "walks", "Classical and quantum walk profiles");
    cmd_walks->require_subcommand(1);

    auto* cmd_classical = add_sub(cmd_walks, "classical", "Symmetric random-walk table");
    struct {
        int steps = 50;
    } cl;
    cmd_classical->add_option("--steps", cl.steps, "Number of steps")->required();
    add_output_options(cmd_classical, opts);
    cmd_classical->callback([&] {
        const auto dist = classical_rw_distribution(cl.steps);
        table.columns = {"j", "probability"};
        for (int j = -cl.steps; j <= cl.steps; ++j) {
            table.add_row({static_cast<std::int64_t>(j),
                           dist[static_cast<std::size_t>(j + cl.steps)]});
        }
    });

    auto* cmd_ctqrw = add_sub(cmd_walks, "ctqrw", "Continuous-time walk kernel on a ring");
    struct {
        int N = 200;
        double t = 5.0;
        bool bessel = false;
    } ct;
    cmd_ctqrw->add_option("--N", ct.N, "Ring size")->required();
    cmd_ctqrw->add_option("--t", ct.t, "Evolution time")->required();
    cmd_ctqrw->add_flag("--bessel", ct.bessel, "Emit the Bessel closed form instead");
    add_output_options(cmd_ctqrw, opts);
    cmd_ctqrw->callback([&] {
        table.columns = {"d", "re", "im", "probability"};
        const int d_min = -(ct.N / 2);
        std::vector<Amplitude> kernel(static_cast<std::size_t>(ct.N));
        parallel_for(kernel.size(), resolved_threads(opts), [&](std::size_t i) {
            const int d = d_min + static_cast<int>(i);
            kernel[i] = ct.bessel ? ctqrw_bessel(ct.t, d) : ctqrw_exact(ct.N, ct.t, d);
        });
        for (std::size_t i = 0; i < kernel.size(); ++i) {
            const Amplitude k = kernel[i];
            table.add_row({static_cast<std::int64_t>(d_min + static_cast<int>(i)), k.real(),
                           k.imag(), std::norm(k)});
        }
    });

    auto* cmd_dtqrw = add_sub(cmd_walks, "dtqrw", "Discrete-time coined walk profile");
    struct {
        int steps = 50;
        std::string coin = "symmetrized";
    } dt;
    cmd_dtqrw->add_option("--steps", dt.steps, "Coin tosses")->required();
    cmd_dtqrw->add_option("--coin", dt.coin, "Initial coin state")
        ->check(CLI::IsMember({"up", "down", "symmetrized"}))
        ->capture_default_str();
    add_output_options(cmd_dtqrw, opts);
    cmd_dtqrw->callback([&] {
        if (dt.steps < 0 || dt.steps > 100000) {
            throw std::invalid_argument("dtqrw: --steps must be in [0, 10^5]");
        }
        WalkerState state = dt.coin == "up"   ? WalkerState::at_origin({1, 0}, {0, 0})
                            : dt.coin == "down" ? WalkerState::at_origin({0, 0}, {1, 0})
                                                : WalkerState::symmetrized_origin();
        for (int i = 0; i < dt.steps; ++i) state = dtqrw_step(state);
        table.columns = {"z", "probability"};
        for (int z = -dt.steps; z <= dt.steps; ++z) {
            table.add_row({static_cast<std::int64_t>(z), state.probability(z)});
        }
    });

    auto* cmd_checker = add_sub(cmd_walks, "checkerboard", "Feynman checkerboard kernel");
    struct {
        int steps = 10;
        double mass = 0.5;
        std::string start = "right";
    } cb;
    cmd_checker->add_option("--steps", cb.steps, "Lattice steps")->required();
    cmd_checker->add_option("--mass", cb.mass, "Mass times lattice spacing")->required();
    cmd_checker->add_option("--start", cb.start, "Entry direction")
        ->check(CLI::IsMember({"right", "left", "superposed"}))
        ->capture_default_str();
    add_output_options(cmd_checker, opts);
    cmd_checker->callback([&] {
        const CheckerboardStart start = cb.start == "right" ? CheckerboardStart::Right
                                        : cb.start == "left" ? CheckerboardStart::Left
                                                             : CheckerboardStart::Superposed;
        table.columns = {"z", "re", "im", "probability"};
        for (int z = -cb.steps; z <= cb.steps; ++z) {
            const Amplitude k = checkerboard_kernel(cb.steps, z, cb.mass, start);
            table.add_row({static_cast<std::int64_t>(z), k.real(), k.imag(), std::norm(k)});
        }
    });

    auto* cmd_gwalk = add_sub(cmd_walks, "grover-walk",
                                                "Search as a walk on the complete graph");
    struct {
        std::uint64_t N = 64;
        double gamma = 0.0;
        double t_max = 0.0;
        int points = 200;
    } gw;
    cmd_gwalk->add_option("--N", gw.N, "Item count")->required();
    cmd_gwalk->add_option("--gamma", gw.gamma, "Hopping rate (default 1/N)");
    cmd_gwalk->add_option("--T-max", gw.t_max, "Curve end time (default 2 pi sqrt(N))");
    cmd_gwalk->add_option("--points", gw.points, "Curve samples")->capture_default_str();
    add_output_options(cmd_gwalk, opts);
    cmd_gwalk->callback([&] {
        if (gw.points < 2) throw std::invalid_argument("grover-walk: --points must be at least 2");
        const double gamma = gw.gamma > 0.0 ? gw.gamma : 1.0 / static_cast<double>(gw.N);
        const double t_max =
            gw.t_max > 0.0 ? gw.t_max : 2.0 * kPi * std::sqrt(static_cast<double>(gw.N));
        table.columns = {"t", "probability"};
        std::vector<double> probs(static_cast<std::size_t>(gw.points));
        parallel_for(probs.size(), resolved_threads(opts), [&](std::size_t i) {
            probs[i] = grover_walk(gw.N, gamma, t_max * static_cast<double>(i) / (gw.points - 1));
        });
        for (int i = 0; i < gw.points; ++i) {
            table.add_row({t_max * i / (gw.points - 1), probs[static_cast<std::size_t>(i)]});
        }
    });

    // ---- statmech ---------------------------------------------------
    auto* cmd_statmech = add_sub(&app, "statmech", "Transfer matrices and Euclidean sums");
    cmd_statmech->require_subcommand(1);

    auto* cmd_transfer = add_sub(cmd_statmech, "transfer", "Ring partition function");
    struct {
        int n = 8;
        double h = 1.0;
        double J = 0.0;
        double beta = 1.0;
    } tr;
    cmd_transfer->add_option("--n", tr.n, "Ring length")->required();
    cmd_transfer->add_option("--h", tr.h, "Bond coupling")->required();
    cmd_transfer->add_option("--J", tr.J, "Field coupling")->capture_default_str();
    cmd_transfer->add_option("--beta", tr.beta, "Inverse temperature")->required();
    add_output_options(cmd_transfer, opts);
    cmd_transfer->callback([&] {
        table.columns = {"n", "h", "J", "beta", "Z"};
        table.add_row({static_cast<std::int64_t>(tr.n), tr.h, tr.J, tr.beta,
                       partition_transfer(tr.n, tr.h, tr.J, tr.beta)});
    });

    auto* cmd_trotter = add_sub(cmd_statmech, 
        "trotter", "Single-spin Trotter partition convergence table");
    struct {
        double h = 1.0;
        double J = 1.0;
        double beta = 1.0;
        int m_max = 256;
    } tt;
    cmd_trotter->add_option("--h", tt.h, "X coupling")->required();
    cmd_trotter->add_option("--J", tt.J, "Z coupling")->required();
    cmd_trotter->add_option("--beta", tt.beta, "Inverse temperature")->required();
    cmd_trotter->add_option("--M-max", tt.m_max, "Largest slice count (doubling from 2)")
        ->capture_default_str();
    add_output_options(cmd_trotter, opts);
    cmd_trotter->callback([&] {
        if (tt.m_max < 2) throw std::invalid_argument("trotter: --M-max must be at least 2");
        const double exact = 2.0 * std::cosh(tt.beta * std::sqrt(tt.h * tt.h + tt.J * tt.J));
        table.columns = {"M", "Z_M", "abs_error"};
        for (int M = 2; M <= tt.m_max; M *= 2) {
            const double z = trotter_partition_single_spin(tt.h, tt.J, tt.beta, M);
            table.add_row({static_cast<std::int64_t>(M), z, std::abs(z - exact)});
        }
    });

    auto* cmd_sign = add_sub(cmd_statmech, "sign", "Path-phase histogram");
    struct {
        std::string model = "xz";
        double h = 1.0;
        double J = 1.0;
        double beta = 1.0;
        int M = 8;
    } sg;
    cmd_sign->add_option("--model", sg.model, "Slice model")
        ->check(CLI::IsMember({"xz", "xy"}))
        ->capture_default_str();
    cmd_sign->add_option("--h", sg.h, "First coupling")->required();
    cmd_sign->add_option("--J", sg.J, "Second coupling")->required();
    cmd_sign->add_option("--beta", sg.beta, "Inverse temperature")->required();
    cmd_sign->add_option("--M", sg.M, "Trotter slices")->required();
    add_output_options(cmd_sign, opts);
    cmd_sign->callback([&] {
        const SignHistogram hist = sign_statistics(
            sg.model == "xz" ? SignModel::XZInZBasis : SignModel::XYInZBasis, sg.h, sg.J,
            sg.beta, sg.M);
        table.columns = {"phase", "count", "weight"};
        const char* labels[4] = {"+1", "+i", "-1", "-i"};
        for (int q = 0; q < 4; ++q) {
            table.add_row({std::string(labels[q]),
                           static_cast<std::int64_t>(hist.counts[static_cast<std::size_t>(q)]),
                           hist.weight[static_cast<std::size_t>(q)]});
        }
    });

    auto* cmd_action = add_sub(cmd_statmech, 
        "action", "Euclidean action of a flagged spin configuration");
    struct {
        int slices = 4;
        int sites = 4;
        double h = 1.0;
        double J = 1.0;
        double dtau = 0.25;
        std::vector<std::string> flips;
    } ac;
    cmd_action->add_option("--slices", ac.slices, "Trotter slices")->required();
    cmd_action->add_option("--sites", ac.sites, "Spatial sites")->required();
    cmd_action->add_option("--h", ac.h, "Transverse coupling")->required();
    cmd_action->add_option("--J", ac.J, "Spatial coupling")->required();
    cmd_action->add_option("--dtau", ac.dtau, "Imaginary-time step")->required();
    cmd_action->add_option("--flip", ac.flips, "Flip spin at slice,site (repeatable)");
    add_output_options(cmd_action, opts);
    cmd_action->callback([&] {
        SpinConfiguration config = SpinConfiguration::all_up(ac.slices, ac.sites);
        for (const std::string& flip : ac.flips) {
            int l = 0, j = 0;
            if (std::sscanf(flip.c_str(), "%d,%d", &l, &j) != 2) {
                throw std::invalid_argument("action: --flip expects 'slice,site'");
            }
            config.flip(l, j);
        }
        const EuclideanAction action = tfim_euclidean_action(config, ac.h, ac.J, ac.dtau);
        table.columns = {"temporal", "spatial", "value", "offset"};
        table.add_row({action.temporal, action.spatial, action.value(), action.offset});
    });

    auto* cmd_prop = add_sub(cmd_statmech, 
        "propagator", "Discretized free-particle propagator profile");
    struct {
        double m = 1.0;
        double t = 1.0;
        double xI = 0.0;
        int M = 16;
        double L = 40.0;
        double a = 40.0 / 10240.0;
        bool exact = false;
    } pr;
    cmd_prop->add_option("--m", pr.m, "Mass")->capture_default_str();
    cmd_prop->add_option("--t", pr.t, "Evolution time")->capture_default_str();
    cmd_prop->add_option("--xI", pr.xI, "Initial position")->capture_default_str();
    cmd_prop->add_option("--M", pr.M, "Time slices")->capture_default_str();
    cmd_prop->add_option("--L", pr.L, "Domain extent")->capture_default_str();
    cmd_prop->add_option("--a", pr.a, "Grid spacing")->capture_default_str();
    cmd_prop->add_flag("--exact", pr.exact, "Emit the closed form instead");
    add_output_options(cmd_prop, opts);
    cmd_prop->callback([&] {
        table.columns = {"x", "re", "im", "modulus"};
        if (pr.exact) {
            const std::size_t G = static_cast<std::size_t>(std::llround(pr.L / pr.a)) + 1;
            for (std::size_t j = 0; j < G; ++j) {
                const double x = -0.5 * pr.L + static_cast<double>(j) * pr.a;
                const Amplitude k = free_propagator_exact(pr.m, pr.t, pr.xI, x);
                table.add_row({x, k.real(), k.imag(), std::abs(k)});
            }
            return;
        }
        const std::vector<Amplitude> profile =
            free_propagator_profile(pr.m, pr.t, pr.xI, pr.M, {pr.L, pr.a});
        for (std::size_t j = 0; j < profile.size(); ++j) {
            const double x = -0.5 * pr.L + static_cast<double>(j) * pr.a;
            table.add_row({x, profile[j].real(), profile[j].imag(), std::abs(profile[j])});
        }
    });

    // ---- dispatch ---------------------------------------------------
    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("pathsum");
    for (const std::string& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return 2;
    } catch (const BudgetError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return emit(table, opts, out, err);
}

}  // namespace pathsum
