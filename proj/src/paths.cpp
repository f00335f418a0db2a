#include "pathsum/paths.hpp"

#include <bit>
#include <cmath>
#include <sstream>

namespace pathsum {

Amplitude Path::amplitude() const {
    return std::pow(2.0, log2_magnitude) * std::exp(Amplitude(0.0, action));
}

BudgetError::BudgetError(int hadamards)
    : std::runtime_error([hadamards] {
          std::ostringstream msg;
          msg << "path budget exceeded: " << hadamards << " Hadamards imply 2^" << hadamards
              << " paths (cap 2^" << kMaxPathHadamards << ")";
          return msg.str();
      }()),
      hadamards_(hadamards) {}

namespace {

// Successor in exact bookkeeping units: the action in multiples of pi and
// the magnitude in Hadamard halvings (log2_magnitude = -halvings/2).
struct RawStep {
    std::uint64_t z;
    int action_pi;
    int halvings;
};

// At most two successors per gate; index 0 carries target bit 0 for the
// branching case so that enumeration order is deterministic.
int raw_successors(const Gate& g, int n, std::uint64_t z, RawStep out[2]) {
    const int shift_t = g.target >= 0 ? n - 1 - g.target : -1;
    switch (g.kind) {
        case GateKind::Hadamard: {
            const std::uint64_t mask = std::uint64_t{1} << shift_t;
            const int q = static_cast<int>((z >> shift_t) & 1u);
            out[0] = {z & ~mask, 0, 1};        // q' = 0: phase q*0 = 0
            out[1] = {z | mask, q, 1};         // q' = 1: phase pi*q
            return 2;
        }
        case GateKind::Not:
            out[0] = {z ^ (std::uint64_t{1} << shift_t), 0, 0};
            return 1;
        case GateKind::Cnot: {
            const bool on = (z >> (n - 1 - g.control1)) & 1u;
            out[0] = {on ? z ^ (std::uint64_t{1} << shift_t) : z, 0, 0};
            return 1;
        }
        case GateKind::Toffoli: {
            const bool on = ((z >> (n - 1 - g.control1)) & 1u) &&
                            ((z >> (n - 1 - g.control2)) & 1u);
            out[0] = {on ? z ^ (std::uint64_t{1} << shift_t) : z, 0, 0};
            return 1;
        }
        case GateKind::PhaseOracle:
            out[0] = {z, g.truth[z] ? 1 : 0, 0};
            return 1;
        case GateKind::BitFlipOracle: {
            const std::uint64_t high = z >> (shift_t + 1);
            const std::uint64_t low = z & ((std::uint64_t{1} << shift_t) - 1);
            const std::uint64_t input = (high << shift_t) | low;
            out[0] = {g.truth[input] ? z ^ (std::uint64_t{1} << shift_t) : z, 0, 0};
            return 1;
        }
    }
    return 0;
}

void check_budget(const Circuit& circuit) {
    const int k = hadamard_count(circuit);
    if (k > kMaxPathHadamards) throw BudgetError(k);
}

void check_state(const Circuit& circuit, std::uint64_t z, const char* what) {
    if (z >= (std::uint64_t{1} << circuit.n)) {
        throw std::invalid_argument(std::string(what) + " out of range for the register");
    }
}

struct Visitor {
    const Circuit& circuit;
    std::vector<std::uint64_t> states;
    int action_pi = 0;
    int halvings = 0;

    template <typename Leaf>
    void dfs(std::size_t depth, Leaf&& leaf) {
        if (depth == circuit.gates.size()) {
            leaf(*this);
            return;
        }
        RawStep steps[2];
        const int count = raw_successors(circuit.gates[depth], circuit.n, states.back(), steps);
        for (int i = 0; i < count; ++i) {
            states.push_back(steps[i].z);
            action_pi += steps[i].action_pi;
            halvings += steps[i].halvings;
            dfs(depth + 1, leaf);
            halvings -= steps[i].halvings;
            action_pi -= steps[i].action_pi;
            states.pop_back();
        }
    }
};

}  // namespace

std::vector<std::pair<BasisState, Amplitude>> local_rule_successors(const Gate& gate,
                                                                    const BasisState& z) {
    Circuit probe(z.n, {gate});  // validates qubit indices against n
    RawStep steps[2];
    const int count = raw_successors(gate, z.n, z.z, steps);
    std::vector<std::pair<BasisState, Amplitude>> result;
    result.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        const double mag = std::pow(2.0, -0.5 * steps[i].halvings);
        const double sign = steps[i].action_pi % 2 == 0 ? 1.0 : -1.0;
        result.emplace_back(BasisState(z.n, steps[i].z), Amplitude(mag * sign, 0.0));
    }
    return result;
}

std::vector<Path> enumerate_paths(const Circuit& circuit, std::uint64_t z_in,
                                  std::uint64_t z_out) {
    validate_circuit(circuit);
    check_state(circuit, z_in, "z_in");
    check_state(circuit, z_out, "z_out");
    check_budget(circuit);
    std::vector<Path> paths;
    Visitor v{circuit, {z_in}};
    v.dfs(0, [&](const Visitor& at) {
        if (at.states.back() != z_out) return;
        Path p;
        p.states = at.states;
        p.action = at.action_pi * kPi;
        p.log2_magnitude = -0.5 * at.halvings;
        paths.push_back(std::move(p));
    });
    return paths;
}

Amplitude propagator_element(const Circuit& circuit, std::uint64_t z_in, std::uint64_t z_out) {
    validate_circuit(circuit);
    check_state(circuit, z_in, "z_in");
    check_state(circuit, z_out, "z_out");
    check_budget(circuit);
    Amplitude total(0.0, 0.0);
    Visitor v{circuit, {z_in}};
    v.dfs(0, [&](const Visitor& at) {
        if (at.states.back() != z_out) return;
        const double mag = std::pow(2.0, -0.5 * at.halvings);
        total += at.action_pi % 2 == 0 ? Amplitude(mag, 0.0) : Amplitude(-mag, 0.0);
    });
    return total;
}

Vector propagator_column(const Circuit& circuit, std::uint64_t z_in) {
    validate_circuit(circuit);
    check_state(circuit, z_in, "z_in");
    check_budget(circuit);
    Vector column = Vector::Zero(Eigen::Index{1} << circuit.n);
    Visitor v{circuit, {z_in}};
    v.dfs(0, [&](const Visitor& at) {
        const double mag = std::pow(2.0, -0.5 * at.halvings);
        column(static_cast<Eigen::Index>(at.states.back())) +=
            at.action_pi % 2 == 0 ? Amplitude(mag, 0.0) : Amplitude(-mag, 0.0);
    });
    return column;
}

Amplitude qft_element(QftGroup group, int n, std::uint64_t z_in, std::uint64_t z_out) {
    if (n < 1 || n > 62) throw std::invalid_argument("qft_element: n must be in [1, 62]");
    const std::uint64_t dim = std::uint64_t{1} << n;
    if (z_in >= dim || z_out >= dim) {
        throw std::invalid_argument("qft_element: basis index out of range");
    }
    const double mag = std::pow(2.0, -0.5 * n);
    switch (group) {
        case QftGroup::Z2n: {
            const int parity = std::popcount(z_in & z_out) & 1;
            return Amplitude(parity ? -mag : mag, 0.0);
        }
        case QftGroup::ZN: {
            // Reduce z'z mod 2^n in integers so the phase stays exact.
            const std::uint64_t prod = (z_in * z_out) & (dim - 1);
            const double angle = 2.0 * kPi * static_cast<double>(prod) / static_cast<double>(dim);
            return mag * std::exp(Amplitude(0.0, angle));
        }
    }
    throw std::invalid_argument("qft_element: unknown group");
}

}  // namespace pathsum
