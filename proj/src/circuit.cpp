#include "pathsum/circuit.hpp"

#include <random>
#include <sstream>
#include <stdexcept>

namespace pathsum {

Gate Gate::hadamard(int target) {
    Gate g;
    g.kind = GateKind::Hadamard;
    g.target = target;
    return g;
}

Gate Gate::not_gate(int target) {
    Gate g;
    g.kind = GateKind::Not;
    g.target = target;
    return g;
}

Gate Gate::cnot(int control, int target) {
    Gate g;
    g.kind = GateKind::Cnot;
    g.control1 = control;
    g.target = target;
    return g;
}

Gate Gate::toffoli(int control1, int control2, int target) {
    Gate g;
    g.kind = GateKind::Toffoli;
    g.control1 = control1;
    g.control2 = control2;
    g.target = target;
    return g;
}

Gate Gate::phase_oracle(std::vector<std::uint8_t> truth) {
    Gate g;
    g.kind = GateKind::PhaseOracle;
    g.truth = std::move(truth);
    return g;
}

Gate Gate::bit_flip_oracle(std::vector<std::uint8_t> truth, int target) {
    Gate g;
    g.kind = GateKind::BitFlipOracle;
    g.target = target;
    g.truth = std::move(truth);
    return g;
}

Gate Gate::marked_state_oracle(int n, std::uint64_t w) {
    std::vector<std::uint8_t> truth(std::uint64_t{1} << n, 0);
    if (w >= truth.size()) {
        throw std::invalid_argument("marked_state_oracle: w must satisfy 0 <= w < 2^n");
    }
    truth[w] = 1;
    return phase_oracle(std::move(truth));
}

std::string Gate::name() const {
    switch (kind) {
        case GateKind::Hadamard: return "H";
        case GateKind::Not: return "NOT";
        case GateKind::Cnot: return "CNOT";
        case GateKind::Toffoli: return "TOFFOLI";
        case GateKind::PhaseOracle: return "PHASE_ORACLE";
        case GateKind::BitFlipOracle: return "BIT_FLIP_ORACLE";
    }
    return "?";
}

Circuit::Circuit(int n_, std::vector<Gate> gates_) : n(n_), gates(std::move(gates_)) {
    validate_circuit(*this);
}

namespace {

void require_index(int q, int n, const char* what) {
    if (q < 0 || q >= n) {
        std::ostringstream msg;
        msg << "circuit: " << what << " index " << q << " out of range for n=" << n;
        throw std::invalid_argument(msg.str());
    }
}

}  // namespace

void validate_circuit(const Circuit& circuit) {
    if (circuit.n < 1 || circuit.n > 63) {
        throw std::invalid_argument("circuit: qubit count must be in [1, 63]");
    }
    for (const Gate& g : circuit.gates) {
        switch (g.kind) {
            case GateKind::Hadamard:
            case GateKind::Not:
                require_index(g.target, circuit.n, "target");
                break;
            case GateKind::Cnot:
                require_index(g.control1, circuit.n, "control");
                require_index(g.target, circuit.n, "target");
                if (g.control1 == g.target) {
                    throw std::invalid_argument("circuit: CNOT control equals target");
                }
                break;
            case GateKind::Toffoli:
                require_index(g.control1, circuit.n, "control1");
                require_index(g.control2, circuit.n, "control2");
                require_index(g.target, circuit.n, "target");
                if (g.control1 == g.target || g.control2 == g.target ||
                    g.control1 == g.control2) {
                    throw std::invalid_argument("circuit: Toffoli qubits must be distinct");
                }
                break;
            case GateKind::PhaseOracle:
                if (g.truth.size() != (std::uint64_t{1} << circuit.n)) {
                    throw std::invalid_argument(
                        "circuit: PhaseOracle truth table must have 2^n entries");
                }
                break;
            case GateKind::BitFlipOracle:
                require_index(g.target, circuit.n, "target");
                if (circuit.n < 2 ||
                    g.truth.size() != (std::uint64_t{1} << (circuit.n - 1))) {
                    throw std::invalid_argument(
                        "circuit: BitFlipOracle truth table must have 2^(n-1) entries");
                }
                break;
        }
    }
}

int hadamard_count(const Circuit& circuit) {
    int k = 0;
    for (const Gate& g : circuit.gates) {
        if (g.kind == GateKind::Hadamard) ++k;
    }
    return k;
}

Circuit random_h_toffoli_circuit(int n, int depth, std::uint64_t seed, int max_hadamards) {
    if (n < 1) throw std::invalid_argument("random circuit: n must be positive");
    if (depth < 0) throw std::invalid_argument("random circuit: depth must be nonnegative");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> qubit(0, n - 1);
    std::uniform_int_distribution<int> coin(0, 1);
    std::vector<Gate> gates;
    int hadamards = 0;
    for (int i = 0; i < depth; ++i) {
        const bool want_h = coin(rng) == 0 || n < 3;
        if (want_h && hadamards < max_hadamards) {
            gates.push_back(Gate::hadamard(qubit(rng)));
            ++hadamards;
        } else if (n >= 3) {
            int a = qubit(rng), b = qubit(rng), c = qubit(rng);
            while (b == a) b = qubit(rng);
            while (c == a || c == b) c = qubit(rng);
            gates.push_back(Gate::toffoli(a, b, c));
        } else {
            gates.push_back(Gate::not_gate(qubit(rng)));
        }
    }
    return Circuit(n, std::move(gates));
}

Circuit parse_circuit(int n, const std::string& text) {
    std::vector<Gate> gates;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ';')) {
        std::istringstream is(item);
        std::string op;
        if (!(is >> op)) continue;
        for (char& c : op) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
        auto read_int = [&](const char* what) {
            long long v;
            if (!(is >> v)) {
                throw std::invalid_argument(std::string("parse_circuit: missing operand for ") + what);
            }
            return static_cast<int>(v);
        };
        if (op == "H") {
            gates.push_back(Gate::hadamard(read_int("H")));
        } else if (op == "NOT" || op == "X") {
            gates.push_back(Gate::not_gate(read_int("NOT")));
        } else if (op == "CNOT") {
            int c = read_int("CNOT");
            gates.push_back(Gate::cnot(c, read_int("CNOT")));
        } else if (op == "TOFFOLI" || op == "TOFF" || op == "CCX") {
            int a = read_int("TOFFOLI");
            int b = read_int("TOFFOLI");
            gates.push_back(Gate::toffoli(a, b, read_int("TOFFOLI")));
        } else if (op == "MARK") {
            gates.push_back(Gate::marked_state_oracle(n, static_cast<std::uint64_t>(read_int("MARK"))));
        } else {
            throw std::invalid_argument("parse_circuit: unknown gate '" + op + "'");
        }
    }
    return Circuit(n, std::move(gates));
}

}  // namespace pathsum
