#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace pathsum {

/// Gate vocabulary of the circuit engine. Hadamard is the only branching
/// gate; NOT/CNOT/Toffoli/BitFlipOracle permute basis states and
/// PhaseOracle multiplies a basis state by (-1)^{f(z)}.
enum class GateKind { Hadamard, Not, Cnot, Toffoli, PhaseOracle, BitFlipOracle };

struct Gate {
    GateKind kind = GateKind::Hadamard;
    int target = -1;
    int control1 = -1;
    int control2 = -1;
    /// PhaseOracle: truth table over the full register (size 2^n).
    /// BitFlipOracle: truth table over the register with the target bit
    /// removed, remaining bits keeping their order (size 2^(n-1)).
    std::vector<std::uint8_t> truth;

    static Gate hadamard(int target);
    static Gate not_gate(int target);
    static Gate cnot(int control, int target);
    static Gate toffoli(int control1, int control2, int target);
    static Gate phase_oracle(std::vector<std::uint8_t> truth);
    static Gate bit_flip_oracle(std::vector<std::uint8_t> truth, int target);
    /// Phase oracle flipping the sign of the single marked state |w>.
    static Gate marked_state_oracle(int n, std::uint64_t w);

    bool is_branching() const { return kind == GateKind::Hadamard; }
    std::string name() const;
};

struct Circuit {
    int n = 0;
    std::vector<Gate> gates;

    Circuit() = default;
    Circuit(int n_, std::vector<Gate> gates_);
};

/// Throws std::invalid_argument naming the violated precondition.
void validate_circuit(const Circuit& circuit);

int hadamard_count(const Circuit& circuit);

/// Seeded random circuit over the {Hadamard, Toffoli} universal set.
/// Hadamard draws stop once `max_hadamards` is reached.
Circuit random_h_toffoli_circuit(int n, int depth, std::uint64_t seed,
                                 int max_hadamards = 24);

/// Parses "H 0; TOFFOLI 0 1 2; CNOT 0 1; NOT 2; MARK 3" into a circuit.
/// MARK w is the phase oracle on the marked state w.
Circuit parse_circuit(int n, const std::string& text);

}  // namespace pathsum
