#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "pathsum/core.hpp"

namespace pathsum {

/// One allowed trajectory through basis states. The amplitude factors as
/// 2^{log2_magnitude} e^{i action}: the action collects the Hadamard
/// phase contributions (each 0 or pi) plus oracle sign flips, and the
/// magnitude is -k/2 after traversing k Hadamards.
struct Path {
    std::vector<std::uint64_t> states;  // z^(0), ..., z^(M)
    double action = 0.0;                // radians, an integer multiple of pi
    double log2_magnitude = 0.0;

    Amplitude amplitude() const;
};

/// Raised when a query would enumerate more than 2^24 paths.
class BudgetError : public std::runtime_error {
  public:
    explicit BudgetError(int hadamards);
    int hadamard_count() const { return hadamards_; }

  private:
    int hadamards_;
};

inline constexpr int kMaxPathHadamards = 24;

/// Successors of |z> under one gate, with their amplitudes. Hadamard
/// branches into two successors (magnitude 1/sqrt(2), phases {0, pi},
/// target bit 0 before 1); every other gate yields one successor.
std::vector<std::pair<BasisState, Amplitude>> local_rule_successors(const Gate& gate,
                                                                    const BasisState& z);

/// All paths from z_in to z_out allowed by the circuit's local rules, in
/// depth-first time order.
std::vector<Path> enumerate_paths(const Circuit& circuit, std::uint64_t z_in,
                                  std::uint64_t z_out);

/// <z_out| U |z_in> as the sum over enumerated paths.
Amplitude propagator_element(const Circuit& circuit, std::uint64_t z_in, std::uint64_t z_out);

/// All elements <.|U|z_in> from one depth-first sweep; entry z_out of the
/// result is propagator_element(circuit, z_in, z_out).
Vector propagator_column(const Circuit& circuit, std::uint64_t z_in);

enum class QftGroup {
    Z2n,  // (Z_2)^n: tensor power of Hadamards
    ZN,   // Z_{2^n}: the discrete Fourier transform
};

/// Closed-form QFT matrix element:
///   (Z_2)^n : 2^{-n/2} e^{i pi sum_j q_j q'_j}
///   Z_{2^n} : 2^{-n/2} e^{i 2 pi z' z / 2^n}
Amplitude qft_element(QftGroup group, int n, std::uint64_t z_in, std::uint64_t z_out);

}  // namespace pathsum
