#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "tfimqec/clifford_gate.hpp"
#include "tfimqec/pauli_string.hpp"
#include "tfimqec/random.hpp"

namespace tfimqec {

using Amplitude = std::complex<double>;

/// Dense reference state on at most kMaxDenseQubits qubits. Site s is bit
/// s-1 of the basis index; bit value 0 is the Z = +1 state |0>.
class DenseState {
 public:
  static constexpr std::size_t kMaxDenseQubits = 14;

  /// |0...0>. Throws std::invalid_argument for n == 0 or n > kMaxDenseQubits.
  explicit DenseState(std::size_t num_qubits);

  /// (alpha|0> + beta|1>) on `site`, |0> elsewhere. The pair is normalized.
  static DenseState product(std::size_t num_qubits, Amplitude alpha, Amplitude beta, std::size_t site = 1);
  /// Computational basis state with the given bit pattern.
  static DenseState basis(std::size_t num_qubits, std::size_t index);

  std::size_t num_qubits() const noexcept { return n_; }
  std::span<const Amplitude> amplitudes() const noexcept { return amp_; }
  Amplitude& operator[](std::size_t index) { return amp_[index]; }
  const Amplitude& operator[](std::size_t index) const { return amp_[index]; }

  double norm() const noexcept;
  void normalize();

 private:
  std::size_t n_;
  std::vector<Amplitude> amp_;
};

/// Exact action of a TFIM gate (Z_i + X_i X_j)/sqrt(2) or a Hadamard.
/// Throws std::out_of_range for sites outside the state.
void apply_gate_dense(DenseState& state, const CliffordGate& g);
void apply_gates_dense(DenseState& state, std::span<const CliffordGate> schedule);

/// state <- P state, including the phase of P.
void apply_pauli_dense(DenseState& state, const PauliString& p);

/// <state| P |state>; real for Hermitian P.
Amplitude expectation_dense(const DenseState& state, const PauliString& p);

/// Probability that measuring Hermitian P gives +1.
double plus_probability(const DenseState& state, const PauliString& p);

/// Born-rule Z measurement of `site`; projects and renormalizes. Returns ±1.
int born_measure_dense(DenseState& state, std::size_t site, RandomStream& rng);

/// Born-rule measurement of a Hermitian Pauli observable. Returns ±1.
/// Throws std::invalid_argument for a non-Hermitian observable.
int measure_pauli_dense(DenseState& state, const PauliString& p, RandomStream& rng);

/// |<a|b>|^2. Throws std::invalid_argument when sizes differ.
double overlap_fidelity(const DenseState& a, const DenseState& b);

}  // namespace tfimqec
