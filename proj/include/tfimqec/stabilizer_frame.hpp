#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "tfimqec/clifford_gate.hpp"
#include "tfimqec/pauli_string.hpp"
#include "tfimqec/random.hpp"

namespace tfimqec {

struct MeasurementResult {
  int outcome = +1;             // eigenvalue, ±1
  bool deterministic = true;    // outcome was fixed by the stabilizer group
  bool logical_collapse = false;  // a logical pair was consumed by the measurement
};

/// Full stabilizer tableau of an n-qubit code space with k logical qubits:
/// n-k stabilizers, one destabilizer partner per stabilizer, and k explicit
/// logical (X, Z) pairs. Together the 2n rows form a symplectic basis.
///
/// Invariants (checked by verify()):
///  - stabilizers commute pairwise; destabilizer j anticommutes only with
///    stabilizer j; destabilizers commute pairwise;
///  - logical_x[j] anticommutes only with logical_z[j] among all rows;
///  - every stabilizer and logical row is Hermitian.
class StabilizerFrame {
 public:
  /// |0...0> with the listed 1-based sites left as logical qubits:
  /// stabilizers Z_k and destabilizers X_k for the other sites, logical pair
  /// (X_s, Z_s) for each logical site s, in the order given.
  static StabilizerFrame product_state(std::size_t num_qubits, std::span<const std::size_t> logical_sites = {});

  std::size_t num_qubits() const noexcept { return n_; }
  std::size_t num_logical() const noexcept { return logical_x_.size(); }

  const std::vector<PauliString>& stabilizers() const noexcept { return stabilizers_; }
  const std::vector<PauliString>& destabilizers() const noexcept { return destabilizers_; }
  const std::vector<PauliString>& logical_x() const noexcept { return logical_x_; }
  const std::vector<PauliString>& logical_z() const noexcept { return logical_z_; }

  /// Conjugates every row by g (Heisenberg picture of applying g to the state).
  void conjugate(const CliffordGate& g);
  void conjugate(std::span<const CliffordGate> schedule);

  /// Applies a Pauli error to the state: rows anticommuting with it flip sign.
  void apply_pauli(const PauliString& error);

  /// Projective measurement of a Hermitian Pauli observable.
  /// Throws std::invalid_argument for a non-Hermitian or wrongly sized observable.
  MeasurementResult measure(const PauliString& observable, RandomStream& rng);

  /// Value (±1) of an observable that lies in the stabilizer group up to sign,
  /// std::nullopt otherwise. Does not modify the frame.
  std::optional<int> expectation(const PauliString& observable) const;

  /// True when `a` and `b` act identically on the code space, i.e. a*b is a
  /// +1 element of the stabilizer group.
  bool equivalent(const PauliString& a, const PauliString& b) const;

  /// Re-checks every commutation and Hermiticity invariant.
  bool verify() const;

 private:
  std::size_t n_ = 0;
  std::vector<PauliString> stabilizers_;
  std::vector<PauliString> destabilizers_;
  std::vector<PauliString> logical_x_;
  std::vector<PauliString> logical_z_;
};

StabilizerFrame frame_conjugate(StabilizerFrame frame, const CliffordGate& g);

struct MeasuredFrame {
  MeasurementResult result;
  StabilizerFrame frame;
};

MeasuredFrame measure_pauli(StabilizerFrame frame, const PauliString& observable, RandomStream& rng);

}  // namespace tfimqec
