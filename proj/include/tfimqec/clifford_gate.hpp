#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>

#include "tfimqec/pauli_string.hpp"

namespace tfimqec {

enum class GateKind : std::uint8_t { Tfim, Hadamard };

/// One gate of an encoder schedule. Sites are 1-based.
///
/// Tfim(i) is U_i = (Z_i + X_i X_j) / sqrt(2) on the bond (i, j), with
/// j = i + 1, or j = 1 for the periodic bond starting at site N.
/// Both gate kinds are Hermitian and involutory.
struct CliffordGate {
  GateKind kind = GateKind::Tfim;
  std::size_t site = 1;
  std::size_t partner = 2;  // second site of a Tfim bond; equals `site` for Hadamard

  static CliffordGate tfim(std::size_t site, std::size_t num_qubits);
  static CliffordGate hadamard(std::size_t site) { return {GateKind::Hadamard, site, site}; }

  std::string str() const;
  friend bool operator==(const CliffordGate&, const CliffordGate&) = default;
};

/// Image of one local Pauli under conjugation: new letter codes and the
/// power of i picked up.
struct LocalImage {
  std::uint8_t code = 0;
  std::uint8_t phase = 0;
};

/// Conjugation table of a two-site gate, indexed by code(a) | code(b) << 2.
using TwoSiteTable = std::array<LocalImage, 16>;
using OneSiteTable = std::array<LocalImage, 4>;

using Matrix2 = std::array<std::array<std::complex<double>, 2>, 2>;
using Matrix4 = std::array<std::array<std::complex<double>, 4>, 4>;

/// Builds the table P -> U P U^dagger by decomposing each conjugated Pauli in
/// the Pauli basis. Throws std::invalid_argument if U is not Clifford.
OneSiteTable conjugation_table(const Matrix2& u);
/// Basis index is bit(a) + 2 * bit(b).
TwoSiteTable conjugation_table(const Matrix4& u);

Matrix4 tfim_matrix();
Matrix2 hadamard_matrix();

const TwoSiteTable& tfim_table();
const OneSiteTable& hadamard_table();

/// p <- g p g^dagger. Throws std::out_of_range on sites outside the string.
void conjugate(PauliString& p, const CliffordGate& g);
void conjugate(PauliString& p, std::span<const CliffordGate> schedule);

}  // namespace tfimqec
