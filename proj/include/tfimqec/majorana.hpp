#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "tfimqec/clifford_gate.hpp"
#include "tfimqec/pauli_string.hpp"
#include "tfimqec/tfim_code.hpp"

namespace tfimqec {

enum class ModeKind : std::uint8_t { Gamma, Xi };

/// Jordan-Wigner Majorana mode
///   gamma_i = Z_1 ... Z_{i-1} X_i,   xi_i = Z_1 ... Z_{i-1} Y_i,
/// with a ±1 sign. Sites are 1-based.
struct MajoranaMode {
  ModeKind kind = ModeKind::Gamma;
  std::size_t site = 1;
  int sign = +1;

  static MajoranaMode gamma(std::size_t site, int sign = +1) { return {ModeKind::Gamma, site, sign}; }
  static MajoranaMode xi(std::size_t site, int sign = +1) { return {ModeKind::Xi, site, sign}; }

  std::string str() const;
  friend bool operator==(const MajoranaMode&, const MajoranaMode&) = default;
};

/// Thrown when a schedule is outside what mode tracking supports.
class UnsupportedSchedule : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// i^phase times an ordered product of distinct Majorana modes, stored in
/// canonical order gamma_1, xi_1, gamma_2, xi_2, ...
class MajoranaMonomial {
 public:
  explicit MajoranaMonomial(std::size_t num_sites);

  static MajoranaMonomial from_mode(const MajoranaMode& m, std::size_t num_sites);
  /// Jordan-Wigner image of a Pauli string (Z_i = -i gamma_i xi_i, X_i = S_i gamma_i,
  /// Y_i = S_i xi_i with S_i = Z_1 ... Z_{i-1}), built by monomial products only.
  static MajoranaMonomial from_pauli(const PauliString& p);

  std::size_t num_sites() const noexcept { return n_; }
  std::uint8_t phase() const noexcept { return phase_; }
  std::size_t degree() const noexcept;
  bool contains(ModeKind kind, std::size_t site) const;

  MajoranaMonomial& operator*=(const MajoranaMonomial& rhs);
  friend MajoranaMonomial operator*(MajoranaMonomial a, const MajoranaMonomial& b) { return a *= b; }
  void multiply_phase(std::uint8_t power_of_i) noexcept { phase_ = (phase_ + power_of_i) & 3u; }

  /// Set when the monomial is ±(single mode).
  std::optional<MajoranaMode> single_mode() const;

  /// Pauli form, formed as the ordered product of mode_to_pauli of each factor.
  PauliString to_pauli() const;

  std::string str() const;
  friend bool operator==(const MajoranaMonomial&, const MajoranaMonomial&) = default;

 private:
  friend bool monomials_commute(const MajoranaMonomial&, const MajoranaMonomial&);
  std::size_t n_ = 0;
  std::vector<bool> modes_;  // index 2*(site-1) + (xi ? 1 : 0)
  std::uint8_t phase_ = 0;
};

bool monomials_commute(const MajoranaMonomial& a, const MajoranaMonomial& b);

/// Throws std::out_of_range if the mode's site exceeds n.
PauliString mode_to_pauli(const MajoranaMode& m, std::size_t n);
/// Inverse of mode_to_pauli; std::nullopt for strings that are not ±(single mode).
std::optional<MajoranaMode> pauli_to_mode(const PauliString& p);

/// Bijection on {1..n}.
class SitePermutation {
 public:
  /// Identity on n sites.
  explicit SitePermutation(std::size_t n);
  /// image[s-1] = image of site s. Throws std::invalid_argument if not a bijection.
  static SitePermutation from_images(std::vector<std::size_t> image);
  /// Cycles written as in (1 3 5)(4 2); unlisted sites are fixed.
  static SitePermutation from_cycles(std::size_t n, const std::vector<std::vector<std::size_t>>& cycles);

  std::size_t size() const noexcept { return image_.size(); }
  std::size_t operator()(std::size_t site) const;
  const std::vector<std::size_t>& images() const noexcept { return image_; }

  /// (a.then(b))(s) = b(a(s)).
  SitePermutation then(const SitePermutation& next) const;
  SitePermutation power(std::size_t exponent) const;
  SitePermutation inverse() const;
  void transpose(std::size_t a, std::size_t b);

  /// Cycle decomposition, each cycle starting at its smallest site, cycles
  /// ordered by that site; fixed points omitted.
  std::vector<std::vector<std::size_t>> cycles() const;
  std::string str() const;

  friend bool operator==(const SitePermutation&, const SitePermutation&) = default;

 private:
  std::vector<std::size_t> image_;
};

/// Permutation of gamma-mode labels induced by one encoder round, obtained by
/// composing the transposition gamma_i <-> gamma_j of every bond in gate
/// order. Odd n is supported here; for a periodic odd chain the wrap bond
/// (n,1) sits between the odd and even sub-layers. Throws std::invalid_argument
/// for n < 2.
SitePermutation encoder_permutation(std::size_t n, Boundary boundary);

/// Conjugation of a monomial by each gate of the schedule in order. A gate is
/// U = (A + B)/sqrt(2) with A, B anticommuting Hermitian monomials (A = Z_i and
/// B = X_i X_j for TFIM, A = Z_i and B = X_i for Hadamard); a factor m maps to
/// m, -m, A B m or -A B m depending on its commutation with A and B.
MajoranaMonomial evolve_monomial(MajoranaMonomial m, std::span<const CliffordGate> schedule);

/// Heisenberg evolution of a single mode through the encoder. For open chains
/// the result is always ±(single mode); the periodic bond also involves the
/// global parity, so the result is a general monomial.
/// Throws UnsupportedSchedule if the code has Hadamard layers and
/// std::out_of_range if the mode's site is outside the chain.
MajoranaMonomial evolve_mode(const MajoranaMode& m, const CodeInstance& code);

/// Check operator k in mode form: (-i) (U gamma_k U^dag)(U xi_k U^dag), i.e.
/// i gamma_{sigma(k)} xi_k with the signs carried by the mode evolution.
/// Throws std::out_of_range for k outside 1..n and UnsupportedSchedule for
/// Hadamard layers.
PauliString check_as_mode_pair(std::size_t k, const CodeInstance& code);

}  // namespace tfimqec
