#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tfimqec {

/// Single-site Pauli letter. Bit 0 is the X component, bit 1 the Z component,
/// so (x,z) = (1,1) decodes to Y itself (not XZ).
enum class Pauli : std::uint8_t { I = 0, X = 1, Z = 2, Y = 3 };

char pauli_char(Pauli p) noexcept;

/// Signed n-qubit Pauli operator  i^phase * P_1 (x) P_2 (x) ... (x) P_n.
///
/// X and Z components are packed 64 sites per word. Sites are 1-based in
/// every method taking a `site`; methods taking an `index` are 0-based and
/// exist for the gate kernels.
class PauliString {
 public:
  PauliString() = default;
  explicit PauliString(std::size_t num_qubits);

  static PauliString identity(std::size_t num_qubits) { return PauliString(num_qubits); }
  static PauliString single(std::size_t num_qubits, Pauli p, std::size_t site);

  /// Dense form, one letter per site starting at site 1, e.g. "XIZY".
  /// An optional leading sign ("+", "-", "i", "+i", "-i") is accepted.
  static PauliString from_letters(std::string_view letters);

  /// Sparse word form: optional sign, then letter+site tokens, e.g.
  /// "-Y8 Z9 Y10", "X1Z2X3" or "I". Throws std::invalid_argument on malformed
  /// input and std::out_of_range for sites outside 1..num_qubits.
  static PauliString parse(std::string_view word, std::size_t num_qubits);

  std::size_t size() const noexcept { return n_; }

  Pauli at(std::size_t site) const;
  void set(std::size_t site, Pauli p);

  /// Power of i, in 0..3.
  std::uint8_t phase() const noexcept { return phase_; }
  void set_phase(std::uint8_t phase) noexcept { phase_ = phase & 3u; }
  void multiply_phase(std::uint8_t power_of_i) noexcept { phase_ = (phase_ + power_of_i) & 3u; }
  void negate() noexcept { multiply_phase(2); }

  bool is_hermitian() const noexcept { return (phase_ & 1u) == 0; }
  /// +1 or -1. Throws std::logic_error when the phase is ±i.
  int sign() const;

  /// True when every letter is I (phase ignored).
  bool is_identity_up_to_phase() const noexcept;
  std::size_t weight() const noexcept;
  /// 1-based sites carrying a non-identity letter, ascending.
  std::vector<std::size_t> support() const;

  bool x_bit(std::size_t index) const noexcept { return (x_[index >> 6] >> (index & 63)) & 1u; }
  bool z_bit(std::size_t index) const noexcept { return (z_[index >> 6] >> (index & 63)) & 1u; }
  /// Two-bit letter code (x | z << 1) at a 0-based index.
  std::uint8_t code(std::size_t index) const noexcept {
    return static_cast<std::uint8_t>(x_bit(index) | (z_bit(index) << 1));
  }
  void set_code(std::size_t index, std::uint8_t code) noexcept;

  std::span<const std::uint64_t> x_words() const noexcept { return x_; }
  std::span<const std::uint64_t> z_words() const noexcept { return z_; }

  /// Right-multiplies in place: *this <- (*this) * rhs, phase exact.
  PauliString& operator*=(const PauliString& rhs);

  /// Letters equal, phase ignored.
  bool same_letters(const PauliString& other) const noexcept {
    return n_ == other.n_ && x_ == other.x_ && z_ == other.z_;
  }

  friend bool operator==(const PauliString&, const PauliString&) = default;

  /// Sparse word, sign only when not +1: "Y1 Y2", "-Y8 Z9 Y10", "+i X1", "I".
  std::string str() const;
  /// Dense letters with sign: "+YYIIII".
  std::string dense_str() const;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> x_;
  std::vector<std::uint64_t> z_;
  std::uint8_t phase_ = 0;
};

PauliString operator*(PauliString lhs, const PauliString& rhs);

/// Product a*b with exact phase. Throws std::invalid_argument on size mismatch.
PauliString pauli_mul(const PauliString& a, const PauliString& b);

/// True iff the symplectic inner product vanishes.
/// Throws std::invalid_argument on size mismatch.
bool commutes(const PauliString& a, const PauliString& b);

}  // namespace tfimqec
