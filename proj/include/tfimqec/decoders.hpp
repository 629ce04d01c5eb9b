#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "tfimqec/pauli_string.hpp"
#include "tfimqec/random.hpp"
#include "tfimqec/stabilizer_frame.hpp"
#include "tfimqec/tfim_code.hpp"

namespace tfimqec {

/// Check-measurement record. bits[i] belongs to check index checks[i];
/// 1 means the check was measured at -1 (the error anticommutes with it).
struct Syndrome {
  std::vector<std::size_t> checks;
  std::vector<std::uint8_t> bits;

  bool is_trivial() const noexcept;
  /// Bit for check index k; throws std::out_of_range if k is not available.
  std::uint8_t bit(std::size_t k) const;
  /// Same syndrome with check column k removed.
  Syndrome without(std::size_t k) const;
  /// "k=b" pairs, e.g. "2=0 3=1 ...".
  std::string str() const;

  friend bool operator==(const Syndrome&, const Syndrome&) = default;
};

/// Syndrome of an error against explicitly indexed checks.
/// Throws std::invalid_argument on size mismatches.
Syndrome syndrome_of(const PauliString& error, std::span<const std::size_t> check_indices,
                     std::span<const PauliString> checks);
/// Syndrome against all available checks of the code.
Syndrome syndrome_of(const PauliString& error, const CodeInstance& code);

enum class DecodeStatus { Corrected, Uncorrectable, Ambiguous };
std::string_view to_string(DecodeStatus s) noexcept;

struct SingleErrorDecode {
  DecodeStatus status = DecodeStatus::Uncorrectable;
  PauliString correction;            // valid when status == Corrected
  std::vector<PauliString> matches;  // every weight <= 1 Pauli with this syndrome
};

/// Matches the syndrome against all 3n+1 Paulis of weight <= 1, using only the
/// check columns present in `s`. A unique match is returned as the correction.
SingleErrorDecode decode_single_error(const Syndrome& s, const CodeInstance& code);

enum class ZDecodeStatus { Corrected, Tie, Inconsistent };
std::string_view to_string(ZDecodeStatus s) noexcept;

struct ZDecode {
  ZDecodeStatus status = ZDecodeStatus::Inconsistent;
  PauliString correction;  // Z-only
};

/// Repetition-code decoding of Z errors for a one-round code without
/// Hadamards. Each check anticommutes with Z on exactly two sites, which
/// links the sites in cycle order; the syndrome marks domain walls along
/// that chain. Per chain the two complementary explanations are compared and
/// the lighter one returned. An exact tie on a chain whose complement is a
/// logical operator is reported as ZDecodeStatus::Tie.
/// Throws std::invalid_argument for multi-round or Hadamard codes.
ZDecode decode_z_errors(const Syndrome& s, const CodeInstance& code);

enum class ErasureModel { Bernoulli, FixedCount };

struct ErasurePattern {
  SiteSet erased_sites;
  ErasureModel model = ErasureModel::Bernoulli;
};

/// Each site erased independently with probability p.
ErasurePattern sample_bernoulli_erasure(std::size_t n, double p, RandomStream& rng);
/// Uniformly random subset of exactly `count` sites.
ErasurePattern sample_fixed_erasure(std::size_t n, std::size_t count, RandomStream& rng);

struct ErasureRecovery {
  bool success = false;
  /// For each logical pair j, the stabilizer rows (0-based) whose product
  /// clears logical_x[j] / logical_z[j] off the erased sites. Filled on success.
  std::vector<std::vector<std::size_t>> x_multipliers;
  std::vector<std::vector<std::size_t>> z_multipliers;
  /// The cleaned logical operators, phases resolved by explicit products.
  std::vector<PauliString> cleaned_x;
  std::vector<PauliString> cleaned_z;
};

/// Decides whether every logical operator of `frame` can be multiplied by
/// stabilizers into an operator acting as identity on every erased site,
/// by Gaussian elimination over the 2|E| restricted coordinates.
ErasureRecovery erasure_recoverable(const StabilizerFrame& frame, const ErasurePattern& erasure);

/// Success flag only; same criterion without building the cleaned operators.
bool erasure_correctable(const StabilizerFrame& frame, std::span<const std::size_t> erased_sites);

}  // namespace tfimqec
