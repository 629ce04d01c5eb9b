#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tfimqec/clifford_gate.hpp"
#include "tfimqec/pauli_string.hpp"
#include "tfimqec/random.hpp"
#include "tfimqec/stabilizer_frame.hpp"

namespace tfimqec {

enum class Boundary { Open, Periodic };

std::string_view to_string(Boundary b) noexcept;
/// "open" or "periodic"; throws std::invalid_argument otherwise.
Boundary parse_boundary(std::string_view text);

/// Sorted, duplicate-free list of 1-based sites.
using SiteSet = std::vector<std::size_t>;

/// Encoder gate list. One round is the TFIM gates on odd bonds (1,2),(3,4),...
/// followed by the even bonds (2,3),(4,5),... and, for the periodic variant,
/// the bond (N,1). hadamard_layers[r] is applied after round r; it must be
/// empty or hold exactly rounds-1 layers.
/// Throws std::invalid_argument for odd or too small n, rounds < 1, or a bad
/// layer count, std::out_of_range for a Hadamard site outside 1..n.
std::vector<CliffordGate> build_encoder(std::size_t n, Boundary boundary, std::size_t rounds,
                                        std::span<const SiteSet> hadamard_layers = {});

/// One site-set per inter-round slot (rounds-1 of them), each site included
/// independently with probability p_h. Throws std::invalid_argument if p_h is
/// outside [0, 1].
std::vector<SiteSet> sample_hadamard_layers(std::size_t n, std::size_t rounds, double p_h, RandomStream& rng);

/// First `count` entries of 1, 3, 5, ..., 2, 4, 6, ...
SiteSet default_logical_sites(std::size_t n, std::size_t count);

/// A TFIM encoder together with its Heisenberg-picture check and logical
/// operators. Immutable after build.
///
/// Check k is the conjugate of Z_k for every non-logical site k; logical pair
/// j is the conjugate of (X_s, Z_s) for the j-th logical site s.
class CodeInstance {
 public:
  static CodeInstance build(std::size_t n, Boundary boundary, std::size_t rounds,
                            std::vector<SiteSet> hadamard_layers = {}, SiteSet logical_sites = {1});

  std::size_t n() const noexcept { return n_; }
  Boundary boundary() const noexcept { return boundary_; }
  std::size_t rounds() const noexcept { return rounds_; }
  /// Circuit depth in TFIM gate sub-layers, 2 per round.
  std::size_t depth() const noexcept { return 2 * rounds_; }
  bool has_hadamards() const noexcept;

  const std::vector<SiteSet>& hadamard_layers() const noexcept { return hadamard_layers_; }
  const std::vector<CliffordGate>& schedule() const noexcept { return schedule_; }
  const SiteSet& logical_sites() const noexcept { return logical_sites_; }

  /// Site indices k of the available checks, ascending.
  const std::vector<std::size_t>& check_indices() const noexcept { return check_indices_; }
  const std::vector<PauliString>& checks() const noexcept { return checks_; }
  /// Check for site k; throws std::out_of_range if k is logical or invalid.
  const PauliString& check(std::size_t k) const;

  const std::vector<PauliString>& logical_x() const noexcept { return logical_x_; }
  const std::vector<PauliString>& logical_z() const noexcept { return logical_z_; }

  /// Encoded stabilizer frame: the product-state frame conjugated by the schedule.
  StabilizerFrame encoded_frame() const;

 private:
  std::size_t n_ = 0;
  Boundary boundary_ = Boundary::Open;
  std::size_t rounds_ = 0;
  std::vector<SiteSet> hadamard_layers_;
  std::vector<CliffordGate> schedule_;
  SiteSet logical_sites_;
  std::vector<std::size_t> check_indices_;
  std::vector<PauliString> checks_;
  std::vector<PauliString> logical_x_;
  std::vector<PauliString> logical_z_;
};

/// Exact signed conjugate of p under the full encoder schedule.
PauliString conjugate_by_encoder(PauliString p, const CodeInstance& code);

/// Conjugates of Z_k for k not in logical_sites, in ascending k.
std::vector<PauliString> derive_check_operators(const CodeInstance& code, std::span<const std::size_t> logical_sites);

struct LogicalOperators {
  std::vector<PauliString> x;
  std::vector<PauliString> z;
};

/// Conjugates of X_s and Z_s for s in logical_sites.
LogicalOperators derive_logical_operators(const CodeInstance& code, std::span<const std::size_t> logical_sites);

}  // namespace tfimqec
