#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "tfimqec/clifford_gate.hpp"
#include "tfimqec/decoders.hpp"
#include "tfimqec/pauli_string.hpp"
#include "tfimqec/random.hpp"
#include "tfimqec/statevector.hpp"
#include "tfimqec/tfim_code.hpp"

namespace tfimqec {

/// Seed of item `index` in a family of independent streams under `master`.
/// Trials are seeded by position, never by execution order.
std::uint64_t trial_seed(std::uint64_t master, std::uint64_t index) noexcept;

// ---------------------------------------------------------------------------
// Teleportation

/// Measurement-based transfer of the logical qubit stored at `source` onto
/// `target` for a one-round open code.
///
/// The transfer logical is the encoded X of the source multiplied by the
/// checks along the encoder cycle, starting at sigma(source) and ending just
/// before `target`. It acts as X on the target and as I or Z everywhere else.
struct TeleportPlan {
  std::size_t n = 0;
  std::size_t source = 0;
  std::size_t target = 0;
  std::vector<CliffordGate> encoder;
  PauliString transfer_logical;
  std::vector<std::size_t> check_chain;
  /// Sites whose outcome parity decides the X correction (all measured sites).
  SiteSet x_parity_sites;
  /// Sites whose outcome parity, with the transfer-logical sign, decides the Z correction.
  SiteSet z_parity_sites;
};

/// Throws std::invalid_argument if source == target, if the code is not a
/// one-round open code without Hadamards, or if `source` is not its only
/// logical site.
TeleportPlan plan_teleport(std::size_t source, std::size_t target, const CodeInstance& code);
/// Builds the matching code internally.
TeleportPlan plan_teleport(std::size_t n, std::size_t source, std::size_t target);

enum class TeleportBackend { Tableau, Oracle };

struct TeleportResult {
  /// Oracle: |<expected|final>|^2. Tableau: 1 when the logical pair ended as
  /// (X_target, Z_target) with + signs, 0 otherwise.
  double fidelity = 0;
  std::vector<std::pair<std::size_t, int>> outcomes;
  bool x_correction = false;
  bool z_correction = false;
};

/// Encodes alpha|0> + beta|1> at the source, measures every other site in Z
/// (ascending), applies the parity-conditioned corrections on the target and
/// scores the result. The tableau backend ignores (alpha, beta).
TeleportResult run_teleport(const TeleportPlan& plan, Amplitude alpha, Amplitude beta, RandomStream& rng,
                            TeleportBackend backend);

// ---------------------------------------------------------------------------
// Check-operator support statistics

struct LetterCounts {
  double x = 0;
  double y = 0;
  double z = 0;
};

struct SupportStatsRow {
  std::size_t rounds = 0;
  /// Number of checks with each letter on a site, averaged over all even
  /// (resp. odd) sites and over samples.
  LetterCounts even_site;
  LetterCounts odd_site;
  /// Number of checks acting non-trivially on site n/2, its mean and
  /// population variance over samples.
  double central_overlap = 0;
  double central_overlap_variance = 0;
};

/// One row per round count 1..max_rounds. Every sample draws max_rounds-1
/// Hadamard layers; the r-round row uses the first r-1 of them. Checks are
/// the conjugates of Z_k at sites outside `logical_sites` (all sites by default).
std::vector<SupportStatsRow> check_support_stats(std::size_t n, std::size_t max_rounds, double p_h,
                                                 std::size_t samples, std::uint64_t seed,
                                                 Boundary boundary = Boundary::Periodic,
                                                 const SiteSet& logical_sites = {});

// ---------------------------------------------------------------------------
// Erasure Monte Carlo

struct ErasureSpec {
  ErasureModel model = ErasureModel::Bernoulli;
  double p_e = 0;         // Bernoulli model
  std::size_t count = 0;  // fixed-count model
};

struct ErasureExperiment {
  std::size_t n = 0;
  Boundary boundary = Boundary::Open;
  double p_h = 0.5;
  double logical_fraction = 0.5;
  ErasureSpec erasure;

  /// round(f * n); throws std::invalid_argument unless f * n is an integer.
  std::size_t logical_count() const;
};

struct TrialRecord {
  std::uint64_t seed = 0;
  std::size_t n = 0;
  std::size_t depth = 0;
  double p_h = 0;
  SiteSet erased_sites;
  bool success = false;
};

/// One trial at a fixed round count: sample Hadamard layers and erasures from
/// the seed, encode f*n logical qubits on the default logical sites, and test
/// erasure recoverability of every logical pair.
TrialRecord erasure_trial(const ErasureExperiment& exp, std::size_t rounds, std::uint64_t seed);

/// The same trial evaluated after every round 1..max_rounds with shared
/// randomness: entry r-1 equals erasure_trial(exp, r, seed).success.
std::vector<bool> erasure_sweep(const ErasureExperiment& exp, std::size_t max_rounds, std::uint64_t seed);

enum class Execution { Serial, Parallel };

/// Successes after each round 1..max_rounds over `trials` sweeps seeded by
/// trial_seed(master, t). Serial and OpenMP execution give identical counts.
std::vector<std::size_t> sweep_success_counts(const ErasureExperiment& exp, std::size_t max_rounds,
                                              std::size_t trials, std::uint64_t master, Execution execution);

struct Interval {
  double low = 0;
  double high = 0;
};

/// Wilson score interval at the given normal quantile (1.96 for 95%).
Interval wilson_interval(std::size_t successes, std::size_t trials, double z = 1.96);

struct CurvePoint {
  std::size_t rounds = 0;
  std::size_t depth = 0;
  double p_e = 0;
  std::size_t trials = 0;
  std::size_t successes = 0;
  double mean = 0;
  Interval ci;
};

struct RecoveryCurve {
  std::vector<CurvePoint> points;  // ordered by rounds, then by p_e
  double hamming_marker = 0;       // (1 - f) / 2
};

/// Success probability for every (rounds, p_e) pair. Grid point g (the p_e
/// index) is seeded by trial_seed(seed, g); all rounds share its trials.
RecoveryCurve recovery_curve(ErasureExperiment exp, std::span<const std::size_t> rounds_list,
                             std::span<const double> pe_grid, std::size_t trials, std::uint64_t seed,
                             Execution execution = Execution::Parallel);

struct DepthPoint {
  std::size_t n = 0;
  std::optional<std::size_t> depth;  // empty when censored
  double success = 0;                // at `depth`, or at max depth if censored
};

struct ScalingFit {
  std::vector<DepthPoint> points;
  double target = 0;
  std::size_t fitted_points = 0;
  /// depth = slope * ln(n) + intercept over uncensored points.
  double slope = 0;
  double intercept = 0;
  double r_squared = 0;
  bool valid = false;  // at least four distinct uncensored n
  /// slope * ln(1/p_e): depth per unit of ln(n)/ln(1/q), the predicted
  /// longest-erased-run scale. Zero unless the erasure model is Bernoulli.
  double heuristic_constant = 0;
};

/// Smallest even depth t = 2r (r <= max_rounds) whose success estimate reaches
/// `target`, per n in `ns` (n number i seeded by trial_seed(seed, i)), then a
/// least-squares fit of t against ln n.
/// Throws std::invalid_argument if target is outside (0, 1).
ScalingFit depth_to_target(ErasureExperiment exp, std::span<const std::size_t> ns, double target,
                           std::size_t trials, std::size_t max_rounds, std::uint64_t seed,
                           Execution execution = Execution::Parallel);

struct LineFit {
  double slope = 0;
  double intercept = 0;
  double r_squared = 0;
};

/// Ordinary least squares. Throws std::invalid_argument for fewer than two
/// points or constant x.
LineFit fit_line(std::span<const double> x, std::span<const double> y);

/// Length of the longest run of consecutive erased sites on an open chain of
/// n sites, each erased with probability q.
std::size_t longest_erased_run(std::size_t n, double q, RandomStream& rng);

}  // namespace tfimqec
