#include "tfimqec/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <stdexcept>
#include <string>

#include "tfimqec/majorana.hpp"
#include "tfimqec/stabilizer_frame.hpp"

namespace tfimqec {

std::uint64_t trial_seed(std::uint64_t master, std::uint64_t index) noexcept {
  return mix64(master ^ mix64(index + 0x9e3779b97f4a7c15ULL));
}

TeleportPlan plan_teleport(std::size_t source, std::size_t target, const CodeInstance& code) {
  const std::size_t n = code.n();
  if (source == target) {
    throw std::invalid_argument("teleportation needs distinct source and target sites");
  }
  if (target < 1 || target > n) {
    throw std::out_of_range("target site " + std::to_string(target) + " outside the chain");
  }
  if (code.rounds() != 1 || code.boundary() != Boundary::Open || code.has_hadamards()) {
    throw std::invalid_argument("teleportation is defined for the one-round open code");
  }
  if (code.logical_sites() != SiteSet{source}) {
    throw std::invalid_argument("the code must store its only logical qubit at the source site");
  }

  TeleportPlan plan;
  plan.n = n;
  plan.source = source;
  plan.target = target;
  plan.encoder = code.schedule();
  // Z_m for m < source are stabilizers, so the encoded X_source equals the
  // encoded Jordan-Wigner mode gamma_source on the code space.
  plan.transfer_logical = code.logical_x().front();
  for (std::size_t m = 1; m < source; ++m) {
    plan.transfer_logical *= code.check(m);
  }
  const SitePermutation sigma = encoder_permutation(n, Boundary::Open);
  for (std::size_t k = sigma(source); k != target; k = sigma(k)) {
    plan.check_chain.push_back(k);
    plan.transfer_logical *= code.check(k);
  }

  const PauliString& t = plan.transfer_logical;
  if (!t.is_hermitian() || t.at(target) != Pauli::X) {
    throw std::logic_error("transfer logical " + t.str() + " does not act as X on the target");
  }
  for (std::size_t s = 1; s <= n; ++s) {
    if (s == target) {
      continue;
    }
    plan.x_parity_sites.push_back(s);
    if (t.at(s) == Pauli::Z) {
      plan.z_parity_sites.push_back(s);
    } else if (t.at(s) != Pauli::I) {
      throw std::logic_error("transfer logical " + t.str() + " has a non-Z letter on a measured site");
    }
  }
  return plan;
}

TeleportPlan plan_teleport(std::size_t n, std::size_t source, std::size_t target) {
  return plan_teleport(source, target, CodeInstance::build(n, Boundary::Open, 1, {}, {source}));
}

namespace {

int parity_of(const std::vector<std::pair<std::size_t, int>>& outcomes, const SiteSet& sites) {
  int product = 1;
  for (const auto& [site, value] : outcomes) {
    if (std::binary_search(sites.begin(), sites.end(), site)) {
      product *= value;
    }
  }
  return product;
}

void decide_corrections(const TeleportPlan& plan, TeleportResult& result) {
  result.x_correction = parity_of(result.outcomes, plan.x_parity_sites) < 0;
  result.z_correction = plan.transfer_logical.sign() * parity_of(result.outcomes, plan.z_parity_sites) < 0;
}

}  // namespace

TeleportResult run_teleport(const TeleportPlan& plan, Amplitude alpha, Amplitude beta, RandomStream& rng,
                            TeleportBackend backend) {
  TeleportResult result;
  const std::size_t n = plan.n;
  const PauliString x_target = PauliString::single(n, Pauli::X, plan.target);
  const PauliString z_target = PauliString::single(n, Pauli::Z, plan.target);

  if (backend == TeleportBackend::Oracle) {
    DenseState state = DenseState::product(n, alpha, beta, plan.source);
    apply_gates_dense(state, plan.encoder);
    for (std::size_t s : plan.x_parity_sites) {
      result.outcomes.emplace_back(s, born_measure_dense(state, s, rng));
    }
    decide_corrections(plan, result);
    if (result.x_correction) apply_pauli_dense(state, x_target);
    if (result.z_correction) apply_pauli_dense(state, z_target);

    std::size_t measured_bits = 0;
    for (const auto& [site, value] : result.outcomes) {
      if (value < 0) {
        measured_bits |= std::size_t{1} << (site - 1);
      }
    }
    DenseState expected = DenseState::basis(n, measured_bits);
    const double norm = std::sqrt(std::norm(alpha) + std::norm(beta));
    expected[measured_bits] = alpha / norm;
    expected[measured_bits | (std::size_t{1} << (plan.target - 1))] = beta / norm;
    result.fidelity = overlap_fidelity(expected, state);
    return result;
  }

  const std::size_t logical[] = {plan.source};
  StabilizerFrame frame = StabilizerFrame::product_state(n, logical);
  frame.conjugate(plan.encoder);
  bool collapsed = false;
  for (std::size_t s : plan.x_parity_sites) {
    const MeasurementResult m = frame.measure(PauliString::single(n, Pauli::Z, s), rng);
    collapsed = collapsed || m.logical_collapse;
    result.outcomes.emplace_back(s, m.outcome);
  }
  decide_corrections(plan, result);
  if (result.x_correction) frame.apply_pauli(x_target);
  if (result.z_correction) frame.apply_pauli(z_target);
  const bool transferred = !collapsed && frame.num_logical() == 1 &&
                           frame.equivalent(frame.logical_x().front(), x_target) &&
                           frame.equivalent(frame.logical_z().front(), z_target);
  result.fidelity = transferred ? 1.0 : 0.0;
  return result;
}

std::vector<SupportStatsRow> check_support_stats(std::size_t n, std::size_t max_rounds, double p_h,
                                                 std::size_t samples, std::uint64_t seed, Boundary boundary,
                                                 const SiteSet& logical_sites) {
  if (samples == 0) {
    throw std::invalid_argument("support statistics need at least one sample");
  }
  if (max_rounds == 0) {
    throw std::invalid_argument("support statistics need at least one round");
  }
  const std::vector<CliffordGate> round = build_encoder(n, boundary, 1);
  const std::size_t central = n / 2;

  std::vector<SupportStatsRow> rows(max_rounds);
  std::vector<std::vector<double>> overlaps(max_rounds);
  for (std::size_t sample = 0; sample < samples; ++sample) {
    RandomStream rng(trial_seed(seed, sample));
    const std::vector<SiteSet> layers = sample_hadamard_layers(n, max_rounds, p_h, rng);
    std::vector<PauliString> checks;
    for (std::size_t k = 1; k <= n; ++k) {
      if (!std::binary_search(logical_sites.begin(), logical_sites.end(), k)) {
        checks.push_back(PauliString::single(n, Pauli::Z, k));
      }
    }
    for (std::size_t r = 1; r <= max_rounds; ++r) {
      for (PauliString& c : checks) {
        if (r > 1) {
          for (std::size_t s : layers[r - 2]) {
            conjugate(c, CliffordGate::hadamard(s));
          }
        }
        conjugate(c, round);
      }
      SupportStatsRow& row = rows[r - 1];
      double overlap = 0;
      for (const PauliString& c : checks) {
        for (std::size_t s = 1; s <= n; ++s) {
          LetterCounts& counts = s % 2 == 0 ? row.even_site : row.odd_site;
          switch (c.at(s)) {
            case Pauli::X:
              counts.x += 1;
              break;
            case Pauli::Y:
              counts.y += 1;
              break;
            case Pauli::Z:
              counts.z += 1;
              break;
            default:
              break;
          }
        }
        overlap += c.at(central) != Pauli::I ? 1 : 0;
      }
      overlaps[r - 1].push_back(overlap);
    }
  }

  const double even_sites = static_cast<double>(n / 2);
  const double odd_sites = static_cast<double>(n - n / 2);
  const double count = static_cast<double>(samples);
  for (std::size_t r = 1; r <= max_rounds; ++r) {
    SupportStatsRow& row = rows[r - 1];
    row.rounds = r;
    for (auto [counts, sites] : {std::pair{&row.even_site, even_sites}, std::pair{&row.odd_site, odd_sites}}) {
      counts->x /= sites * count;
      counts->y /= sites * count;
      counts->z /= sites * count;
    }
    double mean = 0;
    for (double v : overlaps[r - 1]) mean += v;
    mean /= count;
    double variance = 0;
    for (double v : overlaps[r - 1]) variance += (v - mean) * (v - mean);
    row.central_overlap = mean;
    row.central_overlap_variance = variance / count;
  }
  return rows;
}

std::size_t ErasureExperiment::logical_count() const {
  const double k = logical_fraction * static_cast<double>(n);
  const double rounded = std::round(k);
  if (!(logical_fraction >= 0.0 && logical_fraction <= 1.0) || std::abs(k - rounded) > 1e-9) {
    throw std::invalid_argument("logical fraction times n must be an integer between 0 and n");
  }
  return static_cast<std::size_t>(rounded);
}

namespace {

struct TrialInputs {
  std::vector<SiteSet> layers;
  ErasurePattern erasure;
  SiteSet logical_sites;
};

// Hadamard layers and erasures come from separate substreams, so the layers
// for fewer rounds are a prefix of those for more rounds.
TrialInputs sample_trial(const ErasureExperiment& exp, std::size_t rounds, std::uint64_t seed) {
  RandomStream hadamard_rng = RandomStream::substream(seed, 0);
  RandomStream erasure_rng = RandomStream::substream(seed, 1);
  TrialInputs in;
  in.layers = sample_hadamard_layers(exp.n, rounds, exp.p_h, hadamard_rng);
  in.erasure = exp.erasure.model == ErasureModel::Bernoulli
                   ? sample_bernoulli_erasure(exp.n, exp.erasure.p_e, erasure_rng)
                   : sample_fixed_erasure(exp.n, exp.erasure.count, erasure_rng);
  in.logical_sites = default_logical_sites(exp.n, exp.logical_count());
  return in;
}

}  // namespace

TrialRecord erasure_trial(const ErasureExperiment& exp, std::size_t rounds, std::uint64_t seed) {
  TrialInputs in = sample_trial(exp, rounds, seed);
  const CodeInstance code = CodeInstance::build(exp.n, exp.boundary, rounds, in.layers, in.logical_sites);
  TrialRecord record;
  record.seed = seed;
  record.n = exp.n;
  record.depth = code.depth();
  record.p_h = exp.p_h;
  record.success = erasure_correctable(code.encoded_frame(), in.erasure.erased_sites);
  record.erased_sites = std::move(in.erasure.erased_sites);
  return record;
}

std::vector<bool> erasure_sweep(const ErasureExperiment& exp, std::size_t max_rounds, std::uint64_t seed) {
  if (max_rounds == 0) {
    throw std::invalid_argument("sweep needs at least one round");
  }
  const TrialInputs in = sample_trial(exp, max_rounds, seed);
  const std::vector<CliffordGate> round = build_encoder(exp.n, exp.boundary, 1);
  StabilizerFrame frame = StabilizerFrame::product_state(exp.n, in.logical_sites);
  std::vector<bool> success(max_rounds);
  for (std::size_t r = 1; r <= max_rounds; ++r) {
    if (r > 1) {
      for (std::size_t s : in.layers[r - 2]) {
        frame.conjugate(CliffordGate::hadamard(s));
      }
    }
    frame.conjugate(round);
    success[r - 1] = erasure_correctable(frame, in.erasure.erased_sites);
  }
  return success;
}

std::vector<std::size_t> sweep_success_counts(const ErasureExperiment& exp, std::size_t max_rounds,
                                              std::size_t trials, std::uint64_t master, Execution execution) {
  if (max_rounds == 0) {
    throw std::invalid_argument("sweep needs at least one round");
  }
  exp.logical_count();
  std::vector<std::uint8_t> outcome(trials * max_rounds, 0);
  const auto run = [&](std::size_t t) {
    const std::vector<bool> s = erasure_sweep(exp, max_rounds, trial_seed(master, t));
    for (std::size_t r = 0; r < max_rounds; ++r) {
      outcome[t * max_rounds + r] = s[r] ? 1 : 0;
    }
  };

  if (execution == Execution::Serial) {
    for (std::size_t t = 0; t < trials; ++t) {
      run(t);
    }
  } else {
    std::exception_ptr failure;
    const auto count = static_cast<std::ptrdiff_t>(trials);
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t t = 0; t < count; ++t) {
      try {
        run(static_cast<std::size_t>(t));
      } catch (...) {
#pragma omp critical
        if (!failure) failure = std::current_exception();
      }
    }
    if (failure) {
      std::rethrow_exception(failure);
    }
  }

  std::vector<std::size_t> counts(max_rounds, 0);
  for (std::size_t t = 0; t < trials; ++t) {
    for (std::size_t r = 0; r < max_rounds; ++r) {
      counts[r] += outcome[t * max_rounds + r];
    }
  }
  return counts;
}

Interval wilson_interval(std::size_t successes, std::size_t trials, double z) {
  if (trials == 0) {
    return {0.0, 1.0};
  }
  const double nt = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / nt;
  const double z2 = z * z;
  const double centre = (p + z2 / (2 * nt)) / (1 + z2 / nt);
  const double half = z * std::sqrt(p * (1 - p) / nt + z2 / (4 * nt * nt)) / (1 + z2 / nt);
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

RecoveryCurve recovery_curve(ErasureExperiment exp, std::span<const std::size_t> rounds_list,
                             std::span<const double> pe_grid, std::size_t trials, std::uint64_t seed,
                             Execution execution) {
  if (trials == 0) {
    throw std::invalid_argument("recovery curve needs at least one trial");
  }
  if (rounds_list.empty() || pe_grid.empty()) {
    throw std::invalid_argument("recovery curve needs non-empty round and erasure grids");
  }
  if (std::find(rounds_list.begin(), rounds_list.end(), std::size_t{0}) != rounds_list.end()) {
    throw std::invalid_argument("round counts must be positive");
  }
  const std::size_t max_rounds = *std::max_element(rounds_list.begin(), rounds_list.end());
  exp.erasure.model = ErasureModel::Bernoulli;

  RecoveryCurve curve;
  curve.hamming_marker = (1.0 - exp.logical_fraction) / 2.0;
  std::vector<std::vector<std::size_t>> counts;
  for (std::size_t g = 0; g < pe_grid.size(); ++g) {
    exp.erasure.p_e = pe_grid[g];
    counts.push_back(sweep_success_counts(exp, max_rounds, trials, trial_seed(seed, g), execution));
  }
  for (std::size_t rounds : rounds_list) {
    for (std::size_t g = 0; g < pe_grid.size(); ++g) {
      CurvePoint p;
      p.rounds = rounds;
      p.depth = 2 * rounds;
      p.p_e = pe_grid[g];
      p.trials = trials;
      p.successes = counts[g][rounds - 1];
      p.mean = static_cast<double>(p.successes) / static_cast<double>(trials);
      p.ci = wilson_interval(p.successes, trials);
      curve.points.push_back(p);
    }
  }
  return curve;
}

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("line fit needs at least two paired points");
  }
  const double m = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= m;
  my /= m;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0) {
    throw std::invalid_argument("line fit needs at least two distinct x values");
  }
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  // A perfectly flat response is explained exactly by the fitted line.
  fit.r_squared = syy == 0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  return fit;
}

ScalingFit depth_to_target(ErasureExperiment exp, std::span<const std::size_t> ns, double target,
                           std::size_t trials, std::size_t max_rounds, std::uint64_t seed,
                           Execution execution) {
  if (!(target > 0.0 && target < 1.0)) {
    throw std::invalid_argument("target success must lie in (0, 1)");
  }
  if (trials == 0) {
    throw std::invalid_argument("depth scaling needs at least one trial");
  }
  ScalingFit fit;
  fit.target = target;
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    exp.n = ns[i];
    const std::vector<std::size_t> counts = sweep_success_counts(exp, max_rounds, trials, trial_seed(seed, i), execution);
    DepthPoint point;
    point.n = ns[i];
    point.success = static_cast<double>(counts.back()) / static_cast<double>(trials);
    for (std::size_t r = 1; r <= max_rounds; ++r) {
      const double rate = static_cast<double>(counts[r - 1]) / static_cast<double>(trials);
      if (rate >= target) {
        point.depth = 2 * r;
        point.success = rate;
        break;
      }
    }
    if (point.depth) {
      xs.push_back(std::log(static_cast<double>(ns[i])));
      ys.push_back(static_cast<double>(*point.depth));
    }
    fit.points.push_back(point);
  }

  std::vector<double> distinct = xs;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  fit.fitted_points = xs.size();
  if (distinct.size() >= 2) {
    const LineFit line = fit_line(xs, ys);
    fit.slope = line.slope;
    fit.intercept = line.intercept;
    fit.r_squared = line.r_squared;
  }
  fit.valid = distinct.size() >= 4;
  const double q = exp.erasure.p_e;
  if (exp.erasure.model == ErasureModel::Bernoulli && q > 0.0 && q < 1.0) {
    fit.heuristic_constant = fit.slope * std::log(1.0 / q);
  }
  return fit;
}

std::size_t longest_erased_run(std::size_t n, double q, RandomStream& rng) {
  if (!(q >= 0.0 && q <= 1.0)) {
    throw std::invalid_argument("erasure probability must lie in [0, 1]");
  }
  std::size_t longest = 0, current = 0;
  for (std::size_t s = 0; s < n; ++s) {
    current = rng.bernoulli(q) ? current + 1 : 0;
    longest = std::max(longest, current);
  }
  return longest;
}

}  // namespace tfimqec
