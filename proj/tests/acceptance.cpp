// Acceptance run: one PASS/FAIL line per criterion.
//
//   tfimqec_acceptance [--criterion N]... [--cli PATH]
//
// Without --criterion every criterion runs. --cli points at the tfimqec
// executable for the reproducibility check. Exit status is 0 only when every
// selected criterion passes.

#include <fmt/core.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "tfimqec/decoders.hpp"
#include "tfimqec/experiments.hpp"
#include "tfimqec/majorana.hpp"
#include "tfimqec/statevector.hpp"
#include "tfimqec/tfim_code.hpp"

namespace tfimqec {
namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

/// Collects failures; the first few are kept verbatim for the report line.
class Tally {
 public:
  void expect(bool ok, const std::string& what) {
    ++checks_;
    if (!ok) {
      if (failures_.size() < 3) failures_.push_back(what);
      ++failed_;
    }
  }
  std::size_t checks() const { return checks_; }
  bool ok() const { return failed_ == 0; }
  std::string failures() const {
    std::string out = fmt::format("{} of {} checks failed", failed_, checks_);
    for (const auto& f : failures_) out += "; " + f;
    return out;
  }

 private:
  std::size_t checks_ = 0;
  std::size_t failed_ = 0;
  std::vector<std::string> failures_;
};

PauliString image(const char* word, const CodeInstance& code) {
  return conjugate_by_encoder(PauliString::parse(word, code.n()), code);
}

// ---------------------------------------------------------------------------
// 1. Conjugation tables at N = 12

Outcome conjugation_tables() {
  using oracle::word;
  const std::size_t n = 12;
  const long N = static_cast<long>(n);
  const auto code = CodeInstance::build(n, Boundary::Open, 1, {}, {});
  Tally t;
  std::size_t sign_conflicts = 0, images = 0, rule_count = 0;

  const auto check_image = [&](char letter, long k, const PauliString& stated) {
    const auto in = PauliString::single(n, static_cast<Pauli>(oracle::letter_code(letter)), static_cast<std::size_t>(k));
    const auto engine = conjugate_by_encoder(in, code);
    ++images;
    t.expect(oracle::conjugation_holds(in, engine, code.schedule()), fmt::format("{} -> {} disagrees with dense", in.str(), engine.str()));
    if (engine == stated) return;
    // The only admissible mismatch is the Z_N image, whose stated sign
    // contradicts the k = N check form; the dense oracle decides it.
    const bool z_edge = letter == 'Z' && k == N && engine.same_letters(stated) && engine.sign() == -stated.sign();
    t.expect(z_edge, fmt::format("{} -> {} (stated {})", in.str(), engine.str(), stated.str()));
    sign_conflicts += z_edge;
  };

  for (long k = 1; k <= N; ++k) {
    if (k % 2 == 1 && k > 1 && k < N - 2) check_image('X', k, word(n, {{'Y', k - 1}, {'Y', k}, {'Z', k + 1}, {'X', k + 2}}, -1));
    if (k % 2 == 0 && k < N) check_image('X', k, word(n, {{'Z', k}, {'X', k + 1}}));
    if (k % 2 == 1 && k > 1) check_image('Y', k, word(n, {{'Y', k - 1}, {'Z', k}}, -1));
    if (k % 2 == 0 && k > 2 && k < N) check_image('Y', k, word(n, {{'Y', k - 2}, {'Z', k - 1}, {'X', k}, {'X', k + 1}}));
    if (k % 2 == 1 && k < N - 2) check_image('Z', k, word(n, {{'X', k}, {'Z', k + 1}, {'X', k + 2}}));
    if (k % 2 == 0 && k > 2) check_image('Z', k, word(n, {{'Y', k - 2}, {'Z', k - 1}, {'Y', k}}));
  }

  // Single-gate rules on every bond, including the periodic bond (N, 1).
  for (std::size_t i = 1; i <= n; ++i) {
    const auto g = CliffordGate::tfim(i, n);
    const long a = static_cast<long>(g.site), b = static_cast<long>(g.partner);
    const std::vector<std::pair<PauliString, PauliString>> rules{
        {word(n, {{'X', a}}), word(n, {{'Z', a}, {'X', b}})},  {word(n, {{'Y', a}}), word(n, {{'Y', a}}, -1)},
        {word(n, {{'Z', a}}), word(n, {{'X', a}, {'X', b}})},  {word(n, {{'X', b}}), word(n, {{'X', b}})},
        {word(n, {{'Y', b}}), word(n, {{'Y', a}, {'Z', b}})},  {word(n, {{'Z', b}}), word(n, {{'Y', a}, {'Y', b}}, -1)}};
    const std::vector<CliffordGate> one{g};
    for (const auto& [in, want] : rules) {
      PauliString got = in;
      conjugate(got, g);
      t.expect(got == want, fmt::format("bond {}: {} -> {}", i, in.str(), got.str()));
      t.expect(oracle::conjugation_holds(in, got, one), fmt::format("bond {}: dense disagrees on {}", i, in.str()));
      ++rule_count;
    }
  }
  if (!t.ok()) return {false, t.failures()};
  return {true, fmt::format("{} encoder images and {} single-gate rules exact, each image confirmed densely; "
                            "Z12 -> {} carries the minus sign of the k=N check form ({} stated-sign conflict)",
                            images, rule_count, image("Z12", code).str(), sign_conflicts)};
}

// ---------------------------------------------------------------------------
// 2. Check and logical closed forms

Outcome closed_forms() {
  Tally t;
  std::size_t minus_signs = 0, two_round_checks = 0;
  for (std::size_t n : {10, 12, 14}) {
    const auto one = CodeInstance::build(n, Boundary::Open, 1);
    for (std::size_t k = 2; k <= n; ++k) {
      t.expect(one.check(k) == oracle::one_round_check(k, n), fmt::format("n={} check {} = {}", n, k, one.check(k).str()));
    }
    t.expect(one.logical_x()[0].str() == "Z1 Z2 X3", fmt::format("n={} X_L = {}", n, one.logical_x()[0].str()));
    t.expect(one.logical_z()[0].str() == "X1 Z2 X3", fmt::format("n={} Z_L = {}", n, one.logical_z()[0].str()));

    const auto two = CodeInstance::build(n, Boundary::Periodic, 2, {}, {});
    const auto psi = oracle::apply_gates(two.schedule(), oracle::basis_vector(n, 0), n);
    for (std::size_t k = 1; k <= n; ++k) {
      const auto& c = two.check(k);
      t.expect(c.same_letters(oracle::two_round_periodic_check_letters(k, n)), fmt::format("n={} two-round check {} = {}", n, k, c.str()));
      // The sign is fixed by the encoded state itself.
      t.expect(std::abs(oracle::expectation(psi, c).real() - 1.0) < 1e-10, fmt::format("n={} check {} does not fix the state", n, k));
      minus_signs += c.sign() < 0;
      ++two_round_checks;
    }
  }
  if (!t.ok()) return {false, t.failures()};
  return {true, fmt::format("one-round checks with -Y(N-2) Z(N-1) Y(N) and logicals Z1 Z2 X3 / X1 Z2 X3 exact for N=10,12,14; "
                            "two-round periodic letters exact, {}/{} carry sign -1 and every sign fixes the dense encoded state",
                            minus_signs, two_round_checks)};
}

// ---------------------------------------------------------------------------
// 3. Majorana tracking

std::vector<std::vector<std::size_t>> stated_cycles(std::size_t n, Boundary b) {
  std::vector<std::size_t> odd, even;
  for (std::size_t s = 1; s <= n; s += 2) odd.push_back(s);
  for (std::size_t s = n - (n % 2 == 0 ? 0 : 1); s >= 2; s -= 2) even.push_back(s);
  if (b == Boundary::Periodic) return {odd, even};
  odd.insert(odd.end(), even.begin(), even.end());
  return {odd};
}

Outcome majorana_tracking() {
  Tally t;
  std::size_t modes = 0, pairs = 0;
  for (std::size_t n = 3; n <= 16; ++n) {
    for (auto b : {Boundary::Open, Boundary::Periodic}) {
      const auto sigma = encoder_permutation(n, b);
      t.expect(sigma == SitePermutation::from_cycles(n, stated_cycles(n, b)),
               fmt::format("n={} {} sigma = {}", n, to_string(b), sigma.str()));
    }
  }
  for (std::size_t n = 4; n <= 16; n += 2) {
    for (auto b : {Boundary::Open, Boundary::Periodic}) {
      const auto sigma = encoder_permutation(n, b);
      for (std::size_t rounds = 1; rounds <= 3; ++rounds) {
        const auto code = CodeInstance::build(n, b, rounds, {}, {});
        const auto sigma_r = sigma.power(rounds);
        for (std::size_t s = 1; s <= n; ++s) {
          for (auto m : {MajoranaMode::gamma(s), MajoranaMode::xi(s)}) {
            const auto tracked = evolve_mode(m, code);
            const auto conjugated = conjugate_by_encoder(mode_to_pauli(m, n), code);
            t.expect(tracked.to_pauli() == conjugated, fmt::format("n={} r={} {}", n, rounds, m.str()));
            if (n <= 6) {
              const auto dense = oracle::conjugate_dense(mode_to_pauli(m, n), code.schedule());
              t.expect(dense && *dense == conjugated, fmt::format("n={} r={} {} dense", n, rounds, m.str()));
            }
            ++modes;
          }
          if (b == Boundary::Open) {
            // gamma_s -> +-gamma_{sigma^r(s)} and xi_s -> +-xi_s.
            const auto g = evolve_mode(MajoranaMode::gamma(s), code).single_mode();
            const auto x = evolve_mode(MajoranaMode::xi(s), code).single_mode();
            t.expect(g && g->kind == ModeKind::Gamma && g->site == sigma_r(s), fmt::format("n={} r={} gamma{} image", n, rounds, s));
            t.expect(x && x->kind == ModeKind::Xi && x->site == s, fmt::format("n={} r={} xi{} image", n, rounds, s));
          } else {
            // On the ring the wrap bond carries the fermion parity, so only
            // the parity-even pairs follow the cycles: check s is
            // i gamma_{sigma^r(s)} xi_s, possibly times the parity string.
            auto pair = pauli_mul(mode_to_pauli(MajoranaMode::gamma(sigma_r(s)), n), mode_to_pauli(MajoranaMode::xi(s), n));
            PauliString parity(n);
            for (std::size_t q = 1; q <= n; ++q) parity.set(q, Pauli::Z);
            const auto& check = code.check(s);
            t.expect(check.same_letters(pair) || check.same_letters(pauli_mul(parity, pair)),
                     fmt::format("n={} r={} check {} = {} is not a cycle pair", n, rounds, s, check.str()));
            ++pairs;
          }
        }
      }
    }
  }
  if (!t.ok()) return {false, t.failures()};
  return {true, fmt::format("{} mode evolutions equal Pauli conjugation (N=4..16, both variants, 1-3 rounds); "
                            "open chains permute gamma by sigma^r, {} ring checks are cycle pairs; "
                            "both cycle forms match for N=3..16; N=10: {} and {}",
                            modes, pairs, encoder_permutation(10, Boundary::Open).str(), encoder_permutation(10, Boundary::Periodic).str())};
}

// ---------------------------------------------------------------------------
// 4. Distance-3 decoding

std::vector<PauliString> single_errors(std::size_t n) {
  std::vector<PauliString> out;
  for (std::size_t s = 1; s <= n; ++s) {
    for (auto p : {Pauli::X, Pauli::Y, Pauli::Z}) out.push_back(PauliString::single(n, p, s));
  }
  return out;
}

/// Pairs of distinct single errors with equal (or trivial) syndromes.
std::vector<std::pair<std::string, std::string>> collisions(const std::vector<PauliString>& errors,
                                                             const std::vector<Syndrome>& syndromes) {
  std::vector<std::pair<std::string, std::string>> out;
  for (std::size_t a = 0; a < errors.size(); ++a) {
    if (syndromes[a].is_trivial()) out.emplace_back(errors[a].str(), "I");
    for (std::size_t b = a + 1; b < errors.size(); ++b) {
      if (syndromes[a] == syndromes[b]) out.emplace_back(errors[a].str(), errors[b].str());
    }
  }
  return out;
}

Outcome distance_three() {
  Tally t;
  std::size_t pipelines = 0;
  RandomStream rng(4);
  for (std::size_t n : {10, 12}) {
    const auto errors = single_errors(n);
    const auto full = CodeInstance::build(n, Boundary::Periodic, 2, {}, {});
    std::vector<Syndrome> syn;
    for (const auto& e : errors) syn.push_back(syndrome_of(e, full));
    for (std::size_t c = 1; c <= n; ++c) {
      std::vector<Syndrome> reduced;
      for (const auto& s : syn) reduced.push_back(s.without(c));
      t.expect(collisions(errors, reduced).empty(), fmt::format("n={} without check {} collides", n, c));
    }
    // Logical qubit on each site: measure, decode, correct.
    for (std::size_t site = 1; site <= n; ++site) {
      const auto code = CodeInstance::build(n, Boundary::Periodic, 2, {}, {site});
      const auto clean = code.encoded_frame();
      for (const auto& e : errors) {
        auto f = clean;
        f.apply_pauli(e);
        Syndrome s{code.check_indices(), {}};
        for (const auto& c : code.checks()) {
          s.bits.push_back(f.measure(c, rng).outcome < 0 ? 1 : 0);
        }
        const auto d = decode_single_error(s, code);
        t.expect(d.status == DecodeStatus::Corrected, fmt::format("n={} logical {} error {} not corrected", n, site, e.str()));
        if (d.status != DecodeStatus::Corrected) continue;
        f.apply_pauli(d.correction);
        for (const auto& c : code.checks()) t.expect(f.expectation(c) == 1, fmt::format("check {} after {}", c.str(), e.str()));
        t.expect(f.equivalent(f.logical_x()[0], clean.logical_x()[0]) && f.equivalent(f.logical_z()[0], clean.logical_z()[0]),
                 fmt::format("n={} logical moved by {}", n, e.str()));
        ++pipelines;
      }
    }
  }

  // N = 8: Z_k and Z_{k+4} share a syndrome for every logical placement.
  std::size_t eight_colliding_placements = 0;
  std::string eight_example;
  for (std::size_t site = 1; site <= 8; ++site) {
    const auto code = CodeInstance::build(8, Boundary::Periodic, 2, {}, {site});
    const auto errors = single_errors(8);
    std::vector<Syndrome> syn;
    for (const auto& e : errors) syn.push_back(syndrome_of(e, code));
    const auto hits = collisions(errors, syn);
    eight_colliding_placements += !hits.empty();
    if (site == 1 && !hits.empty()) eight_example = hits.front().first + "~" + hits.front().second;
  }
  t.expect(eight_colliding_placements == 8, "N=8 has a placement without collisions");

  // N = 6: all checks separate the errors, but not once the logical
  // site's column is gone.
  std::size_t six_colliding_placements = 0;
  std::string six_example;
  {
    const auto errors = single_errors(6);
    std::vector<Syndrome> all;
    const auto full = CodeInstance::build(6, Boundary::Periodic, 2, {}, {});
    for (const auto& e : errors) all.push_back(syndrome_of(e, full));
    t.expect(collisions(errors, all).empty(), "N=6 collides even with every check");
    for (std::size_t site = 1; site <= 6; ++site) {
      const auto code = CodeInstance::build(6, Boundary::Periodic, 2, {}, {site});
      std::vector<Syndrome> syn;
      for (const auto& e : errors) syn.push_back(syndrome_of(e, code));
      const auto hits = collisions(errors, syn);
      six_colliding_placements += !hits.empty();
      if (site == 1 && !hits.empty()) six_example = hits.front().first + "~" + hits.front().second;
    }
  }
  t.expect(six_colliding_placements == 6, "N=6 has a placement without collisions");
  if (!t.ok()) return {false, t.failures()};
  return {true, fmt::format("N=10,12: 3N syndromes distinct with any one column removed, {} measure-decode-correct runs restore "
                            "all checks and both logicals; N=8 collides for every logical site (e.g. {}); N=6 separates all errors "
                            "with every check but collides for every logical site (e.g. {})",
                            pipelines, eight_example, six_example)};
}

// ---------------------------------------------------------------------------
// 5. Z-error correction at N = 12

Outcome z_correction() {
  const std::size_t n = 12;
  const auto code = CodeInstance::build(n, Boundary::Open, 1);
  const auto clean = code.encoded_frame();
  Tally t;
  std::size_t corrected = 0, ties = 0, sets = 0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    const auto w = static_cast<std::size_t>(__builtin_popcount(mask));
    if (w > n / 2) continue;
    ++sets;
    PauliString e(n);
    for (std::size_t s = 0; s < n; ++s) {
      if ((mask >> s) & 1u) e.set(s + 1, Pauli::Z);
    }
    const auto d = decode_z_errors(syndrome_of(e, code), code);
    if (w == n / 2) {
      t.expect(d.status == ZDecodeStatus::Tie, fmt::format("{} not flagged as tie", e.str()));
      ties += d.status == ZDecodeStatus::Tie;
      continue;
    }
    t.expect(d.status == ZDecodeStatus::Corrected && d.correction.same_letters(e), fmt::format("{} decoded as {}", e.str(), d.correction.str()));
    auto f = clean;
    f.apply_pauli(e);
    f.apply_pauli(d.correction);
    bool restored = f.equivalent(f.logical_x()[0], clean.logical_x()[0]) && f.equivalent(f.logical_z()[0], clean.logical_z()[0]);
    for (const auto& c : code.checks()) restored = restored && f.expectation(c) == 1;
    t.expect(restored, fmt::format("{} left the code space changed", e.str()));
    corrected += restored;
  }
  if (!t.ok()) return {false, t.failures()};
  return {true, fmt::format("{} Z-error sets of weight <= 6: {} of weight < 6 exactly corrected, {} of weight 6 flagged as ties",
                            sets, corrected, ties)};
}

// ---------------------------------------------------------------------------
// 6. Teleportation

Outcome teleportation() {
  Tally t;
  const auto eight = plan_teleport(8, 1, 8);
  t.expect(eight.transfer_logical.str() == "Z1 Z2 Z4 Z6 X8", "N=8 transfer logical " + eight.transfer_logical.str());
  RandomStream rng(6);
  double worst = 1.0;
  std::size_t branches = 0, tableau_pairs = 0;
  std::map<std::size_t, std::size_t> distinct;
  for (std::size_t n : {4, 6, 8, 10}) {
    const auto plan = plan_teleport(n, 1, n);
    std::set<std::string> seen;
    for (int b = 0; b < 200; ++b) {
      const Amplitude alpha(rng.uniform() - 0.5, rng.uniform() - 0.5);
      const Amplitude beta(rng.uniform() - 0.5, rng.uniform() - 0.5);
      const auto r = run_teleport(plan, alpha, beta, rng, TeleportBackend::Oracle);
      worst = std::min(worst, r.fidelity);
      t.expect(std::abs(r.fidelity - 1.0) <= 1e-10, fmt::format("n={} branch {} fidelity {}", n, b, r.fidelity));
      std::string key;
      for (auto [site, o] : r.outcomes) key += o > 0 ? '+' : '-';
      seen.insert(key);
      ++branches;
    }
    distinct[n] = seen.size();
    // Every source/target pair on the tableau backend.
    for (std::size_t i = 1; i <= n; ++i) {
      for (std::size_t j = 1; j <= n; ++j) {
        if (i == j) continue;
        const auto r = run_teleport(plan_teleport(n, i, j), 1, 0, rng, TeleportBackend::Tableau);
        t.expect(r.fidelity == 1.0, fmt::format("n={} {}->{} tableau", n, i, j));
        ++tableau_pairs;
      }
    }
  }
  if (!t.ok()) return {false, t.failures()};
  return {true, fmt::format("N=8 transfer logical {}; {} random branches (distinct outcome patterns N=4:{} 6:{} 8:{} 10:{}) "
                            "with min fidelity 1-{:.1e}; {} source/target pairs exact on the tableau",
                            eight.transfer_logical.str(), branches, distinct[4], distinct[6], distinct[8], distinct[10],
                            1.0 - worst, tableau_pairs)};
}

// ---------------------------------------------------------------------------
// 7. Tableau versus dense oracle on random schedules

struct Op {
  int kind;  // 0 TFIM, 1 Hadamard, 2 Z measurement
  std::size_t site;
};

std::vector<Op> random_schedule(std::size_t n, RandomStream& rng) {
  std::vector<Op> ops(24);
  for (auto& op : ops) {
    const auto r = rng.below(8);
    op.kind = r < 4 ? 0 : r < 6 ? 1 : 2;
    op.site = 1 + rng.below(n);
  }
  return ops;
}

/// Probability of every full measurement record, by exhaustive branching.
void branch_probabilities(const std::vector<Op>& ops, std::size_t pos, oracle::Vec psi, std::size_t n, double prob,
                          const std::string& record, std::map<std::string, double>& out) {
  for (; pos < ops.size(); ++pos) {
    const auto& op = ops[pos];
    if (op.kind == 0) {
      psi = oracle::apply_gate(CliffordGate::tfim(op.site, n), psi, n);
    } else if (op.kind == 1) {
      psi = oracle::apply_gate(CliffordGate::hadamard(op.site), psi, n);
    } else {
      for (int o : {+1, -1}) {
        auto branch = psi;
        const double p = oracle::project_z(branch, op.site, o);
        if (p > 1e-12) branch_probabilities(ops, pos + 1, branch, n, prob * p, record + (o > 0 ? '+' : '-'), out);
      }
      return;
    }
  }
  out[record] += prob;
}

Outcome oracle_equivalence() {
  Tally t;
  RandomStream rng(7);
  std::size_t deterministic = 0, random = 0;
  std::vector<std::pair<std::size_t, std::vector<Op>>> spot;
  for (int s = 0; s < 1000; ++s) {
    const std::size_t n = 2 + rng.below(7);
    const auto ops = random_schedule(n, rng);
    auto f = StabilizerFrame::product_state(n);
    auto psi = oracle::basis_vector(n, 0);
    auto dense = DenseState(n);
    bool has_random = false;
    for (const auto& op : ops) {
      if (op.kind < 2) {
        const auto g = op.kind == 0 ? CliffordGate::tfim(op.site, n) : CliffordGate::hadamard(op.site);
        f.conjugate(g);
        psi = oracle::apply_gate(g, psi, n);
        apply_gate_dense(dense, g);
        continue;
      }
      const auto z = PauliString::single(n, Pauli::Z, op.site);
      const double p_plus = (1.0 + oracle::expectation(psi, z).real()) / 2;
      const auto r = f.measure(z, rng);
      if (r.deterministic) {
        t.expect(std::abs(p_plus - (r.outcome > 0 ? 1.0 : 0.0)) < 1e-10, fmt::format("schedule {}: deterministic Z{} disagrees", s, op.site));
        ++deterministic;
      } else {
        t.expect(std::abs(p_plus - 0.5) < 1e-10, fmt::format("schedule {}: random Z{} has p={}", s, op.site, p_plus));
        has_random = true;
        ++random;
      }
      t.expect(std::abs(plus_probability(dense, z) - p_plus) < 1e-10, fmt::format("schedule {}: library dense state drifted", s));
      oracle::project_z(psi, op.site, r.outcome);
      // Keep the library dense state on the same branch.
      for (std::size_t b = 0; b < psi.size(); ++b) dense[b] = psi[b];
    }
    if (has_random && spot.size() < 20) spot.emplace_back(n, ops);
  }

  // Spot checks: distribution of full measurement records over 10^4 shots.
  const std::size_t shots = 10000;
  double worst_z = 0;
  for (std::size_t idx = 0; idx < spot.size(); ++idx) {
    const auto& [n, ops] = spot[idx];
    std::map<std::string, double> expected;
    branch_probabilities(ops, 0, oracle::basis_vector(n, 0), n, 1.0, "", expected);
    std::map<std::string, std::size_t> counts;
    for (std::size_t shot = 0; shot < shots; ++shot) {
      RandomStream shot_rng(trial_seed(idx, shot));
      auto f = StabilizerFrame::product_state(n);
      std::string record;
      for (const auto& op : ops) {
        if (op.kind == 0) f.conjugate(CliffordGate::tfim(op.site, n));
        if (op.kind == 1) f.conjugate(CliffordGate::hadamard(op.site));
        if (op.kind == 2) record += f.measure(PauliString::single(n, Pauli::Z, op.site), shot_rng).outcome > 0 ? '+' : '-';
      }
      ++counts[record];
    }
    for (const auto& [record, c] : counts) t.expect(expected.count(record) > 0, fmt::format("spot {}: impossible record {}", idx, record));
    for (const auto& [record, p] : expected) {
      const double mean = shots * p;
      const double sd = std::sqrt(shots * p * (1 - p));
      const double dev = std::abs(static_cast<double>(counts[record]) - mean);
      if (sd > 0) worst_z = std::max(worst_z, dev / sd);
      t.expect(dev <= 5 * sd + 1e-9, fmt::format("spot {}: record {} seen {} times, expected {:.1f}", idx, record, counts[record], mean));
    }
  }
  t.expect(spot.size() == 20, "fewer than 20 schedules with random outcomes");
  if (!t.ok()) return {false, t.failures()};
  return {true, fmt::format("1000 schedules (N=2..8): {} deterministic outcomes exact, {} random outcomes at p=1/2; "
                            "20 spot checks x 10^4 shots, worst record deviation {:.2f} sigma",
                            deterministic, random, worst_z)};
}

// ---------------------------------------------------------------------------
// 8. Parity-check state

Outcome parity_check_state() {
  Tally t;
  RandomStream rng(8);
  for (std::size_t n : {4, 6, 8}) {
    const auto code = CodeInstance::build(n, Boundary::Open, 1);
    for (int rep = 0; rep < 5; ++rep) {
      Amplitude alpha(rng.uniform() - 0.5, rng.uniform() - 0.5);
      Amplitude beta(rng.uniform() - 0.5, rng.uniform() - 0.5);
      const double norm = std::sqrt(std::norm(alpha) + std::norm(beta));
      alpha /= norm;
      beta /= norm;
      auto state = DenseState::product(n, alpha, beta, 1);
      apply_gates_dense(state, code.schedule());
      oracle::Vec v(std::size_t{1} << n);
      v[0] = alpha;
      v[1] = beta;
      v = oracle::apply_gates(code.schedule(), v, n);
      const double scale = 1.0 / std::sqrt(static_cast<double>(std::size_t{1} << (n - 1)));
      for (std::size_t s = 0; s < v.size(); ++s) {
        const bool odd = __builtin_popcountll(s) % 2 == 1;
        const Amplitude coeff = odd ? beta : alpha;
        // amplitude = coeff * eta_s / sqrt(2^(N-1)) with eta_s = +-1
        const Amplitude eta = state[s] / (coeff * scale);
        t.expect(std::abs(std::abs(eta.real()) - 1.0) < 1e-10 && std::abs(eta.imag()) < 1e-10,
                 fmt::format("n={} basis {} amplitude {}{:+}i", n, s, state[s].real(), state[s].imag()));
        t.expect(std::abs(state[s] - v[s]) < 1e-10, fmt::format("n={} basis {} differs from matrix oracle", n, s));
      }
    }
  }
  if (!t.ok()) return {false, t.failures()};
  return {true, fmt::format("N=4,6,8, 5 random (alpha, beta) each: every even string has amplitude +-alpha/sqrt(2^(N-1)), "
                            "every odd string +-beta/sqrt(2^(N-1)) ({} amplitude checks)", t.checks())};
}

// ---------------------------------------------------------------------------
// 9. Depth scaling

ErasureExperiment fig_experiment(std::size_t n, double p_e) {
  ErasureExperiment exp;
  exp.n = n;
  exp.boundary = Boundary::Periodic;
  exp.p_h = 0.08;
  exp.logical_fraction = 0.5;
  exp.erasure = {ErasureModel::Bernoulli, p_e, 0};
  return exp;
}

Outcome depth_scaling() {
  const std::vector<std::size_t> ns{16, 32, 64, 128};
  const auto fit = depth_to_target(fig_experiment(0, 0.04), ns, 0.9, 100, 16, 9);
  std::string depths;
  for (const auto& p : fit.points) {
    depths += fmt::format("{}{}:{}", depths.empty() ? "" : " ", p.n, p.depth ? std::to_string(*p.depth) : std::string("censored"));
  }
  const bool pass = fit.valid && fit.r_squared > 0.9;
  return {pass, fmt::format("p_E=0.04, p_H=0.08, periodic, f=1/2, 100 trials, seed 9: depths {}; t = {:.3f} ln N + {:.3f}, "
                            "R^2 = {:.4f} (needs > 0.9)",
                            depths, fit.slope, fit.intercept, fit.r_squared)};
}

// ---------------------------------------------------------------------------
// 10. Recovery curves

Outcome recovery_curves() {
  const std::vector<std::size_t> rounds{2, 4, 6};
  std::vector<double> grid;
  for (int i = 0; i <= 10; ++i) grid.push_back(0.05 * i);
  const auto curve = recovery_curve(fig_experiment(64, 0), rounds, grid, 100, 10);
  std::map<std::pair<std::size_t, std::size_t>, CurvePoint> at;
  for (const auto& p : curve.points) {
    const auto g = static_cast<std::size_t>(std::lround(p.p_e / 0.05));
    at[{p.rounds, g}] = p;
  }
  Tally t;
  for (std::size_t r : rounds) {
    for (std::size_t a = 0; a < grid.size(); ++a) {
      for (std::size_t b = a + 1; b < grid.size(); ++b) {
        const auto& lo = at[{r, a}];
        const auto& hi = at[{r, b}];
        t.expect(hi.ci.low <= lo.ci.high, fmt::format("t={}: success rises from {} at p_E={} to {} at p_E={}", 2 * r, lo.mean, lo.p_e, hi.mean, hi.p_e));
      }
    }
  }
  for (std::size_t g = 0; g < grid.size(); ++g) {
    for (std::size_t a = 0; a < rounds.size(); ++a) {
      for (std::size_t b = a + 1; b < rounds.size(); ++b) {
        const auto& shallow = at[{rounds[a], g}];
        const auto& deep = at[{rounds[b], g}];
        t.expect(deep.ci.high >= shallow.ci.low, fmt::format("p_E={}: t={} ({}) below t={} ({})", grid[g], deep.depth, deep.mean, shallow.depth, shallow.mean));
      }
    }
  }
  std::string summary;
  for (double pe : {0.1, 0.2, 0.3}) {
    const auto g = static_cast<std::size_t>(std::lround(pe / 0.05));
    summary += fmt::format(" p_E={:.1f}: {:.2f}/{:.2f}/{:.2f}", pe, at[{2, g}].mean, at[{4, g}].mean, at[{6, g}].mean);
  }
  if (!t.ok()) return {false, t.failures()};
  return {true, fmt::format("N=64, t=4/8/12, 11 p_E points x 100 trials: non-increasing in p_E and ordered by depth within 95% CIs;"
                            "{}",
                            summary)};
}

// ---------------------------------------------------------------------------
// 11. Erasure solver against group search

Outcome erasure_solver() {
  Tally t;
  RandomStream rng(11);
  std::size_t codes = 0, correctable = 0;
  for (std::size_t n : {4, 6, 8, 10}) {
    std::vector<SiteSet> subsets{{}};
    for (std::size_t s = 1; s <= n; ++s) {
      const std::size_t existing = subsets.size();
      for (std::size_t i = 0; i < existing; ++i) {
        if (subsets[i].size() < 4) {
          auto next = subsets[i];
          next.push_back(s);
          subsets.push_back(next);
        }
      }
    }
    for (auto b : {Boundary::Open, Boundary::Periodic}) {
      for (std::size_t rounds = 1; rounds <= 3; ++rounds) {
        for (double p_h : {0.0, 0.5}) {
          for (std::size_t k : {std::size_t{1}, n / 2}) {
            const auto layers = sample_hadamard_layers(n, rounds, p_h, rng);
            const auto code = CodeInstance::build(n, b, rounds, layers, default_logical_sites(n, k));
            const auto frame = code.encoded_frame();
            const oracle::ErasureBruteForce brute(frame.stabilizers(), n);
            for (const auto& e : subsets) {
              const bool fast = erasure_correctable(frame, e);
              const bool slow = brute.correctable(e);
              t.expect(fast == slow, fmt::format("n={} r={} k={} erasure of {} sites: solver {} search {}", n, rounds, k, e.size(), fast, slow));
              correctable += slow;
            }
            ++codes;
          }
        }
      }
    }
  }
  if (!t.ok()) return {false, t.failures()};
  return {true, fmt::format("{} codes (N=4..10, both variants, 1-3 rounds, p_H 0 or 1/2, 1 or N/2 logicals): {} erasure sets "
                            "of size <= 4 agree with exhaustive search ({} correctable)",
                            codes, t.checks(), correctable)};
}

// ---------------------------------------------------------------------------
// 12. Reproducibility

std::string run_capture(const std::string& command) {
  std::string out;
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) return "<popen failed>";
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
  const int status = pclose(pipe);
  return out + fmt::format("<exit {}>", status);
}

std::string serialize(const RecoveryCurve& c) {
  std::string s;
  for (const auto& p : c.points) s += fmt::format("{} {} {} {}\n", p.rounds, p.p_e, p.successes, p.trials);
  return s;
}

std::string serialize(const ScalingFit& f) {
  std::string s = fmt::format("{} {} {}\n", f.slope, f.intercept, f.r_squared);
  for (const auto& p : f.points) s += fmt::format("{} {} {}\n", p.n, p.depth.value_or(0), p.success);
  return s;
}

Outcome reproducibility(const std::string& cli) {
  Tally t;
  const auto exp = fig_experiment(32, 0.1);
  const std::vector<std::size_t> rounds{1, 3};
  const std::vector<double> grid{0.05, 0.2};
  const auto c1 = serialize(recovery_curve(exp, rounds, grid, 40, 5, Execution::Parallel));
  t.expect(c1 == serialize(recovery_curve(exp, rounds, grid, 40, 5, Execution::Parallel)), "recovery curve rerun differs");
  t.expect(c1 == serialize(recovery_curve(exp, rounds, grid, 40, 5, Execution::Serial)), "recovery curve serial differs");
  const std::vector<std::size_t> ns{16, 32};
  const auto f1 = serialize(depth_to_target(exp, ns, 0.5, 30, 6, 2));
  t.expect(f1 == serialize(depth_to_target(exp, ns, 0.5, 30, 6, 2, Execution::Serial)), "depth scaling serial differs");
  t.expect(sweep_success_counts(exp, 4, 50, 3, Execution::Serial) == sweep_success_counts(exp, 4, 50, 3, Execution::Parallel),
           "sweep counts serial/parallel differ");

  std::size_t cli_runs = 0;
  if (!cli.empty()) {
    const std::vector<std::string> commands{
        "ops --n 10 --rounds 2 --variant periodic --ph 0.5 --seed 4",
        "decode --n 10 --error Y4",
        "teleport --n 6 --trials 20 --seed 5",
        "stats --n 16 --rounds 3 --trials 10 --seed 6",
        "recovery-curve --n 16 --trials 20 --seed 7 --format jsonl",
        "depth-scaling --n 16,32 --trials 20 --max-rounds 6 --seed 8",
    };
    for (const auto& c : commands) {
      const auto a = run_capture("'" + cli + "' " + c + " 2>&1");
      const auto b = run_capture("'" + cli + "' " + c + " 2>&1");
      t.expect(a == b, "CLI output differs between runs: " + c);
      t.expect(a.find("<exit 0>") != std::string::npos, "CLI failed: " + c);
      cli_runs += 2;
    }
  }
  if (!t.ok()) return {false, t.failures()};
  return {true, fmt::format("curves, depth fits and sweep counts identical across reruns and serial/OpenMP execution; "
                            "{} CLI runs byte-identical in pairs{}",
                            cli_runs, cli.empty() ? " (no --cli given)" : "")};
}

struct Criterion {
  int id;
  const char* name;
  double limit_seconds;
  std::function<Outcome()> run;
};

}  // namespace
}  // namespace tfimqec

int main(int argc, char** argv) {
  using namespace tfimqec;
  std::set<int> selected;
  std::string cli;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--criterion" && i + 1 < argc) {
      selected.insert(std::stoi(argv[++i]));
    } else if (arg == "--cli" && i + 1 < argc) {
      cli = argv[++i];
    } else {
      fmt::print(stderr, "usage: {} [--criterion N]... [--cli PATH]\n", argv[0]);
      return 2;
    }
  }

  const std::vector<Criterion> criteria{
      {1, "conjugation-tables", 1, conjugation_tables},
      {2, "closed-forms", 1, closed_forms},
      {3, "majorana-tracking", 5, majorana_tracking},
      {4, "distance-three", 5, distance_three},
      {5, "z-error-correction", 30, z_correction},
      {6, "teleportation", 30, teleportation},
      {7, "oracle-equivalence", 120, oracle_equivalence},
      {8, "parity-check-state", 1, parity_check_state},
      {9, "depth-scaling", 600, depth_scaling},
      {10, "recovery-curves", 300, recovery_curves},
      {11, "erasure-solver", 60, erasure_solver},
      {12, "reproducibility", 600, [&] { return reproducibility(cli); }},
  };

  int failed = 0, ran = 0;
  for (const auto& c : criteria) {
    if (!selected.empty() && !selected.count(c.id)) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.limit_seconds) {
      o.pass = false;
      o.detail += fmt::format(" [time limit {} s exceeded]", c.limit_seconds);
    }
    fmt::print("{} {:2d} {:<20} {:7.2f}s/{:g}s  {}\n", o.pass ? "PASS" : "FAIL", c.id, c.name, secs, c.limit_seconds, o.detail);
    std::fflush(stdout);
    failed += !o.pass;
    ++ran;
  }
  fmt::print("{}/{} criteria passed\n", ran - failed, ran);
  return failed ? 1 : 0;
}
