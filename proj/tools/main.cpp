#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <fstream>
#include <functional>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <fmt/core.h>

#include "CLI11.hpp"
#include "report.hpp"
#include "tfimqec/decoders.hpp"
#include "tfimqec/experiments.hpp"
#include "tfimqec/majorana.hpp"
#include "tfimqec/tfim_code.hpp"

using tfimqec::cli::Format;
using tfimqec::cli::Report;
using json = nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitDecode = 3;
constexpr int kExitSelftest = 1;

struct Output {
  std::string format = "csv";
  std::string path;
};

struct RunResult {
  Report report;
  int exit_code = kExitOk;
};

void add_output_options(CLI::App& cmd, Output& out) {
  cmd.add_option("--format", out.format, "Output format")
      ->check(CLI::IsMember({"csv", "jsonl"}))
      ->capture_default_str();
  cmd.add_option("--out", out.path, "Output file (default: standard output)");
}

json site_list(const std::vector<std::size_t>& sites) {
  json out = json::array();
  for (std::size_t s : sites) out.push_back(s);
  return out;
}

std::string join_sites(const std::vector<std::size_t>& sites) {
  std::string out;
  for (std::size_t s : sites) out += (out.empty() ? "" : " ") + std::to_string(s);
  return out;
}

// ---------------------------------------------------------------------------

struct OpsArgs {
  std::size_t n = 10;
  std::string variant = "open";
  std::size_t rounds = 1;
  std::vector<std::size_t> logical{1};
  double ph = 0.0;
  std::uint64_t seed = 1;
};

RunResult run_ops(const OpsArgs& a) {
  const tfimqec::Boundary boundary = tfimqec::parse_boundary(a.variant);
  tfimqec::RandomStream rng(a.seed);
  std::vector<tfimqec::SiteSet> layers = tfimqec::sample_hadamard_layers(a.n, a.rounds, a.ph, rng);
  const auto code = tfimqec::CodeInstance::build(a.n, boundary, a.rounds, layers, a.logical);

  RunResult r{Report("ops")};
  r.report.config("n", a.n);
  r.report.config("variant", a.variant);
  r.report.config("rounds", a.rounds);
  r.report.config("logical", site_list(a.logical));
  r.report.config("ph", a.ph);
  r.report.config("seed", a.seed);
  r.report.columns({"kind", "index", "operator"});
  for (std::size_t i = 0; i < code.checks().size(); ++i) {
    r.report.row({"check", code.check_indices()[i], code.checks()[i].str()});
  }
  for (std::size_t j = 0; j < code.logical_sites().size(); ++j) {
    r.report.row({"logical_x", code.logical_sites()[j], code.logical_x()[j].str()});
    r.report.row({"logical_z", code.logical_sites()[j], code.logical_z()[j].str()});
  }
  return r;
}

// ---------------------------------------------------------------------------

struct DecodeArgs {
  std::size_t n = 10;
  std::string variant = "periodic";
  std::size_t rounds = 2;
  std::vector<std::size_t> logical{1};
  std::string error;
  std::string decoder = "single";
};

RunResult run_decode(const DecodeArgs& a) {
  const tfimqec::Boundary boundary = tfimqec::parse_boundary(a.variant);
  const auto code = tfimqec::CodeInstance::build(a.n, boundary, a.rounds, {}, a.logical);
  const tfimqec::PauliString error = tfimqec::PauliString::parse(a.error, a.n);
  const tfimqec::Syndrome syndrome = tfimqec::syndrome_of(error, code);

  RunResult r{Report("decode")};
  r.report.config("n", a.n);
  r.report.config("variant", a.variant);
  r.report.config("rounds", a.rounds);
  r.report.config("logical", site_list(a.logical));
  r.report.config("error", a.error);
  r.report.config("decoder", a.decoder);
  r.report.columns({"error", "syndrome", "status", "correction", "matches"});

  std::string status;
  json correction;
  std::string matches;
  if (a.decoder == "single") {
    const tfimqec::SingleErrorDecode d = tfimqec::decode_single_error(syndrome, code);
    status = std::string(to_string(d.status));
    if (d.status == tfimqec::DecodeStatus::Corrected) correction = d.correction.str();
    for (const auto& m : d.matches) matches += (matches.empty() ? "" : ";") + m.str();
    r.exit_code = d.status == tfimqec::DecodeStatus::Corrected ? kExitOk : kExitDecode;
  } else {
    const tfimqec::ZDecode d = tfimqec::decode_z_errors(syndrome, code);
    status = std::string(to_string(d.status));
    if (d.status == tfimqec::ZDecodeStatus::Corrected) correction = d.correction.str();
    r.exit_code = d.status == tfimqec::ZDecodeStatus::Corrected ? kExitOk : kExitDecode;
  }
  r.report.row({error.str(), syndrome.str(), status, correction, matches});
  return r;
}

// ---------------------------------------------------------------------------

struct TeleportArgs {
  std::size_t n = 8;
  std::size_t source = 1;
  std::size_t target = 0;  // 0 selects n
  std::size_t trials = 200;
  std::uint64_t seed = 1;
  std::string backend = "oracle";
};

RunResult run_teleport(const TeleportArgs& a) {
  const std::size_t target = a.target == 0 ? a.n : a.target;
  const tfimqec::TeleportPlan plan = tfimqec::plan_teleport(a.n, a.source, target);
  const auto backend = a.backend == "oracle" ? tfimqec::TeleportBackend::Oracle : tfimqec::TeleportBackend::Tableau;

  RunResult r{Report("teleport")};
  r.report.config("n", a.n);
  r.report.config("source", a.source);
  r.report.config("target", target);
  r.report.config("trials", a.trials);
  r.report.config("seed", a.seed);
  r.report.config("backend", a.backend);
  r.report.summary("transfer_logical", plan.transfer_logical.str());
  r.report.summary("check_chain", join_sites(plan.check_chain));
  r.report.summary("z_parity_sites", join_sites(plan.z_parity_sites));
  r.report.summary("x_parity_sites", join_sites(plan.x_parity_sites));
  r.report.columns({"branch", "alpha_re", "alpha_im", "beta_re", "beta_im", "outcomes", "x_correction",
                    "z_correction", "fidelity"});

  double worst = 1.0;
  for (std::size_t b = 0; b < a.trials; ++b) {
    tfimqec::RandomStream rng(tfimqec::trial_seed(a.seed, b));
    const tfimqec::Amplitude alpha{2 * rng.uniform() - 1, 2 * rng.uniform() - 1};
    const tfimqec::Amplitude beta{2 * rng.uniform() - 1, 2 * rng.uniform() - 1};
    const tfimqec::TeleportResult t = tfimqec::run_teleport(plan, alpha, beta, rng, backend);
    std::string outcomes;
    for (const auto& [site, value] : t.outcomes) outcomes += value > 0 ? '+' : '-';
    worst = std::min(worst, t.fidelity);
    r.report.row({b, alpha.real(), alpha.imag(), beta.real(), beta.imag(), outcomes, t.x_correction,
                  t.z_correction, t.fidelity});
  }
  r.report.summary("min_fidelity", worst);
  return r;
}

// ---------------------------------------------------------------------------

struct StatsArgs {
  std::size_t n = 32;
  std::string variant = "periodic";
  std::size_t rounds = 4;
  double ph = 0.5;
  std::size_t trials = 100;
  std::uint64_t seed = 1;
};

RunResult run_stats(const StatsArgs& a) {
  const auto rows = tfimqec::check_support_stats(a.n, a.rounds, a.ph, a.trials, a.seed,
                                                 tfimqec::parse_boundary(a.variant));
  RunResult r{Report("stats")};
  r.report.config("n", a.n);
  r.report.config("variant", a.variant);
  r.report.config("rounds", a.rounds);
  r.report.config("ph", a.ph);
  r.report.config("trials", a.trials);
  r.report.config("seed", a.seed);
  r.report.columns({"rounds", "even_x", "even_y", "even_z", "odd_x", "odd_y", "odd_z", "central_overlap",
                    "central_overlap_variance"});
  for (const auto& row : rows) {
    r.report.row({row.rounds, row.even_site.x, row.even_site.y, row.even_site.z, row.odd_site.x, row.odd_site.y,
                  row.odd_site.z, row.central_overlap, row.central_overlap_variance});
  }
  return r;
}

// ---------------------------------------------------------------------------

struct CurveArgs {
  std::size_t n = 64;
  std::string variant = "periodic";
  std::vector<std::size_t> rounds{2, 4, 6};
  std::vector<double> pe{0.0, 0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.35, 0.4, 0.45, 0.5};
  double ph = 0.08;
  double logical_fraction = 0.5;
  std::size_t trials = 100;
  std::uint64_t seed = 1;
  bool serial = false;
};

RunResult run_curve(const CurveArgs& a) {
  tfimqec::ErasureExperiment exp;
  exp.n = a.n;
  exp.boundary = tfimqec::parse_boundary(a.variant);
  exp.p_h = a.ph;
  exp.logical_fraction = a.logical_fraction;
  const auto execution = a.serial ? tfimqec::Execution::Serial : tfimqec::Execution::Parallel;
  const tfimqec::RecoveryCurve curve = tfimqec::recovery_curve(exp, a.rounds, a.pe, a.trials, a.seed, execution);

  RunResult r{Report("recovery-curve")};
  r.report.config("n", a.n);
  r.report.config("variant", a.variant);
  r.report.config("rounds", a.rounds);
  r.report.config("pe", a.pe);
  r.report.config("ph", a.ph);
  r.report.config("logical-fraction", a.logical_fraction);
  r.report.config("trials", a.trials);
  r.report.config("seed", a.seed);
  r.report.summary("hamming_marker", curve.hamming_marker);
  r.report.columns({"rounds", "depth", "p_e", "trials", "successes", "mean", "ci_low", "ci_high"});
  for (const auto& p : curve.points) {
    r.report.row({p.rounds, p.depth, p.p_e, p.trials, p.successes, p.mean, p.ci.low, p.ci.high});
  }
  return r;
}

// ---------------------------------------------------------------------------

struct ScalingArgs {
  std::vector<std::size_t> n{16, 32, 64, 128};
  std::string variant = "periodic";
  double pe = 0.04;
  std::size_t erasures = 0;  // nonzero selects the fixed-count model
  double ph = 0.08;
  double logical_fraction = 0.5;
  double target = 0.9;
  std::size_t trials = 100;
  std::size_t max_rounds = 16;
  std::uint64_t seed = 9;
  bool serial = false;
};

RunResult run_scaling(const ScalingArgs& a) {
  tfimqec::ErasureExperiment exp;
  exp.boundary = tfimqec::parse_boundary(a.variant);
  exp.p_h = a.ph;
  exp.logical_fraction = a.logical_fraction;
  exp.erasure.p_e = a.pe;
  if (a.erasures > 0) {
    exp.erasure.model = tfimqec::ErasureModel::FixedCount;
    exp.erasure.count = a.erasures;
  }
  const auto execution = a.serial ? tfimqec::Execution::Serial : tfimqec::Execution::Parallel;
  const tfimqec::ScalingFit fit =
      tfimqec::depth_to_target(exp, a.n, a.target, a.trials, a.max_rounds, a.seed, execution);

  RunResult r{Report("depth-scaling")};
  r.report.config("n", a.n);
  r.report.config("variant", a.variant);
  if (a.erasures > 0) {
    r.report.config("erasures", a.erasures);
  } else {
    r.report.config("pe", a.pe);
  }
  r.report.config("ph", a.ph);
  r.report.config("logical-fraction", a.logical_fraction);
  r.report.config("target", a.target);
  r.report.config("trials", a.trials);
  r.report.config("max-rounds", a.max_rounds);
  r.report.config("seed", a.seed);
  r.report.summary("slope", fit.slope);
  r.report.summary("intercept", fit.intercept);
  r.report.summary("r_squared", fit.r_squared);
  r.report.summary("fitted_points", fit.fitted_points);
  r.report.summary("valid", fit.valid);
  r.report.summary("heuristic_constant", fit.heuristic_constant);
  r.report.columns({"n", "depth", "censored", "success"});
  for (const auto& p : fit.points) {
    r.report.row({p.n, p.depth ? json(*p.depth) : json(), !p.depth.has_value(), p.success});
  }
  return r;
}

// ---------------------------------------------------------------------------

RunResult run_selftest() {
  RunResult r{Report("selftest")};
  r.report.columns({"check", "status"});
  bool all = true;
  const auto check = [&](const std::string& name, const std::function<bool()>& body) {
    bool ok = false;
    try {
      ok = body();
    } catch (const std::exception&) {
      ok = false;
    }
    all = all && ok;
    r.report.row({name, ok ? "pass" : "fail"});
  };

  check("open checks n=10", [] {
    const auto code = tfimqec::CodeInstance::build(10, tfimqec::Boundary::Open, 1);
    return code.check(2).str() == "Y1 Y2" && code.check(9).str() == "X9 X10" &&
           code.check(10).str() == "-Y8 Z9 Y10" && code.logical_x()[0].str() == "Z1 Z2 X3" &&
           code.logical_z()[0].str() == "X1 Z2 X3";
  });
  check("encoder cycles n=10", [] {
    return tfimqec::encoder_permutation(10, tfimqec::Boundary::Open).str() == "(1 3 5 7 9 10 8 6 4 2)" &&
           tfimqec::encoder_permutation(10, tfimqec::Boundary::Periodic) ==
               tfimqec::SitePermutation::from_cycles(10, {{1, 3, 5, 7, 9}, {10, 8, 6, 4, 2}});
  });
  check("single-error decoding n=10", [] {
    const auto code = tfimqec::CodeInstance::build(10, tfimqec::Boundary::Periodic, 2);
    for (std::size_t s = 1; s <= 10; ++s) {
      for (auto p : {tfimqec::Pauli::X, tfimqec::Pauli::Y, tfimqec::Pauli::Z}) {
        const auto e = tfimqec::PauliString::single(10, p, s);
        const auto d = tfimqec::decode_single_error(tfimqec::syndrome_of(e, code), code);
        if (d.status != tfimqec::DecodeStatus::Corrected || d.correction != e) return false;
      }
    }
    return true;
  });
  check("teleport n=8", [] {
    const auto plan = tfimqec::plan_teleport(8, 1, 8);
    if (plan.transfer_logical.str() != "Z1 Z2 Z4 Z6 X8") return false;
    for (std::uint64_t b = 0; b < 20; ++b) {
      tfimqec::RandomStream rng(b);
      const auto t = tfimqec::run_teleport(plan, {0.6, 0.1}, {0.3, -0.7}, rng, tfimqec::TeleportBackend::Oracle);
      if (std::abs(t.fidelity - 1.0) > 1e-10) return false;
    }
    return true;
  });
  check("serial and parallel trials agree", [] {
    tfimqec::ErasureExperiment exp;
    exp.n = 32;
    exp.boundary = tfimqec::Boundary::Periodic;
    exp.p_h = 0.1;
    exp.erasure.p_e = 0.05;
    return tfimqec::sweep_success_counts(exp, 6, 40, 3, tfimqec::Execution::Serial) ==
           tfimqec::sweep_success_counts(exp, 6, 40, 3, tfimqec::Execution::Parallel);
  });
  r.exit_code = all ? kExitOk : kExitSelftest;
  return r;
}

int emit(const RunResult& result, const Output& out) {
  const std::string text = result.report.render(out.format == "jsonl" ? Format::JsonLines : Format::Csv);
  if (out.path.empty()) {
    std::fwrite(text.data(), 1, text.size(), stdout);
    std::fflush(stdout);
  } else {
    std::ofstream file(out.path, std::ios::binary);
    file << text;
    file.close();
    if (!file) {
      std::cerr << fmt::format("error: cannot write {}\n", out.path);
      return kExitConfig;
    }
  }
  return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Time-dependent TFIM code: encoders, decoders, teleportation and erasure experiments"};
  app.require_subcommand(1);
  Output out;
  std::function<RunResult()> action;

  OpsArgs ops;
  auto* c_ops = app.add_subcommand("ops", "Print check and logical operators");
  c_ops->add_option("--n", ops.n, "Number of qubits")->capture_default_str();
  c_ops->add_option("--variant", ops.variant, "open or periodic")->capture_default_str();
  c_ops->add_option("--rounds", ops.rounds, "Encoder rounds")->capture_default_str();
  c_ops->add_option("--logical", ops.logical, "Logical sites")->delimiter(',')->capture_default_str();
  c_ops->add_option("--ph", ops.ph, "Hadamard probability between rounds")->capture_default_str();
  c_ops->add_option("--seed", ops.seed, "Seed for Hadamard layers")->capture_default_str();
  add_output_options(*c_ops, out);
  c_ops->callback([&] { action = [&] { return run_ops(ops); }; });

  DecodeArgs dec;
  auto* c_dec = app.add_subcommand("decode", "Syndrome and correction for a Pauli error");
  c_dec->add_option("--n", dec.n, "Number of qubits")->capture_default_str();
  c_dec->add_option("--variant", dec.variant, "open or periodic")->capture_default_str();
  c_dec->add_option("--rounds", dec.rounds, "Encoder rounds")->capture_default_str();
  c_dec->add_option("--logical", dec.logical, "Logical sites")->delimiter(',')->capture_default_str();
  c_dec->add_option("--error", dec.error, "Pauli word, e.g. X4 or \"-Y8 Z9\"")->required();
  c_dec->add_option("--decoder", dec.decoder, "single or z")
      ->check(CLI::IsMember({"single", "z"}))
      ->capture_default_str();
  add_output_options(*c_dec, out);
  c_dec->callback([&] { action = [&] { return run_decode(dec); }; });

  TeleportArgs tel;
  auto* c_tel = app.add_subcommand("teleport", "Measurement-based state transfer");
  c_tel->add_option("--n", tel.n, "Number of qubits")->capture_default_str();
  c_tel->add_option("--source", tel.source, "Site holding the input state")->capture_default_str();
  c_tel->add_option("--target", tel.target, "Receiving site (default n)");
  c_tel->add_option("--trials", tel.trials, "Random input states and outcome branches")->capture_default_str();
  c_tel->add_option("--seed", tel.seed, "Master seed")->capture_default_str();
  c_tel->add_option("--backend", tel.backend, "oracle or tableau")
      ->check(CLI::IsMember({"oracle", "tableau"}))
      ->capture_default_str();
  add_output_options(*c_tel, out);
  c_tel->callback([&] { action = [&] { return run_teleport(tel); }; });

  StatsArgs st;
  auto* c_st = app.add_subcommand("stats", "Pauli content of check operators per site");
  c_st->add_option("--n", st.n, "Number of qubits")->capture_default_str();
  c_st->add_option("--variant", st.variant, "open or periodic")->capture_default_str();
  c_st->add_option("--rounds", st.rounds, "Largest round count")->capture_default_str();
  c_st->add_option("--ph", st.ph, "Hadamard probability")->capture_default_str();
  c_st->add_option("--trials", st.trials, "Samples of Hadamard layers")->capture_default_str();
  c_st->add_option("--seed", st.seed, "Master seed")->capture_default_str();
  add_output_options(*c_st, out);
  c_st->callback([&] { action = [&] { return run_stats(st); }; });

  CurveArgs cu;
  auto* c_cu = app.add_subcommand("recovery-curve", "Erasure recovery probability against p_E");
  c_cu->add_option("--n", cu.n, "Number of qubits")->capture_default_str();
  c_cu->add_option("--variant", cu.variant, "open or periodic")->capture_default_str();
  c_cu->add_option("--rounds", cu.rounds, "Round counts")->delimiter(',')->capture_default_str();
  c_cu->add_option("--pe", cu.pe, "Erasure probabilities")->delimiter(',')->capture_default_str();
  c_cu->add_option("--ph", cu.ph, "Hadamard probability")->capture_default_str();
  c_cu->add_option("--logical-fraction", cu.logical_fraction, "Fraction f of logical qubits")->capture_default_str();
  c_cu->add_option("--trials", cu.trials, "Trials per grid point")->capture_default_str();
  c_cu->add_option("--seed", cu.seed, "Master seed")->capture_default_str();
  c_cu->add_flag("--serial", cu.serial, "Run trials on one thread");
  add_output_options(*c_cu, out);
  c_cu->callback([&] { action = [&] { return run_curve(cu); }; });

  ScalingArgs sc;
  auto* c_sc = app.add_subcommand("depth-scaling", "Depth needed to reach a target success rate");
  c_sc->add_option("--n", sc.n, "Chain lengths")->delimiter(',')->capture_default_str();
  c_sc->add_option("--variant", sc.variant, "open or periodic")->capture_default_str();
  c_sc->add_option("--pe", sc.pe, "Erasure probability")->capture_default_str();
  c_sc->add_option("--erasures", sc.erasures, "Fixed number of erased sites (replaces --pe)");
  c_sc->add_option("--ph", sc.ph, "Hadamard probability")->capture_default_str();
  c_sc->add_option("--logical-fraction", sc.logical_fraction, "Fraction f of logical qubits")->capture_default_str();
  c_sc->add_option("--target", sc.target, "Target success probability")->capture_default_str();
  c_sc->add_option("--trials", sc.trials, "Trials per chain length")->capture_default_str();
  c_sc->add_option("--max-rounds", sc.max_rounds, "Largest round count tried")->capture_default_str();
  c_sc->add_option("--seed", sc.seed, "Master seed")->capture_default_str();
  c_sc->add_flag("--serial", sc.serial, "Run trials on one thread");
  add_output_options(*c_sc, out);
  c_sc->callback([&] { action = [&] { return run_scaling(sc); }; });

  auto* c_self = app.add_subcommand("selftest", "Quick internal consistency checks");
  add_output_options(*c_self, out);
  c_self->callback([&] { action = [] { return run_selftest(); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    return emit(action(), out);
  } catch (const std::invalid_argument& e) {
    std::cerr << fmt::format("error: {}\n", e.what());
    return kExitConfig;
  } catch (const std::out_of_range& e) {
    std::cerr << fmt::format("error: {}\n", e.what());
    return kExitConfig;
  }
}
