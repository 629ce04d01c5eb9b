#include "tfimqec/tfim_code.hpp"

#include <algorithm>
#include <stdexcept>

namespace tfimqec {

namespace {

void require_sites(std::span<const std::size_t> sites, std::size_t n, const char* what) {
  for (std::size_t s : sites) {
    if (s < 1 || s > n) {
      throw std::out_of_range(std::string(what) + " site " + std::to_string(s) + " outside 1.." + std::to_string(n));
    }
  }
}

SiteSet normalized(SiteSet sites) {
  std::sort(sites.begin(), sites.end());
  sites.erase(std::unique(sites.begin(), sites.end()), sites.end());
  return sites;
}

}  // namespace

std::string_view to_string(Boundary b) noexcept { return b == Boundary::Open ? "open" : "periodic"; }

Boundary parse_boundary(std::string_view text) {
  if (text == "open") {
    return Boundary::Open;
  }
  if (text == "periodic") {
    return Boundary::Periodic;
  }
  throw std::invalid_argument("unknown boundary variant '" + std::string(text) + "' (expected open or periodic)");
}

std::vector<CliffordGate> build_encoder(std::size_t n, Boundary boundary, std::size_t rounds,
                                        std::span<const SiteSet> hadamard_layers) {
  if (n < 4 || n % 2 != 0) {
    throw std::invalid_argument("encoder needs an even qubit count n >= 4, got " + std::to_string(n));
  }
  if (rounds < 1) {
    throw std::invalid_argument("encoder needs at least one round");
  }
  if (!hadamard_layers.empty() && hadamard_layers.size() != rounds - 1) {
    throw std::invalid_argument("expected " + std::to_string(rounds - 1) + " Hadamard layers, got " +
                                std::to_string(hadamard_layers.size()));
  }
  std::vector<CliffordGate> gates;
  gates.reserve(rounds * n + n);
  for (std::size_t r = 0; r < rounds; ++r) {
    for (std::size_t i = 1; i < n; i += 2) {
      gates.push_back(CliffordGate::tfim(i, n));
    }
    for (std::size_t i = 2; i < n; i += 2) {
      gates.push_back(CliffordGate::tfim(i, n));
    }
    if (boundary == Boundary::Periodic) {
      gates.push_back(CliffordGate::tfim(n, n));
    }
    if (!hadamard_layers.empty() && r + 1 < rounds) {
      require_sites(hadamard_layers[r], n, "Hadamard");
      for (std::size_t s : hadamard_layers[r]) {
        gates.push_back(CliffordGate::hadamard(s));
      }
    }
  }
  return gates;
}

std::vector<SiteSet> sample_hadamard_layers(std::size_t n, std::size_t rounds, double p_h, RandomStream& rng) {
  if (!(p_h >= 0.0 && p_h <= 1.0)) {
    throw std::invalid_argument("Hadamard probability must lie in [0, 1]");
  }
  std::vector<SiteSet> layers(rounds > 0 ? rounds - 1 : 0);
  for (SiteSet& layer : layers) {
    for (std::size_t s = 1; s <= n; ++s) {
      if (rng.bernoulli(p_h)) {
        layer.push_back(s);
      }
    }
  }
  return layers;
}

SiteSet default_logical_sites(std::size_t n, std::size_t count) {
  if (count > n) {
    throw std::invalid_argument("cannot place " + std::to_string(count) + " logical qubits on " + std::to_string(n) +
                                " sites");
  }
  SiteSet sites;
  for (std::size_t s = 1; s <= n && sites.size() < count; s += 2) {
    sites.push_back(s);
  }
  for (std::size_t s = 2; s <= n && sites.size() < count; s += 2) {
    sites.push_back(s);
  }
  return normalized(std::move(sites));
}

CodeInstance CodeInstance::build(std::size_t n, Boundary boundary, std::size_t rounds,
                                 std::vector<SiteSet> hadamard_layers, SiteSet logical_sites) {
  CodeInstance code;
  code.n_ = n;
  code.boundary_ = boundary;
  code.rounds_ = rounds;
  for (SiteSet& layer : hadamard_layers) {
    layer = normalized(std::move(layer));
  }
  code.schedule_ = build_encoder(n, boundary, rounds, hadamard_layers);
  code.hadamard_layers_ = std::move(hadamard_layers);
  require_sites(logical_sites, n, "logical");
  code.logical_sites_ = normalized(std::move(logical_sites));

  for (std::size_t k = 1; k <= n; ++k) {
    if (!std::binary_search(code.logical_sites_.begin(), code.logical_sites_.end(), k)) {
      code.check_indices_.push_back(k);
    }
  }
  code.checks_ = derive_check_operators(code, code.logical_sites_);
  LogicalOperators logicals = derive_logical_operators(code, code.logical_sites_);
  code.logical_x_ = std::move(logicals.x);
  code.logical_z_ = std::move(logicals.z);
  return code;
}

bool CodeInstance::has_hadamards() const noexcept {
  return std::any_of(hadamard_layers_.begin(), hadamard_layers_.end(), [](const SiteSet& l) { return !l.empty(); });
}

const PauliString& CodeInstance::check(std::size_t k) const {
  const auto it = std::lower_bound(check_indices_.begin(), check_indices_.end(), k);
  if (it == check_indices_.end() || *it != k) {
    throw std::out_of_range("no check operator for site " + std::to_string(k));
  }
  return checks_[static_cast<std::size_t>(it - check_indices_.begin())];
}

StabilizerFrame CodeInstance::encoded_frame() const {
  StabilizerFrame frame = StabilizerFrame::product_state(n_, logical_sites_);
  frame.conjugate(schedule_);
  return frame;
}

PauliString conjugate_by_encoder(PauliString p, const CodeInstance& code) {
  if (p.size() != code.n()) {
    throw std::invalid_argument("operator has " + std::to_string(p.size()) + " qubits, code has " +
                                std::to_string(code.n()));
  }
  conjugate(p, code.schedule());
  return p;
}

std::vector<PauliString> derive_check_operators(const CodeInstance& code, std::span<const std::size_t> logical_sites) {
  require_sites(logical_sites, code.n(), "logical");
  std::vector<PauliString> checks;
  for (std::size_t k = 1; k <= code.n(); ++k) {
    if (std::find(logical_sites.begin(), logical_sites.end(), k) == logical_sites.end()) {
      checks.push_back(conjugate_by_encoder(PauliString::single(code.n(), Pauli::Z, k), code));
    }
  }
  return checks;
}

LogicalOperators derive_logical_operators(const CodeInstance& code, std::span<const std::size_t> logical_sites) {
  require_sites(logical_sites, code.n(), "logical");
  LogicalOperators out;
  for (std::size_t s : logical_sites) {
    out.x.push_back(conjugate_by_encoder(PauliString::single(code.n(), Pauli::X, s), code));
    out.z.push_back(conjugate_by_encoder(PauliString::single(code.n(), Pauli::Z, s), code));
  }
  return out;
}

}  // namespace tfimqec
