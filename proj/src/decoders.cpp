#include "tfimqec/decoders.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "tfimqec/gf2.hpp"

namespace tfimqec {

bool Syndrome::is_trivial() const noexcept {
  return std::all_of(bits.begin(), bits.end(), [](std::uint8_t b) { return b == 0; });
}

std::uint8_t Syndrome::bit(std::size_t k) const {
  const auto it = std::find(checks.begin(), checks.end(), k);
  if (it == checks.end()) {
    throw std::out_of_range("check " + std::to_string(k) + " not in syndrome");
  }
  return bits[static_cast<std::size_t>(it - checks.begin())];
}

Syndrome Syndrome::without(std::size_t k) const {
  Syndrome out;
  for (std::size_t i = 0; i < checks.size(); ++i) {
    if (checks[i] != k) {
      out.checks.push_back(checks[i]);
      out.bits.push_back(bits[i]);
    }
  }
  return out;
}

std::string Syndrome::str() const {
  std::string out;
  for (std::size_t i = 0; i < checks.size(); ++i) {
    out += (i ? " " : "") + std::to_string(checks[i]) + "=" + std::to_string(bits[i]);
  }
  return out;
}

Syndrome syndrome_of(const PauliString& error, std::span<const std::size_t> check_indices,
                     std::span<const PauliString> checks) {
  if (check_indices.size() != checks.size()) {
    throw std::invalid_argument("check index list and check list differ in length");
  }
  Syndrome s;
  s.checks.assign(check_indices.begin(), check_indices.end());
  s.bits.reserve(checks.size());
  for (const PauliString& c : checks) {
    s.bits.push_back(commutes(error, c) ? 0 : 1);
  }
  return s;
}

Syndrome syndrome_of(const PauliString& error, const CodeInstance& code) {
  return syndrome_of(error, code.check_indices(), code.checks());
}

std::string_view to_string(DecodeStatus s) noexcept {
  switch (s) {
    case DecodeStatus::Corrected:
      return "corrected";
    case DecodeStatus::Uncorrectable:
      return "uncorrectable";
    default:
      return "ambiguous";
  }
}

SingleErrorDecode decode_single_error(const Syndrome& s, const CodeInstance& code) {
  std::vector<PauliString> columns;
  columns.reserve(s.checks.size());
  for (std::size_t k : s.checks) {
    columns.push_back(code.check(k));
  }
  const std::size_t n = code.n();
  std::vector<PauliString> candidates{PauliString::identity(n)};
  for (std::size_t site = 1; site <= n; ++site) {
    for (Pauli p : {Pauli::X, Pauli::Y, Pauli::Z}) {
      candidates.push_back(PauliString::single(n, p, site));
    }
  }

  SingleErrorDecode out;
  for (PauliString& c : candidates) {
    if (syndrome_of(c, s.checks, columns) == s) {
      out.matches.push_back(std::move(c));
    }
  }
  if (out.matches.size() == 1) {
    out.status = DecodeStatus::Corrected;
    out.correction = out.matches.front();
  } else {
    out.status = out.matches.empty() ? DecodeStatus::Uncorrectable : DecodeStatus::Ambiguous;
  }
  return out;
}

std::string_view to_string(ZDecodeStatus s) noexcept {
  switch (s) {
    case ZDecodeStatus::Corrected:
      return "corrected";
    case ZDecodeStatus::Tie:
      return "tie";
    default:
      return "inconsistent";
  }
}

ZDecode decode_z_errors(const Syndrome& s, const CodeInstance& code) {
  if (code.rounds() != 1 || code.has_hadamards()) {
    throw std::invalid_argument("Z-error decoding needs a one-round code without Hadamard layers");
  }
  const std::size_t n = code.n();
  struct Edge {
    std::size_t u, v;
    std::uint8_t bit;
  };
  std::vector<std::vector<Edge>> adjacency(n + 1);
  for (std::size_t i = 0; i < s.checks.size(); ++i) {
    const PauliString& check = code.check(s.checks[i]);
    std::vector<std::size_t> ends;
    for (std::size_t j = 0; j < n; ++j) {
      if (check.x_bit(j)) {
        ends.push_back(j + 1);
      }
    }
    if (ends.size() != 2) {
      throw std::logic_error("check " + std::to_string(s.checks[i]) + " does not link exactly two sites");
    }
    adjacency[ends[0]].push_back({ends[0], ends[1], s.bits[i]});
    adjacency[ends[1]].push_back({ends[1], ends[0], s.bits[i]});
  }

  ZDecode out;
  out.status = ZDecodeStatus::Corrected;
  out.correction = PauliString(n);
  std::vector<int> flip(n + 1, -1);
  for (std::size_t root = 1; root <= n; ++root) {
    if (flip[root] >= 0) {
      continue;
    }
    // Walk the chain containing `root`, propagating across domain walls.
    std::vector<std::size_t> component{root};
    flip[root] = 0;
    std::size_t edge_ends = 0;
    for (std::size_t head = 0; head < component.size(); ++head) {
      const std::size_t u = component[head];
      for (const Edge& e : adjacency[u]) {
        ++edge_ends;
        const int expected = flip[u] ^ e.bit;
        if (flip[e.v] < 0) {
          flip[e.v] = expected;
          component.push_back(e.v);
        } else if (flip[e.v] != expected) {
          out.status = ZDecodeStatus::Inconsistent;
        }
      }
    }
    const std::size_t ones = static_cast<std::size_t>(
        std::count_if(component.begin(), component.end(), [&](std::size_t v) { return flip[v] == 1; }));
    const std::size_t zeros = component.size() - ones;
    const bool open_chain = edge_ends / 2 + 1 == component.size();
    if (open_chain && ones == zeros && out.status == ZDecodeStatus::Corrected) {
      out.status = ZDecodeStatus::Tie;
    }
    const int chosen = ones <= zeros ? 1 : 0;
    for (std::size_t v : component) {
      if (flip[v] == chosen) {
        out.correction.set(v, Pauli::Z);
      }
    }
  }
  return out;
}

ErasurePattern sample_bernoulli_erasure(std::size_t n, double p, RandomStream& rng) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("erasure probability must lie in [0, 1]");
  }
  ErasurePattern e;
  e.model = ErasureModel::Bernoulli;
  for (std::size_t s = 1; s <= n; ++s) {
    if (rng.bernoulli(p)) {
      e.erased_sites.push_back(s);
    }
  }
  return e;
}

ErasurePattern sample_fixed_erasure(std::size_t n, std::size_t count, RandomStream& rng) {
  if (count > n) {
    throw std::invalid_argument("cannot erase " + std::to_string(count) + " of " + std::to_string(n) + " sites");
  }
  std::vector<std::size_t> sites(n);
  std::iota(sites.begin(), sites.end(), std::size_t{1});
  // Partial Fisher-Yates.
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(n - i));
    std::swap(sites[i], sites[j]);
  }
  sites.resize(count);
  std::sort(sites.begin(), sites.end());
  return {std::move(sites), ErasureModel::FixedCount};
}

namespace {

BitRow restrict_to(const PauliString& p, std::span<const std::size_t> sites) {
  BitRow row(2 * sites.size());
  for (std::size_t i = 0; i < sites.size(); ++i) {
    const std::size_t index = sites[i] - 1;
    if (p.x_bit(index)) row.set(2 * i);
    if (p.z_bit(index)) row.set(2 * i + 1);
  }
  return row;
}

Gf2Span stabilizer_span(const StabilizerFrame& frame, std::span<const std::size_t> sites) {
  for (std::size_t s : sites) {
    if (s < 1 || s > frame.num_qubits()) {
      throw std::out_of_range("erased site " + std::to_string(s) + " outside the frame");
    }
  }
  const auto& stabilizers = frame.stabilizers();
  Gf2Span span(2 * sites.size(), std::max<std::size_t>(stabilizers.size(), 1));
  for (std::size_t i = 0; i < stabilizers.size(); ++i) {
    span.add(restrict_to(stabilizers[i], sites), i);
  }
  return span;
}

}  // namespace

bool erasure_correctable(const StabilizerFrame& frame, std::span<const std::size_t> erased_sites) {
  const Gf2Span span = stabilizer_span(frame, erased_sites);
  for (const auto* rows : {&frame.logical_x(), &frame.logical_z()}) {
    for (const PauliString& l : *rows) {
      if (!span.solve(restrict_to(l, erased_sites))) {
        return false;
      }
    }
  }
  return true;
}

ErasureRecovery erasure_recoverable(const StabilizerFrame& frame, const ErasurePattern& erasure) {
  const std::span<const std::size_t> sites = erasure.erased_sites;
  const Gf2Span span = stabilizer_span(frame, sites);
  const auto& stabilizers = frame.stabilizers();

  ErasureRecovery out;
  out.success = true;
  const auto clean = [&](const PauliString& logical, std::vector<std::vector<std::size_t>>& multipliers,
                         std::vector<PauliString>& cleaned) {
    const std::optional<BitRow> combination = span.solve(restrict_to(logical, sites));
    if (!combination) {
      out.success = false;
      return;
    }
    std::vector<std::size_t> rows;
    PauliString product = logical;
    for (std::size_t r : combination->set_bits()) {
      if (r < stabilizers.size()) {
        rows.push_back(r);
        product *= stabilizers[r];
      }
    }
    multipliers.push_back(std::move(rows));
    cleaned.push_back(std::move(product));
  };
  for (std::size_t j = 0; j < frame.num_logical() && out.success; ++j) {
    clean(frame.logical_x()[j], out.x_multipliers, out.cleaned_x);
    clean(frame.logical_z()[j], out.z_multipliers, out.cleaned_z);
  }
  if (!out.success) {
    out.x_multipliers.clear();
    out.z_multipliers.clear();
    out.cleaned_x.clear();
    out.cleaned_z.clear();
  }
  return out;
}

}  // namespace tfimqec
