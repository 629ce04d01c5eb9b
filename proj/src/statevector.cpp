#include "tfimqec/statevector.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

namespace tfimqec {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

void require_site(const DenseState& s, std::size_t site) {
  if (site < 1 || site > s.num_qubits()) {
    throw std::out_of_range("site " + std::to_string(site) + " outside " + std::to_string(s.num_qubits()) +
                            "-qubit dense state");
  }
}

std::size_t mask_of(const PauliString& p, bool z_part) {
  std::size_t mask = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (z_part ? p.z_bit(i) : p.x_bit(i)) {
      mask |= std::size_t{1} << i;
    }
  }
  return mask;
}

Amplitude i_power(unsigned k) {
  switch (k & 3u) {
    case 0:
      return {1, 0};
    case 1:
      return {0, 1};
    case 2:
      return {-1, 0};
    default:
      return {0, -1};
  }
}

void require_size(const DenseState& s, const PauliString& p) {
  if (p.size() != s.num_qubits()) {
    throw std::invalid_argument("Pauli string size does not match dense state");
  }
}

}  // namespace

DenseState::DenseState(std::size_t num_qubits) : n_(num_qubits) {
  if (num_qubits == 0 || num_qubits > kMaxDenseQubits) {
    throw std::invalid_argument("dense state supports 1.." + std::to_string(kMaxDenseQubits) + " qubits");
  }
  amp_.assign(std::size_t{1} << n_, Amplitude{0, 0});
  amp_[0] = 1;
}

DenseState DenseState::product(std::size_t num_qubits, Amplitude alpha, Amplitude beta, std::size_t site) {
  DenseState s(num_qubits);
  require_site(s, site);
  const double norm = std::sqrt(std::norm(alpha) + std::norm(beta));
  if (norm == 0) {
    throw std::invalid_argument("alpha and beta are both zero");
  }
  s.amp_[0] = alpha / norm;
  s.amp_[std::size_t{1} << (site - 1)] = beta / norm;
  return s;
}

DenseState DenseState::basis(std::size_t num_qubits, std::size_t index) {
  DenseState s(num_qubits);
  if (index >= s.amp_.size()) {
    throw std::out_of_range("basis index outside dense state");
  }
  s.amp_[0] = 0;
  s.amp_[index] = 1;
  return s;
}

double DenseState::norm() const noexcept {
  double total = 0;
  for (const Amplitude& a : amp_) {
    total += std::norm(a);
  }
  return std::sqrt(total);
}

void DenseState::normalize() {
  const double nrm = norm();
  if (nrm == 0) {
    throw std::logic_error("cannot normalize the zero vector");
  }
  for (Amplitude& a : amp_) {
    a /= nrm;
  }
}

void apply_gate_dense(DenseState& state, const CliffordGate& g) {
  require_site(state, g.site);
  require_site(state, g.partner);
  const std::size_t dim = std::size_t{1} << state.num_qubits();
  const std::size_t zi = std::size_t{1} << (g.site - 1);
  std::vector<Amplitude> out(dim);
  if (g.kind == GateKind::Tfim) {
    // (Z_i + X_i X_j)/sqrt(2): diagonal sign on bit i plus a two-bit flip.
    const std::size_t flip = zi | (std::size_t{1} << (g.partner - 1));
    for (std::size_t b = 0; b < dim; ++b) {
      const double sign = (b & zi) ? -1.0 : 1.0;
      out[b] = (sign * state[b] + state[b ^ flip]) * kInvSqrt2;
    }
  } else {
    for (std::size_t b = 0; b < dim; ++b) {
      const double sign = (b & zi) ? -1.0 : 1.0;
      out[b] = (state[b ^ zi] + sign * state[b]) * kInvSqrt2;
    }
  }
  for (std::size_t b = 0; b < dim; ++b) {
    state[b] = out[b];
  }
}

void apply_gates_dense(DenseState& state, std::span<const CliffordGate> schedule) {
  for (const CliffordGate& g : schedule) {
    apply_gate_dense(state, g);
  }
}

void apply_pauli_dense(DenseState& state, const PauliString& p) {
  require_size(state, p);
  const std::size_t x = mask_of(p, false);
  const std::size_t z = mask_of(p, true);
  // Each Y letter contributes i * X Z, so P|b> = i^(phase + #Y) (-1)^(b.z) |b ^ x>.
  const Amplitude global = i_power(p.phase() + static_cast<unsigned>(std::popcount(x & z)));
  const std::size_t dim = std::size_t{1} << state.num_qubits();
  std::vector<Amplitude> out(dim);
  for (std::size_t b = 0; b < dim; ++b) {
    const double sign = (std::popcount(b & z) & 1) ? -1.0 : 1.0;
    out[b ^ x] = global * sign * state[b];
  }
  for (std::size_t b = 0; b < dim; ++b) {
    state[b] = out[b];
  }
}

Amplitude expectation_dense(const DenseState& state, const PauliString& p) {
  DenseState image = state;
  apply_pauli_dense(image, p);
  Amplitude total{0, 0};
  for (std::size_t b = 0; b < (std::size_t{1} << state.num_qubits()); ++b) {
    total += std::conj(state[b]) * image[b];
  }
  return total;
}

double plus_probability(const DenseState& state, const PauliString& p) {
  if (!p.is_hermitian()) {
    throw std::invalid_argument("observable must be Hermitian");
  }
  return std::clamp((1.0 + expectation_dense(state, p).real()) / 2.0, 0.0, 1.0);
}

int measure_pauli_dense(DenseState& state, const PauliString& p, RandomStream& rng) {
  const double p_plus = plus_probability(state, p);
  // Branches with probability below rounding noise are never selected.
  constexpr double kEps = 1e-12;
  const int outcome = p_plus >= 1.0 - kEps ? +1 : p_plus <= kEps ? -1 : (rng.uniform() < p_plus ? +1 : -1);
  DenseState image = state;
  apply_pauli_dense(image, p);
  const std::size_t dim = std::size_t{1} << state.num_qubits();
  for (std::size_t b = 0; b < dim; ++b) {
    state[b] = (state[b] + static_cast<double>(outcome) * image[b]) * 0.5;
  }
  state.normalize();
  return outcome;
}

int born_measure_dense(DenseState& state, std::size_t site, RandomStream& rng) {
  require_site(state, site);
  return measure_pauli_dense(state, PauliString::single(state.num_qubits(), Pauli::Z, site), rng);
}

double overlap_fidelity(const DenseState& a, const DenseState& b) {
  if (a.num_qubits() != b.num_qubits()) {
    throw std::invalid_argument("fidelity needs states of equal size");
  }
  Amplitude total{0, 0};
  for (std::size_t i = 0; i < (std::size_t{1} << a.num_qubits()); ++i) {
    total += std::conj(a[i]) * b[i];
  }
  return std::norm(total);
}

}  // namespace tfimqec
