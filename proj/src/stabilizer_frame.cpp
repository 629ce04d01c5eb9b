#include "tfimqec/stabilizer_frame.hpp"

#include <algorithm>
#include <stdexcept>

namespace tfimqec {

StabilizerFrame StabilizerFrame::product_state(std::size_t num_qubits, std::span<const std::size_t> logical_sites) {
  if (num_qubits == 0) {
    throw std::invalid_argument("frame needs at least one qubit");
  }
  std::vector<bool> is_logical(num_qubits + 1, false);
  for (std::size_t s : logical_sites) {
    if (s < 1 || s > num_qubits) {
      throw std::out_of_range("logical site " + std::to_string(s) + " outside 1.." + std::to_string(num_qubits));
    }
    if (is_logical[s]) {
      throw std::invalid_argument("logical site " + std::to_string(s) + " listed twice");
    }
    is_logical[s] = true;
  }

  StabilizerFrame f;
  f.n_ = num_qubits;
  for (std::size_t k = 1; k <= num_qubits; ++k) {
    if (!is_logical[k]) {
      f.stabilizers_.push_back(PauliString::single(num_qubits, Pauli::Z, k));
      f.destabilizers_.push_back(PauliString::single(num_qubits, Pauli::X, k));
    }
  }
  for (std::size_t s : logical_sites) {
    f.logical_x_.push_back(PauliString::single(num_qubits, Pauli::X, s));
    f.logical_z_.push_back(PauliString::single(num_qubits, Pauli::Z, s));
  }
  return f;
}

void StabilizerFrame::conjugate(const CliffordGate& g) {
  for (auto* rows : {&stabilizers_, &destabilizers_, &logical_x_, &logical_z_}) {
    for (PauliString& row : *rows) {
      tfimqec::conjugate(row, g);
    }
  }
}

void StabilizerFrame::conjugate(std::span<const CliffordGate> schedule) {
  for (auto* rows : {&stabilizers_, &destabilizers_, &logical_x_, &logical_z_}) {
    for (PauliString& row : *rows) {
      tfimqec::conjugate(row, schedule);
    }
  }
}

void StabilizerFrame::apply_pauli(const PauliString& error) {
  if (error.size() != n_) {
    throw std::invalid_argument("error size does not match frame");
  }
  for (auto* rows : {&stabilizers_, &destabilizers_, &logical_x_, &logical_z_}) {
    for (PauliString& row : *rows) {
      if (!commutes(row, error)) {
        row.negate();
      }
    }
  }
}

MeasurementResult StabilizerFrame::measure(const PauliString& observable, RandomStream& rng) {
  if (observable.size() != n_) {
    throw std::invalid_argument("observable size does not match frame");
  }
  if (!observable.is_hermitian()) {
    throw std::invalid_argument("observable " + observable.str() + " is not Hermitian");
  }

  const auto anticommuting = [&](const PauliString& row) { return !commutes(row, observable); };

  // Random outcome: a stabilizer anticommutes. Standard generator replacement.
  const auto pivot_it = std::find_if(stabilizers_.begin(), stabilizers_.end(), anticommuting);
  if (pivot_it != stabilizers_.end()) {
    const std::size_t p = static_cast<std::size_t>(pivot_it - stabilizers_.begin());
    const PauliString pivot = stabilizers_[p];
    for (std::size_t i = 0; i < stabilizers_.size(); ++i) {
      if (i != p && anticommuting(stabilizers_[i])) {
        stabilizers_[i] *= pivot;
      }
    }
    for (std::size_t i = 0; i < destabilizers_.size(); ++i) {
      if (i != p && anticommuting(destabilizers_[i])) {
        destabilizers_[i] *= pivot;
      }
    }
    for (auto* rows : {&logical_x_, &logical_z_}) {
      for (PauliString& row : *rows) {
        if (anticommuting(row)) {
          row *= pivot;
        }
      }
    }
    destabilizers_[p] = pivot;
    const int outcome = rng.coin();
    // Post-measurement state is stabilized by (outcome) * observable.
    stabilizers_[p] = observable;
    if (outcome == -1) {
      stabilizers_[p].negate();
    }
    return {outcome, false, false};
  }

  // Commutes with the stabilizers but not with some logical: the logical
  // pair is consumed and the observable joins the stabilizer group.
  for (std::size_t j = 0; j < logical_x_.size(); ++j) {
    const bool x_anti = anticommuting(logical_x_[j]);
    const bool z_anti = anticommuting(logical_z_[j]);
    if (!x_anti && !z_anti) {
      continue;
    }
    const PauliString partner = x_anti ? logical_x_[j] : logical_z_[j];
    for (PauliString& d : destabilizers_) {
      if (anticommuting(d)) {
        d *= partner;
      }
    }
    for (std::size_t m = 0; m < logical_x_.size(); ++m) {
      if (m == j) {
        continue;
      }
      if (anticommuting(logical_x_[m])) {
        logical_x_[m] *= partner;
      }
      if (anticommuting(logical_z_[m])) {
        logical_z_[m] *= partner;
      }
    }
    logical_x_.erase(logical_x_.begin() + static_cast<std::ptrdiff_t>(j));
    logical_z_.erase(logical_z_.begin() + static_cast<std::ptrdiff_t>(j));
    const int outcome = rng.coin();
    PauliString stabilizer = observable;
    if (outcome == -1) {
      stabilizer.negate();
    }
    stabilizers_.push_back(std::move(stabilizer));
    destabilizers_.push_back(partner);
    return {outcome, false, true};
  }

  const std::optional<int> value = expectation(observable);
  if (!value) {
    throw std::logic_error("observable commutes with every row but is not in the stabilizer group");
  }
  return {*value, true, false};
}

std::optional<int> StabilizerFrame::expectation(const PauliString& observable) const {
  if (observable.size() != n_) {
    throw std::invalid_argument("observable size does not match frame");
  }
  for (const PauliString& s : stabilizers_) {
    if (!commutes(s, observable)) {
      return std::nullopt;
    }
  }
  for (std::size_t j = 0; j < logical_x_.size(); ++j) {
    if (!commutes(logical_x_[j], observable) || !commutes(logical_z_[j], observable)) {
      return std::nullopt;
    }
  }
  PauliString product(n_);
  for (std::size_t i = 0; i < stabilizers_.size(); ++i) {
    if (!commutes(destabilizers_[i], observable)) {
      product *= stabilizers_[i];
    }
  }
  if (!product.same_letters(observable)) {
    throw std::logic_error("stabilizer decomposition failed for " + observable.str());
  }
  const std::uint8_t diff = static_cast<std::uint8_t>((observable.phase() + 4u - product.phase()) & 3u);
  if (diff & 1u) {
    throw std::invalid_argument("observable " + observable.str() + " is not Hermitian");
  }
  return diff == 0 ? +1 : -1;
}

bool StabilizerFrame::equivalent(const PauliString& a, const PauliString& b) const {
  const std::optional<int> v = expectation(a * b);
  return v.has_value() && *v == +1;
}

bool StabilizerFrame::verify() const {
  const std::size_t r = stabilizers_.size();
  const std::size_t k = logical_x_.size();
  if (destabilizers_.size() != r || logical_z_.size() != k || r + k != n_) {
    return false;
  }
  for (const auto* rows : {&stabilizers_, &logical_x_, &logical_z_}) {
    for (const PauliString& row : *rows) {
      if (row.size() != n_ || !row.is_hermitian()) {
        return false;
      }
    }
  }
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) {
      if (!commutes(stabilizers_[i], stabilizers_[j])) return false;
      if (!commutes(destabilizers_[i], destabilizers_[j])) return false;
      if (commutes(destabilizers_[i], stabilizers_[j]) != (i != j)) return false;
    }
    for (std::size_t j = 0; j < k; ++j) {
      for (const PauliString* l : {&logical_x_[j], &logical_z_[j]}) {
        if (!commutes(stabilizers_[i], *l) || !commutes(destabilizers_[i], *l)) return false;
      }
    }
  }
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      if (!commutes(logical_x_[i], logical_x_[j]) || !commutes(logical_z_[i], logical_z_[j])) return false;
      if (commutes(logical_x_[i], logical_z_[j]) != (i != j)) return false;
    }
  }
  return true;
}

StabilizerFrame frame_conjugate(StabilizerFrame frame, const CliffordGate& g) {
  frame.conjugate(g);
  return frame;
}

MeasuredFrame measure_pauli(StabilizerFrame frame, const PauliString& observable, RandomStream& rng) {
  MeasurementResult result = frame.measure(observable, rng);
  return {result, std::move(frame)};
}

}  // namespace tfimqec
