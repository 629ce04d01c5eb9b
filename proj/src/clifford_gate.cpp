#include "tfimqec/clifford_gate.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace tfimqec {

namespace {

using cd = std::complex<double>;
constexpr double kTol = 1e-9;

// Pauli matrices in letter-code order I, X, Z, Y.
Matrix2 pauli_matrix(std::uint8_t code) {
  const cd i{0.0, 1.0};
  switch (code & 3u) {
    case 0:
      return {{{1.0, 0.0}, {0.0, 1.0}}};
    case 1:
      return {{{0.0, 1.0}, {1.0, 0.0}}};
    case 2:
      return {{{1.0, 0.0}, {0.0, -1.0}}};
    default:
      return {{{0.0, -i}, {i, 0.0}}};
  }
}

template <std::size_t D>
using Mat = std::array<std::array<cd, D>, D>;

template <std::size_t D>
Mat<D> mul(const Mat<D>& a, const Mat<D>& b) {
  Mat<D> out{};
  for (std::size_t r = 0; r < D; ++r) {
    for (std::size_t c = 0; c < D; ++c) {
      cd acc = 0.0;
      for (std::size_t k = 0; k < D; ++k) {
        acc += a[r][k] * b[k][c];
      }
      out[r][c] = acc;
    }
  }
  return out;
}

template <std::size_t D>
Mat<D> dagger(const Mat<D>& a) {
  Mat<D> out{};
  for (std::size_t r = 0; r < D; ++r) {
    for (std::size_t c = 0; c < D; ++c) {
      out[r][c] = std::conj(a[c][r]);
    }
  }
  return out;
}

// Tensor product with `a` on the low bit of the basis index.
Matrix4 kron_low_high(const Matrix2& a, const Matrix2& b) {
  Matrix4 out{};
  for (std::size_t ra = 0; ra < 2; ++ra) {
    for (std::size_t rb = 0; rb < 2; ++rb) {
      for (std::size_t ca = 0; ca < 2; ++ca) {
        for (std::size_t cb = 0; cb < 2; ++cb) {
          out[ra + 2 * rb][ca + 2 * cb] = a[ra][ca] * b[rb][cb];
        }
      }
    }
  }
  return out;
}

Mat<4> local_pauli(std::uint8_t code) { return kron_low_high(pauli_matrix(code & 3u), pauli_matrix(code >> 2)); }
Mat<2> local_pauli1(std::uint8_t code) { return pauli_matrix(code); }

// Finds Q and c in {1, i, -1, -i} with m = c Q.
template <std::size_t D, typename Basis>
LocalImage decompose(const Mat<D>& m, std::size_t count, Basis basis) {
  for (std::size_t q = 0; q < count; ++q) {
    const Mat<D> p = basis(static_cast<std::uint8_t>(q));
    cd overlap = 0.0;
    for (std::size_t r = 0; r < D; ++r) {
      for (std::size_t c = 0; c < D; ++c) {
        overlap += std::conj(p[r][c]) * m[r][c];
      }
    }
    overlap /= static_cast<double>(D);
    if (std::abs(std::abs(overlap) - 1.0) > kTol) {
      continue;
    }
    const std::array<cd, 4> powers = {cd{1, 0}, cd{0, 1}, cd{-1, 0}, cd{0, -1}};
    for (std::uint8_t k = 0; k < 4; ++k) {
      if (std::abs(overlap - powers[k]) < kTol) {
        return {static_cast<std::uint8_t>(q), k};
      }
    }
  }
  throw std::invalid_argument("gate does not map Paulis to Paulis");
}

}  // namespace

CliffordGate CliffordGate::tfim(std::size_t site, std::size_t num_qubits) {
  if (num_qubits < 2 || site < 1 || site > num_qubits) {
    throw std::out_of_range("TFIM gate site " + std::to_string(site) + " outside 1.." + std::to_string(num_qubits));
  }
  return {GateKind::Tfim, site, site == num_qubits ? 1 : site + 1};
}

std::string CliffordGate::str() const {
  if (kind == GateKind::Hadamard) {
    return "H(" + std::to_string(site) + ")";
  }
  return "U(" + std::to_string(site) + "," + std::to_string(partner) + ")";
}

OneSiteTable conjugation_table(const Matrix2& u) {
  const Mat<2> ud = dagger<2>(u);
  OneSiteTable table{};
  for (std::uint8_t code = 0; code < 4; ++code) {
    table[code] = decompose<2>(mul<2>(mul<2>(u, local_pauli1(code)), ud), 4, local_pauli1);
  }
  return table;
}

TwoSiteTable conjugation_table(const Matrix4& u) {
  const Mat<4> ud = dagger<4>(u);
  TwoSiteTable table{};
  for (std::uint8_t code = 0; code < 16; ++code) {
    table[code] = decompose<4>(mul<4>(mul<4>(u, local_pauli(code)), ud), 16, local_pauli);
  }
  return table;
}

Matrix4 tfim_matrix() {
  const Matrix4 z = kron_low_high(pauli_matrix(2), pauli_matrix(0));
  const Matrix4 xx = kron_low_high(pauli_matrix(1), pauli_matrix(1));
  Matrix4 u{};
  const double s = 1.0 / std::sqrt(2.0);
  for (std::size_t r = 0; r < 4; ++r) {
    for (std::size_t c = 0; c < 4; ++c) {
      u[r][c] = s * (z[r][c] + xx[r][c]);
    }
  }
  return u;
}

Matrix2 hadamard_matrix() {
  const double s = 1.0 / std::sqrt(2.0);
  return {{{s, s}, {s, -s}}};
}

const TwoSiteTable& tfim_table() {
  static const TwoSiteTable table = conjugation_table(tfim_matrix());
  return table;
}

const OneSiteTable& hadamard_table() {
  static const OneSiteTable table = conjugation_table(hadamard_matrix());
  return table;
}

void conjugate(PauliString& p, const CliffordGate& g) {
  const std::size_t n = p.size();
  if (g.site < 1 || g.site > n || g.partner < 1 || g.partner > n) {
    throw std::out_of_range("gate " + g.str() + " outside a " + std::to_string(n) + "-qubit string");
  }
  const std::size_t a = g.site - 1;
  if (g.kind == GateKind::Hadamard) {
    const LocalImage img = hadamard_table()[p.code(a)];
    p.set_code(a, img.code);
    p.multiply_phase(img.phase);
    return;
  }
  const std::size_t b = g.partner - 1;
  const LocalImage img = tfim_table()[p.code(a) | (p.code(b) << 2)];
  p.set_code(a, img.code & 3u);
  p.set_code(b, img.code >> 2);
  p.multiply_phase(img.phase);
}

void conjugate(PauliString& p, std::span<const CliffordGate> schedule) {
  for (const CliffordGate& g : schedule) {
    conjugate(p, g);
  }
}

}  // namespace tfimqec
