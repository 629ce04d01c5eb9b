#include "tfimqec/pauli_string.hpp"

#include <bit>
#include <cctype>
#include <stdexcept>

namespace tfimqec {

namespace {

std::size_t word_count(std::size_t n) { return (n + 63) / 64; }

void require_site(std::size_t site, std::size_t n) {
  if (site < 1 || site > n) {
    throw std::out_of_range("site " + std::to_string(site) + " outside 1.." + std::to_string(n));
  }
}

Pauli letter_from_char(char c) {
  switch (c) {
    case 'I':
    case '_':
      return Pauli::I;
    case 'X':
      return Pauli::X;
    case 'Y':
      return Pauli::Y;
    case 'Z':
      return Pauli::Z;
    default:
      throw std::invalid_argument(std::string("not a Pauli letter: '") + c + "'");
  }
}

// Consumes an optional sign prefix and returns the corresponding power of i.
std::uint8_t parse_sign(std::string_view& s) {
  auto skip_space = [&] {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
      s.remove_prefix(1);
    }
  };
  skip_space();
  std::uint8_t phase = 0;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    phase = s.front() == '-' ? 2 : 0;
    s.remove_prefix(1);
    skip_space();
  }
  if (!s.empty() && s.front() == 'i') {
    phase = (phase + 1) & 3u;
    s.remove_prefix(1);
    skip_space();
  }
  return phase;
}

std::string sign_prefix(std::uint8_t phase) {
  switch (phase & 3u) {
    case 0:
      return "+";
    case 1:
      return "+i";
    case 2:
      return "-";
    default:
      return "-i";
  }
}

}  // namespace

char pauli_char(Pauli p) noexcept {
  constexpr char kChars[4] = {'I', 'X', 'Z', 'Y'};
  return kChars[static_cast<std::uint8_t>(p)];
}

PauliString::PauliString(std::size_t num_qubits)
    : n_(num_qubits), x_(word_count(num_qubits), 0), z_(word_count(num_qubits), 0) {}

PauliString PauliString::single(std::size_t num_qubits, Pauli p, std::size_t site) {
  PauliString out(num_qubits);
  out.set(site, p);
  return out;
}

PauliString PauliString::from_letters(std::string_view letters) {
  const std::uint8_t phase = parse_sign(letters);
  PauliString out(letters.size());
  for (std::size_t i = 0; i < letters.size(); ++i) {
    out.set_code(i, static_cast<std::uint8_t>(letter_from_char(letters[i])));
  }
  out.phase_ = phase;
  return out;
}

PauliString PauliString::parse(std::string_view word, std::size_t num_qubits) {
  PauliString out(num_qubits);
  out.phase_ = parse_sign(word);
  bool saw_token = false;
  bool saw_identity = false;
  std::size_t pos = 0;
  while (pos < word.size()) {
    const char c = word[pos];
    if (std::isspace(static_cast<unsigned char>(c)) || c == '*') {
      ++pos;
      continue;
    }
    const Pauli letter = letter_from_char(c);
    ++pos;
    std::size_t site = 0;
    std::size_t digits = 0;
    while (pos < word.size() && std::isdigit(static_cast<unsigned char>(word[pos]))) {
      site = site * 10 + static_cast<std::size_t>(word[pos] - '0');
      ++pos;
      ++digits;
    }
    if (letter == Pauli::I && digits == 0) {
      saw_identity = true;
      continue;
    }
    if (digits == 0) {
      throw std::invalid_argument("Pauli letter without site index in '" + std::string(word) + "'");
    }
    require_site(site, num_qubits);
    if (out.at(site) != Pauli::I) {
      throw std::invalid_argument("site " + std::to_string(site) + " repeated in '" + std::string(word) + "'");
    }
    out.set(site, letter);
    saw_token = true;
  }
  if (!saw_token && !saw_identity) {
    throw std::invalid_argument("empty Pauli word");
  }
  return out;
}

Pauli PauliString::at(std::size_t site) const {
  require_site(site, n_);
  return static_cast<Pauli>(code(site - 1));
}

void PauliString::set(std::size_t site, Pauli p) {
  require_site(site, n_);
  set_code(site - 1, static_cast<std::uint8_t>(p));
}

void PauliString::set_code(std::size_t index, std::uint8_t code) noexcept {
  const std::uint64_t bit = std::uint64_t{1} << (index & 63);
  const std::size_t w = index >> 6;
  x_[w] = (code & 1u) ? (x_[w] | bit) : (x_[w] & ~bit);
  z_[w] = (code & 2u) ? (z_[w] | bit) : (z_[w] & ~bit);
}

int PauliString::sign() const {
  if (!is_hermitian()) {
    throw std::logic_error("Pauli string " + str() + " is not Hermitian");
  }
  return phase_ == 0 ? +1 : -1;
}

bool PauliString::is_identity_up_to_phase() const noexcept {
  for (std::size_t w = 0; w < x_.size(); ++w) {
    if (x_[w] | z_[w]) {
      return false;
    }
  }
  return true;
}

std::size_t PauliString::weight() const noexcept {
  std::size_t total = 0;
  for (std::size_t w = 0; w < x_.size(); ++w) {
    total += static_cast<std::size_t>(std::popcount(x_[w] | z_[w]));
  }
  return total;
}

std::vector<std::size_t> PauliString::support() const {
  std::vector<std::size_t> sites;
  for (std::size_t w = 0; w < x_.size(); ++w) {
    std::uint64_t bits = x_[w] | z_[w];
    while (bits) {
      const int b = std::countr_zero(bits);
      sites.push_back(w * 64 + static_cast<std::size_t>(b) + 1);
      bits &= bits - 1;
    }
  }
  return sites;
}

PauliString& PauliString::operator*=(const PauliString& rhs) {
  if (rhs.n_ != n_) {
    throw std::invalid_argument("Pauli product of strings with " + std::to_string(n_) + " and " +
                                std::to_string(rhs.n_) + " qubits");
  }
  // Per site, XY = iZ, YZ = iX, ZX = iY and the reversed orders give -i.
  unsigned plus = 0;
  unsigned minus = 0;
  for (std::size_t w = 0; w < x_.size(); ++w) {
    const std::uint64_t x1 = x_[w], z1 = z_[w], x2 = rhs.x_[w], z2 = rhs.z_[w];
    const std::uint64_t X1 = x1 & ~z1, Y1 = x1 & z1, Z1 = ~x1 & z1;
    const std::uint64_t X2 = x2 & ~z2, Y2 = x2 & z2, Z2 = ~x2 & z2;
    plus += static_cast<unsigned>(std::popcount((X1 & Y2) | (Y1 & Z2) | (Z1 & X2)));
    minus += static_cast<unsigned>(std::popcount((Y1 & X2) | (Z1 & Y2) | (X1 & Z2)));
    x_[w] = x1 ^ x2;
    z_[w] = z1 ^ z2;
  }
  phase_ = static_cast<std::uint8_t>((phase_ + rhs.phase_ + plus + 3u * minus) & 3u);
  return *this;
}

std::string PauliString::str() const {
  std::string out = phase_ == 0 ? std::string() : sign_prefix(phase_);
  bool first = true;
  for (std::size_t i = 0; i < n_; ++i) {
    const std::uint8_t c = code(i);
    if (c == 0) {
      continue;
    }
    if (!first || out.size() > 1) {
      out += ' ';
    }
    out += pauli_char(static_cast<Pauli>(c));
    out += std::to_string(i + 1);
    first = false;
  }
  if (first) {
    out += 'I';
  }
  return out;
}

std::string PauliString::dense_str() const {
  std::string out = sign_prefix(phase_);
  for (std::size_t i = 0; i < n_; ++i) {
    out += pauli_char(static_cast<Pauli>(code(i)));
  }
  return out;
}

PauliString operator*(PauliString lhs, const PauliString& rhs) {
  lhs *= rhs;
  return lhs;
}

PauliString pauli_mul(const PauliString& a, const PauliString& b) { return a * b; }

bool commutes(const PauliString& a, const PauliString& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("commutation test of strings with " + std::to_string(a.size()) + " and " +
                                std::to_string(b.size()) + " qubits");
  }
  const auto ax = a.x_words(), az = a.z_words(), bx = b.x_words(), bz = b.z_words();
  unsigned parity = 0;
  for (std::size_t w = 0; w < ax.size(); ++w) {
    parity ^= static_cast<unsigned>(std::popcount((ax[w] & bz[w]) ^ (az[w] & bx[w]))) & 1u;
  }
  return parity == 0;
}

}  // namespace tfimqec
