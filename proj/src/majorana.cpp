#include "tfimqec/majorana.hpp"

#include <algorithm>
#include <map>

namespace tfimqec {

namespace {

std::size_t mode_index(ModeKind kind, std::size_t site) { return 2 * (site - 1) + (kind == ModeKind::Xi ? 1 : 0); }

void require_mode_site(std::size_t site, std::size_t n) {
  if (site < 1 || site > n) {
    throw std::out_of_range("mode site " + std::to_string(site) + " outside 1.." + std::to_string(n));
  }
}

// Z_i = -i gamma_i xi_i.
MajoranaMonomial z_monomial(std::size_t site, std::size_t n) {
  MajoranaMonomial m = MajoranaMonomial::from_mode(MajoranaMode::gamma(site), n);
  m *= MajoranaMonomial::from_mode(MajoranaMode::xi(site), n);
  m.multiply_phase(3);
  return m;
}

struct GateMonomials {
  MajoranaMonomial a;
  MajoranaMonomial b;
};

GateMonomials gate_monomials(const CliffordGate& g, std::size_t n) {
  PauliString a = PauliString::single(n, Pauli::Z, g.site);
  PauliString b = PauliString::single(n, Pauli::X, g.site);
  if (g.kind == GateKind::Tfim) {
    b.set(g.partner, Pauli::X);
  }
  return {MajoranaMonomial::from_pauli(a), MajoranaMonomial::from_pauli(b)};
}

}  // namespace

std::string MajoranaMode::str() const {
  std::string out = sign < 0 ? "-" : "";
  out += kind == ModeKind::Gamma ? "g" : "xi";
  out += std::to_string(site);
  return out;
}

MajoranaMonomial::MajoranaMonomial(std::size_t num_sites) : n_(num_sites), modes_(2 * num_sites, false) {}

MajoranaMonomial MajoranaMonomial::from_mode(const MajoranaMode& m, std::size_t num_sites) {
  require_mode_site(m.site, num_sites);
  MajoranaMonomial out(num_sites);
  out.modes_[mode_index(m.kind, m.site)] = true;
  out.phase_ = m.sign < 0 ? 2 : 0;
  return out;
}

MajoranaMonomial MajoranaMonomial::from_pauli(const PauliString& p) {
  const std::size_t n = p.size();
  MajoranaMonomial out(n);
  MajoranaMonomial string_prefix(n);  // S_i = Z_1 ... Z_{i-1}
  for (std::size_t site = 1; site <= n; ++site) {
    switch (p.at(site)) {
      case Pauli::I:
        break;
      case Pauli::Z:
        out *= z_monomial(site, n);
        break;
      case Pauli::X:
        out *= string_prefix * from_mode(MajoranaMode::gamma(site), n);
        break;
      case Pauli::Y:
        out *= string_prefix * from_mode(MajoranaMode::xi(site), n);
        break;
    }
    string_prefix *= z_monomial(site, n);
  }
  out.multiply_phase(p.phase());
  return out;
}

std::size_t MajoranaMonomial::degree() const noexcept {
  return static_cast<std::size_t>(std::count(modes_.begin(), modes_.end(), true));
}

bool MajoranaMonomial::contains(ModeKind kind, std::size_t site) const {
  require_mode_site(site, n_);
  return modes_[mode_index(kind, site)];
}

MajoranaMonomial& MajoranaMonomial::operator*=(const MajoranaMonomial& rhs) {
  if (rhs.n_ != n_) {
    throw std::invalid_argument("Majorana product over different chain lengths");
  }
  // Move each right factor left past the larger modes already present.
  unsigned swaps = 0;
  for (std::size_t b = 0; b < rhs.modes_.size(); ++b) {
    if (!rhs.modes_[b]) {
      continue;
    }
    for (std::size_t a = b + 1; a < modes_.size(); ++a) {
      swaps += modes_[a] ? 1u : 0u;
    }
    modes_[b] = !modes_[b];
  }
  phase_ = static_cast<std::uint8_t>((phase_ + rhs.phase_ + 2u * (swaps & 1u)) & 3u);
  return *this;
}

std::optional<MajoranaMode> MajoranaMonomial::single_mode() const {
  if (degree() != 1 || (phase_ & 1u)) {
    return std::nullopt;
  }
  const auto it = std::find(modes_.begin(), modes_.end(), true);
  const std::size_t index = static_cast<std::size_t>(it - modes_.begin());
  return MajoranaMode{index % 2 ? ModeKind::Xi : ModeKind::Gamma, index / 2 + 1, phase_ == 0 ? +1 : -1};
}

PauliString MajoranaMonomial::to_pauli() const {
  PauliString out(n_);
  for (std::size_t index = 0; index < modes_.size(); ++index) {
    if (modes_[index]) {
      out *= mode_to_pauli({index % 2 ? ModeKind::Xi : ModeKind::Gamma, index / 2 + 1, +1}, n_);
    }
  }
  out.multiply_phase(phase_);
  return out;
}

std::string MajoranaMonomial::str() const {
  constexpr const char* kPrefix[4] = {"", "i ", "-", "-i "};
  std::string out = kPrefix[phase_];
  bool any = false;
  for (std::size_t index = 0; index < modes_.size(); ++index) {
    if (modes_[index]) {
      if (any) {
        out += ' ';
      }
      out += (index % 2 ? "xi" : "g") + std::to_string(index / 2 + 1);
      any = true;
    }
  }
  return any ? out : out + "1";
}

bool monomials_commute(const MajoranaMonomial& a, const MajoranaMonomial& b) {
  std::size_t p = 0, q = 0, overlap = 0;
  for (std::size_t i = 0; i < a.modes_.size(); ++i) {
    p += a.modes_[i];
    q += b.modes_[i];
    overlap += a.modes_[i] && b.modes_[i];
  }
  return ((p * q - overlap) & 1u) == 0;
}

PauliString mode_to_pauli(const MajoranaMode& m, std::size_t n) {
  require_mode_site(m.site, n);
  PauliString out(n);
  for (std::size_t s = 1; s < m.site; ++s) {
    out.set(s, Pauli::Z);
  }
  out.set(m.site, m.kind == ModeKind::Gamma ? Pauli::X : Pauli::Y);
  if (m.sign < 0) {
    out.negate();
  }
  return out;
}

std::optional<MajoranaMode> pauli_to_mode(const PauliString& p) {
  if (!p.is_hermitian()) {
    return std::nullopt;
  }
  const std::vector<std::size_t> support = p.support();
  if (support.empty()) {
    return std::nullopt;
  }
  const std::size_t last = support.back();
  if (support.size() != last) {
    return std::nullopt;
  }
  for (std::size_t s = 1; s < last; ++s) {
    if (p.at(s) != Pauli::Z) {
      return std::nullopt;
    }
  }
  const Pauli tail = p.at(last);
  if (tail == Pauli::Z) {
    return std::nullopt;
  }
  return MajoranaMode{tail == Pauli::X ? ModeKind::Gamma : ModeKind::Xi, last, p.sign()};
}

SitePermutation::SitePermutation(std::size_t n) : image_(n) {
  for (std::size_t s = 0; s < n; ++s) {
    image_[s] = s + 1;
  }
}

SitePermutation SitePermutation::from_images(std::vector<std::size_t> image) {
  std::vector<bool> hit(image.size() + 1, false);
  for (std::size_t v : image) {
    if (v < 1 || v > image.size() || hit[v]) {
      throw std::invalid_argument("site mapping is not a bijection");
    }
    hit[v] = true;
  }
  SitePermutation p(0);
  p.image_ = std::move(image);
  return p;
}

SitePermutation SitePermutation::from_cycles(std::size_t n, const std::vector<std::vector<std::size_t>>& cycles) {
  std::vector<std::size_t> image(n);
  for (std::size_t s = 0; s < n; ++s) {
    image[s] = s + 1;
  }
  std::vector<bool> seen(n + 1, false);
  for (const auto& cycle : cycles) {
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      const std::size_t s = cycle[i];
      if (s < 1 || s > n || seen[s]) {
        throw std::invalid_argument("cycle notation repeats or exceeds sites");
      }
      seen[s] = true;
      image[s - 1] = cycle[(i + 1) % cycle.size()];
    }
  }
  return from_images(std::move(image));
}

std::size_t SitePermutation::operator()(std::size_t site) const {
  if (site < 1 || site > image_.size()) {
    throw std::out_of_range("site " + std::to_string(site) + " outside permutation domain");
  }
  return image_[site - 1];
}

SitePermutation SitePermutation::then(const SitePermutation& next) const {
  if (next.size() != size()) {
    throw std::invalid_argument("composing permutations of different sizes");
  }
  SitePermutation out(size());
  for (std::size_t s = 0; s < size(); ++s) {
    out.image_[s] = next.image_[image_[s] - 1];
  }
  return out;
}

SitePermutation SitePermutation::power(std::size_t exponent) const {
  SitePermutation out(size());
  for (std::size_t e = 0; e < exponent; ++e) {
    out = out.then(*this);
  }
  return out;
}

SitePermutation SitePermutation::inverse() const {
  SitePermutation out(size());
  for (std::size_t s = 0; s < size(); ++s) {
    out.image_[image_[s] - 1] = s + 1;
  }
  return out;
}

void SitePermutation::transpose(std::size_t a, std::size_t b) {
  for (std::size_t& v : image_) {
    if (v == a) {
      v = b;
    } else if (v == b) {
      v = a;
    }
  }
}

std::vector<std::vector<std::size_t>> SitePermutation::cycles() const {
  std::vector<std::vector<std::size_t>> out;
  std::vector<bool> seen(size() + 1, false);
  for (std::size_t start = 1; start <= size(); ++start) {
    if (seen[start] || image_[start - 1] == start) {
      continue;
    }
    std::vector<std::size_t> cycle;
    for (std::size_t s = start; !seen[s]; s = image_[s - 1]) {
      seen[s] = true;
      cycle.push_back(s);
    }
    out.push_back(std::move(cycle));
  }
  return out;
}

std::string SitePermutation::str() const {
  std::string out;
  for (const auto& cycle : cycles()) {
    out += '(';
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      out += (i ? " " : "") + std::to_string(cycle[i]);
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

SitePermutation encoder_permutation(std::size_t n, Boundary boundary) {
  if (n < 2) {
    throw std::invalid_argument("permutation needs at least two sites");
  }
  SitePermutation sigma(n);
  const auto bond = [&](std::size_t i) { sigma.transpose(i, i == n ? 1 : i + 1); };
  for (std::size_t i = 1; i < n; i += 2) {
    bond(i);
  }
  const bool periodic = boundary == Boundary::Periodic && n > 2;
  if (periodic && n % 2 == 1) {
    bond(n);
  }
  for (std::size_t i = 2; i < n; i += 2) {
    bond(i);
  }
  if (periodic && n % 2 == 0) {
    bond(n);
  }
  return sigma;
}

MajoranaMonomial evolve_monomial(MajoranaMonomial m, std::span<const CliffordGate> schedule) {
  const std::size_t n = m.num_sites();
  std::map<std::pair<int, std::size_t>, GateMonomials> cache;
  for (const CliffordGate& g : schedule) {
    const auto key = std::make_pair(static_cast<int>(g.kind), g.site);
    auto it = cache.find(key);
    if (it == cache.end()) {
      it = cache.emplace(key, gate_monomials(g, n)).first;
    }
    const GateMonomials& ab = it->second;
    const bool with_a = monomials_commute(m, ab.a);
    const bool with_b = monomials_commute(m, ab.b);
    if (with_a && with_b) {
      continue;
    }
    if (!with_a && !with_b) {
      m.multiply_phase(2);
      continue;
    }
    MajoranaMonomial image = ab.a * ab.b;
    image *= m;
    if (with_a) {
      image.multiply_phase(2);
    }
    m = std::move(image);
  }
  return m;
}

MajoranaMonomial evolve_mode(const MajoranaMode& m, const CodeInstance& code) {
  if (code.has_hadamards()) {
    throw UnsupportedSchedule("mode tracking needs a pure TFIM schedule (no Hadamard layers)");
  }
  return evolve_monomial(MajoranaMonomial::from_mode(m, code.n()), code.schedule());
}

PauliString check_as_mode_pair(std::size_t k, const CodeInstance& code) {
  require_mode_site(k, code.n());
  MajoranaMonomial pair = evolve_mode(MajoranaMode::gamma(k), code);
  pair *= evolve_mode(MajoranaMode::xi(k), code);
  pair.multiply_phase(3);
  return pair.to_pauli();
}

}  // namespace tfimqec
