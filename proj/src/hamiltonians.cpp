// Copyright 2026 The gsprep Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "gsprep/hamiltonians.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <sstream>

namespace gsprep {

Boundary parse_boundary(const std::string& s) {
  if (s == "open") return Boundary::open;
  if (s == "periodic") return Boundary::periodic;
  throw Error(ErrorKind::config, "boundary must be 'open' or 'periodic', got '" + s + "'");
}

std::string to_string(Boundary b) { return b == Boundary::open ? "open" : "periodic"; }

PauliString PauliString::make(double coeff, std::vector<std::pair<int, char>> ops) {
  std::sort(ops.begin(), ops.end());
  PauliString p;
  p.coeff = coeff;
  for (auto [site, letter] : ops) {
    if (site < 0) throw Error(ErrorKind::invalid_argument, "negative site index");
    if (letter != 'X' && letter != 'Y' && letter != 'Z')
      throw Error(ErrorKind::invalid_argument, std::string("unknown Pauli letter '") + letter + "'");
    if (!p.sites.empty() && p.sites.back() == site)
      throw Error(ErrorKind::invalid_argument, "site " + std::to_string(site) + " repeated in Pauli string");
    p.sites.push_back(site);
    p.letters.push_back(letter);
  }
  return p;
}

PauliString PauliString::parse(const std::string& text) {
  double coeff = 1.0;
  std::string body = text;
  if (auto star = text.find('*'); star != std::string::npos) {
    try {
      coeff = std::stod(text.substr(0, star));
    } catch (const std::exception&) {
      throw Error(ErrorKind::config, "bad coefficient in Pauli string '" + text + "'");
    }
    body = text.substr(star + 1);
  }
  std::istringstream in(body);
  std::vector<std::pair<int, char>> ops;
  std::string tok;
  while (in >> tok) {
    if (tok.size() < 2) throw Error(ErrorKind::config, "bad Pauli token '" + tok + "'");
    char letter = static_cast<char>(std::toupper(static_cast<unsigned char>(tok[0])));
    try {
      ops.emplace_back(std::stoi(tok.substr(1)), letter);
    } catch (const std::exception&) {
      throw Error(ErrorKind::config, "bad Pauli token '" + tok + "'");
    }
  }
  return make(coeff, std::move(ops));
}

std::string PauliString::str() const {
  std::ostringstream out;
  out << coeff << "*";
  for (std::size_t i = 0; i < sites.size(); ++i) out << (i ? " " : "") << letters[i] << sites[i];
  if (sites.empty()) out << "I";
  return out.str();
}

void SpinHamiltonian::add(double coeff, std::vector<std::pair<int, char>> ops) {
  auto p = PauliString::make(coeff, std::move(ops));
  if (p.max_site() >= n_sites)
    throw Error(ErrorKind::invalid_size, "term " + p.str() + " exceeds " + std::to_string(n_sites) + " sites");
  terms.push_back(std::move(p));
}

double SpinHamiltonian::norm_bound() const {
  double s = 0.0;
  for (const auto& t : terms) s += std::abs(t.coeff);
  return s;
}

namespace {

void require_sites(int n, int min_n, const char* model) {
  if (n < min_n)
    throw Error(ErrorKind::invalid_size,
                std::string(model) + " needs at least " + std::to_string(min_n) + " sites, got " + std::to_string(n));
}

void add_ising_bonds(SpinHamiltonian& h, double j, char letter, int range, Boundary boundary) {
  int n = h.n_sites;
  for (int i = 0; i < n; ++i) {
    int k = i + range;
    if (k >= n) {
      if (boundary == Boundary::open || n <= 2 * range) continue;
      k -= n;
    }
    h.add(j, {{i, letter}, {k, letter}});
  }
}

}  // namespace

SpinHamiltonian build_tfim(int n, double j, double g, Boundary boundary) {
  require_sites(n, 2, "TFIM");
  if (!std::isfinite(j) || !std::isfinite(g)) throw Error(ErrorKind::invalid_argument, "non-finite TFIM parameter");
  SpinHamiltonian h{n, {}};
  for (int i = 0; i < n; ++i) h.add(-g, {{i, 'Z'}});
  add_ising_bonds(h, -j, 'X', 1, boundary);
  return h;
}

SpinHamiltonian build_cluster(int n, double j, double h1) {
  require_sites(n, 3, "cluster");
  SpinHamiltonian h{n, {}};
  for (int i = 0; i + 2 < n; ++i) h.add(-j, {{i, 'X'}, {i + 1, 'Z'}, {i + 2, 'X'}});
  for (int i = 0; i < n; ++i) h.add(-h1, {{i, 'Z'}});
  return h;
}

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double unit_open(std::uint64_t bits) {
  // (0, 1]: never feeds log(0)
  return (static_cast<double>(bits >> 11) + 1.0) * 0x1.0p-53;
}

}  // namespace

std::vector<double> random_fields(int n, double mean, double variance, std::uint64_t seed) {
  if (!(variance >= 0.0)) throw Error(ErrorKind::invalid_argument, "variance must be nonnegative");
  std::vector<double> g(n);
  double sigma = std::sqrt(variance);
  for (int i = 0; i < n; ++i) {
    std::uint64_t state = seed ^ (0xD1B54A32D192ED03ULL * static_cast<std::uint64_t>(i + 1));
    double u1 = unit_open(splitmix64(state));
    double u2 = unit_open(splitmix64(state));
    double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    g[i] = mean + sigma * z;
  }
  return g;
}

SpinHamiltonian build_random_tfim(int n, double j, double mean, double variance, std::uint64_t seed,
                                  Boundary boundary) {
  require_sites(n, 2, "random TFIM");
  auto g = random_fields(n, mean, variance, seed);
  SpinHamiltonian h{n, {}};
  for (int i = 0; i < n; ++i) h.add(-g[i], {{i, 'Z'}});
  add_ising_bonds(h, -j, 'X', 1, boundary);
  return h;
}

SpinHamiltonian build_annni(int l, double j1, double j2, double gamma, Boundary boundary) {
  require_sites(l, 3, "ANNNI");
  SpinHamiltonian h{l, {}};
  add_ising_bonds(h, j1 / 4.0, 'Z', 1, boundary);
  add_ising_bonds(h, j2 / 4.0, 'Z', 2, boundary);
  for (int i = 0; i < l; ++i) h.add(-gamma / 2.0, {{i, 'X'}});
  return h;
}

SpinHamiltonian build_heisenberg_field(int n, double j, double xi, double g) {
  require_sites(n, 2, "Heisenberg");
  SpinHamiltonian h{n, {}};
  for (int i = 0; i + 1 < n; ++i) {
    h.add(-j, {{i, 'X'}, {i + 1, 'X'}});
    if (xi != 0.0) {
      h.add(-xi, {{i, 'Y'}, {i + 1, 'Y'}});
      h.add(-xi, {{i, 'Z'}, {i + 1, 'Z'}});
    }
  }
  for (int i = 0; i < n; ++i) h.add(-g, {{i, 'Z'}});
  return h;
}

SpinHamiltonian build_z_field(int n, double g) {
  require_sites(n, 1, "field");
  SpinHamiltonian h{n, {}};
  for (int i = 0; i < n; ++i) h.add(-g, {{i, 'Z'}});
  return h;
}

SpinHamiltonian sum(const SpinHamiltonian& a, double ca, const SpinHamiltonian& b, double cb) {
  if (a.n_sites != b.n_sites) throw Error(ErrorKind::shape, "site counts differ");
  SpinHamiltonian h{a.n_sites, {}};
  for (auto t : a.terms) h.terms.push_back((t.coeff *= ca, t));
  for (auto t : b.terms) h.terms.push_back((t.coeff *= cb, t));
  return h;
}

Monomial to_majorana(const PauliString& p, int n) {
  Monomial m{p.coeff, {}};
  for (std::size_t i = 0; i < p.sites.size(); ++i) m = m * jw_letter(p.letters[i], p.sites[i], n);
  return m;
}

MajoranaQuadratic jordan_wigner(const SpinHamiltonian& h) {
  const int n = h.n_sites;
  MajoranaQuadratic q{n, MatrixXc::Zero(2 * n, 2 * n), 0.0};
  for (const auto& t : h.terms) {
    Monomial m = to_majorana(t, n);
    if (m.degree() == 0) {
      q.constant_shift += m.phase.real();
    } else if (m.degree() == 2) {
      // c g_p g_q = 2c w_p w_q = h_pq w_p w_q + h_qp w_q w_p
      const int p = m.idx[0], r = m.idx[1];
      q.h(p, r) += cplx(0.0, m.phase.imag());
      q.h(r, p) -= cplx(0.0, m.phase.imag());
    } else {
      throw Error(ErrorKind::not_quasi_free,
                  "term " + t.str() + " maps to a Majorana monomial of degree " + std::to_string(m.degree()));
    }
  }
  return q;
}

VectorXc majorana_coupling(const PauliString& a, int n) {
  Monomial m = to_majorana(a, n);
  if (m.degree() == 2 * n - 1 && n > 1) m = m * jw_parity(n);
  if (m.degree() != 1)
    throw Error(ErrorKind::not_quasi_free, "coupling " + a.str() + " is not linear in Majorana operators");
  VectorXc u = VectorXc::Zero(2 * n);
  u(m.idx[0]) = std::sqrt(2.0) * m.phase;
  return u;
}

PeriodizedTFIMModes periodized_tfim_modes(int n, double xi) {
  if (n < 2 || n % 2) throw Error(ErrorKind::invalid_size, "periodized modes need an even N >= 2");
  if (std::abs(xi - 1.0) < 1e-12) throw Error(ErrorKind::gapless, "xi = 1 closes the gap");
  PeriodizedTFIMModes m;
  m.n = n;
  m.xi = xi;
  m.lambdas.resize(n);
  m.phi.resize(n, n);
  m.psi.resize(n, n);
  const double two_pi = 2.0 * std::numbers::pi;
  for (int k = -n / 2; k < n / 2; ++k) {
    m.ks.push_back(k);
    int r = m.row(k);
    m.lambdas(r) = std::sqrt(1.0 + xi * xi + 2.0 * xi * std::cos(two_pi * k / n));
    // k = 0 and k = -N/2 are real standing waves normalized by 1/sqrt(N)
    double norm = (k == 0 || k == -n / 2) ? std::sqrt(1.0 / n) : std::sqrt(2.0 / n);
    for (int j = 1; j <= n; ++j) {
      double arg = two_pi * j * k / n;
      m.phi(r, j - 1) = norm * (k >= 1 ? std::sin(arg) : std::cos(arg));
    }
  }
  for (int k = -n / 2; k < n / 2; ++k) {
    int r = m.row(k);
    double c = 1.0 + xi * std::cos(two_pi * k / n);
    double s = xi * std::sin(two_pi * k / n);
    VectorXr partner = (-k < n / 2) ? VectorXr(m.phi.row(m.row(-k)).transpose()) : VectorXr::Zero(n);
    m.psi.row(r) = -(c * m.phi.row(r).transpose() + s * partner).transpose() / m.lambdas(r);
  }
  return m;
}

std::vector<PauliString> coupling_preset(const std::string& name, int n) {
  if (n < 1) throw Error(ErrorKind::invalid_size, "coupling preset needs at least one site");
  std::vector<PauliString> out;
  auto per_site = [&](const std::string& letters) {
    for (int i = 0; i < n; ++i)
      for (char c : letters) out.push_back(PauliString::make(1.0, {{i, c}}));
  };
  if (name == "boundary") {
    for (int i : {0, n - 1})
      for (char c : {'X', 'Y'}) out.push_back(PauliString::make(1.0, {{i, c}}));
    if (n == 1) out.resize(2);
  } else if (name == "cluster_boundary") {
    out.push_back(PauliString::make(1.0, {{0, 'Y'}}));
    if (n > 1) out.push_back(PauliString::make(1.0, {{n - 1, 'Y'}}));
  } else if (name == "bulk") {
    per_site("XYZ");
  } else if (name == "theorem2") {
    per_site("X");
  } else if (name == "annni") {
    per_site("XZ");
  } else {
    throw Error(ErrorKind::config, "unknown coupling preset '" + name + "'");
  }
  return out;
}

MatrixXc pauli_matrix(const PauliString& p, int n) {
  if (n > kDenseCap) throw Error(ErrorKind::invalid_size, "dense Pauli matrix beyond cap");
  const std::size_t dim = std::size_t(1) << n;
  std::uint64_t xmask = 0, zmask = 0;
  int ny = 0;
  for (std::size_t i = 0; i < p.sites.size(); ++i) {
    if (p.sites[i] >= n) throw Error(ErrorKind::invalid_size, "Pauli site beyond register");
    std::uint64_t bit = std::uint64_t(1) << (n - 1 - p.sites[i]);
    char c = p.letters[i];
    if (c == 'X' || c == 'Y') xmask |= bit;
    if (c == 'Z' || c == 'Y') zmask |= bit;
    if (c == 'Y') ++ny;
  }
  const cplx iy[4] = {1.0, I1, -1.0, -I1};
  MatrixXc m = MatrixXc::Zero(dim, dim);
  for (std::uint64_t b = 0; b < dim; ++b) {
    double sign = (std::popcount(b & zmask) % 2) ? -1.0 : 1.0;
    m(b ^ xmask, b) = p.coeff * sign * iy[ny % 4];
  }
  return m;
}

MatrixXc dense_matrix(const SpinHamiltonian& h, int cap) {
  if (h.n_sites > cap)
    throw Error(ErrorKind::invalid_size,
                std::to_string(h.n_sites) + " sites exceeds the dense cap of " + std::to_string(cap));
  const std::size_t dim = std::size_t(1) << h.n_sites;
  MatrixXc m = MatrixXc::Zero(dim, dim);
  for (const auto& t : h.terms) m += pauli_matrix(t, h.n_sites);
  return m;
}

std::vector<double> quasi_free_spectrum(const MajoranaQuadratic& q) {
  const int n = q.n_modes;
  if (n > 20) throw Error(ErrorKind::invalid_size, "spectrum enumeration limited to 20 modes");
  Eigen::SelfAdjointEigenSolver<MatrixXc> es(q.h, Eigen::EigenvaluesOnly);
  VectorXr lam = es.eigenvalues().tail(n);
  std::vector<double> out;
  out.reserve(std::size_t(1) << n);
  for (std::uint64_t occ = 0; occ < (std::uint64_t(1) << n); ++occ) {
    double e = q.constant_shift;
    for (int k = 0; k < n; ++k) e += lam(k) * ((occ >> k & 1) ? 1.0 : -1.0);
    out.push_back(e);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace gsprep
