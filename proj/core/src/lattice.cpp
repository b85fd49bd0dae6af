#include "leechps/lattice.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <sstream>

#include <Eigen/Dense>
#include <openssl/evp.h>

#include "leechps/enumerate.hpp"
#include "leechps/error.hpp"

namespace leechps::lattice {

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw Error("SHA-256 digest failed");
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 15]);
  }
  return out;
}

namespace {

std::string canonical_gram(int rank, const std::vector<std::int64_t>& gram) {
  std::ostringstream os;
  os << "gram:" << rank;
  for (auto v : gram) os << ',' << v;
  return os.str();
}

std::int64_t checked_mul_add(std::int64_t acc, std::int64_t a, std::int64_t b) {
  std::int64_t prod, sum;
  if (__builtin_mul_overflow(a, b, &prod) || __builtin_add_overflow(acc, prod, &sum))
    throw UsageError("integer overflow in lattice arithmetic");
  return sum;
}

}  // namespace

GramLattice::GramLattice(std::string name, int rank, std::vector<std::int64_t> gram,
                         Signature signature_hint, std::optional<Embedding> embedding)
    : name_(std::move(name)), rank_(rank), gram_(std::move(gram)), embedding_(std::move(embedding)) {
  if (rank_ < 0 || gram_.size() != static_cast<std::size_t>(rank_) * rank_)
    throw UsageError("GramLattice: Gram matrix has wrong size");
  for (int i = 0; i < rank_; ++i)
    for (int j = 0; j < i; ++j)
      if (this->gram(i, j) != this->gram(j, i)) throw UsageError("GramLattice: Gram matrix not symmetric");
  even_ = true;
  for (int i = 0; i < rank_; ++i) even_ &= (this->gram(i, i) % 2 == 0);
  det_ = determinant(rank_, gram_);
  if (det_ == 0) throw UsageError("GramLattice: Gram matrix is singular");
  signature_ = inertia(rank_, gram_);
  if ((signature_hint.positive != 0 || signature_hint.negative != 0) &&
      !(signature_hint == signature_))
    throw UsageError("GramLattice: signature does not match the Gram matrix");
  if (embedding_) {
    const auto& e = *embedding_;
    if (e.basis.size() != static_cast<std::size_t>(rank_) * e.ambient_dim || e.denominator <= 0)
      throw UsageError("GramLattice: malformed embedding");
    for (int i = 0; i < rank_; ++i)
      for (int j = 0; j < rank_; ++j) {
        std::int64_t dot = 0;
        for (int t = 0; t < e.ambient_dim; ++t) dot = checked_mul_add(dot, e.row(i)[t], e.row(j)[t]);
        if (dot != this->gram(i, j) * e.denominator)
          throw IntegrityError("GramLattice: embedding disagrees with Gram matrix");
      }
  }
  hash_ = sha256_hex(canonical_gram(rank_, gram_));
}

Certificates GramLattice::certificates() const {
  Certificates c;
  c.det = det_;
  c.even = even_;
  std::lock_guard lock(cert_mutex_);
  c.shell_counts = shell_counts_;
  for (const auto& [nrm, count] : shell_counts_)
    if (nrm > 0 && count > 0) {
      c.min_norm = nrm;
      break;
    }
  return c;
}

void GramLattice::attach_shell_certificate(std::map<std::int64_t, std::uint64_t> counts,
                                           std::int64_t certified_radius) const {
  std::lock_guard lock(cert_mutex_);
  if (certified_radius_) {
    const std::int64_t r = std::min(*certified_radius_, certified_radius);
    for (std::int64_t nrm = 0; nrm <= r; ++nrm) {
      auto a = shell_counts_.find(nrm);
      auto b = counts.find(nrm);
      const std::uint64_t ca = a == shell_counts_.end() ? 0 : a->second;
      const std::uint64_t cb = b == counts.end() ? 0 : b->second;
      if (ca != cb) throw IntegrityError("shell certificate disagrees with earlier count");
    }
    return;
  }
  shell_counts_ = std::move(counts);
  certified_radius_ = certified_radius;
}

std::optional<std::int64_t> GramLattice::certified_radius() const {
  std::lock_guard lock(cert_mutex_);
  return certified_radius_;
}

std::optional<int> Content::valuation(std::int64_t p) const {
  if (is_all()) return std::nullopt;
  return arith::valuation(*value, p);
}

LatticeVector make_vector(const LatticeHandle& k, Coords coords) {
  if (!k) throw UsageError("make_vector: null lattice");
  if (static_cast<int>(coords.size()) != k->rank())
    throw UsageError("make_vector: coordinate count does not match rank");
  return {k, std::move(coords)};
}

RealVector make_real_vector(const LatticeHandle& k, std::vector<double> coords) {
  if (!k) throw UsageError("make_real_vector: null lattice");
  if (static_cast<int>(coords.size()) != k->rank())
    throw UsageError("make_real_vector: coordinate count does not match rank");
  return {k, std::move(coords)};
}

std::int64_t inner(const GramLattice& k, std::span<const std::int64_t> x,
                   std::span<const std::int64_t> y) {
  const int m = k.rank();
  std::int64_t acc = 0;
  for (int i = 0; i < m; ++i) {
    if (x[i] == 0) continue;
    std::int64_t row = 0;
    for (int j = 0; j < m; ++j) row = checked_mul_add(row, k.gram(i, j), y[j]);
    acc = checked_mul_add(acc, x[i], row);
  }
  return acc;
}

double inner(const GramLattice& k, std::span<const double> x, std::span<const double> y) {
  const int m = k.rank();
  double acc = 0.0;
  for (int i = 0; i < m; ++i) {
    double row = 0.0;
    for (int j = 0; j < m; ++j) row += static_cast<double>(k.gram(i, j)) * y[j];
    acc += x[i] * row;
  }
  return acc;
}

double inner(const GramLattice& k, std::span<const std::int64_t> x, std::span<const double> y) {
  const int m = k.rank();
  double acc = 0.0;
  for (int i = 0; i < m; ++i) {
    if (x[i] == 0) continue;
    double row = 0.0;
    for (int j = 0; j < m; ++j) row += static_cast<double>(k.gram(i, j)) * y[j];
    acc += static_cast<double>(x[i]) * row;
  }
  return acc;
}

std::int64_t norm(const GramLattice& k, std::span<const std::int64_t> x) { return inner(k, x, x); }
double norm(const GramLattice& k, std::span<const double> x) { return inner(k, x, x); }

namespace {
void require_same(const LatticeHandle& a, const LatticeHandle& b) {
  if (!a || !b || (a != b && a->hash() != b->hash()))
    throw UsageError("vectors belong to different lattices");
}
}  // namespace

std::int64_t inner(const LatticeVector& x, const LatticeVector& y) {
  require_same(x.lattice, y.lattice);
  return inner(*x.lattice, std::span<const std::int64_t>(x.coords),
               std::span<const std::int64_t>(y.coords));
}

double inner(const RealVector& x, const RealVector& y) {
  require_same(x.lattice, y.lattice);
  return inner(*x.lattice, std::span<const double>(x.coords), std::span<const double>(y.coords));
}

double inner(const LatticeVector& x, const RealVector& y) {
  require_same(x.lattice, y.lattice);
  return inner(*x.lattice, std::span<const std::int64_t>(x.coords),
               std::span<const double>(y.coords));
}

std::vector<std::int64_t> gram_times(const GramLattice& k, std::span<const std::int64_t> x) {
  const int m = k.rank();
  std::vector<std::int64_t> out(m, 0);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) out[i] = checked_mul_add(out[i], k.gram(i, j), x[j]);
  return out;
}

std::vector<double> gram_times(const GramLattice& k, std::span<const double> x) {
  const int m = k.rank();
  std::vector<double> out(m, 0.0);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) out[i] += static_cast<double>(k.gram(i, j)) * x[j];
  return out;
}

Content content(std::span<const std::int64_t> coords) {
  std::int64_t g = 0;
  for (auto c : coords) g = arith::gcd(g, c);
  if (g == 0) return {};
  return {g};
}

Content content(const LatticeVector& v) { return content(std::span<const std::int64_t>(v.coords)); }

arith::BigInt determinant(int n, const std::vector<std::int64_t>& m) {
  using arith::BigInt;
  if (n == 0) return 1;
  // Fraction-free Bareiss elimination.
  std::vector<BigInt> a(m.begin(), m.end());
  auto at = [&](int i, int j) -> BigInt& { return a[static_cast<std::size_t>(i) * n + j]; };
  BigInt prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (at(k, k) == 0) {
      int swap = -1;
      for (int i = k + 1; i < n; ++i)
        if (at(i, k) != 0) {
          swap = i;
          break;
        }
      if (swap < 0) return 0;
      for (int j = 0; j < n; ++j) std::swap(at(k, j), at(swap, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) at(i, j) = (at(i, j) * at(k, k) - at(i, k) * at(k, j)) / prev;
    prev = at(k, k);
  }
  return sign * at(n - 1, n - 1);
}

Signature inertia(int n, const std::vector<std::int64_t>& m) {
  Signature s;
  if (n == 0) return s;
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = static_cast<double>(m[static_cast<std::size_t>(i) * n + j]);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, Eigen::EigenvaluesOnly);
  for (int i = 0; i < n; ++i) (es.eigenvalues()(i) > 0 ? s.positive : s.negative)++;
  return s;
}

LatticeHandle rank_zero() {
  static const LatticeHandle k =
      std::make_shared<const GramLattice>("zero", 0, std::vector<std::int64_t>{}, Signature{});
  return k;
}

LatticeHandle direct_sum(const LatticeHandle& a, const LatticeHandle& b) {
  const int ra = a->rank(), rb = b->rank(), r = ra + rb;
  std::vector<std::int64_t> g(static_cast<std::size_t>(r) * r, 0);
  for (int i = 0; i < ra; ++i)
    for (int j = 0; j < ra; ++j) g[static_cast<std::size_t>(i) * r + j] = a->gram(i, j);
  for (int i = 0; i < rb; ++i)
    for (int j = 0; j < rb; ++j) g[static_cast<std::size_t>(ra + i) * r + ra + j] = b->gram(i, j);
  const Signature sig{a->signature().positive + b->signature().positive,
                      a->signature().negative + b->signature().negative};
  return std::make_shared<const GramLattice>(a->name() + "+" + b->name(), r, std::move(g), sig);
}

LatticeHandle construct_ii11() {
  static const LatticeHandle k = std::make_shared<const GramLattice>(
      "ii11", 2, std::vector<std::int64_t>{0, -1, -1, 0}, Signature{1, 1});
  return k;
}

LatticeHandle construct_e8() {
  static const LatticeHandle k = [] {
    // Bourbaki labelling: chain 1-3-4-5-6-7-8 with node 2 attached to node 4.
    const int edges[][2] = {{1, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {7, 8}, {2, 4}};
    std::vector<std::int64_t> g(64, 0);
    for (int i = 0; i < 8; ++i) g[i * 8 + i] = 2;
    for (auto [u, v] : edges) {
      g[(u - 1) * 8 + (v - 1)] = -1;
      g[(v - 1) * 8 + (u - 1)] = -1;
    }
    auto e8 = std::make_shared<const GramLattice>("e8", 8, std::move(g), Signature{8, 0});
    certify_shells(*e8, 4);
    return LatticeHandle(e8);
  }();
  return k;
}

std::vector<std::uint32_t> golay_generators() {
  // Cyclic quadratic-residue code of length 23, extended by an overall parity bit.
  constexpr std::uint32_t kPoly = 0xC75;
  std::vector<std::uint32_t> rows;
  for (int i = 0; i < 12; ++i) {
    std::uint32_t w = kPoly << i;
    if (std::popcount(w) % 2 == 1) w |= 1u << 23;
    rows.push_back(w);
  }
  return rows;
}

const std::vector<std::uint32_t>& golay_codewords() {
  static const std::vector<std::uint32_t> words = [] {
    const auto gens = golay_generators();
    std::vector<std::uint32_t> out;
    out.reserve(4096);
    for (std::uint32_t mask = 0; mask < 4096; ++mask) {
      std::uint32_t w = 0;
      for (int i = 0; i < 12; ++i)
        if (mask >> i & 1) w ^= gens[i];
      out.push_back(w);
    }
    std::sort(out.begin(), out.end());
    std::array<int, 25> dist{};
    for (auto w : out) dist[std::popcount(w)]++;
    if (dist[0] != 1 || dist[8] != 759 || dist[12] != 2576 || dist[16] != 759 || dist[24] != 1)
      throw IntegrityError("Golay code has the wrong weight distribution");
    return out;
  }();
  return words;
}

namespace {

using Mat = std::vector<std::vector<std::int64_t>>;

// Row echelon form over Z by repeated Euclidean reduction; returns the nonzero rows.
Mat integer_echelon(Mat rows, int cols) {
  std::size_t r = 0;
  for (int c = 0; c < cols && r < rows.size(); ++c) {
    while (true) {
      std::size_t best = rows.size();
      for (std::size_t i = r; i < rows.size(); ++i)
        if (rows[i][c] != 0 && (best == rows.size() || std::llabs(rows[i][c]) < std::llabs(rows[best][c])))
          best = i;
      if (best == rows.size()) break;
      std::swap(rows[r], rows[best]);
      bool done = true;
      for (std::size_t i = r + 1; i < rows.size(); ++i) {
        if (rows[i][c] == 0) continue;
        const std::int64_t q = rows[i][c] / rows[r][c];
        for (int t = 0; t < cols; ++t) rows[i][t] -= q * rows[r][t];
        if (rows[i][c] != 0) done = false;
      }
      if (done) break;
    }
    if (r < rows.size() && rows[r][c] != 0) {
      if (rows[r][c] < 0)
        for (auto& v : rows[r]) v = -v;
      for (std::size_t i = 0; i < r; ++i) {
        const std::int64_t q = rows[i][c] >= 0 ? rows[i][c] / rows[r][c]
                                               : -((-rows[i][c] + rows[r][c] - 1) / rows[r][c]);
        for (int t = 0; t < cols; ++t) rows[i][t] -= q * rows[r][t];
      }
      ++r;
    }
  }
  rows.resize(r);
  return rows;
}

std::int64_t dot(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b) {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Textbook LLL (delta = 0.99) on integer rows; Gram-Schmidt data recomputed in
// long double, which is exact enough for the small entries involved.
void lll_reduce(Mat& b) {
  const int n = static_cast<int>(b.size());
  constexpr long double kDelta = 0.99L;
  std::vector<std::vector<long double>> mu(n, std::vector<long double>(n, 0.0L));
  std::vector<long double> bstar(n, 0.0L);
  auto gso = [&] {
    std::vector<std::vector<long double>> bs(n);
    for (int i = 0; i < n; ++i) {
      bs[i].assign(b[i].begin(), b[i].end());
      for (int j = 0; j < i; ++j) {
        long double d = 0.0L;
        for (std::size_t t = 0; t < b[i].size(); ++t) d += b[i][t] * bs[j][t];
        mu[i][j] = d / bstar[j];
        for (std::size_t t = 0; t < b[i].size(); ++t) bs[i][t] -= mu[i][j] * bs[j][t];
      }
      bstar[i] = 0.0L;
      for (auto v : bs[i]) bstar[i] += v * v;
    }
  };
  gso();
  int k = 1;
  int guard = 0;
  while (k < n) {
    if (++guard > 1000000) throw Error("LLL failed to terminate");
    for (int j = k - 1; j >= 0; --j) {
      const long double q = std::round(mu[k][j]);
      if (q != 0.0L) {
        const auto qi = static_cast<std::int64_t>(q);
        for (std::size_t t = 0; t < b[k].size(); ++t) b[k][t] -= qi * b[j][t];
        gso();
      }
    }
    if (bstar[k] >= (kDelta - mu[k][k - 1] * mu[k][k - 1]) * bstar[k - 1]) {
      ++k;
    } else {
      std::swap(b[k], b[k - 1]);
      gso();
      k = std::max(k - 1, 1);
    }
  }
}

}  // namespace

LatticeHandle construct_leech() {
  static const LatticeHandle k = [] {
    constexpr int n = 24;
    Mat gens;
    for (auto w : golay_generators()) {
      std::vector<std::int64_t> row(n, 0);
      for (int i = 0; i < n; ++i) row[i] = (w >> i & 1) ? 2 : 0;
      gens.push_back(row);
    }
    for (int i = 1; i < n; ++i) {
      std::vector<std::int64_t> plus(n, 0), minus(n, 0);
      plus[0] = 4;
      plus[i] = 4;
      minus[0] = 4;
      minus[i] = -4;
      gens.push_back(plus);
      gens.push_back(minus);
    }
    {
      std::vector<std::int64_t> odd(n, 1);
      odd[0] = -3;
      gens.push_back(odd);
    }
    Mat basis = integer_echelon(gens, n);
    if (static_cast<int>(basis.size()) != n) throw IntegrityError("Leech generators have wrong rank");
    std::sort(basis.begin(), basis.end(),
              [](const auto& a, const auto& b) { return dot(a, a) < dot(b, b); });
    lll_reduce(basis);

    Embedding emb;
    emb.ambient_dim = n;
    emb.denominator = 8;
    std::vector<std::int64_t> gram(n * n);
    for (int i = 0; i < n; ++i) {
      emb.basis.insert(emb.basis.end(), basis[i].begin(), basis[i].end());
      for (int j = 0; j < n; ++j) {
        const std::int64_t d = dot(basis[i], basis[j]);
        if (d % 8 != 0) throw IntegrityError("Leech basis is not integral");
        gram[i * n + j] = d / 8;
      }
    }
    auto leech = std::make_shared<const GramLattice>("leech", n, std::move(gram), Signature{24, 0},
                                                     std::move(emb));
    if (!leech->even() || leech->det() != 1) throw IntegrityError("Leech lattice is not even unimodular");
    certify_shells(*leech, 4);
    const auto cert = leech->certificates();
    const auto it = cert.shell_counts.find(4);
    if (cert.min_norm != 4 || it == cert.shell_counts.end() || it->second != 196560)
      throw IntegrityError("Leech lattice failed the norm-4 certificate");
    return LatticeHandle(leech);
  }();
  return k;
}

LatticeHandle change_basis(const LatticeHandle& k, const std::vector<std::int64_t>& u,
                           const std::string& name) {
  const int m = k->rank();
  if (u.size() != static_cast<std::size_t>(m) * m) throw UsageError("change_basis: U has wrong size");
  const auto d = determinant(m, u);
  if (d != 1 && d != -1) throw UsageError("change_basis: U is not unimodular");
  std::vector<std::int64_t> ug(static_cast<std::size_t>(m) * m, 0), g(ug.size(), 0);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int t = 0; t < m; ++t)
        ug[i * m + j] = checked_mul_add(ug[i * m + j], u[i * m + t], k->gram(t, j));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int t = 0; t < m; ++t) g[i * m + j] = checked_mul_add(g[i * m + j], ug[i * m + t], u[j * m + t]);
  std::optional<Embedding> emb;
  if (k->embedding()) {
    const auto& old = *k->embedding();
    Embedding e;
    e.ambient_dim = old.ambient_dim;
    e.denominator = old.denominator;
    e.basis.assign(static_cast<std::size_t>(m) * old.ambient_dim, 0);
    for (int i = 0; i < m; ++i)
      for (int t = 0; t < m; ++t)
        for (int a = 0; a < old.ambient_dim; ++a)
          e.basis[i * old.ambient_dim + a] += u[i * m + t] * old.row(t)[a];
    emb = std::move(e);
  }
  auto out = std::make_shared<const GramLattice>(name, m, std::move(g), k->signature(), std::move(emb));
  const auto cert = k->certificates();
  if (auto r = k->certified_radius()) out->attach_shell_certificate(cert.shell_counts, *r);
  return out;
}

LatticeHandle permuted_basis(const LatticeHandle& k, const std::vector<int>& perm,
                             const std::vector<int>& signs, const std::string& name) {
  const int m = k->rank();
  if (static_cast<int>(perm.size()) != m || static_cast<int>(signs.size()) != m)
    throw UsageError("permuted_basis: permutation has wrong length");
  std::vector<std::int64_t> u(static_cast<std::size_t>(m) * m, 0);
  std::vector<bool> seen(m, false);
  for (int i = 0; i < m; ++i) {
    if (perm[i] < 0 || perm[i] >= m || seen[perm[i]] || (signs[i] != 1 && signs[i] != -1))
      throw UsageError("permuted_basis: not a signed permutation");
    seen[perm[i]] = true;
    u[i * m + perm[i]] = signs[i];
  }
  return change_basis(k, u, name);
}

LatticeHandle named_lattice(const std::string& name) {
  if (name.find('+') != std::string::npos) {
    LatticeHandle acc;
    std::stringstream ss(name);
    std::string part;
    while (std::getline(ss, part, '+')) {
      auto k = named_lattice(part);
      acc = acc ? direct_sum(acc, k) : k;
    }
    if (!acc) throw UsageError("empty lattice name");
    return acc;
  }
  if (name == "ii11") return construct_ii11();
  if (name == "e8") return construct_e8();
  if (name == "leech") return construct_leech();
  if (name == "leech-permuted") {
    static const LatticeHandle k = [] {
      std::vector<int> perm(24), signs(24);
      for (int i = 0; i < 24; ++i) {
        perm[i] = (5 * i + 7) % 24;
        signs[i] = (i % 3 == 0) ? -1 : 1;
      }
      return permuted_basis(construct_leech(), perm, signs, "leech-permuted");
    }();
    return k;
  }
  if (name == "zero") return rank_zero();
  throw UsageError("unknown lattice '" + name + "' (expected ii11, e8, leech, leech-permuted)");
}

nlohmann::json descriptor_json(const GramLattice& k) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < k.rank(); ++i) {
    auto r = k.gram_row(i);
    rows.push_back(std::vector<std::int64_t>(r.begin(), r.end()));
  }
  const auto cert = k.certificates();
  nlohmann::json shells = nlohmann::json::object();
  for (const auto& [nrm, count] : cert.shell_counts) shells[std::to_string(nrm)] = count;
  nlohmann::json j{{"name", k.name()},
                   {"rank", k.rank()},
                   {"gram", rows},
                   {"even", k.even()},
                   {"signature", {k.signature().positive, k.signature().negative}},
                   {"det", k.det().str()},
                   {"unimodular", k.unimodular()},
                   {"hash", k.hash()},
                   {"hasEmbedding", k.embedding().has_value()}};
  j["certificates"] = {{"certifiedRadius", k.certified_radius() ? nlohmann::json(*k.certified_radius())
                                                                : nlohmann::json(nullptr)},
                       {"minNorm", cert.min_norm ? nlohmann::json(*cert.min_norm) : nlohmann::json(nullptr)},
                       {"shellCounts", shells}};
  return j;
}

}  // namespace leechps::lattice
