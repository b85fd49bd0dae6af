#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "leechps/arith.hpp"

namespace leechps::lattice {

using Coords = std::vector<std::int64_t>;

struct Signature {
  int positive = 0;
  int negative = 0;
  friend bool operator==(const Signature&, const Signature&) = default;
};

// Basis rows expressed in an ambient Z^N whose inner product is (x.y)/denominator.
struct Embedding {
  int ambient_dim = 0;
  std::int64_t denominator = 1;
  std::vector<std::int64_t> basis;  // rank x ambient_dim, row-major

  std::span<const std::int64_t> row(int i) const {
    return {basis.data() + static_cast<std::size_t>(i) * ambient_dim,
            static_cast<std::size_t>(ambient_dim)};
  }
};

struct Certificates {
  arith::BigInt det;
  bool even = false;
  std::optional<std::int64_t> min_norm;
  std::map<std::int64_t, std::uint64_t> shell_counts;
};

// An even (or odd) nonsingular integral lattice given by its Gram matrix.
// Values are immutable once constructed; shell-count certificates may be
// attached once and are then read-only.
class GramLattice {
 public:
  GramLattice(std::string name, int rank, std::vector<std::int64_t> gram,
              Signature signature_hint, std::optional<Embedding> embedding = {});

  const std::string& name() const { return name_; }
  int rank() const { return rank_; }
  std::int64_t gram(int i, int j) const {
    return gram_[static_cast<std::size_t>(i) * rank_ + j];
  }
  std::span<const std::int64_t> gram_row(int i) const {
    return {gram_.data() + static_cast<std::size_t>(i) * rank_,
            static_cast<std::size_t>(rank_)};
  }
  const std::vector<std::int64_t>& gram_matrix() const { return gram_; }

  bool even() const { return even_; }
  Signature signature() const { return signature_; }
  bool positive_definite() const { return signature_.negative == 0; }
  const arith::BigInt& det() const { return det_; }
  bool unimodular() const { return det_ == 1 || det_ == -1; }
  const std::optional<Embedding>& embedding() const { return embedding_; }

  // SHA-256 of the canonical Gram serialisation, hex encoded.
  const std::string& hash() const { return hash_; }

  Certificates certificates() const;

  // Attach exact shell counts {norm -> count} (all norms <= radius) and the
  // minimal nonzero norm found. First call wins; later calls must agree.
  void attach_shell_certificate(std::map<std::int64_t, std::uint64_t> counts,
                                std::int64_t certified_radius) const;
  std::optional<std::int64_t> certified_radius() const;

 private:
  std::string name_;
  int rank_;
  std::vector<std::int64_t> gram_;
  bool even_;
  Signature signature_;
  arith::BigInt det_;
  std::optional<Embedding> embedding_;
  std::string hash_;

  mutable std::mutex cert_mutex_;
  mutable std::map<std::int64_t, std::uint64_t> shell_counts_;
  mutable std::optional<std::int64_t> certified_radius_;
};

using LatticeHandle = std::shared_ptr<const GramLattice>;

struct LatticeVector {
  LatticeHandle lattice;
  Coords coords;
};

struct RealVector {
  LatticeHandle lattice;
  std::vector<double> coords;
};

// c(lambda): the largest c with lambda in cM; `all` for the zero vector so
// that every n divides it.
struct Content {
  std::optional<std::int64_t> value;  // nullopt encodes `all`

  bool is_all() const { return !value.has_value(); }
  bool divisible_by(std::int64_t n) const { return is_all() || *value % n == 0; }
  // p-adic valuation; nullopt for `all`.
  std::optional<int> valuation(std::int64_t p) const;
  friend bool operator==(const Content&, const Content&) = default;
};

LatticeVector make_vector(const LatticeHandle& k, Coords coords);
RealVector make_real_vector(const LatticeHandle& k, std::vector<double> coords);

std::int64_t inner(const GramLattice& k, std::span<const std::int64_t> x,
                   std::span<const std::int64_t> y);
double inner(const GramLattice& k, std::span<const double> x, std::span<const double> y);
double inner(const GramLattice& k, std::span<const std::int64_t> x, std::span<const double> y);
std::int64_t norm(const GramLattice& k, std::span<const std::int64_t> x);
double norm(const GramLattice& k, std::span<const double> x);

// Checked variants for handle-carrying vectors; mismatched lattices throw UsageError.
std::int64_t inner(const LatticeVector& x, const LatticeVector& y);
double inner(const RealVector& x, const RealVector& y);
double inner(const LatticeVector& x, const RealVector& y);

// G x for integral x (used for incremental phase and norm updates).
std::vector<std::int64_t> gram_times(const GramLattice& k, std::span<const std::int64_t> x);
std::vector<double> gram_times(const GramLattice& k, std::span<const double> x);

Content content(std::span<const std::int64_t> coords);
Content content(const LatticeVector& v);

arith::BigInt determinant(int n, const std::vector<std::int64_t>& m);
Signature inertia(int n, const std::vector<std::int64_t>& m);

LatticeHandle direct_sum(const LatticeHandle& a, const LatticeHandle& b);
LatticeHandle rank_zero();
LatticeHandle construct_ii11();
LatticeHandle construct_e8();
// Process-wide singleton: built from the extended Golay code and certified
// (even, det 1, min norm 4, 196560 norm-4 vectors) on first use.
LatticeHandle construct_leech();
// Lattice with basis u_i = sum_j U_ij b_j for a unimodular integer U; embedding
// rows are transformed accordingly.
LatticeHandle change_basis(const LatticeHandle& k, const std::vector<std::int64_t>& u,
                           const std::string& name);
// Signed coordinate permutation of the basis (an easy unimodular U).
LatticeHandle permuted_basis(const LatticeHandle& k, const std::vector<int>& perm,
                             const std::vector<int>& signs, const std::string& name);

// "ii11", "e8", "leech", "leech-permuted", and '+'-joined direct sums like "e8+ii11".
LatticeHandle named_lattice(const std::string& name);

nlohmann::json descriptor_json(const GramLattice& k);

// Lowercase hex SHA-256, as used for lattice hashes and cache payloads.
std::string sha256_hex(std::string_view data);

// Extended binary Golay code [24, 12, 8] as bit masks (bit i = coordinate i).
const std::vector<std::uint32_t>& golay_codewords();
// Rows of a generator matrix for the code.
std::vector<std::uint32_t> golay_generators();

}  // namespace leechps::lattice
