#pragma once

// Central rational hyperplane arrangements, their faces (realizable sign
// vectors), the closure order on faces, and the two geometric predicates on
// faces used by the quiver relations: collinear triples and opposed pairs.

#include <compare>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "aperv/exactgeom.hpp"

namespace aperv {

enum class Sign : std::int8_t { Minus = -1, Zero = 0, Plus = 1 };

char to_char(Sign s);
Sign sign_of(const Rational& q);
inline Sign operator-(Sign s) { return static_cast<Sign>(-static_cast<std::int8_t>(s)); }

/// Signs of the defining functionals at a point, in hyperplane order.
/// Ordered lexicographically with 0 < - < +.
class SignVector {
 public:
  SignVector() = default;
  explicit SignVector(std::vector<Sign> signs) : signs_(std::move(signs)) {}

  /// Parses a string over "+-0". Throws MalformedInput on any other character.
  static SignVector parse(std::string_view text);
  std::string str() const;

  std::size_t size() const { return signs_.size(); }
  Sign operator[](std::size_t h) const { return signs_[h]; }
  Sign& operator[](std::size_t h) { return signs_[h]; }
  auto begin() const { return signs_.begin(); }
  auto end() const { return signs_.end(); }
  void push_back(Sign s) { signs_.push_back(s); }
  void pop_back() { signs_.pop_back(); }

  bool has_zero() const;

  friend bool operator==(const SignVector&, const SignVector&) = default;
  friend std::strong_ordering operator<=>(const SignVector& a, const SignVector& b);

 private:
  std::vector<Sign> signs_;
};

struct Hyperplane {
  std::string label;
  QVector normal;

  friend bool operator==(const Hyperplane&, const Hyperplane&) = default;
};

/// A central arrangement inside the subspace cut out by `subspace` rows.
/// Construction rejects zero normals, wrong lengths and non-essential input.
class Arrangement {
 public:
  Arrangement(Eigen::Index ambient_dim, QMatrix subspace, std::vector<Hyperplane> hyperplanes);

  Eigen::Index ambient_dim() const { return ambient_dim_; }
  const QMatrix& subspace() const { return subspace_; }
  const std::vector<Hyperplane>& hyperplanes() const { return hyperplanes_; }
  std::size_t size() const { return hyperplanes_.size(); }
  /// Dimension of the subspace the arrangement lives in.
  Eigen::Index dimension() const { return dimension_; }

  /// Set for arrangements built by braid_arrangement.
  std::optional<int> braid_rank() const { return braid_rank_; }

  bool operator==(const Arrangement& other) const;

 private:
  friend Arrangement braid_arrangement(int n);

  Eigen::Index ambient_dim_;
  QMatrix subspace_;
  std::vector<Hyperplane> hyperplanes_;
  Eigen::Index dimension_;
  std::optional<int> braid_rank_;
};

/// The type A_n braid arrangement: hyperplanes x_i = x_j (i < j) inside
/// sum(x) = 0 in Q^{n+1}, labelled "L(i,j)", in lexicographic order.
Arrangement braid_arrangement(int n);

/// The same arrangement in the coordinates y_1..y_n (x_{n+1} = -sum y):
/// L(i,j) becomes "A(i,j)" = y_i - y_j for j <= n and L(i,n+1) becomes
/// "B(i)" = 2 y_i + sum_{k != i} y_k. Hyperplane order matches braid_arrangement.
Arrangement rn_chart(int n);

/// Throws DomainError when the point does not lie in the subspace.
SignVector sign_vector(const Arrangement& arr, const QVector& point);

struct Face {
  SignVector sign;
  int dim = 0;
  QVector witness;
};

/// Face dimension implied by the zero entries of a sign vector.
int face_dimension(const Arrangement& arr, const SignVector& sv);

/// The face with sign vector `sv`, or nullopt when no point realizes it.
std::optional<Face> realizable(const Arrangement& arr, const SignVector& sv);

/// The cone system used by realizable(): subspace and zero-hyperplane
/// equalities plus sign(H) * f_H >= 1 for the nonzero entries.
LinearSystem face_system(const Arrangement& arr, const SignVector& sv);

using FaceId = std::size_t;

struct CollinearTriple {
  FaceId a, b, c;
  friend bool operator==(const CollinearTriple&, const CollinearTriple&) = default;
};

struct OpposedConfiguration {
  FaceId c1, c2, d;
  friend bool operator==(const OpposedConfiguration&, const OpposedConfiguration&) = default;
};

/// All faces of an arrangement in canonical order (dimension, then sign
/// vector), with the closure order and its covering relation.
class FacePoset {
 public:
  FacePoset(Arrangement arr, std::vector<Face> faces);
  FacePoset(const FacePoset&) = delete;
  FacePoset& operator=(const FacePoset&) = delete;

  const Arrangement& arrangement() const { return arrangement_; }
  const std::vector<Face>& faces() const { return faces_; }
  std::size_t size() const { return faces_.size(); }
  const Face& face(FaceId id) const { return faces_.at(id); }

  std::optional<FaceId> find(const SignVector& sv) const;
  /// Throws DomainError when no face has this sign string.
  FaceId id_of(std::string_view sign) const;

  bool leq(FaceId lower, FaceId upper) const { return order_[lower * faces_.size() + upper] != 0; }
  /// Covering pairs (lower, upper), sorted.
  const std::vector<std::pair<FaceId, FaceId>>& hasse() const { return hasse_; }
  const std::vector<FaceId>& covers_below(FaceId id) const { return below_[id]; }
  const std::vector<FaceId>& covers_above(FaceId id) const { return above_[id]; }

  FaceId origin() const { return origin_; }
  std::vector<FaceId> chambers() const;
  int max_dim() const;

  /// Every collinear triple (a, b, c), computed once.
  const std::vector<CollinearTriple>& collinear_triples() const;
  /// Every opposed configuration (c1, c2, d), computed once.
  const std::vector<OpposedConfiguration>& opposed_configurations() const;

  /// Same arrangement and same faces.
  bool same_as(const FacePoset& other) const;

 private:
  Arrangement arrangement_;
  std::vector<Face> faces_;
  std::unordered_map<std::string, FaceId> index_;
  std::vector<char> order_;
  std::vector<std::pair<FaceId, FaceId>> hasse_;
  std::vector<std::vector<FaceId>> below_;
  std::vector<std::vector<FaceId>> above_;
  FaceId origin_ = 0;

  mutable std::once_flag collinear_once_;
  mutable std::vector<CollinearTriple> collinear_;
  mutable std::once_flag opposed_once_;
  mutable std::vector<OpposedConfiguration> opposed_;
};

using PosetPtr = std::shared_ptr<const FacePoset>;

/// All realizable sign vectors, found by extending feasible prefixes one
/// hyperplane at a time.
PosetPtr enumerate_faces(const Arrangement& arr);

/// Faces of the braid arrangement of rank n.
PosetPtr braid_poset(int n);

/// Ordered set partition of {1..m}; blocks listed by increasing coordinate.
struct OrderedSetPartition {
  std::vector<std::vector<int>> blocks;
  friend bool operator==(const OrderedSetPartition&, const OrderedSetPartition&) = default;
};

std::vector<OrderedSetPartition> ordered_set_partitions(int m);
/// Sign of L(i,j) is 0 when i, j share a block, + when i's block comes later.
SignVector to_sign_vector(const OrderedSetPartition& osp, int n);
/// Inverse of to_sign_vector; throws DomainError when sv is not a braid face.
OrderedSetPartition to_ordered_set_partition(const SignVector& sv, int n);

/// Braid faces generated directly from ordered set partitions of {1..n+1}.
PosetPtr faces_from_osp(int n);

/// Throws DomainError for ids outside the poset.
bool leq(const FacePoset& poset, FaceId lower, FaceId upper);
/// Throws DomainError when either face is not a face of the poset.
bool leq(const FacePoset& poset, const Face& lower, const Face& upper);

/// Componentwise necessary condition for collinear(a, b, c).
bool collinear_prefilter(const SignVector& a, const SignVector& b, const SignVector& c);

/// True iff some segment from a point of `a` to a point of `c` meets `b`.
bool collinear(const FacePoset& poset, FaceId a, FaceId b, FaceId c);

/// True iff c1, c2 are distinct faces of equal dimension d and span, both
/// above the (d-1)-face d, with opposite signs on every hyperplane that
/// vanishes on d but not on c1.
bool opposed(const FacePoset& poset, FaceId c1, FaceId c2, FaceId d);

}  // namespace aperv
