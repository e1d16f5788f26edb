#pragma once

// The embedding of the A_n face poset onto the faces of A_{n+1} lying in a
// hyperplane L(i,j), extension by zero along it, and the checks that the
// extension is a fully faithful exact functor on J compatible with duality
// that sends simple objects to simple objects.

#include <map>
#include <string>
#include <vector>

#include "aperv/arrangement.hpp"
#include "aperv/quiverrep.hpp"

namespace aperv {

class InternalConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct EmbeddingMap {
  PosetPtr source;  // A_n
  PosetPtr target;  // A_{n+1}
  int n = 0;
  int i = 0;
  int j = 0;
  std::vector<FaceId> table;  // source face -> target face

  /// Index of L(i,j) among the target hyperplanes.
  std::size_t hyperplane_index() const;
  /// Inverse table; entries are nullopt off the image.
  std::vector<std::optional<FaceId>> preimage() const;
};

/// Index of L(i,j) in the canonical hyperplane order of A_n.
std::size_t braid_hyperplane_index(int n, int i, int j);

/// Combinatorial construction on ordered set partitions: relabel {1..n+1}
/// onto {1..n+2} \ {j} order-preservingly, then put j in the block of i.
/// Throws DomainError unless 1 <= i < j <= n+2, and
/// InternalConsistencyError if the table fails verify_order_embedding.
EmbeddingMap iota_braid(int n, int i, int j);

/// Geometric construction: push each source witness through the linear map
/// V^n -> L(i,j) that duplicates the coordinate of i into slot j, and read
/// off the target face containing the image.
EmbeddingMap iota_geometric(int n, int i, int j);

/// The linear map used by iota_geometric, as an (n+2) x (n+1) matrix.
QMatrix duplication_map(int n, int i, int j);

struct Check {
  std::string name;
  bool passed = true;
  std::string detail;
};

struct CheckReport {
  std::vector<Check> checks;
  bool passed() const;
  void add(std::string name, bool ok, std::string detail = {});
};

/// injective, order-preserving (both directions), image = zero set of L(i,j),
/// downward-closed, dimension-preserving.
CheckReport verify_order_embedding(const EmbeddingMap& emb);

struct FunctorResult {
  DoubleRep output;
  EmbeddingMap provenance;
};

/// Extension by zero. Throws DomainError when rep does not live on emb.source.
FunctorResult phi_functor(const DoubleRep& rep, const EmbeddingMap& emb);

/// Extension by zero of a morphism between reps on the source poset.
RepMorphism phi_functor(const RepMorphism& m, const EmbeddingMap& emb);

/// Pulls dims and maps back along the embedding. Throws DomainError when
/// rep has support off the image.
DoubleRep restrict_along(const DoubleRep& rep, const EmbeddingMap& emb);

CheckReport verify_functor_preserves_J(const DoubleRep& rep, const EmbeddingMap& emb);
CheckReport verify_fully_faithful(const DoubleRep& rep1, const DoubleRep& rep2, const EmbeddingMap& emb);
CheckReport verify_duality_commutes(const DoubleRep& rep, const EmbeddingMap& emb);
/// Also reports the exactness checks: direct sums and facewise kernels and
/// cokernels of a morphism commute with the functor.
CheckReport verify_exactness(const RepMorphism& m, const EmbeddingMap& emb);

struct SimpleToSimple {
  SimplicityCertificate source;
  SimplicityCertificate image;
  CheckReport report;
};
/// Throws DomainError on the zero rep.
SimpleToSimple verify_simple_to_simple(const DoubleRep& rep, const EmbeddingMap& emb);

/// Dimension of the space on each chamber.
std::map<FaceId, int> open_cell_profile(const DoubleRep& rep);

struct CorollaryVerdict {
  bool chamber_dims_ok = true;  // every chamber has dimension 0 or 1
  bool zero_profile = false;    // every chamber has dimension 0
  bool restriction_applicable = false;
  std::vector<std::pair<int, int>> covering_hyperplanes;  // (i, j), canonical order
  std::optional<std::pair<int, int>> recovered_via;
  bool recovered_in_J = false;
  bool round_trip_ok = false;
  bool wall_bound_checked = false;
  bool wall_bound_ok = true;  // dim <= 2 on every 1-dimensional face (A_2 only)
  std::vector<std::string> violations;

  bool theorem_violation() const { return !violations.empty(); }
};

/// Open-cell and wall-dimension statements for an absolutely simple rep in J
/// on a braid poset A_m. For a zero open-cell profile with m >= 2, finds every
/// L(i,j) whose image contains the support, restricts along the first one and
/// checks that extending back reproduces the input exactly.
CorollaryVerdict corollary_analysis(const DoubleRep& rep);

}  // namespace aperv
