#pragma once

// Double representations of a face poset: a rational vector space E_C per
// face, generization maps gamma(C' -> C) and specialization maps
// delta(C -> C') for every comparable pair C' <= C.
//
// Convention: for C' <= C, gamma(C', C) : E_{C'} -> E_C is dims(C) x dims(C')
// and delta(C, C') : E_C -> E_{C'} is dims(C') x dims(C). Monotonicity reads
// gamma(C', C) * delta(C, C') = Id on E_C.

#include <string>
#include <vector>

#include "aperv/arrangement.hpp"
#include "aperv/exactgeom.hpp"

namespace aperv {

class StructuralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Violation {
  std::string relation;
  std::vector<std::string> faces;  // sign strings of the witness faces
  std::string detail;

  friend bool operator==(const Violation&, const Violation&) = default;
};

using ViolationReport = std::vector<Violation>;

/// Maps keyed by a Hasse edge (lower, upper).
struct EdgeMaps {
  std::vector<QMatrix> gamma;  // gamma[k] for hasse()[k]: E_lower -> E_upper
  std::vector<QMatrix> delta;  // delta[k] for hasse()[k]: E_upper -> E_lower
};

class DoubleRep {
 public:
  /// Zero maps of the declared shapes on every comparable pair, identities
  /// on the diagonal.
  DoubleRep(PosetPtr poset, std::vector<int> dims);

  /// Builds all-pairs maps as composites along one canonical Hasse path per
  /// pair. Path independence is not assumed; validate_structure checks it.
  /// Throws StructuralError on a shape mismatch.
  static DoubleRep from_hasse(PosetPtr poset, std::vector<int> dims, const EdgeMaps& edges);

  const FacePoset& poset() const { return *poset_; }
  const PosetPtr& poset_ptr() const { return poset_; }
  const std::vector<int>& dims() const { return dims_; }
  int dim(FaceId c) const { return dims_.at(c); }
  int total_dim() const;
  bool is_zero() const { return total_dim() == 0; }

  /// gamma_{lower, upper}; requires lower <= upper.
  const QMatrix& gamma(FaceId lower, FaceId upper) const;
  /// delta_{upper, lower}; requires lower <= upper.
  const QMatrix& delta(FaceId upper, FaceId lower) const;

  /// Throws StructuralError when the shape is wrong or the pair is not comparable.
  void set_gamma(FaceId lower, FaceId upper, QMatrix m);
  void set_delta(FaceId upper, FaceId lower, QMatrix m);

  EdgeMaps hasse_maps() const;

  /// Same poset, dims and maps on every comparable pair.
  bool operator==(const DoubleRep& other) const;

 private:
  std::size_t slot(FaceId lower, FaceId upper) const;

  PosetPtr poset_;
  std::vector<int> dims_;
  std::vector<QMatrix> gamma_;  // indexed lower * n + upper
  std::vector<QMatrix> delta_;
};

/// Identity and composition axioms, and declared shapes, on every chain.
ViolationReport validate_structure(const DoubleRep& rep);

/// gamma_{0,B} * delta_{A,0} through the origin face.
QMatrix phi(const DoubleRep& rep, FaceId a, FaceId b);
/// gamma_{C,B} * delta_{A,C} through a common lower bound C.
QMatrix phi_through(const DoubleRep& rep, FaceId a, FaceId b, FaceId lower);

ViolationReport check_monotonicity(const DoubleRep& rep);
ViolationReport check_transitivity(const DoubleRep& rep);
ViolationReport check_invertibility(const DoubleRep& rep);
/// Structure plus the three relations.
ViolationReport is_in_J(const DoubleRep& rep);

/// Transposes: new gamma(C', C) = delta(C, C')^T, new delta = gamma^T.
DoubleRep dual(const DoubleRep& rep);

/// Throws DomainError when the posets differ.
DoubleRep direct_sum(const DoubleRep& a, const DoubleRep& b);

DoubleRep constant_rep(PosetPtr poset, int r);
DoubleRep skyscraper_rep(PosetPtr poset, FaceId face, int r);
DoubleRep zero_rep(PosetPtr poset);

struct RepMorphism {
  DoubleRep source;
  DoubleRep target;
  std::vector<QMatrix> components;  // per face: dims_target(C) x dims_source(C)
};

/// Intertwining on every Hasse edge (hence on every comparable pair).
bool is_intertwining(const RepMorphism& m);

struct HomSpace {
  std::size_t dimension = 0;
  std::vector<RepMorphism> basis;
};

/// Throws DomainError when the posets differ.
HomSpace hom_space(const DoubleRep& source, const DoubleRep& target);

struct KernelCokernel {
  DoubleRep kernel;
  DoubleRep cokernel;
  std::vector<QMatrix> kernel_inclusion;     // per face: dims_source x dims_kernel
  std::vector<QMatrix> cokernel_projection;  // per face: dims_cokernel x dims_target
};

/// Throws DomainError when the morphism does not intertwine.
KernelCokernel kernel_cokernel(const RepMorphism& m);

struct SimplicityCertificate {
  bool simple = false;
  std::size_t algebra_dim = 0;
  std::size_t total_dim = 0;
};

/// Burnside test: the algebra generated by the face idempotents and the
/// block-embedded gamma/delta maps is all of End(sum E_C) iff the
/// representation is absolutely simple. Throws DomainError on the zero rep.
SimplicityCertificate is_absolutely_simple(const DoubleRep& rep);

}  // namespace aperv
