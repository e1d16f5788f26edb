#pragma once

// Representations shared by the unit tests and the acceptance binary.

#include <string>
#include <utility>
#include <vector>

#include "aperv/embedfunctor.hpp"
#include "aperv/quiverrep.hpp"

namespace fixture {

using namespace aperv;

inline QMatrix mat(Eigen::Index rows, Eigen::Index cols, std::initializer_list<long> xs) {
  QMatrix m(rows, cols);
  auto it = xs.begin();
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = Rational(*it++);
  }
  return m;
}

/// A_1 rep in J that is not self-dual: E_0 = k^2, E_+ = E_- = k,
/// gamma(0,+) = [1 0], gamma(0,-) = [1 1], delta(+-,0) = [1 0]^T.
inline DoubleRep twisted_a1() {
  const PosetPtr p = braid_poset(1);
  const FaceId o = p->id_of("0"), plus = p->id_of("+"), minus = p->id_of("-");
  std::vector<int> dims(p->size(), 1);
  dims[o] = 2;
  DoubleRep rep(p, dims);
  rep.set_gamma(o, plus, mat(1, 2, {1, 0}));
  rep.set_delta(plus, o, mat(2, 1, {1, 0}));
  rep.set_gamma(o, minus, mat(1, 2, {1, 1}));
  rep.set_delta(minus, o, mat(2, 1, {1, 0}));
  return rep;
}

/// constant(1) on A_1 with delta(+, 0) = 0: monotonicity fails at (0, +).
inline DoubleRep broken_monotonicity_a1() {
  DoubleRep rep = constant_rep(braid_poset(1), 1);
  const FacePoset& p = rep.poset();
  rep.set_delta(p.id_of("+"), p.id_of("0"), mat(1, 1, {0}));
  return rep;
}

/// E_0 = E_+ = k, E_- = 0 on A_1: phi between the opposed chambers is 0 x 1.
inline DoubleRep broken_invertibility_a1() {
  const PosetPtr p = braid_poset(1);
  std::vector<int> dims(p->size(), 1);
  dims[p->id_of("-")] = 0;
  DoubleRep rep(p, dims);
  rep.set_gamma(p->id_of("0"), p->id_of("+"), mat(1, 1, {1}));
  rep.set_delta(p->id_of("+"), p->id_of("0"), mat(1, 1, {1}));
  return rep;
}

/// Collinear triple of A_2 expected in the transitivity report of
/// broken_transitivity_a2: two rays and the chamber between them.
inline const std::vector<std::string> kTransitivityWitness{"--0", "---", "0--"};

/// A_2 rep with E_0 and every ray equal to k, chambers 0, all maps between
/// nonzero spaces 1. Monotonicity and invertibility hold, but transport from
/// ray to ray through a chamber factors through zero.
inline DoubleRep broken_transitivity_a2() {
  const PosetPtr p = braid_poset(2);
  std::vector<int> dims(p->size(), 0);
  dims[p->origin()] = 1;
  for (FaceId f = 0; f < p->size(); ++f) {
    if (p->face(f).dim == 1) dims[f] = 1;
  }
  DoubleRep rep(p, dims);
  for (FaceId f = 0; f < p->size(); ++f) {
    if (p->face(f).dim != 1) continue;
    rep.set_gamma(p->origin(), f, mat(1, 1, {1}));
    rep.set_delta(f, p->origin(), mat(1, 1, {1}));
  }
  return rep;
}

/// Hasse edge of A_2 whose gamma is doubled in broken_composition_a2.
inline std::pair<const char*, const char*> kDoubledEdge{"000", "0--"};

/// constant(1) on A_2 with gamma doubled on one Hasse edge from the origin.
/// The chamber above that ray has a second Hasse path through another ray.
inline DoubleRep broken_composition_a2() {
  const DoubleRep c = constant_rep(braid_poset(2), 1);
  const FacePoset& p = c.poset();
  EdgeMaps edges = c.hasse_maps();
  const std::pair<FaceId, FaceId> target{p.id_of(kDoubledEdge.first), p.id_of(kDoubledEdge.second)};
  for (std::size_t k = 0; k < p.hasse().size(); ++k) {
    if (p.hasse()[k] == target) edges.gamma[k] = mat(1, 1, {2});
  }
  return DoubleRep::from_hasse(c.poset_ptr(), c.dims(), edges);
}

struct Named {
  std::string name;
  DoubleRep rep;
};

/// Reps in J on A_n for n in {1, 2}: constants of rank 1 and 2, the skyscraper
/// at the origin, a direct sum, their duals and (on A_1) the twisted rep.
inline std::vector<Named> suite(int n) {
  const PosetPtr p = braid_poset(n);
  const DoubleRep c1 = constant_rep(p, 1);
  const DoubleRep c2 = constant_rep(p, 2);
  const DoubleRep sky = skyscraper_rep(p, p->origin(), 1);
  std::vector<Named> out{
      {"constant(1)", c1},
      {"constant(2)", c2},
      {"skyscraper(0)", sky},
      {"constant(1)+skyscraper(0)", direct_sum(c1, sky)},
      {"constant(1)+constant(1)", direct_sum(c1, c1)},
  };
  if (n == 1) {
    out.push_back({"twisted", twisted_a1()});
    out.push_back({"twisted+skyscraper(0)", direct_sum(twisted_a1(), sky)});
  }
  const std::size_t base = out.size();
  for (std::size_t k = 0; k < base; ++k) out.push_back({"dual(" + out[k].name + ")", dual(out[k].rep)});
  return out;
}

/// Reps in J on A_2 used for the corollary checks: the A_2 suite plus the
/// extensions by zero of the A_1 suite along every hyperplane.
inline std::vector<Named> suite_a2_with_images() {
  std::vector<Named> out = suite(2);
  for (int i = 1; i <= 3; ++i) {
    for (int j = i + 1; j <= 3; ++j) {
      const EmbeddingMap emb = iota_braid(1, i, j);
      for (const auto& r : suite(1)) {
        out.push_back({"Phi_L(" + std::to_string(i) + "," + std::to_string(j) + ")(" + r.name + ")",
                       phi_functor(r.rep, emb).output});
      }
    }
  }
  return out;
}

}  // namespace fixture
