#include "aperv/quiverrep.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace aperv {

namespace {

std::string shape_str(Eigen::Index r, Eigen::Index c) { return std::to_string(r) + "x" + std::to_string(c); }

bool is_identity(const QMatrix& m) {
  return m.rows() == m.cols() && m == QMatrix::Identity(m.rows(), m.cols());
}

std::vector<std::string> names(const FacePoset& poset, std::initializer_list<FaceId> ids) {
  std::vector<std::string> out;
  for (FaceId id : ids) out.push_back(poset.face(id).sign.str());
  return out;
}

void require_same_poset(const DoubleRep& a, const DoubleRep& b, const char* what) {
  if (!a.poset().same_as(b.poset())) throw DomainError(std::string(what) + ": representations live on different posets");
}

}  // namespace

DoubleRep::DoubleRep(PosetPtr poset, std::vector<int> dims) : poset_(std::move(poset)), dims_(std::move(dims)) {
  if (!poset_) throw MalformedInput("double representation needs a poset");
  const std::size_t n = poset_->size();
  if (dims_.size() != n) {
    throw StructuralError("dims has " + std::to_string(dims_.size()) + " entries for " + std::to_string(n) + " faces");
  }
  if (std::any_of(dims_.begin(), dims_.end(), [](int d) { return d < 0; })) {
    throw StructuralError("negative dimension");
  }
  gamma_.resize(n * n);
  delta_.resize(n * n);
  for (FaceId lo = 0; lo < n; ++lo) {
    for (FaceId up = 0; up < n; ++up) {
      if (!poset_->leq(lo, up)) continue;
      if (lo == up) {
        gamma_[lo * n + up] = QMatrix::Identity(dims_[lo], dims_[lo]);
        delta_[lo * n + up] = QMatrix::Identity(dims_[lo], dims_[lo]);
      } else {
        gamma_[lo * n + up] = QMatrix::Zero(dims_[up], dims_[lo]);
        delta_[lo * n + up] = QMatrix::Zero(dims_[lo], dims_[up]);
      }
    }
  }
}

DoubleRep DoubleRep::from_hasse(PosetPtr poset, std::vector<int> dims, const EdgeMaps& edges) {
  DoubleRep rep(std::move(poset), std::move(dims));
  const FacePoset& p = *rep.poset_;
  const auto& hasse = p.hasse();
  if (edges.gamma.size() != hasse.size() || edges.delta.size() != hasse.size()) {
    throw StructuralError("expected maps on " + std::to_string(hasse.size()) + " Hasse edges");
  }
  for (std::size_t k = 0; k < hasse.size(); ++k) {
    const auto [lo, up] = hasse[k];
    rep.set_gamma(lo, up, edges.gamma[k]);
    rep.set_delta(up, lo, edges.delta[k]);
  }
  // Faces are in dimension order, so every cover of `up` is finished first.
  const std::size_t n = p.size();
  for (FaceId up = 0; up < n; ++up) {
    for (FaceId lo = 0; lo < n; ++lo) {
      if (lo == up || !p.leq(lo, up)) continue;
      const auto& covers = p.covers_below(up);
      const auto mid = std::find_if(covers.begin(), covers.end(), [&](FaceId m) { return p.leq(lo, m); });
      if (*mid == lo) continue;  // a Hasse edge, already set
      rep.gamma_[rep.slot(lo, up)] = rep.gamma(*mid, up) * rep.gamma(lo, *mid);
      rep.delta_[rep.slot(lo, up)] = rep.delta(*mid, lo) * rep.delta(up, *mid);
    }
  }
  return rep;
}

std::size_t DoubleRep::slot(FaceId lower, FaceId upper) const {
  const std::size_t n = poset_->size();
  if (lower >= n || upper >= n || !poset_->leq(lower, upper)) {
    throw DomainError("faces " + std::to_string(lower) + " and " + std::to_string(upper) + " are not comparable");
  }
  return lower * n + upper;
}

int DoubleRep::total_dim() const {
  int total = 0;
  for (int d : dims_) total += d;
  return total;
}

const QMatrix& DoubleRep::gamma(FaceId lower, FaceId upper) const { return gamma_[slot(lower, upper)]; }
const QMatrix& DoubleRep::delta(FaceId upper, FaceId lower) const { return delta_[slot(lower, upper)]; }

void DoubleRep::set_gamma(FaceId lower, FaceId upper, QMatrix m) {
  const std::size_t s = slot(lower, upper);
  if (m.rows() != dims_[upper] || m.cols() != dims_[lower]) {
    throw StructuralError("gamma " + poset_->face(lower).sign.str() + "/" + poset_->face(upper).sign.str() +
                          " has shape " + shape_str(m.rows(), m.cols()) + ", expected " +
                          shape_str(dims_[upper], dims_[lower]));
  }
  gamma_[s] = std::move(m);
}

void DoubleRep::set_delta(FaceId upper, FaceId lower, QMatrix m) {
  const std::size_t s = slot(lower, upper);
  if (m.rows() != dims_[lower] || m.cols() != dims_[upper]) {
    throw StructuralError("delta " + poset_->face(upper).sign.str() + "/" + poset_->face(lower).sign.str() +
                          " has shape " + shape_str(m.rows(), m.cols()) + ", expected " +
                          shape_str(dims_[lower], dims_[upper]));
  }
  delta_[s] = std::move(m);
}

EdgeMaps DoubleRep::hasse_maps() const {
  EdgeMaps edges;
  for (const auto& [lo, up] : poset_->hasse()) {
    edges.gamma.push_back(gamma(lo, up));
    edges.delta.push_back(delta(up, lo));
  }
  return edges;
}

bool DoubleRep::operator==(const DoubleRep& other) const {
  if (!poset_->same_as(*other.poset_) || dims_ != other.dims_) return false;
  for (std::size_t k = 0; k < gamma_.size(); ++k) {
    if (gamma_[k].rows() != other.gamma_[k].rows() || gamma_[k].cols() != other.gamma_[k].cols()) return false;
    if (gamma_[k] != other.gamma_[k]) return false;
    if (delta_[k].rows() != other.delta_[k].rows() || delta_[k].cols() != other.delta_[k].cols()) return false;
    if (delta_[k] != other.delta_[k]) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

ViolationReport validate_structure(const DoubleRep& rep) {
  ViolationReport report;
  const FacePoset& p = rep.poset();
  const std::size_t n = p.size();
  bool shapes_ok = true;
  for (FaceId lo = 0; lo < n; ++lo) {
    for (FaceId up = 0; up < n; ++up) {
      if (!p.leq(lo, up)) continue;
      const QMatrix& g = rep.gamma(lo, up);
      const QMatrix& d = rep.delta(up, lo);
      if (g.rows() != rep.dim(up) || g.cols() != rep.dim(lo) || d.rows() != rep.dim(lo) || d.cols() != rep.dim(up)) {
        report.push_back({"shape", names(p, {lo, up}), "map shapes do not match dims"});
        shapes_ok = false;
        continue;
      }
      if (lo == up && (!is_identity(g) || !is_identity(d))) {
        report.push_back({"identity", names(p, {lo}), "gamma_CC or delta_CC is not the identity"});
      }
    }
  }
  if (!shapes_ok) return report;
  for (FaceId lo = 0; lo < n; ++lo) {
    for (FaceId mid = 0; mid < n; ++mid) {
      if (mid == lo || !p.leq(lo, mid)) continue;
      for (FaceId up = 0; up < n; ++up) {
        if (up == mid || !p.leq(mid, up)) continue;
        if (rep.gamma(lo, up) != rep.gamma(mid, up) * rep.gamma(lo, mid)) {
          report.push_back({"composition", names(p, {lo, mid, up}), "gamma differs from the composite through the middle face"});
        }
        if (rep.delta(up, lo) != rep.delta(mid, lo) * rep.delta(up, mid)) {
          report.push_back({"composition", names(p, {lo, mid, up}), "delta differs from the composite through the middle face"});
        }
      }
    }
  }
  return report;
}

QMatrix phi_through(const DoubleRep& rep, FaceId a, FaceId b, FaceId lower) {
  return rep.gamma(lower, b) * rep.delta(a, lower);
}

QMatrix phi(const DoubleRep& rep, FaceId a, FaceId b) { return phi_through(rep, a, b, rep.poset().origin()); }

ViolationReport check_monotonicity(const DoubleRep& rep) {
  ViolationReport report;
  const FacePoset& p = rep.poset();
  for (FaceId lo = 0; lo < p.size(); ++lo) {
    for (FaceId up = 0; up < p.size(); ++up) {
      if (lo == up || !p.leq(lo, up)) continue;
      if (!is_identity(rep.gamma(lo, up) * rep.delta(up, lo))) {
        report.push_back({"monotonicity", names(p, {lo, up}), "gamma_{C'C} * delta_{CC'} != Id on E_C"});
      }
    }
  }
  return report;
}

ViolationReport check_transitivity(const DoubleRep& rep) {
  ViolationReport report;
  const FacePoset& p = rep.poset();
  const std::size_t n = p.size();
  std::vector<QMatrix> table(n * n);
  for (FaceId a = 0; a < n; ++a) {
    for (FaceId b = 0; b < n; ++b) table[a * n + b] = phi(rep, a, b);
  }
  for (const auto& t : p.collinear_triples()) {
    if (table[t.a * n + t.c] != table[t.b * n + t.c] * table[t.a * n + t.b]) {
      report.push_back({"transitivity", names(p, {t.a, t.b, t.c}), "phi_{AC} != phi_{BC} * phi_{AB}"});
    }
  }
  return report;
}

ViolationReport check_invertibility(const DoubleRep& rep) {
  ViolationReport report;
  const FacePoset& p = rep.poset();
  for (const auto& o : p.opposed_configurations()) {
    const QMatrix m = phi(rep, o.c1, o.c2);
    if (m.rows() != m.cols()) {
      report.push_back({"invertibility", names(p, {o.c1, o.c2, o.d}),
                        "phi is " + shape_str(m.rows(), m.cols()) + ", not square"});
    } else if (rank(m) != m.rows()) {
      report.push_back({"invertibility", names(p, {o.c1, o.c2, o.d}), "phi is singular"});
    }
  }
  return report;
}

ViolationReport is_in_J(const DoubleRep& rep) {
  ViolationReport report = validate_structure(rep);
  if (std::any_of(report.begin(), report.end(), [](const Violation& v) { return v.relation == "shape"; })) {
    return report;
  }
  for (auto* check : {&check_monotonicity, &check_transitivity, &check_invertibility}) {
    auto part = (*check)(rep);
    report.insert(report.end(), part.begin(), part.end());
  }
  return report;
}

// ---------------------------------------------------------------------------

DoubleRep dual(const DoubleRep& rep) {
  DoubleRep out(rep.poset_ptr(), rep.dims());
  const FacePoset& p = rep.poset();
  for (FaceId lo = 0; lo < p.size(); ++lo) {
    for (FaceId up = 0; up < p.size(); ++up) {
      if (!p.leq(lo, up)) continue;
      out.set_gamma(lo, up, rep.delta(up, lo).transpose());
      out.set_delta(up, lo, rep.gamma(lo, up).transpose());
    }
  }
  return out;
}

DoubleRep direct_sum(const DoubleRep& a, const DoubleRep& b) {
  require_same_poset(a, b, "direct_sum");
  const FacePoset& p = a.poset();
  std::vector<int> dims(p.size());
  for (FaceId c = 0; c < p.size(); ++c) dims[c] = a.dim(c) + b.dim(c);
  DoubleRep out(a.poset_ptr(), dims);
  auto block = [](const QMatrix& x, const QMatrix& y) {
    QMatrix m = QMatrix::Zero(x.rows() + y.rows(), x.cols() + y.cols());
    m.topLeftCorner(x.rows(), x.cols()) = x;
    m.bottomRightCorner(y.rows(), y.cols()) = y;
    return m;
  };
  for (FaceId lo = 0; lo < p.size(); ++lo) {
    for (FaceId up = 0; up < p.size(); ++up) {
      if (!p.leq(lo, up)) continue;
      out.set_gamma(lo, up, block(a.gamma(lo, up), b.gamma(lo, up)));
      out.set_delta(up, lo, block(a.delta(up, lo), b.delta(up, lo)));
    }
  }
  return out;
}

DoubleRep constant_rep(PosetPtr poset, int r) {
  if (r < 0) throw DomainError("rank must be nonnegative");
  const std::size_t n = poset->size();
  DoubleRep out(poset, std::vector<int>(n, r));
  for (FaceId lo = 0; lo < n; ++lo) {
    for (FaceId up = 0; up < n; ++up) {
      if (!poset->leq(lo, up)) continue;
      out.set_gamma(lo, up, QMatrix::Identity(r, r));
      out.set_delta(up, lo, QMatrix::Identity(r, r));
    }
  }
  return out;
}

DoubleRep skyscraper_rep(PosetPtr poset, FaceId face, int r) {
  if (r < 0) throw DomainError("rank must be nonnegative");
  if (face >= poset->size()) throw DomainError("skyscraper face is not in the poset");
  std::vector<int> dims(poset->size(), 0);
  dims[face] = r;
  return DoubleRep(std::move(poset), std::move(dims));
}

DoubleRep zero_rep(PosetPtr poset) {
  const std::size_t n = poset->size();
  return DoubleRep(std::move(poset), std::vector<int>(n, 0));
}

// ---------------------------------------------------------------------------

bool is_intertwining(const RepMorphism& m) {
  const FacePoset& p = m.source.poset();
  if (!p.same_as(m.target.poset()) || m.components.size() != p.size()) return false;
  for (FaceId c = 0; c < p.size(); ++c) {
    if (m.components[c].rows() != m.target.dim(c) || m.components[c].cols() != m.source.dim(c)) return false;
  }
  for (const auto& [lo, up] : p.hasse()) {
    const QMatrix& f_lo = m.components[lo];
    const QMatrix& f_up = m.components[up];
    if (f_up * m.source.gamma(lo, up) != m.target.gamma(lo, up) * f_lo) return false;
    if (f_lo * m.source.delta(up, lo) != m.target.delta(up, lo) * f_up) return false;
  }
  return true;
}

HomSpace hom_space(const DoubleRep& source, const DoubleRep& target) {
  require_same_poset(source, target, "hom_space");
  const FacePoset& p = source.poset();
  const std::size_t n = p.size();
  std::vector<Eigen::Index> offset(n + 1, 0);
  for (FaceId c = 0; c < n; ++c) offset[c + 1] = offset[c] + Eigen::Index(target.dim(c)) * source.dim(c);
  const Eigen::Index unknowns = offset[n];

  // Variable for f_C(r, k) is offset[C] + r * dims_source(C) + k.
  auto var = [&](FaceId c, Eigen::Index r, Eigen::Index k) { return offset[c] + r * source.dim(c) + k; };

  std::vector<QVector> rows;
  // f_out * s_map - t_map * f_in == 0 for maps s_map: E^s_in -> E^s_out, t_map: E^t_in -> E^t_out.
  auto add_constraints = [&](FaceId out_face, FaceId in_face, const QMatrix& s_map, const QMatrix& t_map) {
    for (Eigen::Index r = 0; r < target.dim(out_face); ++r) {
      for (Eigen::Index c = 0; c < source.dim(in_face); ++c) {
        QVector row = QVector::Zero(unknowns);
        for (Eigen::Index k = 0; k < source.dim(out_face); ++k) row(var(out_face, r, k)) += s_map(k, c);
        for (Eigen::Index k = 0; k < target.dim(in_face); ++k) row(var(in_face, k, c)) -= t_map(r, k);
        if (!row.isZero()) rows.push_back(std::move(row));
      }
    }
  };
  for (const auto& [lo, up] : p.hasse()) {
    add_constraints(up, lo, source.gamma(lo, up), target.gamma(lo, up));
    add_constraints(lo, up, source.delta(up, lo), target.delta(up, lo));
  }

  const QMatrix basis = rows.empty() ? QMatrix(QMatrix::Identity(unknowns, unknowns))
                                     : kernel_basis(stack_rows(rows, unknowns));
  HomSpace hom;
  hom.dimension = static_cast<std::size_t>(basis.cols());
  for (Eigen::Index b = 0; b < basis.cols(); ++b) {
    RepMorphism m{source, target, {}};
    for (FaceId c = 0; c < n; ++c) {
      QMatrix f(target.dim(c), source.dim(c));
      for (Eigen::Index r = 0; r < f.rows(); ++r) {
        for (Eigen::Index k = 0; k < f.cols(); ++k) f(r, k) = basis(var(c, r, k), b);
      }
      m.components.push_back(std::move(f));
    }
    hom.basis.push_back(std::move(m));
  }
  return hom;
}

KernelCokernel kernel_cokernel(const RepMorphism& m) {
  if (!is_intertwining(m)) throw DomainError("kernel_cokernel: morphism does not intertwine");
  const FacePoset& p = m.source.poset();
  const std::size_t n = p.size();
  std::vector<QMatrix> incl(n), proj(n), section(n);
  std::vector<int> kdims(n), cdims(n);
  for (FaceId c = 0; c < n; ++c) {
    incl[c] = kernel_basis(m.components[c]);
    proj[c] = cokernel_rows(m.components[c]);
    // Right inverse of the projection: P^T (P P^T)^{-1}.
    const QMatrix gram = proj[c] * proj[c].transpose();
    section[c] = proj[c].transpose() * inverse(gram).value();
    kdims[c] = static_cast<int>(incl[c].cols());
    cdims[c] = static_cast<int>(proj[c].rows());
  }
  EdgeMaps kmaps, cmaps;
  auto through = [](const QMatrix& basis, const QMatrix& image) {
    auto x = solve_exact(basis, image);
    if (!x) throw std::logic_error("induced map does not factor through the subspace");
    return *x;
  };
  for (const auto& [lo, up] : p.hasse()) {
    kmaps.gamma.push_back(through(incl[up], m.source.gamma(lo, up) * incl[lo]));
    kmaps.delta.push_back(through(incl[lo], m.source.delta(up, lo) * incl[up]));
    cmaps.gamma.push_back(proj[up] * m.target.gamma(lo, up) * section[lo]);
    cmaps.delta.push_back(proj[lo] * m.target.delta(up, lo) * section[up]);
  }
  return KernelCokernel{DoubleRep::from_hasse(m.source.poset_ptr(), kdims, kmaps),
                        DoubleRep::from_hasse(m.source.poset_ptr(), cdims, cmaps), std::move(incl),
                        std::move(proj)};
}

// ---------------------------------------------------------------------------

namespace {

struct Entry {
  Eigen::Index row, col;
  Rational value;
};
using SparseMat = std::vector<Entry>;

SparseMat product(const SparseMat& g, const std::vector<std::vector<const Entry*>>& x_rows) {
  std::map<std::pair<Eigen::Index, Eigen::Index>, Rational> acc;
  for (const Entry& a : g) {
    for (const Entry* b : x_rows[static_cast<std::size_t>(a.col)]) acc[{a.row, b->col}] += a.value * b->value;
  }
  SparseMat out;
  for (auto& [pos, v] : acc) {
    if (v != 0) out.push_back({pos.first, pos.second, v});
  }
  return out;
}

}  // namespace

SimplicityCertificate is_absolutely_simple(const DoubleRep& rep) {
  if (rep.is_zero()) throw DomainError("simplicity is undefined for the zero object");
  const FacePoset& p = rep.poset();
  const std::size_t n = p.size();
  std::vector<Eigen::Index> offset(n + 1, 0);
  for (FaceId c = 0; c < n; ++c) offset[c + 1] = offset[c] + rep.dim(c);
  const Eigen::Index m = offset[n];
  const std::size_t target = static_cast<std::size_t>(m * m);

  std::vector<SparseMat> generators;
  auto embed = [&](const QMatrix& block, FaceId row_face, FaceId col_face) {
    SparseMat s;
    for (Eigen::Index r = 0; r < block.rows(); ++r) {
      for (Eigen::Index c = 0; c < block.cols(); ++c) {
        if (block(r, c) != 0) s.push_back({offset[row_face] + r, offset[col_face] + c, block(r, c)});
      }
    }
    return s;
  };
  for (FaceId c = 0; c < n; ++c) {
    if (rep.dim(c) > 0) generators.push_back(embed(QMatrix::Identity(rep.dim(c), rep.dim(c)), c, c));
  }
  for (const auto& [lo, up] : p.hasse()) {
    if (rep.dim(lo) == 0 || rep.dim(up) == 0) continue;
    if (auto g = embed(rep.gamma(lo, up), up, lo); !g.empty()) generators.push_back(std::move(g));
    if (auto d = embed(rep.delta(up, lo), lo, up); !d.empty()) generators.push_back(std::move(d));
  }

  // Echelon basis of the algebra, keyed by pivot position (row-major index).
  std::map<Eigen::Index, std::vector<std::pair<Eigen::Index, Rational>>> basis;
  std::deque<SparseMat> queue;

  auto try_add = [&](const SparseMat& x) {
    std::map<Eigen::Index, Rational> v;
    for (const Entry& e : x) v[e.row * m + e.col] += e.value;
    // Subtracting the vector pivoted at k only touches positions >= k.
    for (auto it = basis.begin(); it != basis.end(); ++it) {
      auto hit = v.find(it->first);
      if (hit == v.end() || hit->second == 0) continue;
      const Rational f = hit->second;
      for (const auto& [pos, val] : it->second) v[pos] -= f * val;
    }
    std::erase_if(v, [](const auto& kv) { return kv.second == 0; });
    if (v.empty()) return;
    const Eigen::Index pivot = v.begin()->first;
    const Rational lead = v.begin()->second;
    std::vector<std::pair<Eigen::Index, Rational>> row;
    SparseMat mat;
    for (auto& [pos, val] : v) {
      row.emplace_back(pos, val / lead);
      mat.push_back({pos / m, pos % m, val / lead});
    }
    basis.emplace(pivot, std::move(row));
    queue.push_back(std::move(mat));
  };

  SparseMat identity;
  for (Eigen::Index k = 0; k < m; ++k) identity.push_back({k, k, Rational(1)});
  try_add(identity);
  while (!queue.empty() && basis.size() < target) {
    const SparseMat x = std::move(queue.front());
    queue.pop_front();
    std::vector<std::vector<const Entry*>> x_rows(static_cast<std::size_t>(m));
    for (const Entry& e : x) x_rows[static_cast<std::size_t>(e.row)].push_back(&e);
    for (const auto& g : generators) {
      try_add(product(g, x_rows));
      if (basis.size() == target) break;
    }
  }
  return SimplicityCertificate{basis.size() == target, basis.size(), static_cast<std::size_t>(m)};
}

}  // namespace aperv
