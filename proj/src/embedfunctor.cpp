#include "aperv/embedfunctor.hpp"

#include <algorithm>
#include <set>

namespace aperv {

namespace {

void check_indices(int n, int i, int j) {
  if (n < 1 || i < 1 || i >= j || j > n + 2) {
    throw DomainError("need n >= 1 and 1 <= i < j <= n+2, got n=" + std::to_string(n) + " i=" + std::to_string(i) +
                      " j=" + std::to_string(j));
  }
}

void require_source(const DoubleRep& rep, const EmbeddingMap& emb) {
  if (!rep.poset().same_as(*emb.source)) throw DomainError("representation does not live on the embedding's source poset");
}

std::string label(const EmbeddingMap& emb) {
  return "L(" + std::to_string(emb.i) + "," + std::to_string(emb.j) + ")";
}

void assert_embedding(const EmbeddingMap& emb) {
  const CheckReport report = verify_order_embedding(emb);
  for (const auto& c : report.checks) {
    if (!c.passed) throw InternalConsistencyError("embedding " + label(emb) + " fails " + c.name + ": " + c.detail);
  }
}

// Flattened components of a morphism, for independence checks.
QVector flatten(const RepMorphism& m) {
  Eigen::Index total = 0;
  for (const auto& c : m.components) total += c.size();
  QVector v(total);
  Eigen::Index k = 0;
  for (const auto& c : m.components) {
    for (Eigen::Index r = 0; r < c.rows(); ++r) {
      for (Eigen::Index s = 0; s < c.cols(); ++s) v(k++) = c(r, s);
    }
  }
  return v;
}

}  // namespace

std::size_t braid_hyperplane_index(int n, int i, int j) {
  const int m = n + 1;
  if (i < 1 || i >= j || j > m) throw DomainError("no hyperplane L(" + std::to_string(i) + "," + std::to_string(j) + ") in A_" + std::to_string(n));
  std::size_t index = 0;
  for (int a = 1; a < i; ++a) index += static_cast<std::size_t>(m - a);
  return index + static_cast<std::size_t>(j - i - 1);
}

std::size_t EmbeddingMap::hyperplane_index() const { return braid_hyperplane_index(n + 1, i, j); }

std::vector<std::optional<FaceId>> EmbeddingMap::preimage() const {
  std::vector<std::optional<FaceId>> inv(target->size());
  for (FaceId s = 0; s < table.size(); ++s) inv[table[s]] = s;
  return inv;
}

EmbeddingMap iota_braid(int n, int i, int j) {
  check_indices(n, i, j);
  EmbeddingMap emb{braid_poset(n), braid_poset(n + 1), n, i, j, {}};
  for (const Face& f : emb.source->faces()) {
    OrderedSetPartition osp = to_ordered_set_partition(f.sign, n);
    for (auto& block : osp.blocks) {
      for (int& e : block) {
        if (e >= j) ++e;
      }
      if (std::find(block.begin(), block.end(), i) != block.end()) block.push_back(j);
    }
    emb.table.push_back(emb.target->id_of(to_sign_vector(osp, n + 1).str()));
  }
  assert_embedding(emb);
  return emb;
}

QMatrix duplication_map(int n, int i, int j) {
  check_indices(n, i, j);
  const Eigen::Index src = n + 1;
  const Eigen::Index dst = n + 2;
  QMatrix dup = QMatrix::Zero(dst, src);
  for (int t = 1; t <= n + 2; ++t) {
    const int from = t == j ? i : (t < j ? t : t - 1);
    dup(t - 1, from - 1) = 1;
  }
  // Recentre so the image lies in sum(x) = 0; differences are unchanged.
  const QMatrix centre = QMatrix::Identity(dst, dst) - QMatrix::Constant(dst, dst, Rational(1, n + 2));
  return centre * dup;
}

EmbeddingMap iota_geometric(int n, int i, int j) {
  check_indices(n, i, j);
  EmbeddingMap emb{braid_poset(n), braid_poset(n + 1), n, i, j, {}};
  const QMatrix rho = duplication_map(n, i, j);
  for (const Face& f : emb.source->faces()) {
    const SignVector sv = sign_vector(emb.target->arrangement(), rho * f.witness);
    const auto id = emb.target->find(sv);
    if (!id) throw InternalConsistencyError("image of " + f.sign.str() + " has unrealized sign vector " + sv.str());
    emb.table.push_back(*id);
  }
  assert_embedding(emb);
  return emb;
}

bool CheckReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

void CheckReport::add(std::string name, bool ok, std::string detail) {
  checks.push_back({std::move(name), ok, std::move(detail)});
}

CheckReport verify_order_embedding(const EmbeddingMap& emb) {
  CheckReport report;
  const FacePoset& s = *emb.source;
  const FacePoset& t = *emb.target;
  const std::size_t h = emb.hyperplane_index();

  bool in_range = emb.table.size() == s.size() &&
                  std::all_of(emb.table.begin(), emb.table.end(), [&](FaceId x) { return x < t.size(); });
  const std::set<FaceId> image(emb.table.begin(), emb.table.end());
  report.add("injective", in_range && image.size() == emb.table.size(),
             in_range ? std::to_string(image.size()) + " distinct images of " + std::to_string(s.size()) + " faces"
                      : "table is malformed");
  if (!in_range) {
    for (const char* name : {"order-preserving", "image-characterization", "downward-closed", "dimension-preserving"}) {
      report.add(name, false, "table is malformed");
    }
    return report;
  }

  std::string order_detail;
  for (FaceId a = 0; a < s.size() && order_detail.empty(); ++a) {
    for (FaceId b = 0; b < s.size(); ++b) {
      if (s.leq(a, b) != t.leq(emb.table[a], emb.table[b])) {
        order_detail = s.face(a).sign.str() + " <= " + s.face(b).sign.str() + " is not reflected by the images";
        break;
      }
    }
  }
  report.add("order-preserving", order_detail.empty(), order_detail);

  std::set<FaceId> zero_set;
  for (FaceId x = 0; x < t.size(); ++x) {
    if (t.face(x).sign[h] == Sign::Zero) zero_set.insert(x);
  }
  report.add("image-characterization", zero_set == image,
             std::to_string(image.size()) + " image faces, " + std::to_string(zero_set.size()) + " faces in " + label(emb));

  std::string down_detail;
  for (FaceId d : image) {
    for (FaceId x = 0; x < t.size(); ++x) {
      if (t.leq(x, d) && !image.contains(x)) {
        down_detail = t.face(x).sign.str() + " <= " + t.face(d).sign.str() + " but is not in the image";
        break;
      }
    }
    if (!down_detail.empty()) break;
  }
  report.add("downward-closed", down_detail.empty(), down_detail);

  std::string dim_detail;
  for (FaceId a = 0; a < s.size(); ++a) {
    if (s.face(a).dim != t.face(emb.table[a]).dim) {
      dim_detail = s.face(a).sign.str() + " changes dimension";
      break;
    }
  }
  report.add("dimension-preserving", dim_detail.empty(), dim_detail);
  return report;
}

// ---------------------------------------------------------------------------

FunctorResult phi_functor(const DoubleRep& rep, const EmbeddingMap& emb) {
  require_source(rep, emb);
  const FacePoset& t = *emb.target;
  const auto pre = emb.preimage();
  std::vector<int> dims(t.size(), 0);
  for (FaceId x = 0; x < t.size(); ++x) {
    if (pre[x]) dims[x] = rep.dim(*pre[x]);
  }
  DoubleRep out(emb.target, std::move(dims));
  for (FaceId lo = 0; lo < t.size(); ++lo) {
    if (!pre[lo]) continue;
    for (FaceId up = 0; up < t.size(); ++up) {
      if (!pre[up] || !t.leq(lo, up)) continue;
      out.set_gamma(lo, up, rep.gamma(*pre[lo], *pre[up]));
      out.set_delta(up, lo, rep.delta(*pre[up], *pre[lo]));
    }
  }
  return FunctorResult{std::move(out), emb};
}

RepMorphism phi_functor(const RepMorphism& m, const EmbeddingMap& emb) {
  RepMorphism out{phi_functor(m.source, emb).output, phi_functor(m.target, emb).output, {}};
  const auto pre = emb.preimage();
  for (FaceId x = 0; x < emb.target->size(); ++x) {
    out.components.push_back(pre[x] ? m.components[*pre[x]] : QMatrix(out.target.dim(x), out.source.dim(x)));
  }
  return out;
}

DoubleRep restrict_along(const DoubleRep& rep, const EmbeddingMap& emb) {
  if (!rep.poset().same_as(*emb.target)) throw DomainError("representation does not live on the embedding's target poset");
  const auto pre = emb.preimage();
  for (FaceId x = 0; x < emb.target->size(); ++x) {
    if (rep.dim(x) > 0 && !pre[x]) {
      throw DomainError("support face " + emb.target->face(x).sign.str() + " is outside " + label(emb));
    }
  }
  const FacePoset& s = *emb.source;
  std::vector<int> dims(s.size());
  for (FaceId a = 0; a < s.size(); ++a) dims[a] = rep.dim(emb.table[a]);
  EdgeMaps edges;
  for (const auto& [lo, up] : s.hasse()) {
    edges.gamma.push_back(rep.gamma(emb.table[lo], emb.table[up]));
    edges.delta.push_back(rep.delta(emb.table[up], emb.table[lo]));
  }
  return DoubleRep::from_hasse(emb.source, std::move(dims), edges);
}

CheckReport verify_functor_preserves_J(const DoubleRep& rep, const EmbeddingMap& emb) {
  CheckReport report;
  const auto source_violations = is_in_J(rep);
  report.add("source-in-J", source_violations.empty(),
             source_violations.empty() ? "" : source_violations.front().relation + " fails on the source");

  const DoubleRep image = phi_functor(rep, emb).output;
  const auto violations = is_in_J(image);
  report.add("image-in-J", violations.empty(),
             violations.empty() ? "" : violations.front().relation + " fails at " + violations.front().faces.front());

  const FacePoset& t = *emb.target;
  const auto pre = emb.preimage();
  std::string legs_detail;
  std::string two_detail;
  for (const auto& tr : t.collinear_triples()) {
    const int inside = int(pre[tr.a].has_value()) + int(pre[tr.b].has_value()) + int(pre[tr.c].has_value());
    if (inside == 3) continue;
    const bool degenerate = tr.b == tr.a || tr.b == tr.c;
    if (inside == 2 && !degenerate && two_detail.empty()) {
      two_detail = t.face(tr.a).sign.str() + "," + t.face(tr.b).sign.str() + "," + t.face(tr.c).sign.str();
    }
    const std::pair<FaceId, FaceId> legs[] = {{tr.a, tr.c}, {tr.a, tr.b}, {tr.b, tr.c}};
    for (const auto& [x, y] : legs) {
      if (pre[x] && pre[y]) continue;
      if (!phi(image, x, y).isZero() && legs_detail.empty()) {
        legs_detail = "phi " + t.face(x).sign.str() + " -> " + t.face(y).sign.str() + " is nonzero";
      }
    }
  }
  report.add("straddling-triples-have-zero-legs", legs_detail.empty(), legs_detail);
  report.add("non-degenerate-triples-never-half-inside", two_detail.empty(), two_detail);

  std::string opposed_detail;
  for (const auto& o : t.opposed_configurations()) {
    if (pre[o.c1].has_value() != pre[o.c2].has_value()) {
      opposed_detail = t.face(o.c1).sign.str() + " / " + t.face(o.c2).sign.str() + " straddle " + label(emb);
      break;
    }
  }
  report.add("opposed-pairs-never-straddle", opposed_detail.empty(), opposed_detail);
  return report;
}

CheckReport verify_fully_faithful(const DoubleRep& rep1, const DoubleRep& rep2, const EmbeddingMap& emb) {
  require_source(rep1, emb);
  require_source(rep2, emb);
  CheckReport report;
  const HomSpace before = hom_space(rep1, rep2);
  const DoubleRep img1 = phi_functor(rep1, emb).output;
  const DoubleRep img2 = phi_functor(rep2, emb).output;
  const HomSpace after = hom_space(img1, img2);
  report.add("hom-dimension-equal", before.dimension == after.dimension,
             std::to_string(before.dimension) + " vs " + std::to_string(after.dimension));

  bool intertwine = true;
  std::vector<QVector> images;
  for (const auto& f : before.basis) {
    const RepMorphism g = phi_functor(f, emb);
    intertwine = intertwine && is_intertwining(g);
    images.push_back(flatten(g));
  }
  report.add("image-morphisms-intertwine", intertwine);
  const Eigen::Index width = images.empty() ? 0 : images.front().size();
  report.add("image-morphisms-independent",
             rank(std::span<const QVector>(images)) == static_cast<Eigen::Index>(before.dimension),
             "width " + std::to_string(width));

  bool restrict_ok = true;
  for (const auto& g : after.basis) {
    RepMorphism f{rep1, rep2, {}};
    for (FaceId a = 0; a < emb.source->size(); ++a) f.components.push_back(g.components[emb.table[a]]);
    restrict_ok = restrict_ok && is_intertwining(f);
  }
  report.add("restricted-morphisms-intertwine", restrict_ok);
  return report;
}

CheckReport verify_duality_commutes(const DoubleRep& rep, const EmbeddingMap& emb) {
  CheckReport report;
  const bool equal = phi_functor(dual(rep), emb).output == dual(phi_functor(rep, emb).output);
  report.add("phi-dual-equals-dual-phi", equal);
  return report;
}

CheckReport verify_exactness(const RepMorphism& m, const EmbeddingMap& emb) {
  CheckReport report;
  const KernelCokernel before = kernel_cokernel(m);
  const KernelCokernel after = kernel_cokernel(phi_functor(m, emb));
  report.add("kernel-commutes", phi_functor(before.kernel, emb).output == after.kernel);
  report.add("cokernel-commutes", phi_functor(before.cokernel, emb).output == after.cokernel);
  report.add("direct-sum-commutes", phi_functor(direct_sum(m.source, m.target), emb).output ==
                                        direct_sum(phi_functor(m.source, emb).output, phi_functor(m.target, emb).output));
  return report;
}

SimpleToSimple verify_simple_to_simple(const DoubleRep& rep, const EmbeddingMap& emb) {
  SimpleToSimple out;
  out.source = is_absolutely_simple(rep);
  out.image = is_absolutely_simple(phi_functor(rep, emb).output);
  out.report.add("simple-implies-simple", !out.source.simple || out.image.simple,
                 "source " + std::to_string(out.source.algebra_dim) + "/" +
                     std::to_string(out.source.total_dim * out.source.total_dim) + ", image " +
                     std::to_string(out.image.algebra_dim) + "/" +
                     std::to_string(out.image.total_dim * out.image.total_dim));
  out.report.add("algebra-dimension-preserved", out.source.algebra_dim == out.image.algebra_dim &&
                                                    out.source.total_dim == out.image.total_dim);
  return out;
}

std::map<FaceId, int> open_cell_profile(const DoubleRep& rep) {
  std::map<FaceId, int> profile;
  for (FaceId c : rep.poset().chambers()) profile[c] = rep.dim(c);
  return profile;
}

CorollaryVerdict corollary_analysis(const DoubleRep& rep) {
  const auto m = rep.poset().arrangement().braid_rank();
  if (!m) throw DomainError("corollary analysis needs a braid arrangement");
  const FacePoset& p = rep.poset();
  CorollaryVerdict v;

  v.zero_profile = true;
  for (const auto& [c, d] : open_cell_profile(rep)) {
    if (d > 1) {
      v.chamber_dims_ok = false;
      v.violations.push_back("chamber " + p.face(c).sign.str() + " has dimension " + std::to_string(d));
    }
    if (d != 0) v.zero_profile = false;
  }

  if (v.zero_profile && *m >= 2) {
    v.restriction_applicable = true;
    std::optional<EmbeddingMap> first;
    for (int i = 1; i <= *m + 1; ++i) {
      for (int j = i + 1; j <= *m + 1; ++j) {
        EmbeddingMap emb = iota_braid(*m - 1, i, j);
        const auto pre = emb.preimage();
        bool covers = true;
        for (FaceId x = 0; x < p.size() && covers; ++x) covers = rep.dim(x) == 0 || pre[x].has_value();
        if (!covers) continue;
        v.covering_hyperplanes.emplace_back(i, j);
        if (!first) first = std::move(emb);
      }
    }
    if (!first) {
      v.violations.push_back("no hyperplane L(i,j) contains the support");
    } else {
      v.recovered_via = std::make_pair(first->i, first->j);
      const DoubleRep g = restrict_along(rep, *first);
      v.recovered_in_J = is_in_J(g).empty();
      v.round_trip_ok = phi_functor(g, *first).output == rep;
      if (!v.recovered_in_J) v.violations.push_back("restriction along " + label(*first) + " is not in J");
      if (!v.round_trip_ok) v.violations.push_back("extending the restriction along " + label(*first) + " does not reproduce the input");
    }
  }

  if (*m == 2) {
    v.wall_bound_checked = true;
    for (FaceId x = 0; x < p.size(); ++x) {
      if (p.face(x).dim == 1 && rep.dim(x) > 2) {
        v.wall_bound_ok = false;
        v.violations.push_back("1-dimensional face " + p.face(x).sign.str() + " has dimension " + std::to_string(rep.dim(x)));
      }
    }
  }
  return v;
}

}  // namespace aperv
