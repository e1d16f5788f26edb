#include "aperv/arrangement.hpp"

#include <algorithm>
#include <map>

#include <boost/dynamic_bitset.hpp>

namespace aperv {

namespace {

int sign_rank(Sign s) {
  switch (s) {
    case Sign::Zero:
      return 0;
    case Sign::Minus:
      return 1;
    case Sign::Plus:
      return 2;
  }
  return 0;
}

std::string braid_label(int i, int j) { return "L(" + std::to_string(i) + "," + std::to_string(j) + ")"; }

FaceId checked_id(const FacePoset& poset, FaceId id) {
  if (id >= poset.size()) {
    throw DomainError("face index " + std::to_string(id) + " is not in a poset of " +
                      std::to_string(poset.size()) + " faces");
  }
  return id;
}

}  // namespace

char to_char(Sign s) {
  switch (s) {
    case Sign::Plus:
      return '+';
    case Sign::Minus:
      return '-';
    case Sign::Zero:
      return '0';
  }
  return '?';
}

Sign sign_of(const Rational& q) {
  if (q > 0) return Sign::Plus;
  if (q < 0) return Sign::Minus;
  return Sign::Zero;
}

SignVector SignVector::parse(std::string_view text) {
  std::vector<Sign> signs;
  signs.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '+':
        signs.push_back(Sign::Plus);
        break;
      case '-':
        signs.push_back(Sign::Minus);
        break;
      case '0':
        signs.push_back(Sign::Zero);
        break;
      default:
        throw MalformedInput("bad sign character '" + std::string(1, c) + "' in \"" + std::string(text) + "\"");
    }
  }
  return SignVector(std::move(signs));
}

std::string SignVector::str() const {
  std::string s;
  s.reserve(signs_.size());
  for (Sign x : signs_) s.push_back(to_char(x));
  return s;
}

bool SignVector::has_zero() const {
  return std::find(signs_.begin(), signs_.end(), Sign::Zero) != signs_.end();
}

std::strong_ordering operator<=>(const SignVector& a, const SignVector& b) {
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t h = 0; h < n; ++h) {
    if (auto c = sign_rank(a[h]) <=> sign_rank(b[h]); c != 0) return c;
  }
  return a.size() <=> b.size();
}

// ---------------------------------------------------------------------------

Arrangement::Arrangement(Eigen::Index ambient_dim, QMatrix subspace, std::vector<Hyperplane> hyperplanes)
    : ambient_dim_(ambient_dim), subspace_(std::move(subspace)), hyperplanes_(std::move(hyperplanes)) {
  if (ambient_dim_ <= 0) throw MalformedInput("arrangement ambient dimension must be positive");
  if (subspace_.size() == 0) subspace_.resize(0, ambient_dim_);
  if (subspace_.cols() != ambient_dim_) throw MalformedInput("subspace rows have the wrong length");
  for (const auto& h : hyperplanes_) {
    if (h.normal.size() != ambient_dim_) {
      throw MalformedInput("hyperplane " + h.label + " has a normal of the wrong length");
    }
    if (h.normal.isZero()) throw MalformedInput("hyperplane " + h.label + " has a zero normal");
  }
  dimension_ = ambient_dim_ - rank(subspace_);
  QMatrix all(subspace_.rows() + static_cast<Eigen::Index>(hyperplanes_.size()), ambient_dim_);
  all.topRows(subspace_.rows()) = subspace_;
  for (std::size_t k = 0; k < hyperplanes_.size(); ++k) {
    all.row(subspace_.rows() + static_cast<Eigen::Index>(k)) = hyperplanes_[k].normal.transpose();
  }
  if (rank(all) != ambient_dim_) throw MalformedInput("arrangement is not essential");
}

bool Arrangement::operator==(const Arrangement& other) const {
  return ambient_dim_ == other.ambient_dim_ && subspace_.rows() == other.subspace_.rows() &&
         subspace_ == other.subspace_ && hyperplanes_ == other.hyperplanes_;
}

Arrangement braid_arrangement(int n) {
  if (n < 1) throw DomainError("braid arrangement needs n >= 1, got " + std::to_string(n));
  const Eigen::Index dim = n + 1;
  QMatrix subspace = QMatrix::Ones(1, dim);
  std::vector<Hyperplane> hyperplanes;
  for (int i = 1; i <= n + 1; ++i) {
    for (int j = i + 1; j <= n + 1; ++j) {
      QVector normal = QVector::Zero(dim);
      normal(i - 1) = 1;
      normal(j - 1) = -1;
      hyperplanes.push_back({braid_label(i, j), std::move(normal)});
    }
  }
  Arrangement arr(dim, std::move(subspace), std::move(hyperplanes));
  arr.braid_rank_ = n;
  return arr;
}

Arrangement rn_chart(int n) {
  if (n < 1) throw DomainError("chart needs n >= 1, got " + std::to_string(n));
  std::vector<Hyperplane> hyperplanes;
  for (int i = 1; i <= n + 1; ++i) {
    for (int j = i + 1; j <= n + 1; ++j) {
      QVector normal = QVector::Zero(n);
      if (j <= n) {
        normal(i - 1) = 1;
        normal(j - 1) = -1;
        hyperplanes.push_back({"A(" + std::to_string(i) + "," + std::to_string(j) + ")", std::move(normal)});
      } else {
        normal.setOnes();
        normal(i - 1) = 2;
        hyperplanes.push_back({"B(" + std::to_string(i) + ")", std::move(normal)});
      }
    }
  }
  return Arrangement(n, QMatrix(0, n), std::move(hyperplanes));
}

SignVector sign_vector(const Arrangement& arr, const QVector& point) {
  if (point.size() != arr.ambient_dim()) throw DomainError("point has the wrong dimension");
  if (arr.subspace().rows() > 0 && !(arr.subspace() * point).isZero()) {
    throw DomainError("point does not lie in the arrangement's subspace");
  }
  std::vector<Sign> signs;
  signs.reserve(arr.size());
  for (const auto& h : arr.hyperplanes()) signs.push_back(sign_of(h.normal.dot(point)));
  return SignVector(std::move(signs));
}

int face_dimension(const Arrangement& arr, const SignVector& sv) {
  std::vector<QVector> rows;
  for (Eigen::Index r = 0; r < arr.subspace().rows(); ++r) rows.emplace_back(arr.subspace().row(r).transpose());
  for (std::size_t h = 0; h < sv.size(); ++h) {
    if (sv[h] == Sign::Zero) rows.push_back(arr.hyperplanes()[h].normal);
  }
  return static_cast<int>(arr.ambient_dim() - rank(std::span<const QVector>(rows)));
}

LinearSystem face_system(const Arrangement& arr, const SignVector& sv) {
  if (sv.size() > arr.size()) throw MalformedInput("sign vector longer than the arrangement");
  LinearSystem sys;
  sys.ambient_dim = arr.ambient_dim();
  for (Eigen::Index r = 0; r < arr.subspace().rows(); ++r) {
    sys.equalities.push_back({arr.subspace().row(r).transpose(), Rational(0)});
  }
  for (std::size_t h = 0; h < sv.size(); ++h) {
    const QVector& normal = arr.hyperplanes()[h].normal;
    switch (sv[h]) {
      case Sign::Zero:
        sys.equalities.push_back({normal, Rational(0)});
        break;
      case Sign::Plus:
        sys.strict_positives.push_back(normal);
        break;
      case Sign::Minus:
        sys.strict_positives.push_back(-normal);
        break;
    }
  }
  return sys;
}

std::optional<Face> realizable(const Arrangement& arr, const SignVector& sv) {
  if (sv.size() != arr.size()) {
    throw MalformedInput("sign vector has length " + std::to_string(sv.size()) + ", arrangement has " +
                         std::to_string(arr.size()) + " hyperplanes");
  }
  auto witness = solve_feasible(face_system(arr, sv));
  if (!witness) return std::nullopt;
  return Face{sv, face_dimension(arr, sv), std::move(*witness)};
}

// ---------------------------------------------------------------------------

FacePoset::FacePoset(Arrangement arr, std::vector<Face> faces)
    : arrangement_(std::move(arr)), faces_(std::move(faces)) {
  std::sort(faces_.begin(), faces_.end(), [](const Face& a, const Face& b) {
    if (a.dim != b.dim) return a.dim < b.dim;
    return a.sign < b.sign;
  });
  const std::size_t n = faces_.size();
  for (FaceId id = 0; id < n; ++id) {
    if (faces_[id].sign.size() != arrangement_.size()) throw MalformedInput("face sign vector has the wrong length");
    if (!index_.emplace(faces_[id].sign.str(), id).second) {
      throw MalformedInput("duplicate face " + faces_[id].sign.str());
    }
  }
  const auto zero = SignVector(std::vector<Sign>(arrangement_.size(), Sign::Zero));
  const auto o = find(zero);
  if (!o) throw MalformedInput("face list has no origin face");
  origin_ = *o;

  order_.assign(n * n, 0);
  std::vector<boost::dynamic_bitset<>> strictly_below(n, boost::dynamic_bitset<>(n));
  std::vector<boost::dynamic_bitset<>> strictly_above(n, boost::dynamic_bitset<>(n));
  for (FaceId a = 0; a < n; ++a) {
    for (FaceId b = 0; b < n; ++b) {
      bool le = true;
      for (std::size_t h = 0; h < arrangement_.size() && le; ++h) {
        const Sign sa = faces_[a].sign[h];
        le = sa == Sign::Zero || sa == faces_[b].sign[h];
      }
      if (!le) continue;
      order_[a * n + b] = 1;
      if (a != b) {
        strictly_below[b].set(a);
        strictly_above[a].set(b);
      }
    }
  }
  below_.resize(n);
  above_.resize(n);
  for (FaceId up = 0; up < n; ++up) {
    for (auto lo = strictly_below[up].find_first(); lo != boost::dynamic_bitset<>::npos;
         lo = strictly_below[up].find_next(lo)) {
      if (!strictly_below[up].intersects(strictly_above[lo])) {
        hasse_.emplace_back(lo, up);
        below_[up].push_back(lo);
        above_[lo].push_back(up);
      }
    }
  }
  std::sort(hasse_.begin(), hasse_.end());
}

std::optional<FaceId> FacePoset::find(const SignVector& sv) const {
  auto it = index_.find(sv.str());
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

FaceId FacePoset::id_of(std::string_view sign) const {
  auto it = index_.find(std::string(sign));
  if (it == index_.end()) throw DomainError("no face with sign vector \"" + std::string(sign) + "\"");
  return it->second;
}

std::vector<FaceId> FacePoset::chambers() const {
  std::vector<FaceId> out;
  for (FaceId id = 0; id < faces_.size(); ++id) {
    if (above_[id].empty()) out.push_back(id);
  }
  return out;
}

int FacePoset::max_dim() const { return faces_.empty() ? 0 : faces_.back().dim; }

bool FacePoset::same_as(const FacePoset& other) const {
  if (this == &other) return true;
  if (!(arrangement_ == other.arrangement_) || faces_.size() != other.faces_.size()) return false;
  for (std::size_t k = 0; k < faces_.size(); ++k) {
    if (faces_[k].sign != other.faces_[k].sign) return false;
  }
  return true;
}

const std::vector<CollinearTriple>& FacePoset::collinear_triples() const {
  std::call_once(collinear_once_, [this] {
    const std::size_t n = faces_.size();
    for (FaceId a = 0; a < n; ++a) {
      for (FaceId b = 0; b < n; ++b) {
        for (FaceId c = 0; c < n; ++c) {
          if (collinear(*this, a, b, c)) collinear_.push_back({a, b, c});
        }
      }
    }
  });
  return collinear_;
}

const std::vector<OpposedConfiguration>& FacePoset::opposed_configurations() const {
  std::call_once(opposed_once_, [this] {
    const std::size_t n = faces_.size();
    for (FaceId d = 0; d < n; ++d) {
      const auto& ups = above_[d];
      for (FaceId c1 : ups) {
        for (FaceId c2 : ups) {
          if (opposed(*this, c1, c2, d)) opposed_.push_back({c1, c2, d});
        }
      }
    }
    std::sort(opposed_.begin(), opposed_.end(), [](const auto& x, const auto& y) {
      return std::tie(x.c1, x.c2, x.d) < std::tie(y.c1, y.c2, y.d);
    });
  });
  return opposed_;
}

// ---------------------------------------------------------------------------

namespace {

void extend_prefix(const Arrangement& arr, SignVector& prefix, const QVector& witness, std::vector<Face>& out) {
  const std::size_t k = prefix.size();
  if (k == arr.size()) {
    out.push_back(Face{prefix, face_dimension(arr, prefix), witness});
    return;
  }
  const Sign natural = sign_of(arr.hyperplanes()[k].normal.dot(witness));
  for (Sign s : {Sign::Zero, Sign::Minus, Sign::Plus}) {
    prefix.push_back(s);
    if (s == natural) {
      extend_prefix(arr, prefix, witness, out);
    } else if (auto w = solve_feasible(face_system(arr, prefix))) {
      extend_prefix(arr, prefix, *w, out);
    }
    prefix.pop_back();
  }
}

}  // namespace

PosetPtr enumerate_faces(const Arrangement& arr) {
  std::vector<Face> faces;
  SignVector prefix;
  auto start = solve_feasible(face_system(arr, prefix));
  if (!start) throw std::logic_error("subspace has no points");
  extend_prefix(arr, prefix, *start, faces);
  return std::make_shared<const FacePoset>(arr, std::move(faces));
}

PosetPtr braid_poset(int n) {
  static std::mutex mutex;
  static std::map<int, PosetPtr> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[n];
  if (!slot) slot = enumerate_faces(braid_arrangement(n));
  return slot;
}

// ---------------------------------------------------------------------------

std::vector<OrderedSetPartition> ordered_set_partitions(int m) {
  if (m < 1) return {};
  std::vector<OrderedSetPartition> out;
  // Assign each element a block index; keep assignments whose used indices
  // are exactly 0..k-1 (surjective onto a prefix).
  std::vector<int> block(static_cast<std::size_t>(m), 0);
  while (true) {
    const int k = *std::max_element(block.begin(), block.end()) + 1;
    std::vector<std::vector<int>> blocks(static_cast<std::size_t>(k));
    for (int e = 0; e < m; ++e) blocks[static_cast<std::size_t>(block[static_cast<std::size_t>(e)])].push_back(e + 1);
    if (std::none_of(blocks.begin(), blocks.end(), [](const auto& b) { return b.empty(); })) {
      out.push_back({std::move(blocks)});
    }
    int pos = m - 1;
    while (pos >= 0 && block[static_cast<std::size_t>(pos)] == m - 1) block[static_cast<std::size_t>(pos--)] = 0;
    if (pos < 0) break;
    ++block[static_cast<std::size_t>(pos)];
  }
  return out;
}

SignVector to_sign_vector(const OrderedSetPartition& osp, int n) {
  std::vector<int> block_of(static_cast<std::size_t>(n + 2), -1);
  for (std::size_t t = 0; t < osp.blocks.size(); ++t) {
    for (int e : osp.blocks[t]) {
      if (e < 1 || e > n + 1 || block_of[static_cast<std::size_t>(e)] != -1) {
        throw DomainError("not an ordered set partition of {1.." + std::to_string(n + 1) + "}");
      }
      block_of[static_cast<std::size_t>(e)] = static_cast<int>(t);
    }
  }
  SignVector sv;
  for (int i = 1; i <= n + 1; ++i) {
    if (block_of[static_cast<std::size_t>(i)] < 0) throw DomainError("ordered set partition misses an element");
    for (int j = i + 1; j <= n + 1; ++j) {
      const int bi = block_of[static_cast<std::size_t>(i)];
      const int bj = block_of[static_cast<std::size_t>(j)];
      sv.push_back(bi == bj ? Sign::Zero : (bi > bj ? Sign::Plus : Sign::Minus));
    }
  }
  return sv;
}

OrderedSetPartition to_ordered_set_partition(const SignVector& sv, int n) {
  const int m = n + 1;
  if (sv.size() != static_cast<std::size_t>(m * (m - 1) / 2)) throw DomainError("sign vector has the wrong length");
  // below[e] = number of elements with a strictly smaller coordinate.
  std::vector<int> below(static_cast<std::size_t>(m), 0);
  std::size_t h = 0;
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j, ++h) {
      if (sv[h] == Sign::Plus) ++below[static_cast<std::size_t>(i)];
      if (sv[h] == Sign::Minus) ++below[static_cast<std::size_t>(j)];
    }
  }
  std::map<int, std::vector<int>> groups;
  for (int e = 0; e < m; ++e) groups[below[static_cast<std::size_t>(e)]].push_back(e + 1);
  OrderedSetPartition osp;
  for (auto& [count, members] : groups) osp.blocks.push_back(std::move(members));
  if (to_sign_vector(osp, n) != sv) throw DomainError("sign vector " + sv.str() + " is not a braid face");
  return osp;
}

PosetPtr faces_from_osp(int n) {
  Arrangement arr = braid_arrangement(n);
  std::vector<Face> faces;
  for (const auto& osp : ordered_set_partitions(n + 1)) {
    QVector witness(n + 1);
    Rational total = 0;
    for (std::size_t t = 0; t < osp.blocks.size(); ++t) total += Rational(static_cast<long>(t * osp.blocks[t].size()));
    for (std::size_t t = 0; t < osp.blocks.size(); ++t) {
      for (int e : osp.blocks[t]) witness(e - 1) = Rational(static_cast<long>(t) * (n + 1)) - total;
    }
    faces.push_back(Face{to_sign_vector(osp, n), static_cast<int>(osp.blocks.size()) - 1, std::move(witness)});
  }
  return std::make_shared<const FacePoset>(std::move(arr), std::move(faces));
}

// ---------------------------------------------------------------------------

bool leq(const FacePoset& poset, FaceId lower, FaceId upper) {
  return poset.leq(checked_id(poset, lower), checked_id(poset, upper));
}

bool leq(const FacePoset& poset, const Face& lower, const Face& upper) {
  auto a = poset.find(lower.sign);
  auto b = poset.find(upper.sign);
  if (!a || !b) throw DomainError("face does not belong to this poset");
  return poset.leq(*a, *b);
}

bool collinear_prefilter(const SignVector& a, const SignVector& b, const SignVector& c) {
  for (std::size_t h = 0; h < a.size(); ++h) {
    const Sign sa = a[h];
    const Sign sc = c[h];
    const Sign sb = b[h];
    if (sa == sc) {
      if (sb != sa) return false;
    } else if (sa == Sign::Zero) {
      if (sb != sc) return false;
    } else if (sc == Sign::Zero) {
      if (sb != sa) return false;
    }
    // opposite nonzero signs allow any sign on b
  }
  return true;
}

bool collinear(const FacePoset& poset, FaceId a, FaceId b, FaceId c) {
  checked_id(poset, a);
  checked_id(poset, b);
  checked_id(poset, c);
  if (b == a || b == c) return true;
  const Face& fa = poset.face(a);
  const Face& fb = poset.face(b);
  const Face& fc = poset.face(c);
  if (!collinear_prefilter(fa.sign, fb.sign, fc.sign)) return false;

  // Variables (a', c') in Q^{2d}: a' in A, c' in C, a' + c' in B.
  const Arrangement& arr = poset.arrangement();
  const Eigen::Index d = arr.ambient_dim();
  LinearSystem sys;
  sys.ambient_dim = 2 * d;
  auto lift = [d](const QVector& row, bool first, bool second) {
    QVector out = QVector::Zero(2 * d);
    if (first) out.head(d) = row;
    if (second) out.tail(d) = row;
    return out;
  };
  for (Eigen::Index r = 0; r < arr.subspace().rows(); ++r) {
    const QVector row = arr.subspace().row(r).transpose();
    sys.equalities.push_back({lift(row, true, false), Rational(0)});
    sys.equalities.push_back({lift(row, false, true), Rational(0)});
  }
  auto constrain = [&](const SignVector& sv, bool first, bool second) {
    for (std::size_t h = 0; h < sv.size(); ++h) {
      const QVector row = lift(arr.hyperplanes()[h].normal, first, second);
      switch (sv[h]) {
        case Sign::Zero:
          sys.equalities.push_back({row, Rational(0)});
          break;
        case Sign::Plus:
          sys.strict_positives.push_back(row);
          break;
        case Sign::Minus:
          sys.strict_positives.push_back(-row);
          break;
      }
    }
  };
  constrain(fa.sign, true, false);
  constrain(fc.sign, false, true);
  constrain(fb.sign, true, true);
  return solve_feasible(sys).has_value();
}

bool opposed(const FacePoset& poset, FaceId c1, FaceId c2, FaceId d) {
  checked_id(poset, c1);
  checked_id(poset, c2);
  checked_id(poset, d);
  if (c1 == c2) return false;
  const Face& f1 = poset.face(c1);
  const Face& f2 = poset.face(c2);
  const Face& fd = poset.face(d);
  if (f1.dim != f2.dim || fd.dim != f1.dim - 1) return false;
  if (!poset.leq(d, c1) || !poset.leq(d, c2)) return false;
  for (std::size_t h = 0; h < f1.sign.size(); ++h) {
    if ((f1.sign[h] == Sign::Zero) != (f2.sign[h] == Sign::Zero)) return false;
  }
  for (std::size_t h = 0; h < f1.sign.size(); ++h) {
    if (fd.sign[h] == Sign::Zero && f1.sign[h] != Sign::Zero && f1.sign[h] != -f2.sign[h]) return false;
  }
  return true;
}

}  // namespace aperv
