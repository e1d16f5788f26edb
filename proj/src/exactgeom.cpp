#include "aperv/exactgeom.hpp"

#include <algorithm>
#include <charconv>
#include <map>

namespace aperv {

namespace {

using boost::multiprecision::denominator;
using boost::multiprecision::numerator;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;

bool is_integer_literal(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

Rational floor_of(const Rational& q) {
  Integer n = numerator(q);
  Integer d = denominator(q);
  Integer f = n / d;  // truncates toward zero
  if (n < 0 && f * d != n) f -= 1;
  return Rational(f);
}

Rational ceil_of(const Rational& q) { return -floor_of(-q); }

}  // namespace

std::string to_string(const Rational& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  const std::string_view num = text.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!is_integer_literal(num) || !is_integer_literal(den) || den.front() == '-' || den.front() == '+') {
    throw MalformedInput("malformed rational: \"" + std::string(text) + "\"");
  }
  Integer n(std::string(num.front() == '+' ? num.substr(1) : num));
  Integer d{std::string(den)};
  if (d == 0) throw MalformedInput("zero denominator: \"" + std::string(text) + "\"");
  return Rational(n, d);
}

QMatrix stack_rows(std::span<const QVector> rows, Eigen::Index width) {
  if (!rows.empty()) width = rows.front().size();
  QMatrix m(static_cast<Eigen::Index>(rows.size()), width);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != width) {
      throw MalformedInput("ragged rows: row " + std::to_string(i) + " has length " +
                           std::to_string(rows[i].size()) + ", expected " + std::to_string(width));
    }
    m.row(static_cast<Eigen::Index>(i)) = rows[i].transpose();
  }
  return m;
}

QVector primitive_integer_row(const QVector& row) {
  Integer l = 1;
  Integer g = 0;
  for (const auto& x : row) l = boost::multiprecision::lcm(l, Integer(denominator(x)));
  QVector out = row * Rational(l);
  for (const auto& x : out) g = boost::multiprecision::gcd(g, Integer(numerator(x)));
  if (g > 1) out /= Rational(g);
  return out;
}

Eigen::Index rank(std::span<const QVector> rows) {
  if (rows.empty()) return 0;
  return rank(stack_rows(rows));
}

std::vector<QVector> kernel_basis(std::span<const QVector> rows, Eigen::Index width) {
  const QMatrix basis = kernel_basis(stack_rows(rows, width));
  std::vector<QVector> out;
  out.reserve(static_cast<std::size_t>(basis.cols()));
  for (Eigen::Index k = 0; k < basis.cols(); ++k) out.emplace_back(basis.col(k));
  return out;
}

std::optional<QMatrix> solve_exact(const QMatrix& a, const QMatrix& b) {
  if (a.rows() != b.rows()) throw MalformedInput("solve_exact: row count mismatch");
  QMatrix aug(a.rows(), a.cols() + b.cols());
  aug << a, b;
  const auto pivots = reduce_row_echelon(aug);
  QMatrix x = QMatrix::Zero(a.cols(), b.cols());
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    if (pivots[r] >= a.cols()) return std::nullopt;
    x.row(pivots[r]) = aug.block(static_cast<Eigen::Index>(r), a.cols(), 1, b.cols());
  }
  return x;
}

std::optional<QMatrix> inverse(const QMatrix& a) {
  if (a.rows() != a.cols()) return std::nullopt;
  if (rank(a) != a.rows()) return std::nullopt;
  return solve_exact(a, QMatrix::Identity(a.rows(), a.cols()));
}

QMatrix cokernel_rows(const QMatrix& a) {
  return kernel_basis(a.transpose()).transpose();
}

bool LinearSystem::satisfied_by(const QVector& x) const {
  if (x.size() != ambient_dim) return false;
  for (const auto& e : equalities) {
    if (e.coeffs.dot(x) != e.constant) return false;
  }
  for (const auto& s : strict_positives) {
    if (s.dot(x) < 1) return false;
  }
  for (const auto& n : nonstrict) {
    if (n.coeffs.dot(x) < n.constant) return false;
  }
  return true;
}

void check_well_formed(const LinearSystem& sys) {
  const bool has_constraints =
      !sys.equalities.empty() || !sys.strict_positives.empty() || !sys.nonstrict.empty();
  if (sys.ambient_dim < 0) throw MalformedInput("negative ambient dimension");
  if (sys.ambient_dim == 0 && has_constraints) {
    throw MalformedInput("ambient dimension 0 with nonempty constraints");
  }
  auto check = [&](const QVector& row, const char* what) {
    if (row.size() != sys.ambient_dim) {
      throw MalformedInput(std::string(what) + " row has length " + std::to_string(row.size()) +
                           ", ambient dimension is " + std::to_string(sys.ambient_dim));
    }
  };
  for (const auto& e : sys.equalities) check(e.coeffs, "equality");
  for (const auto& s : sys.strict_positives) check(s, "strict");
  for (const auto& n : sys.nonstrict) check(n.coeffs, "nonstrict");
}

std::optional<QVector> solve_feasible(const LinearSystem& sys) {
  if (sys.ambient_dim <= kFourierMotzkinMaxDim) return solve_feasible_fourier_motzkin(sys);
  return solve_feasible_simplex(sys);
}

// ---------------------------------------------------------------------------
// Fourier-Motzkin

namespace {

// coeffs . z >= bound, all coefficients past the active prefix are zero.
struct Inequality {
  std::vector<Rational> coeffs;
  Rational bound;
};

Inequality normalized(std::vector<Rational> coeffs, Rational bound) {
  Integer l = 1;
  for (const auto& c : coeffs) l = boost::multiprecision::lcm(l, Integer(denominator(c)));
  Integer g = 0;
  for (auto& c : coeffs) {
    c *= Rational(l);
    g = boost::multiprecision::gcd(g, Integer(numerator(c)));
  }
  bound *= Rational(l);
  if (g > 1) {
    for (auto& c : coeffs) c /= Rational(g);
    bound /= Rational(g);
  }
  return {std::move(coeffs), std::move(bound)};
}

// Returns false when a constant constraint is violated.
bool insert_constraint(std::map<std::vector<Rational>, Rational>& set, std::vector<Rational> coeffs,
                       Rational bound) {
  const bool constant = std::all_of(coeffs.begin(), coeffs.end(), [](const Rational& c) { return c == 0; });
  if (constant) return bound <= 0;
  auto ineq = normalized(std::move(coeffs), std::move(bound));
  auto [it, inserted] = set.try_emplace(std::move(ineq.coeffs), ineq.bound);
  if (!inserted && it->second < ineq.bound) it->second = ineq.bound;
  return true;
}

// Picks a deterministic value in [lo, hi], preferring 0 and then integers.
Rational pick_value(const std::optional<Rational>& lo, const std::optional<Rational>& hi) {
  const bool zero_ok = (!lo || *lo <= 0) && (!hi || *hi >= 0);
  if (zero_ok) return Rational(0);
  if (lo && (!hi || ceil_of(*lo) <= *hi)) return ceil_of(*lo);
  if (hi && (!lo || floor_of(*hi) >= *lo)) return floor_of(*hi);
  return *lo;
}

}  // namespace

std::optional<QVector> solve_feasible_fourier_motzkin(const LinearSystem& sys) {
  check_well_formed(sys);
  const Eigen::Index d = sys.ambient_dim;
  if (d == 0) return QVector(0);

  // Equalities: x = x0 + N z.
  QVector x0 = QVector::Zero(d);
  QMatrix null_space = QMatrix::Identity(d, d);
  if (!sys.equalities.empty()) {
    QMatrix aug(static_cast<Eigen::Index>(sys.equalities.size()), d + 1);
    for (std::size_t i = 0; i < sys.equalities.size(); ++i) {
      aug.row(static_cast<Eigen::Index>(i)).head(d) = sys.equalities[i].coeffs.transpose();
      aug(static_cast<Eigen::Index>(i), d) = sys.equalities[i].constant;
    }
    const auto pivots = reduce_row_echelon(aug);
    for (std::size_t r = 0; r < pivots.size(); ++r) {
      if (pivots[r] == d) return std::nullopt;
      x0(pivots[r]) = aug(static_cast<Eigen::Index>(r), d);
    }
    null_space = kernel_basis(aug.leftCols(d));
  }
  const Eigen::Index k = null_space.cols();

  std::map<std::vector<Rational>, Rational> current;
  auto add_row = [&](const QVector& coeffs, const Rational& constant) {
    const QVector reduced = null_space.transpose() * coeffs;
    std::vector<Rational> c(reduced.data(), reduced.data() + reduced.size());
    return insert_constraint(current, std::move(c), constant - coeffs.dot(x0));
  };
  for (const auto& s : sys.strict_positives) {
    if (!add_row(s, Rational(1))) return std::nullopt;
  }
  for (const auto& n : sys.nonstrict) {
    if (!add_row(n.coeffs, n.constant)) return std::nullopt;
  }
  if (k == 0) return x0;

  // stages[v] holds constraints in the variables 0..v.
  std::vector<std::vector<Inequality>> stages(static_cast<std::size_t>(k));
  for (Eigen::Index v = k - 1; v >= 0; --v) {
    auto& stage = stages[static_cast<std::size_t>(v)];
    for (auto& [c, b] : current) stage.push_back({c, b});
    if (v == 0) break;
    std::map<std::vector<Rational>, Rational> next;
    std::vector<const Inequality*> lower;
    std::vector<const Inequality*> upper;
    for (const auto& ineq : stage) {
      const Rational& a = ineq.coeffs[static_cast<std::size_t>(v)];
      if (a > 0) {
        lower.push_back(&ineq);
      } else if (a < 0) {
        upper.push_back(&ineq);
      } else if (!insert_constraint(next, ineq.coeffs, ineq.bound)) {
        return std::nullopt;
      }
    }
    for (const auto* lo : lower) {
      for (const auto* up : upper) {
        const Rational wl = -up->coeffs[static_cast<std::size_t>(v)];
        const Rational wu = lo->coeffs[static_cast<std::size_t>(v)];
        std::vector<Rational> c(static_cast<std::size_t>(k));
        for (std::size_t t = 0; t < c.size(); ++t) c[t] = wl * lo->coeffs[t] + wu * up->coeffs[t];
        c[static_cast<std::size_t>(v)] = 0;
        if (!insert_constraint(next, std::move(c), wl * lo->bound + wu * up->bound)) return std::nullopt;
      }
    }
    current = std::move(next);
  }

  QVector z = QVector::Zero(k);
  for (Eigen::Index v = 0; v < k; ++v) {
    std::optional<Rational> lo;
    std::optional<Rational> hi;
    for (const auto& ineq : stages[static_cast<std::size_t>(v)]) {
      const Rational& a = ineq.coeffs[static_cast<std::size_t>(v)];
      Rational rest = ineq.bound;
      for (Eigen::Index t = 0; t < v; ++t) rest -= ineq.coeffs[static_cast<std::size_t>(t)] * z(t);
      if (a == 0) {
        if (rest > 0) return std::nullopt;
        continue;
      }
      const Rational bound = rest / a;
      if (a > 0) {
        if (!lo || bound > *lo) lo = bound;
      } else {
        if (!hi || bound < *hi) hi = bound;
      }
    }
    if (lo && hi && *lo > *hi) return std::nullopt;
    z(v) = pick_value(lo, hi);
  }

  QVector x = x0 + null_space * z;
  if (!sys.satisfied_by(x)) throw std::logic_error("Fourier-Motzkin produced an invalid witness");
  return x;
}

}  // namespace aperv
