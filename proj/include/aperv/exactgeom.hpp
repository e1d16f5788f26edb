#pragma once

// Exact rational linear algebra and feasibility of linear systems with
// strict cone constraints. Everything here works over Eigen dense types whose
// scalar is an arbitrary-precision rational; the elimination routines are
// templated on the scalar so they also run over plain integers in tests.

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>
#include <Eigen/Dense>

namespace aperv {

using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using QMatrix = Matrix<Rational>;
using QVector = Vector<Rational>;

class MalformedInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// "p/q", or "p" when q == 1.
std::string to_string(const Rational& q);
/// Accepts "p", "-p", "p/q" with q > 0. Throws MalformedInput otherwise.
Rational parse_rational(std::string_view text);

/// Stacks equal-length vectors as the rows of a matrix.
/// Throws MalformedInput on ragged input. `width` is used when `rows` is empty.
QMatrix stack_rows(std::span<const QVector> rows, Eigen::Index width = 0);

/// Multiplies a row by the lcm of its denominators and divides by the gcd of
/// its numerators, so equal rays compare equal.
QVector primitive_integer_row(const QVector& row);

// ---------------------------------------------------------------------------
// Elimination

/// Rank by fraction-free (Bareiss) elimination. Exact for exact scalars.
template <typename Derived>
Eigen::Index rank(const Eigen::MatrixBase<Derived>& input) {
  using Scalar = typename Derived::Scalar;
  Matrix<Scalar> a = input;
  const Eigen::Index rows = a.rows();
  const Eigen::Index cols = a.cols();
  Scalar prev_pivot(1);
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
    Eigen::Index p = r;
    while (p < rows && a(p, c) == Scalar(0)) ++p;
    if (p == rows) continue;
    if (p != r) a.row(p).swap(a.row(r));
    for (Eigen::Index i = r + 1; i < rows; ++i) {
      for (Eigen::Index j = c + 1; j < cols; ++j) {
        a(i, j) = (a(r, c) * a(i, j) - a(i, c) * a(r, j)) / prev_pivot;
      }
      a(i, c) = Scalar(0);
    }
    prev_pivot = a(r, c);
    ++r;
  }
  return r;
}

/// In-place reduced row echelon form; returns the pivot column of each
/// nonzero row, in order.
template <typename Scalar>
std::vector<Eigen::Index> reduce_row_echelon(Matrix<Scalar>& a) {
  std::vector<Eigen::Index> pivots;
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < a.cols() && r < a.rows(); ++c) {
    Eigen::Index p = r;
    while (p < a.rows() && a(p, c) == Scalar(0)) ++p;
    if (p == a.rows()) continue;
    if (p != r) a.row(p).swap(a.row(r));
    const Scalar inv = Scalar(1) / a(r, c);
    a.row(r) *= inv;
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      if (i == r || a(i, c) == Scalar(0)) continue;
      const Scalar f = a(i, c);
      a.row(i) -= f * a.row(r);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

/// Basis of the right null space, one basis vector per column.
template <typename Derived>
Matrix<typename Derived::Scalar> kernel_basis(const Eigen::MatrixBase<Derived>& input) {
  using Scalar = typename Derived::Scalar;
  Matrix<Scalar> a = input;
  const auto pivots = reduce_row_echelon(a);
  std::vector<bool> is_pivot(static_cast<std::size_t>(a.cols()), false);
  for (auto c : pivots) is_pivot[static_cast<std::size_t>(c)] = true;

  const Eigen::Index nullity = a.cols() - static_cast<Eigen::Index>(pivots.size());
  Matrix<Scalar> basis = Matrix<Scalar>::Zero(a.cols(), nullity);
  Eigen::Index k = 0;
  for (Eigen::Index free = 0; free < a.cols(); ++free) {
    if (is_pivot[static_cast<std::size_t>(free)]) continue;
    basis(free, k) = Scalar(1);
    for (std::size_t r = 0; r < pivots.size(); ++r) {
      basis(pivots[r], k) = -a(static_cast<Eigen::Index>(r), free);
    }
    ++k;
  }
  return basis;
}

Eigen::Index rank(std::span<const QVector> rows);
std::vector<QVector> kernel_basis(std::span<const QVector> rows, Eigen::Index width);

/// Solves a * x = b exactly. Returns nullopt when inconsistent; free
/// variables are set to zero.
std::optional<QMatrix> solve_exact(const QMatrix& a, const QMatrix& b);

/// Inverse of a square matrix; nullopt when singular.
std::optional<QMatrix> inverse(const QMatrix& a);

/// Rows spanning the left null space of `a` (so result * a == 0).
QMatrix cokernel_rows(const QMatrix& a);

// ---------------------------------------------------------------------------
// Feasibility

struct AffineRow {
  QVector coeffs;
  Rational constant;
};

/// Constraints over x in Q^ambient_dim:
///   equalities:        coeffs . x == constant
///   strict_positives:  row . x >= 1   (strict positivity on a cone)
///   nonstrict:         coeffs . x >= constant
struct LinearSystem {
  Eigen::Index ambient_dim = 0;
  std::vector<AffineRow> equalities;
  std::vector<QVector> strict_positives;
  std::vector<AffineRow> nonstrict;

  bool satisfied_by(const QVector& x) const;
};

/// Ambient dimension at or below which Fourier-Motzkin is used.
inline constexpr Eigen::Index kFourierMotzkinMaxDim = 8;

/// Exact feasibility. Returns a witness satisfying every constraint, or
/// nullopt when the system is infeasible. Deterministic.
std::optional<QVector> solve_feasible(const LinearSystem& sys);

/// The two complete procedures behind solve_feasible, exposed so they can be
/// checked against each other.
std::optional<QVector> solve_feasible_fourier_motzkin(const LinearSystem& sys);
std::optional<QVector> solve_feasible_simplex(const LinearSystem& sys);

void check_well_formed(const LinearSystem& sys);

}  // namespace aperv
