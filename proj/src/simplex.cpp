#include "aperv/exactgeom.hpp"

// Phase-one simplex over exact rationals with Bland's rule.
//
// Free variables are split as x = p - q. Each ">=" row gets a surplus
// variable, every row gets an artificial, and the sum of artificials is
// minimized. The system is feasible iff that minimum is zero.

namespace aperv {

std::optional<QVector> solve_feasible_simplex(const LinearSystem& sys) {
  check_well_formed(sys);
  const Eigen::Index n = sys.ambient_dim;
  if (n == 0) return QVector(0);

  struct Row {
    QVector coeffs;
    Rational rhs;
    bool inequality;
  };
  std::vector<Row> rows;
  for (const auto& e : sys.equalities) rows.push_back({e.coeffs, e.constant, false});
  for (const auto& s : sys.strict_positives) rows.push_back({s, Rational(1), true});
  for (const auto& r : sys.nonstrict) rows.push_back({r.coeffs, r.constant, true});
  if (rows.empty()) return QVector::Zero(n);

  const auto m = static_cast<Eigen::Index>(rows.size());
  Eigen::Index surplus_count = 0;
  for (const auto& r : rows) surplus_count += r.inequality ? 1 : 0;

  const Eigen::Index surplus0 = 2 * n;
  const Eigen::Index artificial0 = surplus0 + surplus_count;
  const Eigen::Index cols = artificial0 + m;

  QMatrix tab = QMatrix::Zero(m + 1, cols + 1);
  std::vector<Eigen::Index> basis(static_cast<std::size_t>(m));
  Eigen::Index next_surplus = surplus0;
  for (Eigen::Index i = 0; i < m; ++i) {
    const Row& r = rows[static_cast<std::size_t>(i)];
    tab.block(i, 0, 1, n) = r.coeffs.transpose();
    tab.block(i, n, 1, n) = -r.coeffs.transpose();
    if (r.inequality) tab(i, next_surplus++) = -1;
    tab(i, cols) = r.rhs;
    if (r.rhs < 0) tab.row(i) = -tab.row(i);
    tab(i, artificial0 + i) = 1;
    basis[static_cast<std::size_t>(i)] = artificial0 + i;
  }
  // Reduced costs of the phase-one objective.
  for (Eigen::Index j = 0; j <= cols; ++j) {
    if (j >= artificial0 && j < cols) continue;
    Rational s = 0;
    for (Eigen::Index i = 0; i < m; ++i) s -= tab(i, j);
    tab(m, j) = s;
  }

  while (true) {
    Eigen::Index entering = -1;
    for (Eigen::Index j = 0; j < cols; ++j) {
      if (tab(m, j) < 0) {
        entering = j;
        break;
      }
    }
    if (entering < 0) break;

    Eigen::Index leaving = -1;
    Rational best;
    for (Eigen::Index i = 0; i < m; ++i) {
      if (tab(i, entering) <= 0) continue;
      const Rational ratio = tab(i, cols) / tab(i, entering);
      if (leaving < 0 || ratio < best ||
          (ratio == best && basis[static_cast<std::size_t>(i)] < basis[static_cast<std::size_t>(leaving)])) {
        leaving = i;
        best = ratio;
      }
    }
    if (leaving < 0) break;  // unbounded direction; cannot happen for phase one

    const Rational pivot = tab(leaving, entering);
    tab.row(leaving) /= pivot;
    for (Eigen::Index i = 0; i <= m; ++i) {
      if (i == leaving || tab(i, entering) == 0) continue;
      const Rational f = tab(i, entering);
      tab.row(i) -= f * tab.row(leaving);
    }
    basis[static_cast<std::size_t>(leaving)] = entering;
  }

  QVector values = QVector::Zero(cols);
  for (Eigen::Index i = 0; i < m; ++i) values(basis[static_cast<std::size_t>(i)]) = tab(i, cols);
  for (Eigen::Index j = artificial0; j < cols; ++j) {
    if (values(j) != 0) return std::nullopt;
  }
  QVector x = values.head(n) - values.segment(n, n);
  if (!sys.satisfied_by(x)) throw std::logic_error("simplex produced an invalid witness");
  return x;
}

}  // namespace aperv
