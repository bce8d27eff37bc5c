#pragma once

#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Core>

namespace klein4::linalg {

using Eigen::Index;

template <class S>
using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <class S>
using Vec = Eigen::Matrix<S, Eigen::Dynamic, 1>;

/// Scalars of an exact field: equality is exact and division never rounds.
template <class S>
concept ExactField = requires(S a, S b) {
  { a + b } -> std::convertible_to<S>;
  { a * b } -> std::convertible_to<S>;
  { a / b } -> std::convertible_to<S>;
  { a == b } -> std::convertible_to<bool>;
  S(0);
  S(1);
};

/// Reduced row echelon form, leftmost-nonzero pivoting. Pivot columns are
/// appended to `pivots` when given.
template <class Derived>
  requires ExactField<typename Derived::Scalar>
auto rref(const Eigen::MatrixBase<Derived>& a, std::vector<Index>* pivots = nullptr) {
  using S = typename Derived::Scalar;
  Mat<S> m = a;
  const S zero(0);
  Index row = 0;
  for (Index col = 0; col < m.cols() && row < m.rows(); ++col) {
    Index p = row;
    while (p < m.rows() && m(p, col) == zero) ++p;
    if (p == m.rows()) continue;
    if (p != row) m.row(p).swap(m.row(row));
    const S inv = S(1) / m(row, col);
    for (Index j = col; j < m.cols(); ++j) m(row, j) = m(row, j) * inv;
    for (Index i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, col) == zero) continue;
      const S f = m(i, col);
      for (Index j = col; j < m.cols(); ++j) {
        if (!(m(row, j) == zero)) m(i, j) = m(i, j) - f * m(row, j);
      }
    }
    if (pivots != nullptr) pivots->push_back(col);
    ++row;
  }
  return m;
}

template <class Derived>
Index rank(const Eigen::MatrixBase<Derived>& a) {
  std::vector<Index> piv;
  rref(a, &piv);
  return static_cast<Index>(piv.size());
}

/// Basis of the null space, one vector per column.
template <class Derived>
auto kernel(const Eigen::MatrixBase<Derived>& a) {
  using S = typename Derived::Scalar;
  std::vector<Index> piv;
  const Mat<S> r = rref(a, &piv);
  const Index n = a.cols();
  std::vector<bool> is_piv(static_cast<std::size_t>(n), false);
  for (Index c : piv) is_piv[static_cast<std::size_t>(c)] = true;
  Mat<S> k = Mat<S>::Constant(n, n - static_cast<Index>(piv.size()), S(0));
  Index out = 0;
  for (Index f = 0; f < n; ++f) {
    if (is_piv[static_cast<std::size_t>(f)]) continue;
    k(f, out) = S(1);
    for (std::size_t i = 0; i < piv.size(); ++i) k(piv[i], out) = S(0) - r(static_cast<Index>(i), f);
    ++out;
  }
  return k;
}

/// The pivot columns of `a`: a basis of its column space drawn from its columns.
template <class Derived>
auto column_basis(const Eigen::MatrixBase<Derived>& a) {
  using S = typename Derived::Scalar;
  std::vector<Index> piv;
  rref(a, &piv);
  Mat<S> out(a.rows(), static_cast<Index>(piv.size()));
  for (std::size_t i = 0; i < piv.size(); ++i) out.col(static_cast<Index>(i)) = a.col(piv[i]);
  return out;
}

/// Some X with A X = B, or nullopt if the system is inconsistent.
template <class DA, class DB>
auto solve(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) -> std::optional<Mat<typename DA::Scalar>> {
  using S = typename DA::Scalar;
  Mat<S> aug(a.rows(), a.cols() + b.cols());
  aug << a, b;
  std::vector<Index> piv;
  const Mat<S> r = rref(aug, &piv);
  Mat<S> x = Mat<S>::Constant(a.cols(), b.cols(), S(0));
  for (std::size_t i = 0; i < piv.size(); ++i) {
    if (piv[i] >= a.cols()) return std::nullopt;
    x.row(piv[i]) = r.row(static_cast<Index>(i)).tail(b.cols());
  }
  return x;
}

template <class Derived>
auto inverse(const Eigen::MatrixBase<Derived>& a) -> std::optional<Mat<typename Derived::Scalar>> {
  using S = typename Derived::Scalar;
  if (a.rows() != a.cols()) return std::nullopt;
  if (rank(a) != a.rows()) return std::nullopt;
  Mat<S> id = Mat<S>::Constant(a.rows(), a.rows(), S(0));
  for (Index i = 0; i < a.rows(); ++i) id(i, i) = S(1);
  return solve(a, id);
}

/// Standard basis vectors completing the independent columns of `b` to a
/// basis of the ambient space.
template <class Derived>
auto complement(const Eigen::MatrixBase<Derived>& b, Index n) {
  using S = typename Derived::Scalar;
  Mat<S> aug(n, b.cols() + n);
  aug.leftCols(b.cols()) = b;
  aug.rightCols(n).setConstant(S(0));
  for (Index i = 0; i < n; ++i) aug(i, b.cols() + i) = S(1);
  std::vector<Index> piv;
  rref(aug, &piv);
  std::vector<Index> extra;
  for (Index c : piv) {
    if (c >= b.cols()) extra.push_back(c - b.cols());
  }
  Mat<S> out = Mat<S>::Constant(n, static_cast<Index>(extra.size()), S(0));
  for (std::size_t i = 0; i < extra.size(); ++i) out(extra[i], static_cast<Index>(i)) = S(1);
  return out;
}

/// Basis of span(U) + span(W).
template <class DU, class DW>
auto sum(const Eigen::MatrixBase<DU>& u, const Eigen::MatrixBase<DW>& w) {
  using S = typename DU::Scalar;
  Mat<S> aug(u.rows(), u.cols() + w.cols());
  aug << u, w;
  return column_basis(aug);
}

/// Basis of span(U) ∩ span(W).
template <class DU, class DW>
auto intersect(const Eigen::MatrixBase<DU>& u, const Eigen::MatrixBase<DW>& w) {
  using S = typename DU::Scalar;
  Mat<S> aug(u.rows(), u.cols() + w.cols());
  aug << u, w;
  const Mat<S> k = kernel(aug);
  const Mat<S> vecs = u * k.topRows(u.cols());
  return column_basis(vecs);
}

/// Basis of { x : A x ∈ span(W) }.
template <class DA, class DW>
auto preimage(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DW>& w) {
  using S = typename DA::Scalar;
  Mat<S> aug(a.rows(), a.cols() + w.cols());
  aug << a, w;
  const Mat<S> k = kernel(aug);
  const Mat<S> top = k.topRows(a.cols());
  return column_basis(top);
}

/// Characteristic polynomial det(x I − A), coefficients lowest degree first,
/// via reduction to upper Hessenberg form.
template <class Derived>
auto charpoly(const Eigen::MatrixBase<Derived>& a0) {
  using S = typename Derived::Scalar;
  Mat<S> h = a0;
  const Index n = h.rows();
  const S zero(0);
  for (Index j = 0; j + 2 < n; ++j) {
    Index p = j + 1;
    while (p < n && h(p, j) == zero) ++p;
    if (p == n) continue;
    if (p != j + 1) {
      h.row(p).swap(h.row(j + 1));
      h.col(p).swap(h.col(j + 1));
    }
    for (Index i = j + 2; i < n; ++i) {
      if (h(i, j) == zero) continue;
      const S f = h(i, j) / h(j + 1, j);
      h.row(i) -= f * h.row(j + 1);
      h.col(j + 1) += f * h.col(i);
    }
  }
  // p_k(x) for the leading k×k block.
  std::vector<std::vector<S>> polys(static_cast<std::size_t>(n + 1));
  polys[0] = {S(1)};
  for (Index k = 1; k <= n; ++k) {
    std::vector<S> pk(static_cast<std::size_t>(k + 1), zero);
    const auto& prev = polys[static_cast<std::size_t>(k - 1)];
    for (std::size_t d = 0; d < prev.size(); ++d) {
      pk[d + 1] = pk[d + 1] + prev[d];
      pk[d] = pk[d] - h(k - 1, k - 1) * prev[d];
    }
    S prod(1);
    for (Index i = k - 1; i >= 1; --i) {
      prod = prod * h(i, i - 1);
      if (prod == zero) break;
      const S coef = h(i - 1, k - 1) * prod;
      const auto& q = polys[static_cast<std::size_t>(i - 1)];
      for (std::size_t d = 0; d < q.size(); ++d) pk[d] = pk[d] - coef * q[d];
    }
    polys[static_cast<std::size_t>(k)] = std::move(pk);
  }
  return polys[static_cast<std::size_t>(n)];
}

template <class S>
Mat<S> identity(Index n) {
  Mat<S> id = Mat<S>::Constant(n, n, S(0));
  for (Index i = 0; i < n; ++i) id(i, i) = S(1);
  return id;
}

template <class S>
Mat<S> zeros(Index r, Index c) {
  return Mat<S>::Constant(r, c, S(0));
}

template <class Derived>
bool is_zero(const Eigen::MatrixBase<Derived>& expr) {
  using S = typename Derived::Scalar;
  const Mat<S> a = expr;
  for (Index j = 0; j < a.cols(); ++j) {
    for (Index i = 0; i < a.rows(); ++i) {
      if (!(a(i, j) == S(0))) return false;
    }
  }
  return true;
}

}  // namespace klein4::linalg
