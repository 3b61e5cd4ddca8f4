#pragma once

// Exact dense linear algebra over a field scalar.
//
// Every routine works on any Eigen dense expression whose scalar supports
// exact field arithmetic (mbe::Rational in practice). Elimination never
// compares magnitudes: the pivot is the first non-zero entry met while
// scanning columns in the chosen order and rows top to bottom, so results
// are deterministic for a given input and PivotOrder.

#include "mbe/errors.hpp"
#include "mbe/rational.hpp"

#include <Eigen/Core>

#include <optional>
#include <string>
#include <vector>

namespace mbe {

enum class PivotOrder {
    Forward,  // columns left to right
    Reverse,  // columns right to left
};

template <typename Scalar>
struct RowEchelon {
    Matrix<Scalar> reduced;            // reduced row echelon form
    std::vector<Eigen::Index> pivots;  // pivot column of row i, original indexing
};

template <typename Derived>
RowEchelon<typename Derived::Scalar> row_echelon(const Eigen::MatrixBase<Derived>& m,
                                                 PivotOrder order = PivotOrder::Forward)
{
    using Scalar = typename Derived::Scalar;
    using Eigen::Index;

    RowEchelon<Scalar> out{m, {}};
    Matrix<Scalar>& a = out.reduced;
    const Index rows = a.rows();
    const Index cols = a.cols();

    Index row = 0;
    for (Index step = 0; step < cols && row < rows; ++step) {
        const Index col = order == PivotOrder::Forward ? step : cols - 1 - step;
        Index found = -1;
        for (Index r = row; r < rows; ++r) {
            if (a(r, col) != 0) {
                found = r;
                break;
            }
        }
        if (found < 0) continue;
        if (found != row) a.row(found).swap(a.row(row));

        const Scalar inv = Scalar(1) / a(row, col);
        a.row(row) *= inv;
        for (Index r = 0; r < rows; ++r) {
            if (r == row || a(r, col) == 0) continue;
            const Scalar factor = a(r, col);
            a.row(r) -= factor * a.row(row);
        }
        out.pivots.push_back(col);
        ++row;
    }
    return out;
}

template <typename Derived>
Eigen::Index rank(const Eigen::MatrixBase<Derived>& m, PivotOrder order = PivotOrder::Forward)
{
    return static_cast<Eigen::Index>(row_echelon(m, order).pivots.size());
}

/// Null space basis, one vector per column of the result
/// (cols(m) - rank(m) columns).
template <typename Derived>
Matrix<typename Derived::Scalar> kernel_basis(const Eigen::MatrixBase<Derived>& m,
                                              PivotOrder order = PivotOrder::Forward)
{
    using Scalar = typename Derived::Scalar;
    using Eigen::Index;

    const auto ech = row_echelon(m, order);
    const Index cols = m.cols();
    std::vector<bool> is_pivot(static_cast<std::size_t>(cols), false);
    for (Index p : ech.pivots) is_pivot[static_cast<std::size_t>(p)] = true;

    std::vector<Index> free_cols;
    for (Index step = 0; step < cols; ++step) {
        const Index col = order == PivotOrder::Forward ? step : cols - 1 - step;
        if (!is_pivot[static_cast<std::size_t>(col)]) free_cols.push_back(col);
    }

    Matrix<Scalar> basis = Matrix<Scalar>::Zero(cols, static_cast<Index>(free_cols.size()));
    for (std::size_t j = 0; j < free_cols.size(); ++j) {
        const Index f = free_cols[j];
        const Index out_col = static_cast<Index>(j);
        basis(f, out_col) = Scalar(1);
        for (std::size_t i = 0; i < ech.pivots.size(); ++i) {
            basis(ech.pivots[i], out_col) = -ech.reduced(static_cast<Index>(i), f);
        }
    }
    return basis;
}

/// Column space basis made of the pivot columns of `m` itself.
template <typename Derived>
Matrix<typename Derived::Scalar> image_basis(const Eigen::MatrixBase<Derived>& m,
                                             PivotOrder order = PivotOrder::Forward)
{
    using Scalar = typename Derived::Scalar;
    const auto ech = row_echelon(m, order);
    Matrix<Scalar> basis(m.rows(), static_cast<Eigen::Index>(ech.pivots.size()));
    for (std::size_t j = 0; j < ech.pivots.size(); ++j) {
        basis.col(static_cast<Eigen::Index>(j)) = m.col(ech.pivots[j]);
    }
    return basis;
}

/// Coefficients c with basis * c == target, or nullopt when target is not
/// in the column span. Dependent columns receive coefficient zero.
template <typename DerivedB, typename DerivedT>
std::optional<Vector<typename DerivedB::Scalar>> solve_in_span(const Eigen::MatrixBase<DerivedB>& basis,
                                                               const Eigen::MatrixBase<DerivedT>& target)
{
    using Scalar = typename DerivedB::Scalar;
    using Eigen::Index;

    if (target.cols() != 1 || basis.rows() != target.rows()) {
        throw InvalidInput("solve_in_span: basis vectors have length " + std::to_string(basis.rows()) +
                           " but target has length " + std::to_string(target.rows()));
    }
    const Index n = basis.cols();
    Matrix<Scalar> augmented(basis.rows(), n + 1);
    augmented.leftCols(n) = basis;
    augmented.col(n) = target;

    const auto ech = row_echelon(augmented);
    Vector<Scalar> coeffs = Vector<Scalar>::Zero(n);
    for (std::size_t i = 0; i < ech.pivots.size(); ++i) {
        const Index p = ech.pivots[i];
        if (p == n) return std::nullopt;
        coeffs(p) = ech.reduced(static_cast<Index>(i), n);
    }
    return coeffs;
}

template <typename Derived>
bool is_zero(const Eigen::MatrixBase<Derived>& expr)
{
    const Matrix<typename Derived::Scalar> m = expr;
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
        for (Eigen::Index r = 0; r < m.rows(); ++r) {
            if (m(r, c) != 0) return false;
        }
    }
    return true;
}

/// [a | b]; either side may have zero columns.
template <typename DerivedA, typename DerivedB>
Matrix<typename DerivedA::Scalar> hconcat(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b)
{
    Matrix<typename DerivedA::Scalar> out(a.rows(), a.cols() + b.cols());
    out.leftCols(a.cols()) = a;
    out.rightCols(b.cols()) = b;
    return out;
}

template <typename Derived>
Matrix<typename Derived::Scalar> matrix_power(const Eigen::MatrixBase<Derived>& m, int exponent)
{
    using Scalar = typename Derived::Scalar;
    Matrix<Scalar> result = Matrix<Scalar>::Identity(m.rows(), m.cols());
    for (int i = 0; i < exponent; ++i) result = (result * m).eval();
    return result;
}

}  // namespace mbe
