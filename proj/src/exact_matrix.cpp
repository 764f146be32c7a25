#include "symcartan/exact_matrix.hpp"

#include <stdexcept>
#include <utility>

namespace symcartan {

RationalMatrix::RationalMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols)
{
}

RationalMatrix RationalMatrix::identity(std::size_t n)
{
    RationalMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

bool RationalMatrix::is_zero() const
{
    for (const auto& v : data_)
        if (v != 0) return false;
    return true;
}

bool RationalMatrix::is_symmetric() const
{
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i + 1; j < cols_; ++j)
            if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
}

RationalMatrix RationalMatrix::transpose() const
{
    RationalMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

Rational RationalMatrix::trace() const
{
    Rational t = 0;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
}

RationalMatrix& RationalMatrix::operator+=(const RationalMatrix& other)
{
    if (rows_ != other.rows_ || cols_ != other.cols_) throw std::invalid_argument("matrix shape mismatch");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
    return *this;
}

RationalMatrix& RationalMatrix::operator-=(const RationalMatrix& other)
{
    if (rows_ != other.rows_ || cols_ != other.cols_) throw std::invalid_argument("matrix shape mismatch");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
    return *this;
}

RationalMatrix& RationalMatrix::operator*=(const Rational& s)
{
    for (auto& v : data_) v *= s;
    return *this;
}

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b)
{
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix shape mismatch");
    RationalMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Rational& aik = a(i, k);
            if (aik == 0) continue;
            for (std::size_t j = 0; j < b.cols_; ++j)
                if (b(k, j) != 0) c(i, j) += aik * b(k, j);
        }
    return c;
}

bool operator==(const RationalMatrix& a, const RationalMatrix& b)
{
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

RationalMatrix commutator(const RationalMatrix& a, const RationalMatrix& b)
{
    return a * b - b * a;
}

std::vector<std::size_t> row_reduce(RationalMatrix& m)
{
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t pivot = row;
        while (pivot < m.rows() && m(pivot, col) == 0) ++pivot;
        if (pivot == m.rows()) continue;
        if (pivot != row)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(pivot, j), m(row, j));
        const Rational inv = 1 / m(row, col);
        for (std::size_t j = col; j < m.cols(); ++j) m(row, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == row || m(i, col) == 0) continue;
            const Rational f = m(i, col);
            for (std::size_t j = col; j < m.cols(); ++j)
                if (m(row, j) != 0) m(i, j) -= f * m(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

std::size_t rank(RationalMatrix m)
{
    return row_reduce(m).size();
}

Rational determinant(RationalMatrix m)
{
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
    const std::size_t n = m.rows();
    Rational det = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && m(pivot, col) == 0) ++pivot;
        if (pivot == n) return 0;
        if (pivot != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m(pivot, j), m(col, j));
            det = -det;
        }
        det *= m(col, col);
        for (std::size_t i = col + 1; i < n; ++i) {
            if (m(i, col) == 0) continue;
            const Rational f = m(i, col) / m(col, col);
            for (std::size_t j = col; j < n; ++j) m(i, j) -= f * m(col, j);
        }
    }
    return det;
}

std::vector<std::vector<Rational>> nullspace(RationalMatrix m)
{
    const auto pivots = row_reduce(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<std::vector<Rational>> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        std::vector<Rational> v(m.cols());
        v[free] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m(r, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::vector<Rational> solve(const RationalMatrix& m, const std::vector<Rational>& rhs)
{
    if (rhs.size() != m.rows()) throw std::invalid_argument("rhs size mismatch");
    RationalMatrix aug(m.rows(), m.cols() + 1);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
        aug(i, m.cols()) = rhs[i];
    }
    const auto pivots = row_reduce(aug);
    if (!pivots.empty() && pivots.back() == m.cols()) throw std::domain_error("inconsistent linear system");
    std::vector<Rational> x(m.cols());
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug(r, m.cols());
    return x;
}

}  // namespace symcartan
