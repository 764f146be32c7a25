#pragma once

#include "symcartan/rational.hpp"

#include <cstddef>
#include <vector>

namespace symcartan {

/// Dense row-major matrix of exact rationals.
class RationalMatrix {
public:
    RationalMatrix() = default;
    RationalMatrix(std::size_t rows, std::size_t cols);

    static RationalMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    bool is_zero() const;
    bool is_symmetric() const;
    RationalMatrix transpose() const;
    Rational trace() const;

    RationalMatrix& operator+=(const RationalMatrix& other);
    RationalMatrix& operator-=(const RationalMatrix& other);
    RationalMatrix& operator*=(const Rational& s);

    friend RationalMatrix operator+(RationalMatrix a, const RationalMatrix& b) { return a += b; }
    friend RationalMatrix operator-(RationalMatrix a, const RationalMatrix& b) { return a -= b; }
    friend RationalMatrix operator*(RationalMatrix a, const Rational& s) { return a *= s; }
    friend RationalMatrix operator*(const Rational& s, RationalMatrix a) { return a *= s; }
    friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);
    friend bool operator==(const RationalMatrix& a, const RationalMatrix& b);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

RationalMatrix commutator(const RationalMatrix& a, const RationalMatrix& b);

/// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> row_reduce(RationalMatrix& m);

std::size_t rank(RationalMatrix m);
Rational determinant(RationalMatrix m);

/// Basis of {x : m x = 0}, one vector per free column.
std::vector<std::vector<Rational>> nullspace(RationalMatrix m);

/// Solves m x = rhs exactly. Throws std::domain_error if inconsistent;
/// free variables are set to zero when the solution is not unique.
std::vector<Rational> solve(const RationalMatrix& m, const std::vector<Rational>& rhs);

}  // namespace symcartan
