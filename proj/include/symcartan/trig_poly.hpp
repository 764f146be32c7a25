#pragma once

#include "symcartan/rational.hpp"

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace symcartan {

inline constexpr int kMaxTorusDim = 4;

using Frequency = std::array<int, kMaxTorusDim>;

/// Real-valued finite Fourier series on the flat torus T^n = (R / 2 pi Z)^n,
///
///     f(x) = (1/D) sum_k (re_k + i im_k) exp(i k.x),
///
/// with integer numerators over one common positive denominator D. The
/// representation is canonical: terms sorted by frequency, no zero terms,
/// gcd(D, all numerators) = 1, and coeff(-k) = conj(coeff(k)). Arithmetic
/// is exact; numerator overflow throws std::overflow_error instead of
/// truncating.
class TrigPoly {
public:
    struct Term {
        std::uint64_t key;  // packed frequency
        std::int64_t re;
        std::int64_t im;
        friend bool operator==(const Term&, const Term&) = default;
    };

    TrigPoly() = default;
    explicit TrigPoly(int dim);
    static TrigPoly constant(int dim, const Rational& value);
    /// c e^{ik.x} + conj(c) e^{-ik.x}; for k = 0 only the real part is used.
    static TrigPoly mode(int dim, const Frequency& k, const Rational& re, const Rational& im);
    static TrigPoly cos(int dim, const Frequency& k, const Rational& amplitude = 1);
    static TrigPoly sin(int dim, const Frequency& k, const Rational& amplitude = 1);

    int dim() const { return dim_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    std::int64_t denominator() const { return denom_; }
    std::span<const Term> terms() const { return terms_; }

    Frequency frequency(const Term& t) const;
    Rational coeff_re(const Frequency& k) const;
    Rational coeff_im(const Frequency& k) const;
    /// Mean over the torus, i.e. the k = 0 coefficient.
    Rational mean() const;
    /// max_i |k_i| over the support.
    int cutoff() const;
    bool is_hermitian() const;

    double evaluate(std::span<const double> x) const;
    /// d/dx_dir evaluated at x.
    double evaluate_derivative(std::span<const double> x, int dir) const;

    TrigPoly derivative(int dir) const;

    TrigPoly& operator+=(const TrigPoly& o);
    TrigPoly& operator-=(const TrigPoly& o);
    TrigPoly& operator*=(const Rational& s);
    void add_scaled(const TrigPoly& o, const Rational& s);

    friend TrigPoly operator+(TrigPoly a, const TrigPoly& b) { return a += b; }
    friend TrigPoly operator-(TrigPoly a, const TrigPoly& b) { return a -= b; }
    friend TrigPoly operator-(TrigPoly a) { return a *= Rational(-1); }
    friend TrigPoly operator*(const Rational& s, TrigPoly a) { return a *= s; }
    friend TrigPoly operator*(const TrigPoly& a, const TrigPoly& b);
    friend bool operator==(const TrigPoly& a, const TrigPoly& b);

    /// Mean of the product a*b, computed without forming the product.
    friend Rational mean_of_product(const TrigPoly& a, const TrigPoly& b);

    static std::uint64_t pack(const Frequency& k);
    static Frequency unpack(std::uint64_t key);

private:
    void normalize();

    int dim_ = 0;
    std::int64_t denom_ = 1;
    std::vector<Term> terms_;
};

}  // namespace symcartan
