#pragma once

// Differential forms on the flat torus T^n with trigonometric-polynomial
// components. A p-form stores one TrigPoly per strictly increasing
// multi-index I of length p; multi-indices are bitmasks over dx^0..dx^{n-1}
// ordered by (popcount, value).

#include "symcartan/algebra.hpp"
#include "symcartan/trig_poly.hpp"

#include <cstdint>
#include <vector>

namespace symcartan {

/// Strictly increasing multi-indices of length p in n slots, as bitmasks.
const std::vector<unsigned>& multi_indices(int n, int p);
/// Position of a bitmask in multi_indices(n, popcount(mask)).
int multi_index_position(int n, unsigned mask);
unsigned mask_of(const std::vector<int>& indices);
std::vector<int> indices_of(unsigned mask);
/// Sign of dx^I ^ dx^J relative to dx^{I u J}; 0 when I and J overlap.
int wedge_sign(unsigned a, unsigned b);

class Form {
public:
    Form() = default;
    Form(int torus_dim, int degree);

    int torus_dim() const { return n_; }
    int degree() const { return p_; }
    std::size_t size() const { return comp_.size(); }
    TrigPoly& operator[](std::size_t i) { return comp_[i]; }
    const TrigPoly& operator[](std::size_t i) const { return comp_[i]; }
    TrigPoly& at_mask(unsigned mask);
    const TrigPoly& at_mask(unsigned mask) const;
    bool is_zero() const;
    int cutoff() const;

    Form& operator+=(const Form& o);
    Form& operator-=(const Form& o);
    Form& operator*=(const Rational& s);
    void add_scaled(const Form& o, const Rational& s);
    friend Form operator+(Form a, const Form& b) { return a += b; }
    friend Form operator-(Form a, const Form& b) { return a -= b; }
    friend Form operator-(Form a) { return a *= Rational(-1); }
    friend Form operator*(const Rational& s, Form a) { return a *= s; }
    friend bool operator==(const Form& a, const Form& b);

private:
    int n_ = 0;
    int p_ = 0;
    std::vector<TrigPoly> comp_;
};

/// f dx^I for a single multi-index.
Form monomial_form(int torus_dim, const std::vector<int>& indices, TrigPoly f);
Form wedge(const Form& a, const Form& b);
Form exterior_d(const Form& a);
/// Integral of a top form in units of (2 pi)^n.
Rational integrate(const Form& top);
/// Integral of a ^ b for deg a + deg b = n, without forming the product.
Rational integrate_wedge(const Form& a, const Form& b);

/// Form of degree p valued in an algebra: one scalar p-form per basis vector.
class LieForm {
public:
    LieForm() = default;
    LieForm(AlgebraPtr alg, int torus_dim, int degree);

    const AlgebraPtr& algebra() const { return alg_; }
    int torus_dim() const { return n_; }
    int degree() const { return p_; }
    Form& part(int a) { return parts_[static_cast<std::size_t>(a)]; }
    const Form& part(int a) const { return parts_[static_cast<std::size_t>(a)]; }
    bool is_zero() const;
    int cutoff() const;

    LieForm h_part() const;
    LieForm p_part() const;

    LieForm& operator+=(const LieForm& o);
    LieForm& operator-=(const LieForm& o);
    LieForm& operator*=(const Rational& s);
    friend LieForm operator+(LieForm a, const LieForm& b) { return a += b; }
    friend LieForm operator-(LieForm a, const LieForm& b) { return a -= b; }
    friend LieForm operator-(LieForm a) { return a *= Rational(-1); }
    friend LieForm operator*(const Rational& s, LieForm a) { return a *= s; }
    friend bool operator==(const LieForm& a, const LieForm& b);

private:
    AlgebraPtr alg_;
    int n_ = 0;
    int p_ = 0;
    std::vector<Form> parts_;
};

/// X tensor (f dx^I)
LieForm lie_monomial(const AlgebraElement& x, const Form& f);
/// Constant 1-form sum_i X_i dx^i.
LieForm constant_one_form(const std::vector<AlgebraElement>& components, int torus_dim);

LieForm bracket(const LieForm& a, const LieForm& b);
LieForm exterior_d(const LieForm& a);
LieForm covariant_d(const LieForm& connection, const LieForm& a);
/// Coefficient-space linear map applied to the algebra index.
LieForm apply_map(const RationalMatrix& map, const LieForm& a);
LieForm hodge_star(const LieForm& a);
LieForm h_star(const LieForm& a);
LieForm involution(const LieForm& a);

/// beta(a ^ b) = beta_ab a^a ^ b^b
Form beta_pair(const RationalMatrix& gram, const LieForm& a, const LieForm& b);
/// Integral of beta(a ^ b) over T^n in units of (2 pi)^n.
Rational integrate_pairing(const RationalMatrix& gram, const LieForm& a, const LieForm& b);

}  // namespace symcartan
