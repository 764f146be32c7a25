#include "symcartan/forms.hpp"

#include <array>
#include <bit>
#include <map>
#include <stdexcept>

namespace symcartan {

namespace {

struct IndexTables {
    std::array<std::array<std::vector<unsigned>, kMaxTorusDim + 1>, kMaxTorusDim + 1> masks;
    std::array<std::array<int, 1u << kMaxTorusDim>, kMaxTorusDim + 1> position{};
};

const IndexTables& tables()
{
    static const IndexTables t = [] {
        IndexTables t;
        for (int n = 1; n <= kMaxTorusDim; ++n) {
            t.position[n].fill(-1);
            for (unsigned m = 0; m < (1u << n); ++m) {
                auto& list = t.masks[n][std::popcount(m)];
                t.position[n][m] = static_cast<int>(list.size());
                list.push_back(m);
            }
        }
        return t;
    }();
    return t;
}

void check_same_torus(int a, int b)
{
    if (a != b) throw std::invalid_argument("torus dimension mismatch");
}

void check_same_algebra(const LieForm& a, const LieForm& b)
{
    if (a.algebra() != b.algebra()) throw std::invalid_argument("algebra mismatch");
    check_same_torus(a.torus_dim(), b.torus_dim());
}

}  // namespace

const std::vector<unsigned>& multi_indices(int n, int p)
{
    if (n < 1 || n > kMaxTorusDim || p < 0 || p > n) throw std::invalid_argument("invalid form degree");
    return tables().masks[n][p];
}

int multi_index_position(int n, unsigned mask)
{
    return tables().position.at(n).at(mask);
}

unsigned mask_of(const std::vector<int>& indices)
{
    unsigned m = 0;
    for (int i : indices) {
        if (i < 0 || i >= kMaxTorusDim || (m >> i & 1u)) throw std::invalid_argument("invalid multi-index");
        m |= 1u << i;
    }
    return m;
}

std::vector<int> indices_of(unsigned mask)
{
    std::vector<int> v;
    for (int i = 0; i < kMaxTorusDim; ++i)
        if (mask >> i & 1u) v.push_back(i);
    return v;
}

int wedge_sign(unsigned a, unsigned b)
{
    if (a & b) return 0;
    // count pairs (i in a, j in b) with i > j
    int inversions = 0;
    for (int j = 0; j < kMaxTorusDim; ++j)
        if (b >> j & 1u) inversions += std::popcount(a >> (j + 1));
    return inversions % 2 ? -1 : 1;
}

Form::Form(int torus_dim, int degree) : n_(torus_dim), p_(degree)
{
    comp_.assign(multi_indices(torus_dim, degree).size(), TrigPoly(torus_dim));
}

TrigPoly& Form::at_mask(unsigned mask)
{
    if (std::popcount(mask) != p_) throw std::invalid_argument("multi-index length does not match degree");
    return comp_[static_cast<std::size_t>(multi_index_position(n_, mask))];
}

const TrigPoly& Form::at_mask(unsigned mask) const
{
    if (std::popcount(mask) != p_) throw std::invalid_argument("multi-index length does not match degree");
    return comp_[static_cast<std::size_t>(multi_index_position(n_, mask))];
}

bool Form::is_zero() const
{
    for (const auto& c : comp_)
        if (!c.is_zero()) return false;
    return true;
}

int Form::cutoff() const
{
    int k = 0;
    for (const auto& c : comp_) k = std::max(k, c.cutoff());
    return k;
}

Form& Form::operator+=(const Form& o)
{
    add_scaled(o, 1);
    return *this;
}

Form& Form::operator-=(const Form& o)
{
    add_scaled(o, -1);
    return *this;
}

Form& Form::operator*=(const Rational& s)
{
    for (auto& c : comp_) c *= s;
    return *this;
}

void Form::add_scaled(const Form& o, const Rational& s)
{
    check_same_torus(n_, o.n_);
    if (p_ != o.p_) throw std::invalid_argument("adding forms of different degree");
    for (std::size_t i = 0; i < comp_.size(); ++i) comp_[i].add_scaled(o.comp_[i], s);
}

bool operator==(const Form& a, const Form& b)
{
    return a.n_ == b.n_ && a.p_ == b.p_ && a.comp_ == b.comp_;
}

Form monomial_form(int torus_dim, const std::vector<int>& indices, TrigPoly f)
{
    Form r(torus_dim, static_cast<int>(indices.size()));
    const unsigned m = mask_of(indices);
    // reorder to increasing indices
    int sign = 1;
    for (std::size_t i = 0; i < indices.size(); ++i)
        for (std::size_t j = i + 1; j < indices.size(); ++j)
            if (indices[i] > indices[j]) sign = -sign;
    if (sign < 0) f *= Rational(-1);
    r.at_mask(m) = std::move(f);
    return r;
}

Form wedge(const Form& a, const Form& b)
{
    check_same_torus(a.torus_dim(), b.torus_dim());
    const int n = a.torus_dim();
    if (a.degree() + b.degree() > n) throw std::invalid_argument("wedge degree exceeds torus dimension");
    Form r(n, a.degree() + b.degree());
    const auto& ma = multi_indices(n, a.degree());
    const auto& mb = multi_indices(n, b.degree());
    for (std::size_t i = 0; i < ma.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; j < mb.size(); ++j) {
            if (b[j].is_zero()) continue;
            const int s = wedge_sign(ma[i], mb[j]);
            if (s == 0) continue;
            r.at_mask(ma[i] | mb[j]).add_scaled(a[i] * b[j], s);
        }
    }
    return r;
}

Form exterior_d(const Form& a)
{
    const int n = a.torus_dim();
    if (a.degree() >= n) throw std::invalid_argument("exterior derivative of a top-degree form");
    Form r(n, a.degree() + 1);
    const auto& ma = multi_indices(n, a.degree());
    for (std::size_t i = 0; i < ma.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (int j = 0; j < n; ++j) {
            if (ma[i] >> j & 1u) continue;
            const int s = wedge_sign(1u << j, ma[i]);
            r.at_mask(ma[i] | 1u << j).add_scaled(a[i].derivative(j), s);
        }
    }
    return r;
}

Rational integrate(const Form& top)
{
    if (top.degree() != top.torus_dim()) throw std::invalid_argument("integration needs a top-degree form");
    return top[0].mean();
}

Rational integrate_wedge(const Form& a, const Form& b)
{
    check_same_torus(a.torus_dim(), b.torus_dim());
    const int n = a.torus_dim();
    if (a.degree() + b.degree() != n) throw std::invalid_argument("integrand is not a top-degree form");
    const auto& ma = multi_indices(n, a.degree());
    const unsigned full = (1u << n) - 1;
    Rational s = 0;
    for (std::size_t i = 0; i < ma.size(); ++i) {
        if (a[i].is_zero()) continue;
        const unsigned comp = full & ~ma[i];
        const auto& bj = b.at_mask(comp);
        if (bj.is_zero()) continue;
        const Rational v = mean_of_product(a[i], bj);
        if (v != 0) s += wedge_sign(ma[i], comp) * v;
    }
    return s;
}

LieForm::LieForm(AlgebraPtr alg, int torus_dim, int degree) : alg_(std::move(alg)), n_(torus_dim), p_(degree)
{
    if (!alg_) throw std::invalid_argument("form without algebra");
    parts_.assign(static_cast<std::size_t>(alg_->dim()), Form(torus_dim, degree));
}

bool LieForm::is_zero() const
{
    for (const auto& f : parts_)
        if (!f.is_zero()) return false;
    return true;
}

int LieForm::cutoff() const
{
    int k = 0;
    for (const auto& f : parts_) k = std::max(k, f.cutoff());
    return k;
}

LieForm LieForm::h_part() const
{
    auto r = *this;
    for (int a = alg_->dim_h(); a < alg_->dim(); ++a) r.parts_[a] = Form(n_, p_);
    return r;
}

LieForm LieForm::p_part() const
{
    auto r = *this;
    for (int a = 0; a < alg_->dim_h(); ++a) r.parts_[a] = Form(n_, p_);
    return r;
}

LieForm& LieForm::operator+=(const LieForm& o)
{
    check_same_algebra(*this, o);
    for (std::size_t a = 0; a < parts_.size(); ++a) parts_[a] += o.parts_[a];
    return *this;
}

LieForm& LieForm::operator-=(const LieForm& o)
{
    check_same_algebra(*this, o);
    for (std::size_t a = 0; a < parts_.size(); ++a) parts_[a] -= o.parts_[a];
    return *this;
}

LieForm& LieForm::operator*=(const Rational& s)
{
    for (auto& f : parts_) f *= s;
    return *this;
}

bool operator==(const LieForm& a, const LieForm& b)
{
    return a.alg_ == b.alg_ && a.n_ == b.n_ && a.p_ == b.p_ && a.parts_ == b.parts_;
}

LieForm lie_monomial(const AlgebraElement& x, const Form& f)
{
    LieForm r(x.algebra(), f.torus_dim(), f.degree());
    for (int a = 0; a < x.algebra()->dim(); ++a)
        if (x[a] != 0) r.part(a) = x[a] * f;
    return r;
}

LieForm constant_one_form(const std::vector<AlgebraElement>& components, int torus_dim)
{
    if (components.empty() || static_cast<int>(components.size()) != torus_dim)
        throw std::invalid_argument("need one algebra element per coordinate direction");
    LieForm r(components[0].algebra(), torus_dim, 1);
    for (int i = 0; i < torus_dim; ++i)
        r += lie_monomial(components[i], monomial_form(torus_dim, {i}, TrigPoly::constant(torus_dim, 1)));
    return r;
}

LieForm bracket(const LieForm& a, const LieForm& b)
{
    check_same_algebra(a, b);
    const auto& alg = *a.algebra();
    LieForm r(a.algebra(), a.torus_dim(), a.degree() + b.degree());
    if (a.degree() + b.degree() > a.torus_dim()) throw std::invalid_argument("bracket degree exceeds torus dimension");
    // Cache wedges per basis pair; each pair can feed several output slots.
    std::map<std::pair<int, int>, Form> cache;
    for (const auto& t : alg.structure_terms()) {
        if (a.part(t.a).is_zero() || b.part(t.b).is_zero()) continue;
        auto key = std::make_pair(t.a, t.b);
        auto it = cache.find(key);
        if (it == cache.end()) it = cache.emplace(key, wedge(a.part(t.a), b.part(t.b))).first;
        r.part(t.c).add_scaled(it->second, t.value);
    }
    return r;
}

LieForm exterior_d(const LieForm& a)
{
    LieForm r(a.algebra(), a.torus_dim(), a.degree() + 1);
    for (int i = 0; i < a.algebra()->dim(); ++i) r.part(i) = exterior_d(a.part(i));
    return r;
}

LieForm covariant_d(const LieForm& connection, const LieForm& a)
{
    if (connection.degree() != 1) throw std::invalid_argument("connection must be a 1-form");
    return exterior_d(a) + bracket(connection, a);
}

LieForm apply_map(const RationalMatrix& map, const LieForm& a)
{
    const int d = a.algebra()->dim();
    LieForm r(a.algebra(), a.torus_dim(), a.degree());
    for (int row = 0; row < d; ++row)
        for (int col = 0; col < d; ++col)
            if (map(row, col) != 0 && !a.part(col).is_zero()) r.part(row).add_scaled(a.part(col), map(row, col));
    return r;
}

LieForm hodge_star(const LieForm& a)
{
    return apply_map(a.algebra()->star_matrix(), a);
}

LieForm h_star(const LieForm& a)
{
    return apply_map(a.algebra()->h_star_matrix(), a);
}

LieForm involution(const LieForm& a)
{
    return a.h_part() - a.p_part();
}

Form beta_pair(const RationalMatrix& gram, const LieForm& a, const LieForm& b)
{
    check_same_algebra(a, b);
    Form r(a.torus_dim(), a.degree() + b.degree());
    const int d = a.algebra()->dim();
    for (int i = 0; i < d; ++i) {
        if (a.part(i).is_zero()) continue;
        for (int j = 0; j < d; ++j)
            if (gram(i, j) != 0 && !b.part(j).is_zero()) r.add_scaled(wedge(a.part(i), b.part(j)), gram(i, j));
    }
    return r;
}

Rational integrate_pairing(const RationalMatrix& gram, const LieForm& a, const LieForm& b)
{
    check_same_algebra(a, b);
    const int d = a.algebra()->dim();
    Rational s = 0;
    for (int i = 0; i < d; ++i) {
        if (a.part(i).is_zero()) continue;
        for (int j = 0; j < d; ++j)
            if (gram(i, j) != 0 && !b.part(j).is_zero()) s += gram(i, j) * integrate_wedge(a.part(i), b.part(j));
    }
    return s;
}

}  // namespace symcartan
