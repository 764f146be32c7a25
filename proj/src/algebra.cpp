#include "symcartan/algebra.hpp"

#include <array>
#include <string>

namespace symcartan {

namespace {

struct AlgebraSpec {
    AlgebraName name;
    std::string_view text;
    std::vector<int> eta;  // spacetime metric
    int eps;
};

const std::vector<AlgebraSpec>& specs()
{
    static const std::vector<AlgebraSpec> s = {
        {AlgebraName::so31, "so31", {-1, 1, 1}, 1},     {AlgebraName::iso21, "iso21", {-1, 1, 1}, 0},
        {AlgebraName::so22, "so22", {-1, 1, 1}, -1},    {AlgebraName::so41, "so41", {-1, 1, 1, 1}, 1},
        {AlgebraName::iso31, "iso31", {-1, 1, 1, 1}, 0}, {AlgebraName::so32, "so32", {-1, 1, 1, 1}, -1},
        {AlgebraName::so4, "so4", {1, 1, 1}, 1},        {AlgebraName::iso3, "iso3", {1, 1, 1}, 0},
        {AlgebraName::so3, "so3", {1, 1}, 1},
    };
    return s;
}

const AlgebraSpec& spec_of(AlgebraName name)
{
    for (const auto& s : specs())
        if (s.name == name) return s;
    throw std::invalid_argument("unknown algebra");
}

RationalMatrix generator(int size, const std::vector<int>& g, int i, int j)
{
    RationalMatrix m(size, size);
    m(i, j) = g[j];
    m(j, i) = -g[i];
    return m;
}

int permutation_sign(std::array<int, 4> p)
{
    int sign = 1;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
            if (p[i] == p[j]) return 0;
            if (p[i] > p[j]) sign = -sign;
        }
    return sign;
}

// Hodge dual on so(g) realised as 4x4 matrices (Lambda^2 of R^4 with metric g).
RationalMatrix lambda2_star(const RationalMatrix& x, const std::vector<int>& g)
{
    RationalMatrix out(4, 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            Rational lowered = 0;
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) {
                    const int s = permutation_sign({i, j, k, l});
                    if (s == 0 || x(k, l) == 0) continue;
                    lowered += Rational(s) * x(k, l) * g[l];
                }
            out(i, j) = Rational(g[i]) * lowered / 2;
        }
    return out;
}

RationalMatrix upper_block(const RationalMatrix& m, int size)
{
    RationalMatrix b(size, size);
    for (int i = 0; i < size; ++i)
        for (int j = 0; j < size; ++j) b(i, j) = m(i, j);
    return b;
}

RationalMatrix embed(const RationalMatrix& b, int size)
{
    RationalMatrix m(size, size);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) m(i, j) = b(i, j);
    return m;
}

struct Basis {
    std::vector<RationalMatrix> mats;
    std::vector<std::string> labels;
    int dim_h = 0;
};

Basis make_basis(const std::vector<int>& eta, int eps)
{
    const int n = static_cast<int>(eta.size());
    const int size = n + 1;
    std::vector<int> g = eta;
    g.push_back(eps);
    Basis b;
    std::vector<std::pair<int, int>> h_pairs;
    if (n == 3)
        h_pairs = {{2, 1}, {0, 2}, {1, 0}};
    else if (n == 2)
        h_pairs = {{1, 0}};
    else
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) h_pairs.emplace_back(i, j);
    for (std::size_t k = 0; k < h_pairs.size(); ++k) {
        auto [i, j] = h_pairs[k];
        b.mats.push_back(generator(size, g, i, j));
        b.labels.push_back(n == 4 ? "J" + std::to_string(i) + std::to_string(j) : "J" + std::to_string(k));
    }
    b.dim_h = static_cast<int>(h_pairs.size());
    for (int a = 0; a < n; ++a) {
        RationalMatrix p(size, size);
        p(a, n) = 1;
        p(n, a) = -eps * eta[a];
        b.mats.push_back(p);
        b.labels.push_back("P" + std::to_string(a));
    }
    return b;
}

RationalMatrix coefficient_matrix(const AlgebraDescriptor& alg, const std::vector<RationalMatrix>& images)
{
    const int d = alg.dim();
    RationalMatrix m(d, d);
    for (int a = 0; a < d; ++a) {
        const auto c = alg.coordinates(images[a]);
        for (int r = 0; r < d; ++r) m(r, a) = c[r];
    }
    return m;
}

// Gram of K(v_a, S v_b) for a coefficient-space map S.
RationalMatrix twisted_gram(const RationalMatrix& killing, const RationalMatrix& map)
{
    return killing * map;
}

int square_sign(const RationalMatrix& star)
{
    const auto sq = star * star;
    const auto id = RationalMatrix::identity(star.rows());
    if (sq == id) return 1;
    if (sq == id * Rational(-1)) return -1;
    return 0;
}

}  // namespace

std::string_view to_string(AlgebraName name)
{
    return spec_of(name).text;
}

AlgebraName parse_algebra_name(std::string_view text)
{
    for (const auto& s : specs())
        if (s.text == text) return s.name;
    throw std::invalid_argument("unsupported algebra '" + std::string(text) +
                                "' (expected one of so31, iso21, so22, so41, iso31, so32, so4, iso3, so3)");
}

const std::vector<AlgebraName>& all_algebra_names()
{
    static const std::vector<AlgebraName> names = [] {
        std::vector<AlgebraName> v;
        for (const auto& s : specs()) v.push_back(s.name);
        return v;
    }();
    return names;
}

const RationalMatrix& AlgebraDescriptor::star_matrix() const
{
    if (!star_) throw UnsupportedOperation("algebra " + std::string(to_string(name)) + " carries no Hodge star");
    return *star_;
}

const RationalMatrix& AlgebraDescriptor::h_star_matrix() const
{
    if (!h_star_) throw UnsupportedOperation("algebra " + std::string(to_string(name)) + " carries no h-block star");
    return *h_star_;
}

const RationalMatrix& AlgebraDescriptor::star_gram() const
{
    if (!star_gram_)
        throw UnsupportedOperation("algebra " + std::string(to_string(name)) + " carries no Hodge star");
    return *star_gram_;
}

const RationalMatrix& AlgebraDescriptor::h_star_gram() const
{
    if (!h_star_gram_)
        throw UnsupportedOperation("algebra " + std::string(to_string(name)) + " carries no h-block star");
    return *h_star_gram_;
}

std::vector<Rational> AlgebraDescriptor::coordinates(const RationalMatrix& m) const
{
    const std::size_t size = static_cast<std::size_t>(matrix_dim);
    if (m.rows() != size || m.cols() != size) throw std::invalid_argument("matrix size mismatch");
    RationalMatrix system(size * size, basis.size());
    std::vector<Rational> rhs(size * size);
    for (std::size_t i = 0; i < size; ++i)
        for (std::size_t j = 0; j < size; ++j) {
            for (std::size_t a = 0; a < basis.size(); ++a) system(i * size + j, a) = basis[a](i, j);
            rhs[i * size + j] = m(i, j);
        }
    try {
        return solve(system, rhs);
    } catch (const std::domain_error&) {
        throw std::domain_error("matrix does not lie in " + std::string(to_string(name)));
    }
}

RationalMatrix AlgebraDescriptor::matrix_of(const std::vector<Rational>& coeffs) const
{
    RationalMatrix m(matrix_dim, matrix_dim);
    for (std::size_t a = 0; a < basis.size(); ++a)
        if (coeffs[a] != 0) m += basis[a] * coeffs[a];
    return m;
}

void AlgebraDescriptor::set_structure(std::vector<Rational> structure)
{
    structure_ = std::move(structure);
    terms_.clear();
    const int d = dim();
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
            for (int c = 0; c < d; ++c)
                if (structure_constant(c, a, b) != 0) terms_.push_back({a, b, c, structure_constant(c, a, b)});
    killing_ = killing_gram(*this);
}

AlgebraPtr build_algebra(AlgebraName name, ContractionStar contraction)
{
    const auto& spec = spec_of(name);
    auto alg = std::make_shared<AlgebraDescriptor>();
    alg->name = name;
    alg->spacetime_dim = static_cast<int>(spec.eta.size());
    alg->matrix_dim = alg->spacetime_dim + 1;
    alg->lambda_sign = spec.eps;
    alg->metric = spec.eta;
    alg->metric.push_back(spec.eps);
    auto basis = make_basis(spec.eta, spec.eps);
    alg->basis = std::move(basis.mats);
    alg->labels = std::move(basis.labels);
    alg->dim_h_ = basis.dim_h;

    const int d = alg->dim();
    std::vector<Rational> structure(static_cast<std::size_t>(d) * d * d);
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) {
            const auto c = alg->coordinates(commutator(alg->basis[a], alg->basis[b]));
            for (int k = 0; k < d; ++k) structure[(static_cast<std::size_t>(k) * d + a) * d + b] = c[k];
        }
    alg->set_structure(std::move(structure));

    if (alg->spacetime_dim == 3 && spec.eps != 0) {
        std::vector<RationalMatrix> images;
        for (const auto& v : alg->basis) images.push_back(lambda2_star(v, alg->metric));
        alg->star_ = coefficient_matrix(*alg, images);
        alg->star_gram_ = twisted_gram(alg->killing_, *alg->star_);
        alg->star_square_ = square_sign(*alg->star_);
    } else if (alg->spacetime_dim == 3) {
        // Wigner contraction: inherit the star, and its twisted form, from the
        // parent algebra with the same h and basis labels.
        auto parent_metric = alg->metric;
        const bool lorentzian = spec.eta[0] < 0;
        // Lorentzian: last slot -1 gives so(2,2) (star^2 = +1), +1 gives so(3,1).
        // Euclidean: last slot +1 gives so(4) (star^2 = +1), -1 gives so(3,1).
        const int plus_slot = lorentzian ? -1 : 1;
        parent_metric.back() = contraction == ContractionStar::plus ? plus_slot : -plus_slot;
        auto parent_basis = make_basis(spec.eta, parent_metric.back());
        AlgebraDescriptor parent;
        parent.name = name;
        parent.matrix_dim = alg->matrix_dim;
        parent.basis = parent_basis.mats;
        parent.dim_h_ = parent_basis.dim_h;
        std::vector<Rational> pstructure(static_cast<std::size_t>(d) * d * d);
        for (int a = 0; a < d; ++a)
            for (int b = 0; b < d; ++b) {
                const auto c = parent.coordinates(commutator(parent.basis[a], parent.basis[b]));
                for (int k = 0; k < d; ++k) pstructure[(static_cast<std::size_t>(k) * d + a) * d + b] = c[k];
            }
        parent.set_structure(std::move(pstructure));
        std::vector<RationalMatrix> images;
        for (const auto& v : parent.basis) images.push_back(lambda2_star(v, parent_metric));
        alg->star_ = coefficient_matrix(parent, images);
        alg->star_gram_ = twisted_gram(parent.killing_, *alg->star_);
        alg->star_square_ = square_sign(*alg->star_);
    }

    if (alg->spacetime_dim == 4) {
        const int dh = alg->dim_h_;
        std::vector<RationalMatrix> images;
        for (int a = 0; a < d; ++a) {
            if (a < dh)
                images.push_back(embed(lambda2_star(upper_block(alg->basis[a], 4), spec.eta), alg->matrix_dim));
            else
                images.emplace_back(alg->matrix_dim, alg->matrix_dim);
        }
        alg->h_star_ = coefficient_matrix(*alg, images);
        alg->h_star_gram_ = twisted_gram(alg->killing_, *alg->h_star_);
    }
    return alg;
}

AlgebraPtr with_structure_constant(const AlgebraDescriptor& alg, int c, int a, int b, const Rational& value)
{
    auto copy = std::make_shared<AlgebraDescriptor>(alg);
    auto structure = copy->structure_;
    const int d = alg.dim();
    if (a < 0 || b < 0 || c < 0 || a >= d || b >= d || c >= d)
        throw std::out_of_range("structure constant index out of range");
    structure[(static_cast<std::size_t>(c) * d + a) * d + b] = value;
    copy->set_structure(std::move(structure));
    return copy;
}

AlgebraElement::AlgebraElement(AlgebraPtr alg, std::vector<Rational> coeffs)
    : alg_(std::move(alg)), coeffs_(std::move(coeffs))
{
    if (!alg_) throw std::invalid_argument("algebra element without algebra");
    if (static_cast<int>(coeffs_.size()) != alg_->dim())
        throw std::invalid_argument("coefficient count does not match algebra dimension");
}

AlgebraElement AlgebraElement::zero(AlgebraPtr alg)
{
    const auto d = static_cast<std::size_t>(alg->dim());
    return AlgebraElement(std::move(alg), std::vector<Rational>(d));
}

AlgebraElement AlgebraElement::basis_vector(AlgebraPtr alg, int index)
{
    auto e = zero(std::move(alg));
    e.coeffs_.at(static_cast<std::size_t>(index)) = 1;
    return e;
}

bool AlgebraElement::is_zero() const
{
    for (const auto& c : coeffs_)
        if (c != 0) return false;
    return true;
}

AlgebraElement AlgebraElement::h_part() const
{
    auto r = *this;
    for (int i = alg_->dim_h(); i < alg_->dim(); ++i) r.coeffs_[i] = 0;
    return r;
}

AlgebraElement AlgebraElement::p_part() const
{
    auto r = *this;
    for (int i = 0; i < alg_->dim_h(); ++i) r.coeffs_[i] = 0;
    return r;
}

static void require_same(const AlgebraElement& x, const AlgebraElement& y)
{
    if (x.algebra() != y.algebra()) throw std::invalid_argument("algebra mismatch");
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& o)
{
    require_same(*this, o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& o)
{
    require_same(*this, o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    return *this;
}

AlgebraElement& AlgebraElement::operator*=(const Rational& s)
{
    for (auto& c : coeffs_) c *= s;
    return *this;
}

bool operator==(const AlgebraElement& a, const AlgebraElement& b)
{
    return a.alg_ == b.alg_ && a.coeffs_ == b.coeffs_;
}

AlgebraElement bracket(const AlgebraElement& x, const AlgebraElement& y)
{
    require_same(x, y);
    auto r = AlgebraElement::zero(x.algebra());
    std::vector<Rational> out(r.coeffs().size());
    for (const auto& t : x.algebra()->structure_terms())
        if (x[t.a] != 0 && y[t.b] != 0) out[t.c] += t.value * x[t.a] * y[t.b];
    return AlgebraElement(x.algebra(), std::move(out));
}

static AlgebraElement apply(const RationalMatrix& m, const AlgebraElement& x)
{
    std::vector<Rational> out(x.coeffs().size());
    for (std::size_t r = 0; r < out.size(); ++r)
        for (std::size_t c = 0; c < out.size(); ++c)
            if (m(r, c) != 0 && x.coeffs()[c] != 0) out[r] += m(r, c) * x.coeffs()[c];
    return AlgebraElement(x.algebra(), std::move(out));
}

AlgebraElement hodge_star(const AlgebraElement& x)
{
    return apply(x.algebra()->star_matrix(), x);
}

AlgebraElement h_star(const AlgebraElement& x)
{
    return apply(x.algebra()->h_star_matrix(), x);
}

AlgebraElement involution(const AlgebraElement& x)
{
    return x.h_part() - x.p_part();
}

RationalMatrix killing_gram(const AlgebraDescriptor& alg)
{
    const int d = alg.dim();
    RationalMatrix k(d, d);
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) {
            Rational s = 0;
            for (int g = 0; g < d; ++g)
                for (int e = 0; e < d; ++e) {
                    const auto& x = alg.structure_constant(g, a, e);
                    if (x == 0) continue;
                    const auto& y = alg.structure_constant(e, b, g);
                    if (y != 0) s += x * y;
                }
            k(a, b) = s;
        }
    return k;
}

Rational pair(const RationalMatrix& gram, const AlgebraElement& x, const AlgebraElement& y)
{
    Rational s = 0;
    for (std::size_t a = 0; a < gram.rows(); ++a) {
        if (x.coeffs()[a] == 0) continue;
        for (std::size_t b = 0; b < gram.cols(); ++b)
            if (gram(a, b) != 0 && y.coeffs()[b] != 0) s += gram(a, b) * x.coeffs()[a] * y.coeffs()[b];
    }
    return s;
}

BilinearForm invariant_form(const AlgebraDescriptor& alg, const Rational& c0, const Rational& c1)
{
    BilinearForm f;
    f.c0 = c0;
    f.c1 = c1;
    f.gram = alg.killing() * c0 + alg.star_gram() * c1;
    f.degenerate = determinant(f.gram) == 0;
    return f;
}

BilinearForm h_invariant_form(const AlgebraDescriptor& alg, const Rational& c0, const Rational& c1)
{
    BilinearForm f;
    f.c0 = c0;
    f.c1 = c1;
    const int dh = alg.dim_h();
    RationalMatrix k_h(alg.dim(), alg.dim());
    for (int a = 0; a < dh; ++a)
        for (int b = 0; b < dh; ++b) k_h(a, b) = alg.killing()(a, b);
    f.gram = k_h * c0 + alg.h_star_gram() * c1;
    f.h_block = true;
    RationalMatrix block(dh, dh);
    for (int a = 0; a < dh; ++a)
        for (int b = 0; b < dh; ++b) block(a, b) = f.gram(a, b);
    f.degenerate = determinant(block) == 0;
    return f;
}

BilinearForm killing_form(const AlgebraDescriptor& alg)
{
    BilinearForm f;
    f.c0 = 1;
    f.c1 = 0;
    f.gram = alg.killing();
    f.degenerate = determinant(f.gram) == 0;
    return f;
}

std::vector<RationalMatrix> invariant_form_space(const AlgebraDescriptor& alg)
{
    const int d = alg.dim();
    auto unknown = [d](int i, int j) {
        if (i > j) std::swap(i, j);
        return i * d - i * (i - 1) / 2 + (j - i);
    };
    const int unknowns = d * (d + 1) / 2;
    RationalMatrix system(static_cast<std::size_t>(d) * d * d, unknowns);
    std::size_t row = 0;
    for (int z = 0; z < d; ++z)
        for (int x = 0; x < d; ++x)
            for (int y = 0; y < d; ++y, ++row)
                for (int c = 0; c < d; ++c) {
                    if (const auto& s = alg.structure_constant(c, z, x); s != 0) system(row, unknown(c, y)) += s;
                    if (const auto& s = alg.structure_constant(c, z, y); s != 0) system(row, unknown(x, c)) += s;
                }
    std::vector<RationalMatrix> forms;
    for (const auto& v : nullspace(std::move(system))) {
        RationalMatrix g(d, d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) g(i, j) = v[unknown(i, j)];
        forms.push_back(std::move(g));
    }
    return forms;
}

std::vector<Rational> jacobi_residuals(const AlgebraDescriptor& alg)
{
    const int d = alg.dim();
    std::vector<Rational> out;
    out.reserve(static_cast<std::size_t>(d) * d * d * d);
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
            for (int c = 0; c < d; ++c)
                for (int e = 0; e < d; ++e) {
                    Rational s = 0;
                    for (int m = 0; m < d; ++m) {
                        s += alg.structure_constant(m, a, b) * alg.structure_constant(e, m, c);
                        s += alg.structure_constant(m, b, c) * alg.structure_constant(e, m, a);
                        s += alg.structure_constant(m, c, a) * alg.structure_constant(e, m, b);
                    }
                    out.push_back(s);
                }
    return out;
}

static void require_real_selfduality(const AlgebraDescriptor& alg)
{
    if (alg.name != AlgebraName::so22 && alg.name != AlgebraName::so4)
        throw UnsupportedOperation("self-dual splitting over the reals needs star^2 = +1 on so22 or so4, not " +
                                   std::string(to_string(alg.name)));
}

std::pair<AlgebraElement, AlgebraElement> selfdual_split(const AlgebraElement& x)
{
    require_real_selfduality(*x.algebra());
    const auto sx = hodge_star(x);
    const Rational half(1, 2);
    return {half * (x + sx), half * (x - sx)};
}

Sl2Factors sl2_isomorphism(const AlgebraPtr& alg)
{
    require_real_selfduality(*alg);
    Sl2Factors f;
    for (int a = 0; a < 3; ++a) {
        auto [plus, minus] = selfdual_split(AlgebraElement::basis_vector(alg, a));
        f.self_dual.push_back(plus);
        f.anti_self_dual.push_back(minus);
    }
    auto factor_constants = [](const std::vector<AlgebraElement>& basis, std::vector<Rational>& out,
                               RationalMatrix& killing) {
        const auto& a0 = *basis[0].algebra();
        const std::size_t d = static_cast<std::size_t>(a0.dim());
        RationalMatrix span(d, 3);
        for (std::size_t j = 0; j < 3; ++j)
            for (std::size_t i = 0; i < d; ++i) span(i, j) = basis[j].coeffs()[i];
        out.assign(27, Rational(0));
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) {
                const auto c = solve(span, bracket(basis[a], basis[b]).coeffs());
                for (int k = 0; k < 3; ++k) out[(k * 3 + a) * 3 + b] = c[k];
            }
        killing = RationalMatrix(3, 3);
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) {
                Rational s = 0;
                for (int g = 0; g < 3; ++g)
                    for (int e = 0; e < 3; ++e) s += out[(g * 3 + a) * 3 + e] * out[(e * 3 + b) * 3 + g];
                killing(a, b) = s;
            }
    };
    factor_constants(f.self_dual, f.plus_constants, f.plus_killing);
    factor_constants(f.anti_self_dual, f.minus_constants, f.minus_killing);
    return f;
}

}  // namespace symcartan
