#include "symcartan/trig_poly.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <stdexcept>

namespace symcartan {

namespace {

using i128 = __int128;
using Term = TrigPoly::Term;

constexpr int kBias = 1 << 15;
const std::uint64_t kZeroKey = TrigPoly::pack(Frequency{0, 0, 0, 0});

struct WideTerm {
    std::uint64_t key;
    i128 re;
    i128 im;
};

i128 abs128(i128 v) { return v < 0 ? -v : v; }

i128 gcd128(i128 a, i128 b)
{
    a = abs128(a);
    b = abs128(b);
    while (b != 0) {
        const i128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

std::int64_t narrow(i128 v)
{
    if (v > INT64_MAX || v < INT64_MIN) throw std::overflow_error("trig polynomial coefficient exceeds 64 bits");
    return static_cast<std::int64_t>(v);
}

i128 mul_checked(i128 a, i128 b)
{
    i128 r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("trig polynomial arithmetic overflow");
    return r;
}

mpz_class to_mpz(i128 v)
{
    const bool neg = v < 0;
    unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1 : static_cast<unsigned __int128>(v);
    mpz_class hi(static_cast<unsigned long>(u >> 64));
    mpz_class lo(static_cast<unsigned long>(static_cast<std::uint64_t>(u)));
    mpz_class r = (hi << 64) + lo;
    return neg ? mpz_class(-r) : r;
}

Rational to_rational(i128 num, i128 den)
{
    Rational r(to_mpz(num), to_mpz(den));
    r.canonicalize();
    return r;
}

std::int64_t to_i64(const mpz_class& z)
{
    if (!z.fits_slong_p()) throw std::overflow_error("rational component exceeds 64 bits");
    return z.get_si();
}

}  // namespace

std::uint64_t TrigPoly::pack(const Frequency& k)
{
    std::uint64_t key = 0;
    for (int i = 0; i < kMaxTorusDim; ++i) {
        if (k[i] <= -kBias || k[i] >= kBias) throw std::overflow_error("frequency out of range");
        key = (key << 16) | static_cast<std::uint64_t>(k[i] + kBias);
    }
    return key;
}

Frequency TrigPoly::unpack(std::uint64_t key)
{
    Frequency k{};
    for (int i = kMaxTorusDim - 1; i >= 0; --i) {
        k[i] = static_cast<int>(key & 0xffffu) - kBias;
        key >>= 16;
    }
    return k;
}

TrigPoly::TrigPoly(int dim) : dim_(dim)
{
    if (dim < 1 || dim > kMaxTorusDim) throw std::invalid_argument("torus dimension must be 1..4");
}

namespace {

// Builds a canonical polynomial from wide terms sorted by key with duplicate
// keys already merged.
void finish(int dim, i128 denom, std::vector<WideTerm>& wide, std::int64_t& out_denom, std::vector<Term>& out)
{
    (void)dim;
    i128 g = denom;
    for (const auto& t : wide) {
        if (t.re != 0) g = gcd128(g, t.re);
        if (t.im != 0) g = gcd128(g, t.im);
    }
    if (g == 0) g = 1;
    out.clear();
    out.reserve(wide.size());
    for (const auto& t : wide) {
        if (t.re == 0 && t.im == 0) continue;
        out.push_back({t.key, narrow(t.re / g), narrow(t.im / g)});
    }
    out_denom = out.empty() ? 1 : narrow(denom / g);
}

void merge_sorted(std::vector<WideTerm>& v)
{
    std::size_t w = 0;
    for (std::size_t r = 0; r < v.size(); ++r) {
        if (w > 0 && v[w - 1].key == v[r].key) {
            v[w - 1].re += v[r].re;
            v[w - 1].im += v[r].im;
        } else {
            v[w++] = v[r];
        }
    }
    v.resize(w);
}

}  // namespace

void TrigPoly::normalize()
{
    std::vector<WideTerm> wide;
    wide.reserve(terms_.size());
    for (const auto& t : terms_) wide.push_back({t.key, t.re, t.im});
    finish(dim_, denom_, wide, denom_, terms_);
}

TrigPoly TrigPoly::constant(int dim, const Rational& value)
{
    return mode(dim, Frequency{}, value, 0);
}

TrigPoly TrigPoly::mode(int dim, const Frequency& k, const Rational& re, const Rational& im)
{
    TrigPoly p(dim);
    for (int i = dim; i < kMaxTorusDim; ++i)
        if (k[i] != 0) throw std::invalid_argument("frequency has components beyond the torus dimension");
    const bool zero_mode = std::all_of(k.begin(), k.end(), [](int v) { return v == 0; });
    const Rational im_used = zero_mode ? Rational(0) : im;
    mpz_class den;
    mpz_lcm(den.get_mpz_t(), re.get_den_mpz_t(), im_used.get_den_mpz_t());
    const std::int64_t d = to_i64(den);
    const std::int64_t r = to_i64(re.get_num() * (den / re.get_den()));
    const std::int64_t m = to_i64(im_used.get_num() * (den / im_used.get_den()));
    std::vector<WideTerm> wide;
    if (zero_mode) {
        wide.push_back({pack(k), r, 0});
    } else {
        Frequency nk{};
        for (int i = 0; i < kMaxTorusDim; ++i) nk[i] = -k[i];
        wide.push_back({pack(k), r, m});
        wide.push_back({pack(nk), r, -static_cast<i128>(m)});
        std::sort(wide.begin(), wide.end(), [](const WideTerm& a, const WideTerm& b) { return a.key < b.key; });
    }
    finish(dim, d, wide, p.denom_, p.terms_);
    return p;
}

TrigPoly TrigPoly::cos(int dim, const Frequency& k, const Rational& amplitude)
{
    // a cos(k.x) = (a/2) e^{ikx} + (a/2) e^{-ikx}
    const bool zero_mode = std::all_of(k.begin(), k.end(), [](int v) { return v == 0; });
    return mode(dim, k, zero_mode ? amplitude : Rational(amplitude / 2), 0);
}

TrigPoly TrigPoly::sin(int dim, const Frequency& k, const Rational& amplitude)
{
    // a sin(k.x) = (-i a/2) e^{ikx} + (i a/2) e^{-ikx}
    return mode(dim, k, 0, Rational(-amplitude / 2));
}

Frequency TrigPoly::frequency(const Term& t) const
{
    return unpack(t.key);
}

Rational TrigPoly::coeff_re(const Frequency& k) const
{
    const auto key = pack(k);
    auto it = std::lower_bound(terms_.begin(), terms_.end(), key, [](const Term& t, std::uint64_t v) { return t.key < v; });
    if (it == terms_.end() || it->key != key) return 0;
    return ratio(it->re, denom_);
}

Rational TrigPoly::coeff_im(const Frequency& k) const
{
    const auto key = pack(k);
    auto it = std::lower_bound(terms_.begin(), terms_.end(), key, [](const Term& t, std::uint64_t v) { return t.key < v; });
    if (it == terms_.end() || it->key != key) return 0;
    return ratio(it->im, denom_);
}

Rational TrigPoly::mean() const
{
    return coeff_re(Frequency{});
}

int TrigPoly::cutoff() const
{
    int c = 0;
    for (const auto& t : terms_) {
        const auto k = unpack(t.key);
        for (int i = 0; i < dim_; ++i) c = std::max(c, std::abs(k[i]));
    }
    return c;
}

bool TrigPoly::is_hermitian() const
{
    for (const auto& t : terms_) {
        const std::uint64_t neg = 2 * kZeroKey - t.key;
        auto it = std::lower_bound(terms_.begin(), terms_.end(), neg, [](const Term& a, std::uint64_t v) { return a.key < v; });
        if (it == terms_.end() || it->key != neg || it->re != t.re || it->im != -t.im) return false;
    }
    return true;
}

double TrigPoly::evaluate(std::span<const double> x) const
{
    double s = 0;
    for (const auto& t : terms_) {
        const auto k = unpack(t.key);
        double phase = 0;
        for (int i = 0; i < dim_; ++i) phase += k[i] * x[i];
        s += static_cast<double>(t.re) * std::cos(phase) - static_cast<double>(t.im) * std::sin(phase);
    }
    return s / static_cast<double>(denom_);
}

double TrigPoly::evaluate_derivative(std::span<const double> x, int dir) const
{
    double s = 0;
    for (const auto& t : terms_) {
        const auto k = unpack(t.key);
        if (k[dir] == 0) continue;
        double phase = 0;
        for (int i = 0; i < dim_; ++i) phase += k[i] * x[i];
        s += k[dir] * (-static_cast<double>(t.re) * std::sin(phase) - static_cast<double>(t.im) * std::cos(phase));
    }
    return s / static_cast<double>(denom_);
}

TrigPoly TrigPoly::derivative(int dir) const
{
    if (dir < 0 || dir >= dim_) throw std::invalid_argument("derivative direction outside the torus");
    TrigPoly r(dim_);
    std::vector<WideTerm> wide;
    wide.reserve(terms_.size());
    for (const auto& t : terms_) {
        const auto k = unpack(t.key)[dir];
        if (k == 0) continue;
        // (re + i im) * i k = -k im + i k re
        wide.push_back({t.key, -static_cast<i128>(k) * t.im, static_cast<i128>(k) * t.re});
    }
    finish(dim_, denom_, wide, r.denom_, r.terms_);
    return r;
}

void TrigPoly::add_scaled(const TrigPoly& o, const Rational& s)
{
    if (o.dim_ != dim_) throw std::invalid_argument("torus dimension mismatch");
    if (o.is_zero() || s == 0) return;
    const i128 p = to_i64(s.get_num());
    const i128 q = to_i64(s.get_den());
    const i128 od = mul_checked(o.denom_, q);
    const i128 g = gcd128(denom_, od);
    const i128 lcm = mul_checked(denom_ / g, od);
    const i128 fa = lcm / denom_;
    const i128 fb = mul_checked(lcm / od, p);
    std::vector<WideTerm> wide;
    wide.reserve(terms_.size() + o.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < terms_.size() || j < o.terms_.size()) {
        if (j == o.terms_.size() || (i < terms_.size() && terms_[i].key < o.terms_[j].key)) {
            wide.push_back({terms_[i].key, mul_checked(terms_[i].re, fa), mul_checked(terms_[i].im, fa)});
            ++i;
        } else if (i == terms_.size() || o.terms_[j].key < terms_[i].key) {
            wide.push_back({o.terms_[j].key, mul_checked(o.terms_[j].re, fb), mul_checked(o.terms_[j].im, fb)});
            ++j;
        } else {
            wide.push_back({terms_[i].key, mul_checked(terms_[i].re, fa) + mul_checked(o.terms_[j].re, fb),
                            mul_checked(terms_[i].im, fa) + mul_checked(o.terms_[j].im, fb)});
            ++i;
            ++j;
        }
    }
    finish(dim_, lcm, wide, denom_, terms_);
}

TrigPoly& TrigPoly::operator+=(const TrigPoly& o)
{
    add_scaled(o, 1);
    return *this;
}

TrigPoly& TrigPoly::operator-=(const TrigPoly& o)
{
    add_scaled(o, -1);
    return *this;
}

TrigPoly& TrigPoly::operator*=(const Rational& s)
{
    if (s == 0) {
        terms_.clear();
        denom_ = 1;
        return *this;
    }
    if (s == 1) return *this;
    const i128 p = to_i64(s.get_num());
    const i128 q = to_i64(s.get_den());
    std::vector<WideTerm> wide;
    wide.reserve(terms_.size());
    for (const auto& t : terms_) wide.push_back({t.key, mul_checked(t.re, p), mul_checked(t.im, p)});
    finish(dim_, mul_checked(denom_, q), wide, denom_, terms_);
    return *this;
}

TrigPoly operator*(const TrigPoly& a, const TrigPoly& b)
{
    if (a.dim_ != b.dim_) throw std::invalid_argument("torus dimension mismatch");
    TrigPoly r(a.dim_);
    if (a.is_zero() || b.is_zero()) return r;
    std::int64_t ma = 0, mb = 0;
    for (const auto& t : a.terms_) ma = std::max<std::int64_t>({ma, std::llabs(t.re), std::llabs(t.im)});
    for (const auto& t : b.terms_) mb = std::max<std::int64_t>({mb, std::llabs(t.re), std::llabs(t.im)});
    const double bound = 2.0 * static_cast<double>(ma) * static_cast<double>(mb) *
                         static_cast<double>(std::min(a.terms_.size(), b.terms_.size()));
    if (bound >= 0x1p125) throw std::overflow_error("trig polynomial product overflow");
    std::vector<WideTerm> wide;
    wide.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& ta : a.terms_)
        for (const auto& tb : b.terms_)
            wide.push_back({ta.key + tb.key - kZeroKey, static_cast<i128>(ta.re) * tb.re - static_cast<i128>(ta.im) * tb.im,
                            static_cast<i128>(ta.re) * tb.im + static_cast<i128>(ta.im) * tb.re});
    std::sort(wide.begin(), wide.end(), [](const WideTerm& x, const WideTerm& y) { return x.key < y.key; });
    merge_sorted(wide);
    finish(a.dim_, static_cast<i128>(a.denom_) * b.denom_, wide, r.denom_, r.terms_);
    return r;
}

bool operator==(const TrigPoly& a, const TrigPoly& b)
{
    if (a.is_zero() && b.is_zero()) return a.dim_ == b.dim_;
    return a.dim_ == b.dim_ && a.denom_ == b.denom_ && a.terms_ == b.terms_;
}

Rational mean_of_product(const TrigPoly& a, const TrigPoly& b)
{
    if (a.dim_ != b.dim_) throw std::invalid_argument("torus dimension mismatch");
    if (a.is_zero() || b.is_zero()) return 0;
    i128 sum = 0;
    // b at -k: walk b in descending key order while a ascends.
    std::size_t j = b.terms_.size();
    for (const auto& ta : a.terms_) {
        const std::uint64_t want = 2 * kZeroKey - ta.key;
        while (j > 0 && b.terms_[j - 1].key > want) --j;
        if (j == 0) break;
        const auto& tb = b.terms_[j - 1];
        if (tb.key != want) continue;
        sum += static_cast<i128>(ta.re) * tb.re - static_cast<i128>(ta.im) * tb.im;
    }
    return to_rational(sum, static_cast<i128>(a.denom_) * b.denom_);
}

}  // namespace symcartan
