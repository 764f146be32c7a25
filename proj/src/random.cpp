#include "symcartan/random.hpp"

#include <stdexcept>
#include <string>

namespace symcartan {

Support parse_support(std::string_view text)
{
    if (text == "h") return Support::h;
    if (text == "p") return Support::p;
    if (text == "full") return Support::full;
    throw std::invalid_argument("support must be h, p or full, got '" + std::string(text) + "'");
}

std::string_view to_string(Support s)
{
    switch (s) {
    case Support::h: return "h";
    case Support::p: return "p";
    case Support::full: return "full";
    }
    return "full";
}

int SeededRng::uniform(int lo, int hi)
{
    const auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<int>(engine_() % span);
}

Rational SeededRng::small_rational()
{
    const int p = uniform(-4, 4);
    const int q = uniform(1, 3);
    return ratio(p, q);
}

Rational SeededRng::nonzero_small_rational()
{
    Rational r = 0;
    while (r == 0) r = small_rational();
    return r;
}

double SeededRng::uniform_real(double lo, double hi)
{
    const double u = static_cast<double>(engine_() >> 11) * 0x1p-53;
    return lo + (hi - lo) * u;
}

static bool in_support(const AlgebraDescriptor& alg, int index, Support s)
{
    if (s == Support::full) return true;
    return (s == Support::h) == alg.in_h(index);
}

AlgebraElement random_element(const AlgebraPtr& alg, SeededRng& rng, Support support)
{
    std::vector<Rational> c(static_cast<std::size_t>(alg->dim()));
    for (int a = 0; a < alg->dim(); ++a)
        if (in_support(*alg, a, support)) c[a] = rng.small_rational();
    return AlgebraElement(alg, std::move(c));
}

TrigPoly random_poly(SeededRng& rng, int torus_dim, int cutoff, int terms)
{
    if (cutoff < 0) throw std::invalid_argument("cutoff must be non-negative");
    TrigPoly f(torus_dim);
    for (int t = 0; t < terms; ++t) {
        Frequency k{};
        for (int i = 0; i < torus_dim; ++i) k[i] = rng.uniform(-cutoff, cutoff);
        const Rational re = rng.small_rational();
        const Rational im = rng.small_rational();
        f += TrigPoly::mode(torus_dim, k, re, im);
    }
    return f;
}

LieForm random_form(SeededRng& rng, const AlgebraPtr& alg, const RandomFormSpec& spec)
{
    LieForm r(alg, spec.torus_dim, spec.degree);
    for (int a = 0; a < alg->dim(); ++a) {
        if (!in_support(*alg, a, spec.support)) continue;
        auto& part = r.part(a);
        for (std::size_t i = 0; i < part.size(); ++i)
            part[i] = random_poly(rng, spec.torus_dim, spec.cutoff, spec.terms_per_component);
    }
    return r;
}

LieForm random_form(std::uint64_t seed, const AlgebraPtr& alg, const RandomFormSpec& spec)
{
    SeededRng rng(seed);
    return random_form(rng, alg, spec);
}

}  // namespace symcartan
