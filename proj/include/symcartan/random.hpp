#pragma once

// Seeded generators for property suites. Values are drawn with modulo
// reduction from mt19937_64 so sequences are identical on every platform.

#include "symcartan/forms.hpp"

#include <cstdint>
#include <random>
#include <string_view>

namespace symcartan {

enum class Support { h, p, full };

Support parse_support(std::string_view text);
std::string_view to_string(Support s);

class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed) : engine_(seed) {}
    /// Uniform integer in [lo, hi].
    int uniform(int lo, int hi);
    /// p/q with p in [-4, 4] and q in {1, 2, 3}.
    Rational small_rational();
    Rational nonzero_small_rational();
    double uniform_real(double lo, double hi);

private:
    std::mt19937_64 engine_;
};

AlgebraElement random_element(const AlgebraPtr& alg, SeededRng& rng, Support support = Support::full);

/// Real trig polynomial with `terms` random modes, each frequency component
/// bounded by cutoff.
TrigPoly random_poly(SeededRng& rng, int torus_dim, int cutoff, int terms);

struct RandomFormSpec {
    int degree = 1;
    int torus_dim = 3;
    int cutoff = 2;
    Support support = Support::full;
    int terms_per_component = 2;
};

LieForm random_form(std::uint64_t seed, const AlgebraPtr& alg, const RandomFormSpec& spec);
LieForm random_form(SeededRng& rng, const AlgebraPtr& alg, const RandomFormSpec& spec);

}  // namespace symcartan
