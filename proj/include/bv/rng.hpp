#pragma once

#include <random>

#include "bv/poly.hpp"

namespace bv {

struct SampleOptions {
    int max_jet = 2;
    int max_degree = 4;
    int max_terms = 4;
    int laurent_depth = 1;    // allow z^-1..z^-depth on invertible generators
    bool allow_laurent = true;
};

/// Deterministic random polynomials for property tests.
class PolySampler {
public:
    PolySampler(const ModelAlgebra& m, std::uint64_t seed, SampleOptions opts = {})
        : model_(m), rng_(seed), opts_(opts) {}

    Poly random_poly();
    // homogeneous in parity and ghost number (matches a randomly drawn monomial)
    Poly random_homogeneous();
    Poly random_homogeneous(Parity p);

    std::mt19937_64& rng() { return rng_; }

private:
    Monomial random_monomial();
    const ModelAlgebra& model_;
    std::mt19937_64 rng_;
    SampleOptions opts_;
};

} // namespace bv
