#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "bv/poly.hpp"
#include "bv/rat.hpp"

namespace bv {

// Monomial in the polynomial de Rham algebra of the k-simplex, in the normal
// form with t_0 and dt_0 eliminated: a multidegree in t_1..t_k and a bitmask
// of dt_1..dt_k (bit i-1 for dt_i).
struct FormKey {
    std::vector<int> tdeg;
    std::uint32_t dmask = 0;
    auto operator<=>(const FormKey&) const = default;
    int degree() const { return __builtin_popcount(dmask); }
};

// sign of dt-mask concatenation a ^ b, 0 if they overlap
int dmask_wedge_sign(std::uint32_t a, std::uint32_t b);

/// Polynomial differential form on the k-simplex with rational coefficients.
struct SimplexForm {
    int k = 0;
    std::map<FormKey, Rat> terms;

    explicit SimplexForm(int dim = 0) : k(dim) {}
    static SimplexForm one(int k);
    static SimplexForm t(int k, int i);     // barycentric coordinate, 0 <= i <= k
    static SimplexForm dt(int k, int i);

    bool is_zero() const { return terms.empty(); }
    void add_term(const FormKey& key, const Rat& c);
    SimplexForm operator+(const SimplexForm& o) const;
    SimplexForm operator-(const SimplexForm& o) const;
    SimplexForm operator*(const SimplexForm& o) const;
    SimplexForm operator*(const Rat& c) const;
    bool operator==(const SimplexForm& o) const { return k == o.k && terms == o.terms; }
};

// the simplex differential: delta(t_i) = dt_i, delta(dt_i) = 0
SimplexForm omega_delta(const SimplexForm& a);

// pullback along a monotone map f: [k] -> [l] given by its image vector;
// algebra map with f* t_i = sum over the preimage of i
SimplexForm cosimplicial_pullback(const std::vector<int>& f, int k, const SimplexForm& a);

// all monotone maps [k] -> [l]
std::vector<std::vector<int>> monotone_maps(int k, int l);

} // namespace bv
