#pragma once

// Shared tiny catalogs for the unit suites.

#include "bv/model.hpp"

namespace bvtest {

// worldline particle: x^mu, p_mu, e (invertible), c, and their antifields
inline std::vector<bv::FieldDescriptor> particle_catalog(int dim = 10) {
    using namespace bv;
    std::vector<FieldDescriptor> cat;
    cat.push_back({"x", dim, 0, Parity::even, false, std::nullopt, '^'});
    cat.push_back({"p", dim, 0, Parity::even, false, std::nullopt, '_'});
    cat.push_back({"e", 1, 0, Parity::even, true, std::nullopt, '_'});
    cat.push_back({"c", 1, 1, Parity::odd, false, std::nullopt, '_'});
    cat.push_back({"x+", dim, -1, Parity::odd, false, "x", '_'});
    cat.push_back({"p+", dim, -1, Parity::odd, false, "p", '^'});
    cat.push_back({"e+", 1, -1, Parity::odd, false, "e", '_'});
    cat.push_back({"c+", 1, -2, Parity::even, false, "c", '_'});
    return cat;
}

} // namespace bvtest
