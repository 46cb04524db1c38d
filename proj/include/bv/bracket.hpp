#pragma once

#include "bv/poly.hpp"
#include "bv/vf.hpp"

namespace bv {

/// A functional is a density considered modulo total derivatives and
/// constants; equality routes through the exactness test.
struct Functional {
    Poly density;
};

// Soloviev antibracket on densities: the jet-level double sum pairing field
// jets against antifield jets. Bilinear over the total derivative.
Poly soloviev(const Poly& f, const Poly& g);

// Batalin-Vilkovisky antibracket representative via variational derivatives.
// Agrees with the Soloviev bracket modulo total derivatives.
Poly bv_antibracket_density(const Poly& f, const Poly& g);
inline Functional bv_antibracket(const Functional& F, const Functional& G) {
    return {bv_antibracket_density(F.density, G.density)};
}

inline Functional transgress(const Functional& G, const Functional& F) {
    return bv_antibracket(G, F);
}

// true iff the density is a total derivative plus a constant
bool functional_is_zero(const Poly& density);
inline bool functional_equal(const Poly& a, const Poly& b) { return functional_is_zero(a - b); }

} // namespace bv
