#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bv/models.hpp"
#include "bv/serialize.hpp"

using namespace bv;

TEST_CASE("particle differential matches the closed form") {
    // construction itself cross-checks every generator image
    ParticleModel pm(10);
    const auto& m = pm.algebra();

    // spot values
    Poly se(&m);
    for (int mu = 0; mu < 10; ++mu)
        se -= pm.gen("p", mu) * pm.gen("p", mu) * Rat(pm.eta(mu, mu), 2);
    CHECK(*pm.s().image(m.gen("e+")) == se);
    CHECK(*pm.s().image(m.gen("c+")) == pm.gauge_cocycle());
    CHECK(pm.s().image(m.gen("p", 0))->is_zero());
    CHECK(*pm.s().image(m.gen("e")) == -pm.gen("c", 0, 1));
}

TEST_CASE("particle differential squares to zero on every generator") {
    ParticleModel pm(10);
    const auto& m = pm.algebra();
    for (int idx = 0; idx < m.num_fields(); ++idx)
        for (int c = 0; c < m.field(idx).desc.components; ++c) {
            Poly g = Poly::generator(m, make_gen(idx, c, 0));
            CHECK(pm.s().apply(pm.s().apply(g)).is_zero());
        }
}

TEST_CASE("gauge symmetry cocycle") {
    ParticleModel pm(10);
    CHECK(pm.s().apply(pm.gauge_cocycle()).is_zero());
}

TEST_CASE("master equation and the curved equation in the formal variable") {
    ParticleModel pm(10);
    const Poly &S = pm.action(), &D = pm.translation_current(), &G = pm.covariance_seed();

    // (1/2)(S,S) = 0 as a functional
    Poly ss = bv_antibracket_density(S, S);
    CHECK(functional_is_zero(ss));

    // (S,G) = -D;  (G,G) = 0
    CHECK(functional_equal(bv_antibracket_density(S, G), -D));
    CHECK(functional_is_zero(bv_antibracket_density(G, G)));

    // transgression of the translation current vanishes: (G, D) = 0
    CHECK(functional_is_zero(bv_antibracket_density(G, D)));
    CHECK(functional_is_zero(bv_antibracket_density(G, Poly(&pm.algebra()))));
}

TEST_CASE("hamiltonian field of the translation current is the total derivative") {
    ParticleModel pm(10);
    const auto& m = pm.algebra();
    EvolutionaryVF XD = hamiltonian_vf(pm.translation_current());
    CHECK(XD.parity() == Parity::even);
    CHECK(XD.ghost() == 0);
    for (int idx = 0; idx < m.num_fields(); ++idx)
        for (int c = 0; c < m.field(idx).desc.components; ++c) {
            Poly g = Poly::generator(m, make_gen(idx, c, 0));
            CHECK(XD.apply(g) == total_derivative(g));
        }
}

TEST_CASE("hamiltonian field of the action is the differential") {
    ParticleModel pm(4);
    std::vector<Poly> probes;
    for (auto n : {"x", "p", "e", "c", "x+", "p+", "e+", "c+"})
        probes.push_back(pm.gen(n, 0));
    probes.push_back(pm.gen("e") * pm.gen("c+") + pm.gen("x+", 1) * pm.gen("p+", 1));
    for (auto& f : probes) {
        Poly diff = bv_antibracket_density(pm.action(), f) - pm.s().apply(f);
        CHECK(is_total_derivative(diff).is_exact);
    }
}
