#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bv/bracket.hpp"
#include "bv/rng.hpp"
#include "testmodels.hpp"

using namespace bv;

static ModelAlgebra make_particle() {
    return ModelAlgebra::build(bvtest::particle_catalog(4), {});
}

TEST_CASE("soloviev bracket basics") {
    auto m = make_particle();
    Poly x0 = Poly::generator(m, m.gen("x", 0));
    Poly xp0 = Poly::generator(m, m.gen("x+", 0));
    CHECK(soloviev(x0, xp0) == Poly(&m, 1));

    // ad(x+.p+ + e c+) sends p_0 to -x+_0
    Poly G(&m);
    for (int mu = 0; mu < 4; ++mu)
        G += Poly::generator(m, m.gen("x+", mu)) * Poly::generator(m, m.gen("p+", mu));
    G += Poly::generator(m, m.gen("e")) * Poly::generator(m, m.gen("c+"));
    Poly p0 = Poly::generator(m, m.gen("p", 0));
    CHECK(soloviev(G, p0) == -xp0);
}

TEST_CASE("bracket axioms on random homogeneous samples") {
    auto m = make_particle();
    PolySampler s(m, 31, SampleOptions{2, 3, 3, 1, true});
    int done = 0;
    for (int i = 0; i < 200 && done < 60; ++i) {
        Poly f = s.random_homogeneous(), g = s.random_homogeneous();
        Poly fg = soloviev(f, g);
        // ghost shift +1
        if (!fg.is_zero() && f.ghost() && g.ghost())
            CHECK(*fg.ghost() == *f.ghost() + *g.ghost() + 1);
        // graded antisymmetry
        int sx = (int(*f.parity()) + 1) * (int(*g.parity()) + 1);
        Poly gf = soloviev(g, f);
        CHECK(gf == fg * Rat(sx % 2 ? -1 : 1) * Rat(-1));
        // linear over D
        CHECK(soloviev(total_derivative(f), g) == total_derivative(fg));
        CHECK(soloviev(f, total_derivative(g)) == total_derivative(fg));
        ++done;
    }
    CHECK(done == 60);
}

TEST_CASE("jacobi identity") {
    auto m = make_particle();
    PolySampler s(m, 77, SampleOptions{1, 3, 2, 1, false});
    int done = 0;
    for (int i = 0; i < 200 && done < 25; ++i) {
        Poly x = s.random_homogeneous(), y = s.random_homogeneous(), z = s.random_homogeneous();
        int px = int(*x.parity()), py = int(*y.parity());
        Poly lhs = soloviev(x, soloviev(y, z));
        Poly rhs = soloviev(soloviev(x, y), z) +
                   soloviev(y, soloviev(x, z)) * Rat(((px + 1) * (py + 1)) % 2 ? -1 : 1);
        CHECK(lhs == rhs);
        ++done;
    }
    CHECK(done == 25);
}

TEST_CASE("bv antibracket agrees with soloviev modulo total derivatives") {
    auto m = make_particle();
    PolySampler s(m, 13, SampleOptions{2, 3, 2, 1, false});
    for (int i = 0; i < 25; ++i) {
        Poly f = s.random_homogeneous(), g = s.random_homogeneous();
        Poly diff = bv_antibracket_density(f, g) - soloviev(f, g);
        CHECK(is_total_derivative(diff).is_exact);
    }
}

TEST_CASE("evolutionary fields are derivations commuting with D") {
    auto m = make_particle();
    PolySampler s(m, 41, SampleOptions{2, 3, 2, 1, true});
    // a nontrivial odd evolutionary field
    EvolutionaryVF X(&m, Parity::odd, 1);
    X.set_image(m.gen("x", 0), Poly::generator(m, m.gen("c")) * Poly::generator(m, m.gen("p", 1)));
    X.set_image(m.gen("e"), total_derivative(Poly::generator(m, m.gen("c"))));
    X.set_image(m.gen("x+", 1), Poly::generator(m, m.gen("p", 0)));
    X.set_image(m.gen("c+"), Poly::generator(m, m.gen("e+")));
    for (int i = 0; i < 40; ++i) {
        Poly f = s.random_homogeneous(), g = s.random_homogeneous();
        int pf = int(*f.parity());
        // graded Leibniz
        CHECK(X.apply(f * g) == X.apply(f) * g + f * X.apply(g) * Rat(pf ? -1 : 1));
        // commutes with the total derivative
        CHECK(X.apply(total_derivative(f)) == total_derivative(X.apply(f)));
    }
}
