#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bv/poly.hpp"
#include "bv/rng.hpp"
#include "bv/serialize.hpp"
#include "testmodels.hpp"

using namespace bv;
using bvtest::particle_catalog;

static ModelAlgebra make_particle() { return ModelAlgebra::build(particle_catalog(), {}); }

TEST_CASE("build_model validates the catalog") {
    auto m = make_particle();
    CHECK(m.field(m.field_index("c+")).desc.ghost == -2);
    CHECK(m.field(m.field_index("c+")).desc.parity == Parity::even);

    // empty catalog: only rationals
    auto empty = ModelAlgebra::build({}, {});
    Poly one(&empty, Rat(3, 4));
    CHECK((one * one).constant_term() == Rat(9, 16));

    // grading violations must be rejected
    auto bad = particle_catalog();
    bad[7].ghost = -3;  // c+ should be -2
    CHECK_THROWS_AS(ModelAlgebra::build(bad, {}), ModelError);

    auto dangling = particle_catalog();
    dangling[4].antifield_of = "nosuch";
    CHECK_THROWS_AS(ModelAlgebra::build(dangling, {}), ModelError);

    auto dup = particle_catalog();
    dup.push_back(dup[0]);
    CHECK_THROWS_AS(ModelAlgebra::build(dup, {}), ModelError);
}

TEST_CASE("supercommutative product") {
    auto m = make_particle();
    Poly xp0 = Poly::generator(m, m.gen("x+", 0));
    Poly pp0 = Poly::generator(m, m.gen("p+", 0));

    // two odd generators anticommute
    CHECK(xp0 * pp0 == -(pp0 * xp0));

    // e * e^-1 = 1
    Poly e = Poly::generator(m, m.gen("e"));
    Poly einv = Poly::generator(m, m.gen("e"), -1);
    CHECK((e * einv).constant_term() == 1);
    CHECK((e * einv).size() == 1);

    // odd generator squares to zero
    CHECK((xp0 * xp0).is_zero());

    // gradings are additive on products
    PolySampler s(m, 17);
    for (int i = 0; i < 50; ++i) {
        Poly f = s.random_homogeneous(), g = s.random_homogeneous();
        Poly fg = f * g;
        if (fg.is_zero()) continue;
        CHECK(fg.ghost().has_value());
        CHECK(*fg.ghost() == *f.ghost() + *g.ghost());
        CHECK(int(*fg.parity()) == (int(*f.parity()) + int(*g.parity())) % 2);
        // supercommutativity
        int sgn = (*f.parity() == Parity::odd && *g.parity() == Parity::odd) ? -1 : 1;
        CHECK(fg == g * f * Rat(sgn));
    }
    // associativity / distributivity on random triples
    for (int i = 0; i < 30; ++i) {
        Poly f = s.random_poly(), g = s.random_poly(), h = s.random_poly();
        CHECK((f * g) * h == f * (g * h));
        CHECK(f * (g + h) == f * g + f * h);
    }
}

TEST_CASE("total derivative is an even derivation") {
    auto m = make_particle();
    Poly x0 = Poly::generator(m, m.gen("x", 0));
    Poly xp0 = Poly::generator(m, m.gen("x+", 0));

    CHECK(total_derivative(Poly(&m, 1)).is_zero());

    Poly d = total_derivative(xp0 * x0);
    Poly expect = total_derivative(xp0) * x0 + xp0 * total_derivative(x0);
    CHECK(d == expect);

    // chain rule on Laurent exponents: D(e^-1) = -e^-2 De
    Poly einv = Poly::generator(m, m.gen("e"), -1);
    Poly de = Poly::generator(m, m.gen("e", 0, 1));
    Poly em2 = Poly::generator(m, m.gen("e"), -2);
    CHECK(total_derivative(einv) == -(em2 * de));
    // cross-check via Leibniz on e * e^-1 = 1
    Poly e = Poly::generator(m, m.gen("e"));
    CHECK((total_derivative(e) * einv + e * total_derivative(einv)).is_zero());

    PolySampler s(m, 5);
    for (int i = 0; i < 40; ++i) {
        Poly f = s.random_poly(), g = s.random_poly();
        CHECK(total_derivative(f * g) ==
              total_derivative(f) * g + f * total_derivative(g));
    }
}

TEST_CASE("left partial derivatives") {
    auto m = make_particle();
    Poly p0 = Poly::generator(m, m.gen("p", 0));
    Poly dx0 = Poly::generator(m, m.gen("x", 0, 1));
    Poly f = p0 * dx0;

    CHECK(partial_derivative(f, m.gen("x", 0)).is_zero());
    CHECK(partial_derivative(f, m.gen("x", 0, 1)) == p0);

    // odd left derivative: d/d(xp0) (xp0 xp1) = xp1, d/d(xp1) (xp0 xp1) = -xp0
    Poly xp0 = Poly::generator(m, m.gen("x+", 0));
    Poly xp1 = Poly::generator(m, m.gen("x+", 1));
    Poly prod = xp0 * xp1;
    CHECK(partial_derivative(prod, m.gen("x+", 0)) == xp1);
    CHECK(partial_derivative(prod, m.gen("x+", 1)) == -xp0);
}

TEST_CASE("variational derivative annihilates total derivatives") {
    auto m = make_particle();
    PolySampler s(m, 23);
    for (int i = 0; i < 30; ++i) {
        Poly g = s.random_poly();
        Poly dg = total_derivative(g);
        for (auto name : {"x", "p", "x+", "p+", "e", "e+", "c", "c+"}) {
            int idx = m.field_index(name);
            for (int c = 0; c < m.field(idx).desc.components; ++c) {
                if (!variational_derivative(dg, idx, c).is_zero()) {
                    CAPTURE(name);
                    CHECK(false);
                }
            }
        }
    }
}

TEST_CASE("filtration truncation") {
    auto m = make_particle();
    Poly cp = Poly::generator(m, m.gen("c+"));
    Poly xp0 = Poly::generator(m, m.gen("x+", 0));
    Poly p0 = Poly::generator(m, m.gen("p", 0));

    // weight of c+ is 2
    CHECK(truncate(cp, 2).is_zero());
    CHECK(truncate(cp, 3) == cp);
    // weight of x+ p is 1 < 2
    CHECK(truncate(xp0 * p0, 2) == xp0 * p0);
    // K = 0 kills everything; antifield-free parts survive all K >= 1
    CHECK(truncate(xp0 * p0 + p0, 0).is_zero());
    CHECK(truncate(xp0 * p0, 0).is_zero());
    CHECK(truncate(p0, 1) == p0);

    // brute-force oracle: weight = sum over antifield factors of -ghost
    PolySampler s(m, 99);
    for (int i = 0; i < 40; ++i) {
        Poly f = s.random_poly();
        for (int K = 0; K <= 4; ++K) {
            Poly t = truncate(f, K);
            for (auto& [mon, c] : t.terms()) {
                int w = 0;
                for (auto& fa : mon.factors) {
                    const auto& fi = m.field(field_of(fa.g));
                    if (fi.is_antifield) w += -fi.desc.ghost * fa.e;
                }
                CHECK(w < K);
            }
            // idempotent
            CHECK(truncate(t, K) == t);
        }
    }
    // multiplicativity: truncate(fg,K) == truncate(truncate(f,K) truncate(g,K), K)
    for (int i = 0; i < 30; ++i) {
        Poly f = s.random_poly(), g = s.random_poly();
        for (int K = 1; K <= 3; ++K)
            CHECK(truncate(f * g, K) == truncate(truncate(f, K) * truncate(g, K), K));
    }
}

TEST_CASE("total derivative membership with witness") {
    auto m = make_particle();
    Poly x0 = Poly::generator(m, m.gen("x", 0));
    Poly xp0 = Poly::generator(m, m.gen("x+", 0));
    Poly p0 = Poly::generator(m, m.gen("p", 0));
    Poly dx0 = Poly::generator(m, m.gen("x", 0, 1));

    auto r1 = is_total_derivative(total_derivative(xp0 * x0));
    CHECK(r1.is_exact);
    REQUIRE(r1.witness.has_value());
    CHECK(total_derivative(*r1.witness) == total_derivative(xp0 * x0));

    auto r2 = is_total_derivative(p0 * dx0);
    CHECK(!r2.is_exact);

    // constant term blocks the decision
    auto r3 = is_total_derivative(Poly(&m, 1));
    CHECK(!r3.is_exact);
    CHECK(r3.note.find("constant") != std::string::npos);

    // Laurent residue class: e^-1 De passes Euler but has no witness
    Poly einv = Poly::generator(m, m.gen("e"), -1);
    Poly de = Poly::generator(m, m.gen("e", 0, 1));
    auto r4 = is_total_derivative(einv * de);
    CHECK(!r4.is_exact);
    CHECK(r4.note.find("Laurent") != std::string::npos);
    // but e^-2 De integrates fine
    Poly em2 = Poly::generator(m, m.gen("e"), -2);
    auto r5 = is_total_derivative(em2 * de);
    CHECK(r5.is_exact);
    CHECK(total_derivative(*r5.witness) == em2 * de);

    PolySampler s(m, 7);
    for (int i = 0; i < 40; ++i) {
        Poly g = s.random_poly();
        Poly dg = total_derivative(g);
        auto r = is_total_derivative(dg);
        CHECK(r.is_exact);
        if (r.witness) CHECK(total_derivative(*r.witness) == dg);
    }
}

TEST_CASE("serialize round trip and canonical text") {
    auto m = make_particle();
    Poly p0 = Poly::generator(m, m.gen("p", 0));
    Poly dx0 = Poly::generator(m, m.gen("x", 0, 1));
    CHECK(serialize(Poly(&m)) == "0");
    CHECK(serialize(p0 * dx0) == "(* p_0 (D1 x^0))");
    CHECK(parse(m, "(* p_0 (D1 x^0))") == p0 * dx0);
    CHECK(serialize(Poly(&m, Rat(-3, 7))) == "-3/7");

    Poly einv = Poly::generator(m, m.gen("e"), -1);
    CHECK(serialize(einv) == "e^-1");
    CHECK(parse(m, "e^-1") == einv);

    CHECK_THROWS_AS(parse(m, "(* p_0"), ParseError);
    CHECK_THROWS_AS(parse(m, "nosuchgen"), ParseError);

    PolySampler s(m, 2024);
    for (int i = 0; i < 1000; ++i) {
        Poly f = s.random_poly();
        CHECK(parse(m, serialize(f)) == f);
    }
}
