#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bv/rng.hpp"
#include "bv/serialize.hpp"
#include "bv/tw.hpp"

using namespace bv;

static SuperModel& sm() {
    static SuperModel model(4, 6);
    return model;
}

// tuples over a restricted chart set, closed under faces
static std::vector<ChartTuple> small_tuples(int max_chart, int max_depth) {
    std::vector<ChartTuple> out;
    for (auto& t : cover_tuples(max_depth))
        if (t.charts.back() <= max_chart) out.push_back(t);
    return out;
}

TEST_CASE("translation current rewrites through the composite spinors") {
    auto& M = sm();
    int K = M.K();
    Poly lhs = M.density_D() + M.s().apply_truncated(M.density_G_seed(), K + 1);
    Poly tail = psi_pairing_sum(M, {}, K + 1);
    CHECK(truncate(lhs - tail * Rat(1, 2), K).is_zero());
}

TEST_CASE("contraction identity for the tower pairing sums") {
    auto& M = sm();
    int K = M.K();
    // s T^{nu0...nuk}-sum = 2 sum_j (-1)^(k-j) eta^{mu nu_j} p_mu T^{...hat j...}-sum
    auto check_rung = [&](const std::vector<int>& idx) {
        Poly lhs = M.s().apply_truncated(psi_pairing_sum(M, idx, K + 1), K);
        Poly rhs = M.zero();
        int k = int(idx.size()) - 1;
        for (int j = 0; j <= k; ++j) {
            std::vector<int> rest;
            for (int i = 0; i <= k; ++i)
                if (i != j) rest.push_back(idx[i]);
            Poly pj = Poly::generator(M.algebra(), M.algebra().gen("p", idx[j])) *
                      Rat(M.eta(idx[j], idx[j]));
            int sgn = ((k - j) % 2) ? -1 : 1;
            rhs += pj * psi_pairing_sum(M, rest, K) * Rat(2 * sgn);
        }
        return truncate(lhs - rhs, K).is_zero();
    };
    for (int nu : {0, 3, 9}) CHECK(check_rung({nu}));
    for (auto idx : std::vector<std::vector<int>>{{0, 1}, {2, 7}, {8, 9}})
        CHECK(check_rung(idx));
    CHECK(check_rung({0, 1, 2}));
    CHECK(check_rung({3, 5, 8}));   // a second sample at depth three
}

TEST_CASE("covariance cochain: faces, gradings, and the main identity") {
    auto& M = sm();
    int K = M.K();
    auto tuples = small_tuples(3, 2);
    TWCochain G0 = g0_cochain(M, tuples, 3, K + 1);

    std::string err;
    CHECK(face_compatible(G0, &err));
    CAPTURE(err);

    // every term has total degree -2: ghost = -2 - form degree
    for (auto& [t, v] : G0.values)
        for (auto& [key, p] : v.terms()) {
            auto gh = p.ghost();
            REQUIRE(gh.has_value());
            CHECK(*gh == -2 - key.degree());
        }

    // (delta + s) G0 = -D on every tuple, per form degree
    TWCochain lhs = tw_total_diff(M, G0, K);
    TWCochain D = constant_cochain(tuples, truncate(M.density_D(), K));
    TWCochain resid = (lhs + D).truncated(K);
    for (auto& [t, v] : resid.values) {
        CAPTURE(t.str());
        CHECK(v.is_zero());
    }

    // restricting to a single chart with the tower switched off leaves the seed
    const TWValue& v0 = G0.values.at(ChartTuple{{0}});
    Poly f0 = v0.component(FormKey{{}, 0});
    Poly seedless = f0 - M.density_G_seed();
    for (auto& [m, c] : seedless.terms()) {
        bool has_tower = false;
        for (auto& fa : m.factors) {
            auto nm = M.algebra().field(field_of(fa.g)).desc.name;
            if (nm.substr(0, 2) == "th") has_tower = true;
        }
        CHECK(has_tower);
    }
}

TEST_CASE("ghost observable is a cocycle once the position tail is attached") {
    auto& M = sm();
    int K = M.K();
    auto tuples = small_tuples(4, 1);
    TWCochain full = observable_c(M, tuples, true);
    CHECK(face_compatible(full));
    CHECK(tw_total_diff(M, full, K).is_zero());

    // the bare chart formula closes at form degree zero but not at one
    TWCochain bare = observable_c(M, tuples, false);
    TWCochain r = tw_total_diff(M, bare, K);
    bool f1_obstruction = false;
    for (auto& [t, v] : r.values) {
        CHECK(v.form_component(0).is_zero());
        if (!v.form_component(1).is_zero()) f1_obstruction = true;
    }
    CHECK(f1_obstruction);

    // on one chart with the tower off, the observable is the plain ghost
    Poly c0 = full.values.at(ChartTuple{{2}}).component(FormKey{{}, 0});
    Poly diff = c0 - M.gen("c");
    for (auto& [m, c] : diff.terms()) {
        bool has_tower = false;
        for (auto& fa : m.factors)
            if (M.algebra().field(field_of(fa.g)).desc.name.substr(0, 2) == "th")
                has_tower = true;
        CHECK(has_tower);
    }
}

TEST_CASE("position observable matches the twisted ghost at form degree zero") {
    auto& M = sm();
    int K = M.K();
    auto tuples = small_tuples(3, 1);
    TWCochain cw = observable_c(M, tuples, true);
    for (int mu : {0, 5}) {
        TWCochain xw = observable_x(M, tuples, mu);
        CHECK(face_compatible(xw));
        TWCochain lhs = tw_total_diff(M, xw, K);
        Poly pmu = M.gen("p", mu) * Rat(-M.eta(mu, mu));
        for (auto& [t, v] : lhs.values) {
            const TWValue& cv = cw.values.at(t);
            Poly want = truncate(cv.component(FormKey{std::vector<int>(t.depth(), 0), 0}) * pmu, K);
            CHECK(truncate(v.component(FormKey{std::vector<int>(t.depth(), 0), 0}) - want, K)
                      .is_zero());
        }
    }
}

TEST_CASE("bracket on cochains: plain bracket at form degree zero") {
    auto& M = sm();
    auto tuples = small_tuples(2, 0);
    PolySampler s(M.algebra(), 7, SampleOptions{1, 2, 2, 1, false});
    for (int i = 0; i < 10; ++i) {
        Poly f = s.random_homogeneous(), g = s.random_homogeneous();
        TWCochain a = constant_cochain(tuples, f), b = constant_cochain(tuples, g);
        TWCochain ab = tw_bracket(a, b);
        for (auto& [t, v] : ab.values)
            CHECK(v.component(FormKey{std::vector<int>(t.depth(), 0), 0}) == soloviev(f, g));
    }
}

static TWValue random_value(const SuperModel& M, int k, PolySampler& s, int want_deg) {
    TWValue v(k, &M.algebra());
    FormKey key{std::vector<int>(k, 0), 0};
    std::uniform_int_distribution<int> td(0, 1);
    for (int j = 0; j < k; ++j) key.tdeg[j] = td(s.rng());
    int placed = 0;
    for (int j = 0; j < k && placed < want_deg; ++j) {
        key.dmask |= 1u << j;
        ++placed;
    }
    // keep clear of the top of the tower so the differential stays defined
    Poly raw = s.random_homogeneous();
    Poly kept(&M.algebra());
    for (auto& [m, c] : raw.terms()) {
        bool top = false;
        for (auto& fa : m.factors) {
            auto nm = M.algebra().field(field_of(fa.g)).desc.name;
            if (nm == "th5" || nm == "th6") top = true;
        }
        if (!top) kept.add_term(m, c);
    }
    if (kept.is_zero()) kept = Poly(&M.algebra(), 1);
    v.add(key, kept);
    return v;
}

TEST_CASE("bracket axioms on the cochain level") {
    auto& M = sm();
    PolySampler s(M.algebra(), 99, SampleOptions{1, 2, 1, 1, false});
    ChartTuple t{{0, 1, 2}};
    for (int trial = 0; trial < 12; ++trial) {
        for (int da = 0; da <= 2; ++da)
            for (int db = 0; db <= 2 - da; ++db) {
                TWCochain a, b;
                a.values.emplace(t, random_value(M, 2, s, da));
                b.values.emplace(t, random_value(M, 2, s, db));
                const TWValue &va = a.values.at(t), &vb = b.values.at(t);
                auto pa_of = [&](const TWValue& v) {
                    for (auto& [key, p] : v.terms())
                        return (key.degree() + int(*p.parity())) % 2;
                    return 0;
                };
                int pa = pa_of(va), pb = pa_of(vb);
                TWCochain ab = tw_bracket(a, b), ba = tw_bracket(b, a);
                int sgn = (((pa + 1) * (pb + 1)) % 2) ? 1 : -1;
                CHECK((ab - ba * Rat(sgn)).is_zero());

                // the simplex differential is an exact derivation; the full
                // differential is one modulo total derivatives, since the
                // generator table realizes the bracket action only up to im D
                auto dl = [](const TWCochain& x) {
                    TWCochain r;
                    for (auto& [tt, v] : x.values) r.values.emplace(tt, v.delta());
                    return r;
                };
                CHECK((dl(ab) - tw_bracket(dl(a), b) -
                       tw_bracket(a, dl(b)) * Rat(pa % 2 ? 1 : -1))
                          .is_zero());
                int K = 1000;
                TWCochain lhs = tw_total_diff(M, ab, K);
                TWCochain rhs = tw_bracket(tw_total_diff(M, a, K), b) +
                                tw_bracket(a, tw_total_diff(M, b, K)) * Rat(pa % 2 ? 1 : -1);
                for (auto& [tt, v] : (lhs - rhs).values)
                    for (auto& [key, p] : v.terms()) CHECK(is_total_derivative(p).is_exact);
            }
    }
}

TEST_CASE("jacobi on the cochain level") {
    auto& M = sm();
    PolySampler s(M.algebra(), 123, SampleOptions{1, 2, 1, 0, false});
    ChartTuple t{{0, 1}};
    for (int trial = 0; trial < 10; ++trial) {
        TWCochain a, b, c;
        a.values.emplace(t, random_value(M, 1, s, trial % 2));
        b.values.emplace(t, random_value(M, 1, s, (trial / 2) % 2));
        c.values.emplace(t, random_value(M, 1, s, 0));
        auto pa_of = [&](const TWCochain& x) {
            for (auto& [tt, v] : x.values)
                for (auto& [key, p] : v.terms())
                    return (key.degree() + int(*p.parity())) % 2;
            return 0;
        };
        int pa = pa_of(a), pb = pa_of(b);
        TWCochain lhs = tw_bracket(a, tw_bracket(b, c));
        TWCochain rhs = tw_bracket(tw_bracket(a, b), c) +
                        tw_bracket(b, tw_bracket(a, c)) * Rat(((pa + 1) * (pb + 1)) % 2 ? -1 : 1);
        CHECK((lhs - rhs).is_zero());
    }
}
