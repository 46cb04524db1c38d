#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "bv/clifford.hpp"
#include "testmodels.hpp"

using namespace bv;

// reference antisymmetrization: (1/k!) sum over permutations with sign
static Mat32 antisym_reference(const Clifford& cl, std::vector<int> idx) {
    std::sort(idx.begin(), idx.end());
    Mat32 acc;
    long long count = 0;
    std::vector<int> perm = idx;
    do {
        int sign = 1;
        for (size_t i = 0; i < perm.size(); ++i)
            for (size_t j = i + 1; j < perm.size(); ++j)
                if (perm[i] > perm[j]) sign = -sign;
        Mat32 p = Mat32::identity();
        for (int mu : perm) p = p * cl.gamma(mu);
        acc = acc + p * std::int64_t(sign);
        ++count;
    } while (std::next_permutation(perm.begin(), perm.end()));
    Mat32 r;
    for (int i = 0; i < 32; ++i)
        for (int j = 0; j < 32; ++j) {
            REQUIRE(acc.a[i][j] % count == 0);  // the 1/k! divides exactly
            r.a[i][j] = acc.a[i][j] / count;
        }
    return r;
}

TEST_CASE("gamma anticommutators give signature (9,1)") {
    const auto& cl = clifford();
    CHECK(cl.check_anticommutators());
    int minus = 0, plus = 0;
    for (int mu = 0; mu < 10; ++mu) {
        Mat32 sq = cl.gamma(mu) * cl.gamma(mu);
        if (sq == Mat32::identity() * std::int64_t(-1)) ++minus;
        if (sq == Mat32::identity()) ++plus;
    }
    CHECK(minus == 1);
    CHECK(plus == 9);
    CHECK(cl.gamma(0) * cl.gamma(0) == Mat32::identity() * std::int64_t(-1));
    CHECK(cl.gamma(1) * cl.gamma(1) == Mat32::identity());
}

TEST_CASE("gamma matrices exchange the chirality halves") {
    const auto& cl = clifford();
    for (int mu = 0; mu < 10; ++mu)
        for (int col = 0; col < 32; ++col)
            for (int row = 0; row < 32; ++row)
                if (cl.gamma(mu).a[row][col])
                    CHECK(__builtin_popcount(row & 7) % 2 != __builtin_popcount(col & 7) % 2);
}

TEST_CASE("antisymmetrized products") {
    const auto& cl = clifford();
    CHECK(cl.gamma_antisym({}) == Mat32::identity());
    for (int mu = 0; mu < 10; ++mu)
        for (int nu = 0; nu < 10; ++nu) {
            Mat32 want;
            for (int i = 0; i < 32; ++i)
                for (int j = 0; j < 32; ++j) {
                    auto d = (cl.gamma(mu) * cl.gamma(nu)).a[i][j] -
                             (cl.gamma(nu) * cl.gamma(mu)).a[i][j];
                    REQUIRE(d % 2 == 0);
                    want.a[i][j] = d / 2;
                }
            CHECK(cl.gamma_antisym({mu, nu}) == want);
        }
    for (auto t : std::vector<std::vector<int>>{{1, 2, 3}, {0, 1, 9}, {2, 5, 7}, {0, 4, 8}})
        CHECK(cl.gamma_antisym(t) == antisym_reference(cl, t));
    CHECK(cl.gamma_antisym({3, 3}).is_zero());
    CHECK_THROWS(cl.gamma_antisym({11}));
}

TEST_CASE("pairing properties") {
    const auto& cl = clifford();
    CHECK(cl.check_pairing_symmetric());
    CHECK(cl.check_pairing_chirality_offdiag());
    CHECK(cl.check_pairing_nondegenerate());
    CHECK(cl.check_gamma_selfadjoint());
    CHECK(cl.check_gamma2_antiadjoint());
    CHECK(cl.check_exterior_inner_symmetry());
}

TEST_CASE("commutation lemma for antisymmetrized products") {
    const auto& cl = clifford();
    CHECK(cl.check_commute_lemma(1));
    CHECK(cl.check_commute_lemma(2));
    CHECK(cl.check_commute_lemma(3));
}

TEST_CASE("adapted blocks make the pairing componentwise") {
    const auto& cl = clifford();
    Mat16 P = cl.pairing_block({}, 1);
    for (int A = 0; A < 16; ++A)
        for (int B = 0; B < 16; ++B) CHECK(P[A][B] == (A == B ? 1 : 0));
    // T(gamma u, v) = T(u, gamma v) makes each adapted gamma block symmetric,
    // and the one-index pairing block coincides with the gamma block
    for (int mu = 0; mu < 10; ++mu) {
        Mat16 gp = cl.gamma_block(mu, 1), gm = cl.gamma_block(mu, 0);
        Mat16 p1 = cl.pairing_block({mu}, 1);
        for (int A = 0; A < 16; ++A)
            for (int B = 0; B < 16; ++B) {
                CHECK(gp[A][B] == gp[B][A]);
                CHECK(gm[A][B] == gm[B][A]);
                CHECK(p1[A][B] == gp[A][B]);
            }
    }
}

TEST_CASE("spinor pairings over the jet algebra") {
    const auto& cl = clifford();
    auto cat = bvtest::particle_catalog(4);
    cat.push_back({"th", 16, 0, Parity::odd, false, std::nullopt, '.'});
    cat.push_back({"la", 16, 0, Parity::odd, false, std::nullopt, '.'});
    cat.push_back({"ev", 16, 1, Parity::even, false, std::nullopt, '.'});
    auto m = ModelAlgebra::build(cat, {});

    auto mk = [&](const char* name, bool plus) {
        SpinorVector v = SpinorVector::zero(m, plus);
        for (int A = 0; A < 16; ++A) v.c[A] = Poly::generator(m, m.gen(name, A));
        return v;
    };
    SpinorVector th = mk("th", true), la = mk("la", true), ev = mk("ev", false);

    // symmetric one-index pairing dies on an odd square, not on distinct odds
    CHECK(spinor_pairing(cl, {3}, th, th).is_zero());
    CHECK(!spinor_pairing(cl, {3}, th, la).is_zero());
    // antisymmetric three-index pairing survives the odd square
    CHECK(!spinor_pairing(cl, {0, 1, 2}, th, th).is_zero());
    // chirality rules: even-index pairings need opposite halves
    CHECK_THROWS(spinor_pairing(cl, {}, th, la));
    CHECK(!spinor_pairing(cl, {}, th, ev).is_zero());

    // swapping two odd-component arguments costs (-1)^(C(r,2)+1), combining
    // the pairing adjointness sign with the component exchange
    SpinorVector la2 = mk("la", false);  // odd minus-chirality partner
    for (auto idx : std::vector<std::vector<int>>{{5}, {1, 2, 9}, {}, {0, 7}, {0, 2, 5, 8}}) {
        int r = int(idx.size());
        const SpinorVector& b = (r % 2) ? la : la2;
        Poly ab = spinor_pairing(cl, idx, th, b);
        Poly ba = spinor_pairing(cl, idx, b, th);
        int sgn = ((r * (r - 1) / 2 + 1) % 2) ? -1 : 1;
        CHECK(ab == ba * Rat(sgn));
        if (!ab.is_zero()) CHECK(*ab.parity() == Parity::even);
    }
}
