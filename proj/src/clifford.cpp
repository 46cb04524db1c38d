#include "bv/clifford.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace bv {

Mat32 Mat32::identity() {
    Mat32 r;
    for (int i = 0; i < 32; ++i) r.a[i][i] = 1;
    return r;
}

Mat32 Mat32::operator*(const Mat32& o) const {
    Mat32 r;
    for (int i = 0; i < 32; ++i)
        for (int k = 0; k < 32; ++k) {
            auto v = a[i][k];
            if (!v) continue;
            for (int j = 0; j < 32; ++j) r.a[i][j] += v * o.a[k][j];
        }
    return r;
}

Mat32 Mat32::operator+(const Mat32& o) const {
    Mat32 r;
    for (int i = 0; i < 32; ++i)
        for (int j = 0; j < 32; ++j) r.a[i][j] = a[i][j] + o.a[i][j];
    return r;
}

Mat32 Mat32::operator-(const Mat32& o) const {
    Mat32 r;
    for (int i = 0; i < 32; ++i)
        for (int j = 0; j < 32; ++j) r.a[i][j] = a[i][j] - o.a[i][j];
    return r;
}

Mat32 Mat32::operator*(std::int64_t k) const {
    Mat32 r;
    for (int i = 0; i < 32; ++i)
        for (int j = 0; j < 32; ++j) r.a[i][j] = a[i][j] * k;
    return r;
}

Mat32 Mat32::transpose() const {
    Mat32 r;
    for (int i = 0; i < 32; ++i)
        for (int j = 0; j < 32; ++j) r.a[j][i] = a[i][j];
    return r;
}

bool Mat32::is_zero() const {
    for (auto& row : a)
        for (auto v : row)
            if (v) return false;
    return true;
}

namespace {

// exterior algebra of R^3: basis e_S, S a bitmask; 8x8 operator blocks
using Mat8 = std::array<std::array<int, 8>, 8>;

int below(int S, int i) { return __builtin_popcount(S & ((1 << i) - 1)); }

Mat8 wedge_op(int i) {
    Mat8 r{};
    for (int S = 0; S < 8; ++S) {
        if (S & (1 << i)) continue;
        r[S | (1 << i)][S] = (below(S, i) & 1) ? -1 : 1;
    }
    return r;
}

Mat8 contract_op(int i) {
    Mat8 r{};
    for (int S = 0; S < 8; ++S) {
        if (!(S & (1 << i))) continue;
        r[S & ~(1 << i)][S] = (below(S, i) & 1) ? -1 : 1;
    }
    return r;
}

Mat8 add8(const Mat8& x, const Mat8& y, int sy) {
    Mat8 r{};
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) r[i][j] = x[i][j] + sy * y[i][j];
    return r;
}

Mat8 mul8(const Mat8& x, const Mat8& y) {
    Mat8 r{};
    for (int i = 0; i < 8; ++i)
        for (int k = 0; k < 8; ++k)
            if (x[i][k])
                for (int j = 0; j < 8; ++j) r[i][j] += x[i][k] * y[k][j];
    return r;
}

// quaternion units 0=1,1=i,2=j,3=k
std::pair<int, int> quat_mul(int a, int b) {
    static const int idx[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    static const int sgn[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
    return {idx[a][b], sgn[a][b]};
}

Mat32 lift(int u, bool left, const Mat8& block) {
    Mat32 r;
    for (int q = 0; q < 4; ++q) {
        auto [q2, s] = left ? quat_mul(u, q) : quat_mul(q, u);
        for (int S = 0; S < 8; ++S)
            for (int S2 = 0; S2 < 8; ++S2)
                if (block[S2][S]) r.a[8 * q2 + S2][8 * q + S] = s * block[S2][S];
    }
    return r;
}

int wedge_sign(int S, int S2) {
    int inv = 0;
    for (int i = 0; i < 3; ++i)
        if (S2 & (1 << i)) inv += __builtin_popcount(S & ~((1 << (i + 1)) - 1));
    return (inv & 1) ? -1 : 1;
}

} // namespace

Clifford::Clifford() {
    Mat8 cp[3], cm[3];
    for (int i = 0; i < 3; ++i) {
        cp[i] = add8(contract_op(i), wedge_op(i), +1);
        cm[i] = add8(contract_op(i), wedge_op(i), -1);
    }

    gamma_[1] = lift(0, true, cp[0]);
    gamma_[2] = lift(1, true, cm[0]);
    gamma_[3] = lift(2, true, cm[0]);
    gamma_[4] = lift(3, true, cm[0]);
    gamma_[5] = lift(0, true, cp[1]);
    gamma_[6] = lift(1, false, cm[1]);
    gamma_[7] = lift(2, false, cm[1]);
    gamma_[8] = lift(3, false, cm[1]);
    gamma_[9] = lift(0, true, cp[2]);
    gamma_[0] = lift(0, true, cm[2]);

    // T(q (x) w, r (x) t) = Re(q rbar) vol((c-_1 c-_2 w) ^ tbar). Conjugation
    // is quaternion conjugation together with the exterior reversal
    // (-1)^C(k,2); Re(q rbar) pairs the units diagonally. Reversal is what
    // makes the matrix symmetric.
    Mat8 cc = mul8(cm[0], cm[1]);
    for (int q = 0; q < 4; ++q)
        for (int Sa = 0; Sa < 8; ++Sa)
            for (int Sb = 0; Sb < 8; ++Sb) {
                int Sc = 7 & ~Sb;
                if (!cc[Sc][Sa]) continue;
                int kb = __builtin_popcount(Sb);
                int rev = ((kb * (kb - 1) / 2) % 2) ? -1 : 1;
                T_.a[8 * q + Sa][8 * q + Sb] = cc[Sc][Sa] * wedge_sign(Sc, Sb) * rev;
            }

    for (int mu = 0; mu < 10; ++mu) {
        Mat32 sq = gamma_[mu] * gamma_[mu];
        if (!(sq == Mat32::identity() * std::int64_t(eta(mu, mu))))
            throw std::logic_error("gamma construction broken");
    }

    int np = 0, nm = 0;
    for (int b = 0; b < 32; ++b) {
        if (__builtin_popcount(b & 7) % 2 == 0) plus_idx_[np++] = b;
        else minus_idx_[nm++] = b;
    }
    assert(np == 16 && nm == 16);

    // adapted minus basis: T(plus_A, minus'_B) = delta_AB exactly; the raw
    // block is a signed permutation so adapted vectors stay integral
    std::array<std::array<int, 16>, 16> blk{};
    for (int A = 0; A < 16; ++A)
        for (int B = 0; B < 16; ++B) blk[A][B] = int(T_.a[plus_idx_[A]][minus_idx_[B]]);
    for (auto& row : minus_adapted_) row.fill(0);
    for (int A = 0; A < 16; ++A) {
        int col = -1, s = 0, hits = 0;
        for (int B = 0; B < 16; ++B)
            if (blk[A][B]) { col = B; s = blk[A][B]; ++hits; }
        if (hits != 1 || (s != 1 && s != -1))
            throw std::logic_error("pairing block is not a signed permutation");
        minus_adapted_[A][minus_idx_[col]] = s;
    }
    for (int A = 0; A < 16; ++A)
        for (int B = 0; B < 16; ++B) {
            std::int64_t v = 0;
            for (int r = 0; r < 32; ++r) v += T_.a[plus_idx_[A]][r] * minus_adapted_[B][r];
            if (v != (A == B ? 1 : 0)) throw std::logic_error("adapted basis failed");
        }
}

Mat32 Clifford::gamma_antisym(const std::vector<int>& indices) const {
    for (size_t i = 0; i < indices.size(); ++i) {
        if (indices[i] < 0 || indices[i] > 9) throw std::invalid_argument("gamma index range");
        for (size_t j = i + 1; j < indices.size(); ++j)
            if (indices[i] == indices[j]) return Mat32{};
    }
    // distinct gammas anticommute: the antisymmetrization collapses to the
    // sorted product times the sign of the sort
    std::vector<int> s = indices;
    int sign = 1;
    for (size_t i = 0; i < s.size(); ++i)
        for (size_t j = i + 1; j < s.size(); ++j)
            if (s[i] > s[j]) { std::swap(s[i], s[j]); sign = -sign; }
    Mat32 r = Mat32::identity();
    for (int mu : s) r = r * gamma_[mu];
    return sign < 0 ? r * std::int64_t(-1) : r;
}

Mat16 Clifford::gamma_block(int mu, int chi_plus) const {
    Mat16 r{};
    if (chi_plus) {
        for (int A = 0; A < 16; ++A) {
            int col = plus_idx_[A];
            for (int B = 0; B < 16; ++B) {
                std::int64_t v = 0;
                for (int rr = 0; rr < 32; ++rr) v += T_.a[plus_idx_[B]][rr] * gamma_[mu].a[rr][col];
                r[B][A] = v;
            }
        }
    } else {
        for (int A = 0; A < 16; ++A)
            for (int B = 0; B < 16; ++B) {
                std::int64_t v = 0;
                for (int rr = 0; rr < 32; ++rr)
                    v += gamma_[mu].a[plus_idx_[B]][rr] * minus_adapted_[A][rr];
                r[B][A] = v;
            }
    }
    return r;
}

std::array<std::int64_t, 32> Clifford::embed(int chi_plus,
                                             const std::array<std::int64_t, 16>& v) const {
    std::array<std::int64_t, 32> r{};
    if (chi_plus) {
        for (int A = 0; A < 16; ++A) r[plus_idx_[A]] = v[A];
    } else {
        for (int A = 0; A < 16; ++A)
            if (v[A])
                for (int i = 0; i < 32; ++i) r[i] += v[A] * minus_adapted_[A][i];
    }
    return r;
}

Mat16 Clifford::pairing_block(const std::vector<int>& indices, int chi_plus_of_u) const {
    Mat32 g = gamma_antisym(indices);
    bool flip_chi = indices.size() % 2 == 1;
    int chi_w = flip_chi ? !chi_plus_of_u : chi_plus_of_u;
    int chi_v = !chi_w;
    Mat16 r{};
    for (int A = 0; A < 16; ++A) {
        std::array<std::int64_t, 16> ea{};
        ea[A] = 1;
        auto ua = embed(chi_plus_of_u, ea);
        std::array<std::int64_t, 32> w{};
        for (int i = 0; i < 32; ++i) {
            std::int64_t acc = 0;
            for (int j = 0; j < 32; ++j) acc += g.a[i][j] * ua[j];
            w[i] = acc;
        }
        for (int B = 0; B < 16; ++B) {
            std::array<std::int64_t, 16> eb{};
            eb[B] = 1;
            auto vb = embed(chi_v, eb);
            std::int64_t acc = 0;
            for (int i = 0; i < 32; ++i) {
                if (!w[i]) continue;
                for (int j = 0; j < 32; ++j) acc += w[i] * T_.a[i][j] * vb[j];
            }
            r[A][B] = acc;
        }
    }
    return r;
}

bool Clifford::check_anticommutators() const {
    for (int mu = 0; mu < 10; ++mu)
        for (int nu = mu; nu < 10; ++nu) {
            Mat32 anti = gamma_[mu] * gamma_[nu] + gamma_[nu] * gamma_[mu];
            if (!(anti == Mat32::identity() * std::int64_t(2 * eta(mu, nu)))) return false;
        }
    return true;
}

bool Clifford::check_pairing_symmetric() const { return T_ == T_.transpose(); }

bool Clifford::check_pairing_chirality_offdiag() const {
    for (int a = 0; a < 32; ++a)
        for (int b = 0; b < 32; ++b)
            if (T_.a[a][b] && __builtin_popcount(a & 7) % 2 == __builtin_popcount(b & 7) % 2)
                return false;
    return true;
}

bool Clifford::check_pairing_nondegenerate() const {
    std::array<std::array<Rat, 32>, 32> m;
    for (int i = 0; i < 32; ++i)
        for (int j = 0; j < 32; ++j) m[i][j] = T_.a[i][j];
    int rank = 0;
    for (int col = 0; col < 32 && rank < 32; ++col) {
        int piv = -1;
        for (int r = rank; r < 32; ++r)
            if (m[r][col] != 0) { piv = r; break; }
        if (piv < 0) continue;
        std::swap(m[piv], m[rank]);
        for (int r = rank + 1; r < 32; ++r) {
            if (m[r][col] == 0) continue;
            Rat f = m[r][col] / m[rank][col];
            for (int j = col; j < 32; ++j) m[r][j] -= f * m[rank][j];
        }
        ++rank;
    }
    return rank == 32;
}

bool Clifford::check_gamma_selfadjoint() const {
    for (int mu = 0; mu < 10; ++mu)
        if (!(gamma_[mu].transpose() * T_ == T_ * gamma_[mu])) return false;
    return true;
}

bool Clifford::check_gamma2_antiadjoint() const {
    for (int mu = 0; mu < 10; ++mu)
        for (int nu = mu + 1; nu < 10; ++nu) {
            Mat32 g2 = gamma_antisym({mu, nu});
            if (!(g2.transpose() * T_ == T_ * g2 * std::int64_t(-1))) return false;
        }
    return true;
}

bool Clifford::check_commute_lemma(int k) const {
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    auto advance = [&]() {
        int i = k - 1;
        while (i >= 0 && idx[i] == 10 - k + i) --i;
        if (i < 0) return false;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
        return true;
    };
    do {
        Mat32 g = gamma_antisym(idx);
        for (int mu = 0; mu < 10; ++mu) {
            Mat32 lhs = g * gamma_[mu] - gamma_[mu] * g * std::int64_t(k % 2 ? -1 : 1);
            Mat32 rhs;
            for (int j = 1; j <= k; ++j) {
                if (eta(mu, idx[j - 1]) == 0) continue;
                std::vector<int> rest;
                for (int t = 0; t < k; ++t)
                    if (t != j - 1) rest.push_back(idx[t]);
                int sgn = ((k - j) % 2 ? -1 : 1) * eta(mu, idx[j - 1]);
                rhs = rhs + gamma_antisym(rest) * std::int64_t(2 * sgn);
            }
            if (!(lhs == rhs)) return false;
        }
    } while (advance());
    return true;
}

bool Clifford::check_exterior_inner_symmetry() const {
    auto binom2 = [](int k) { return k * (k - 1) / 2; };
    std::array<std::array<int, 8>, 8> ip{};
    for (int S = 0; S < 8; ++S)
        for (int S2 = 0; S2 < 8; ++S2) {
            if ((S & S2) || (S | S2) != 7) continue;
            int k = __builtin_popcount(S);
            ip[S][S2] = ((binom2(k) % 2) ? -1 : 1) * wedge_sign(S, S2);
        }
    for (int S = 0; S < 8; ++S)
        for (int S2 = 0; S2 < 8; ++S2)
            if (ip[S2][S] != -ip[S][S2]) return false;
    return true;
}

const Clifford& clifford() {
    static Clifford instance;
    return instance;
}

// ---------------------------------------------------------------------------

SpinorVector SpinorVector::zero(const ModelAlgebra& m, bool plus) {
    SpinorVector v;
    v.plus_chirality = plus;
    for (auto& p : v.c) p = Poly(&m);
    return v;
}

SpinorVector SpinorVector::operator+(const SpinorVector& o) const {
    if (plus_chirality != o.plus_chirality) throw ModelError("chirality mismatch");
    SpinorVector r = *this;
    for (int i = 0; i < 16; ++i) r.c[i] += o.c[i];
    return r;
}

SpinorVector SpinorVector::operator-(const SpinorVector& o) const {
    if (plus_chirality != o.plus_chirality) throw ModelError("chirality mismatch");
    SpinorVector r = *this;
    for (int i = 0; i < 16; ++i) r.c[i] -= o.c[i];
    return r;
}

SpinorVector SpinorVector::scaled(const Poly& left) const {
    SpinorVector r = *this;
    for (int i = 0; i < 16; ++i) r.c[i] = left * c[i];
    return r;
}

SpinorVector SpinorVector::scaled(const Rat& k) const {
    SpinorVector r = *this;
    for (int i = 0; i < 16; ++i) r.c[i] = c[i] * k;
    return r;
}

SpinorVector gamma_apply(const Clifford& cl, int mu, const SpinorVector& v) {
    Mat16 blk = cl.gamma_block(mu, v.plus_chirality ? 1 : 0);
    SpinorVector r;
    r.plus_chirality = !v.plus_chirality;
    const ModelAlgebra* md = nullptr;
    for (auto& p : v.c)
        if (p.model()) { md = p.model(); break; }
    for (int B = 0; B < 16; ++B) {
        Poly acc(md);
        for (int A = 0; A < 16; ++A)
            if (blk[B][A]) acc += v.c[A] * Rat(blk[B][A]);
        r.c[B] = std::move(acc);
    }
    return r;
}

Poly spinor_pairing(const Clifford& cl, const std::vector<int>& indices,
                    const SpinorVector& a, const SpinorVector& b) {
    bool flip = indices.size() % 2 == 1;
    bool need_b_plus = flip ? a.plus_chirality : !a.plus_chirality;
    if (b.plus_chirality != need_b_plus) throw ModelError("pairing chirality mismatch");
    Mat16 P = cl.pairing_block(indices, a.plus_chirality ? 1 : 0);
    const ModelAlgebra* md = nullptr;
    for (auto& p : a.c)
        if (p.model()) { md = p.model(); break; }
    if (!md)
        for (auto& p : b.c)
            if (p.model()) { md = p.model(); break; }
    Poly acc(md);
    for (int A = 0; A < 16; ++A) {
        if (a.c[A].is_zero()) continue;
        for (int B = 0; B < 16; ++B) {
            if (!P[A][B] || b.c[B].is_zero()) continue;
            acc += a.c[A] * b.c[B] * Rat(P[A][B]);
        }
    }
    return acc;
}

} // namespace bv
