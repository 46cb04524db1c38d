#include "bv/poly.hpp"

#include <algorithm>
#include <cassert>

namespace bv {

Poly Poly::generator(const ModelAlgebra& m, Gen g, int e) {
    if (e == 0) return Poly(&m, 1);
    if (m.parity(g) == Parity::odd && e != 1)
        throw ModelError("odd generator exponent must be 1");
    if (e < 0 && !m.invertible(g))
        throw ModelError("negative exponent on non-invertible generator " + m.gen_name(g));
    Poly p(&m);
    p.terms_[Monomial{{Factor{g, e}}}] = 1;
    return p;
}

void Poly::add_term(const Monomial& m, const Rat& c) {
    if (c == 0) return;
    auto [it, fresh] = terms_.try_emplace(m, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Poly& Poly::operator+=(const Poly& o) {
    if (!model_) model_ = o.model_;
    else if (o.model_ && o.model_ != model_) throw ModelError("model mismatch");
    for (auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    if (!model_) model_ = o.model_;
    else if (o.model_ && o.model_ != model_) throw ModelError("model mismatch");
    for (auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

Poly Poly::operator-() const {
    Poly r(model_);
    for (auto& [m, c] : terms_) r.terms_[m] = -c;
    return r;
}

Poly Poly::operator*(const Rat& c) const {
    Poly r(model_);
    if (c == 0) return r;
    for (auto& [m, k] : terms_) r.terms_[m] = k * c;
    return r;
}

bool mul_monomial(const ModelAlgebra& md, const Monomial& a, const Monomial& b,
                  Monomial& out, int& sign) {
    out.factors.clear();
    out.factors.reserve(a.factors.size() + b.factors.size());
    sign = 1;
    size_t i = 0, j = 0;
    // odd factors of a not yet consumed; each b-odd-factor placed now crosses them
    int odd_left = 0;
    for (auto& f : a.factors)
        if (md.parity(f.g) == Parity::odd) ++odd_left;
    while (i < a.factors.size() || j < b.factors.size()) {
        bool take_a;
        if (i == a.factors.size()) take_a = false;
        else if (j == b.factors.size()) take_a = true;
        else if (a.factors[i].g == b.factors[j].g) {
            const Factor& fa = a.factors[i];
            const Factor& fb = b.factors[j];
            if (md.parity(fa.g) == Parity::odd) return false;  // x^2 = 0
            int e = fa.e + fb.e;
            if (e != 0) out.factors.push_back(Factor{fa.g, e});
            ++i; ++j;
            continue;
        } else take_a = a.factors[i].g < b.factors[j].g;
        if (take_a) {
            if (md.parity(a.factors[i].g) == Parity::odd) --odd_left;
            out.factors.push_back(a.factors[i++]);
        } else {
            const Factor& fb = b.factors[j];
            if (md.parity(fb.g) == Parity::odd && (odd_left & 1)) sign = -sign;
            out.factors.push_back(fb);
            ++j;
        }
    }
    return true;
}

Poly Poly::operator*(const Poly& o) const {
    const ModelAlgebra* md = model_ ? model_ : o.model_;
    if (model_ && o.model_ && model_ != o.model_) throw ModelError("model mismatch");
    Poly r(md);
    Monomial prod;
    int sign;
    for (auto& [ma, ca] : terms_)
        for (auto& [mb, cb] : o.terms_) {
            if (!mul_monomial(*md, ma, mb, prod, sign)) continue;
            Rat c = ca * cb;
            if (sign < 0) c = -c;
            r.add_term(prod, c);
        }
    return r;
}

int Poly::monomial_ghost(const Monomial& m) const {
    int g = 0;
    for (auto& f : m.factors) g += model_->ghost(f.g) * f.e;
    return g;
}

Parity Poly::monomial_parity(const Monomial& m) const {
    int p = 0;
    for (auto& f : m.factors)
        if (model_->parity(f.g) == Parity::odd) p ^= (f.e & 1);
    return Parity(p);
}

int Poly::monomial_weight(const Monomial& m) const {
    int w = 0;
    for (auto& f : m.factors) w += model_->weight(f.g) * f.e;
    return w;
}

std::optional<int> Poly::ghost() const {
    std::optional<int> g;
    for (auto& [m, c] : terms_) {
        int gm = monomial_ghost(m);
        if (!g) g = gm;
        else if (*g != gm) return std::nullopt;
    }
    return g;
}

std::optional<Parity> Poly::parity() const {
    std::optional<Parity> p;
    for (auto& [m, c] : terms_) {
        Parity pm = monomial_parity(m);
        if (!p) p = pm;
        else if (*p != pm) return std::nullopt;
    }
    return p;
}

int Poly::min_weight() const {
    int w = INT32_MAX;
    for (auto& [m, c] : terms_) w = std::min(w, monomial_weight(m));
    return terms_.empty() ? 0 : w;
}

Rat Poly::constant_term() const {
    auto it = terms_.find(Monomial{});
    return it == terms_.end() ? Rat(0) : it->second;
}

Poly truncate(const Poly& f, int K) {
    Poly r(f.model());
    for (auto& [m, c] : f.terms())
        if (f.monomial_weight(m) < K) r.add_term(m, c);
    return r;
}

// one Leibniz term: prefix * inserted * suffix, all canonical already except order
static void leibniz_accumulate(Poly& out, const ModelAlgebra& md, const Monomial& m,
                               size_t pos, const Poly& factor_image, const Rat& coeff,
                               int extra_sign) {
    Monomial prefix, suffix;
    prefix.factors.assign(m.factors.begin(), m.factors.begin() + pos);
    suffix.factors.assign(m.factors.begin() + pos + 1, m.factors.end());
    Monomial tmp, prod;
    int s1, s2;
    for (auto& [fm, fc] : factor_image.terms()) {
        if (!mul_monomial(md, prefix, fm, tmp, s1)) continue;
        if (!mul_monomial(md, tmp, suffix, prod, s2)) continue;
        Rat c = coeff * fc * (s1 * s2 * extra_sign);
        out.add_term(prod, c);
    }
}

Poly total_derivative(const Poly& f) {
    const ModelAlgebra& md = *f.model();
    Poly r(&md);
    for (auto& [m, c] : f.terms()) {
        for (size_t i = 0; i < m.factors.size(); ++i) {
            const Factor& fa = m.factors[i];
            // d(g^e) = e g^(e-1) Dg
            Poly img(&md);
            Monomial im;
            if (fa.e != 1) im.factors.push_back(Factor{fa.g, fa.e - 1});
            im.factors.push_back(Factor{raise_jet(fa.g), 1});
            img.add_term(im, Rat(fa.e));
            leibniz_accumulate(r, md, m, i, img, c, 1);
        }
    }
    return r;
}

Poly total_derivative(const Poly& f, int times) {
    Poly r = f;
    for (int i = 0; i < times; ++i) r = total_derivative(r);
    return r;
}

Poly partial_derivative(const Poly& f, Gen g) {
    const ModelAlgebra& md = *f.model();
    bool g_odd = md.parity(g) == Parity::odd;
    Poly r(&md);
    for (auto& [m, c] : f.terms()) {
        for (size_t i = 0; i < m.factors.size(); ++i) {
            const Factor& fa = m.factors[i];
            if (fa.g != g) continue;
            int sign = 1;
            if (g_odd) {
                int odd_before = 0;
                for (size_t j = 0; j < i; ++j)
                    if (md.parity(m.factors[j].g) == Parity::odd) ++odd_before;
                if (odd_before & 1) sign = -1;
            }
            Poly img(&md);
            Monomial im;
            if (fa.e != 1) im.factors.push_back(Factor{fa.g, fa.e - 1});
            img.add_term(im, Rat(fa.e));
            leibniz_accumulate(r, md, m, i, img, c, sign);
            break;  // a generator appears in at most one factor
        }
    }
    return r;
}

Poly variational_derivative(const Poly& f, int field_idx, int comp) {
    const ModelAlgebra& md = *f.model();
    int maxjet = 0;
    for (auto& [m, c] : f.terms())
        for (auto& fa : m.factors)
            if (int(field_of(fa.g)) == field_idx && int(comp_of(fa.g)) == comp)
                maxjet = std::max<int>(maxjet, jet_of(fa.g));
    Poly r(&md);
    for (int k = 0; k <= maxjet; ++k) {
        Poly pk = partial_derivative(f, make_gen(field_idx, comp, k));
        if (pk.is_zero()) continue;
        pk = total_derivative(pk, k);
        if (k & 1) r -= pk;
        else r += pk;
    }
    return r;
}

// ---------------------------------------------------------------------------
// exactness

static bool euler_test(const Poly& f) {
    const ModelAlgebra& md = *f.model();
    for (int idx = 0; idx < md.num_fields(); ++idx)
        for (int c = 0; c < md.field(idx).desc.components; ++c)
            if (!variational_derivative(f, idx, c).is_zero()) return false;
    return true;
}

// peel the top-jet layer repeatedly; terminates on genuinely exact input
static std::optional<Poly> integrate_witness(Poly f) {
    const ModelAlgebra& md = *f.model();
    Poly y(&md);
    size_t budget = 64 * (f.size() + 4);
    while (!f.is_zero()) {
        if (budget-- == 0) return std::nullopt;
        // generator of maximal jet order (ties by packed id) anywhere in f
        bool found = false;
        Gen top = 0;
        for (auto& [m, c] : f.terms())
            for (auto& fa : m.factors) {
                if (jet_of(fa.g) < 1) continue;
                if (!found || jet_of(fa.g) > jet_of(top) ||
                    (jet_of(fa.g) == jet_of(top) && fa.g > top)) {
                    top = fa.g;
                    found = true;
                }
            }
        if (!found) return std::nullopt;  // jet-0 remainder: not exact
        Poly a = partial_derivative(f, top);
        if (a.is_zero()) return std::nullopt;
        // exact derivatives are linear in their top layer
        if (!partial_derivative(a, top).is_zero()) return std::nullopt;
        Gen low = top - 1;  // same field/component, one jet lower
        // d(w^(n+1)) needs n != -1 on the diagonal dependence
        Poly piece(&md);
        for (auto& [m, c] : a.terms()) {
            int n = 0;
            size_t pos = m.factors.size();
            for (size_t i = 0; i < m.factors.size(); ++i)
                if (m.factors[i].g == low) { n = m.factors[i].e; pos = i; break; }
            if (n == -1) return std::nullopt;  // log class: no witness in the algebra
            Monomial w;
            int sign;
            Monomial single{{Factor{low, 1}}};
            if (!mul_monomial(md, single, m, w, sign)) continue;
            (void)pos;
            piece.add_term(w, c * sign / Rat(n + 1));
        }
        y += piece;
        f -= total_derivative(piece);
    }
    return y;
}

TotalDerivativeResult is_total_derivative(const Poly& f) {
    TotalDerivativeResult res;
    if (f.constant_term() != 0) {
        res.note = "nonzero constant term: not decidable";
        return res;
    }
    if (!euler_test(f)) {
        res.note = "nonvanishing variational derivative";
        return res;
    }
    if (f.is_zero()) {
        res.is_exact = true;
        res.witness = Poly(f.model());
        return res;
    }
    auto w = integrate_witness(f);
    if (!w) {
        res.note = "Euler criterion holds but formal integration found no witness "
                   "(Laurent residue class)";
        return res;
    }
    res.is_exact = true;
    res.witness = std::move(w);
    return res;
}

} // namespace bv
