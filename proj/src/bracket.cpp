#include "bv/bracket.hpp"

#include <array>

namespace bv {

static int max_jet(const Poly& f, int field_idx, int comp) {
    int mj = -1;
    for (auto& [m, c] : f.terms())
        for (auto& fa : m.factors)
            if (int(field_of(fa.g)) == field_idx && int(comp_of(fa.g)) == comp)
                mj = std::max<int>(mj, jet_of(fa.g));
    return mj;
}

static Poly soloviev_homogeneous(const Poly& f, const Poly& g, Parity pf) {
    const ModelAlgebra& md = *f.model();
    Poly r(&md);
    for (int idx = 0; idx < md.num_fields(); ++idx) {
        const auto& fi = md.field(idx);
        if (fi.is_antifield || fi.partner < 0) continue;
        int anti = fi.partner;
        int sign_a = ((int(pf) + 1) * int(fi.desc.parity)) % 2 ? -1 : 1;
        int sign_b = sign_a * (pf == Parity::odd ? -1 : 1);
        for (int c = 0; c < fi.desc.components; ++c) {
            // d^l(df/d field_k) * d^k(dg/d anti_l)
            int kf = max_jet(f, idx, c), lg = max_jet(g, anti, c);
            for (int k = 0; k <= kf; ++k) {
                Poly pf_k = partial_derivative(f, make_gen(idx, c, k));
                if (pf_k.is_zero()) continue;
                for (int l = 0; l <= lg; ++l) {
                    Poly pg_l = partial_derivative(g, make_gen(anti, c, l));
                    if (pg_l.is_zero()) continue;
                    r += total_derivative(pf_k, l) * total_derivative(pg_l, k) * Rat(sign_a);
                }
            }
            // (-1)^pa(f) d^l(df/d anti_k) * d^k(dg/d field_l)
            int ka = max_jet(f, anti, c), lf = max_jet(g, idx, c);
            for (int k = 0; k <= ka; ++k) {
                Poly pf_k = partial_derivative(f, make_gen(anti, c, k));
                if (pf_k.is_zero()) continue;
                for (int l = 0; l <= lf; ++l) {
                    Poly pg_l = partial_derivative(g, make_gen(idx, c, l));
                    if (pg_l.is_zero()) continue;
                    r += total_derivative(pf_k, l) * total_derivative(pg_l, k) * Rat(sign_b);
                }
            }
        }
    }
    return r;
}

static std::array<Poly, 2> parity_split(const Poly& f) {
    std::array<Poly, 2> parts{Poly(f.model()), Poly(f.model())};
    for (auto& [m, c] : f.terms()) parts[int(f.monomial_parity(m))].add_term(m, c);
    return parts;
}

Poly soloviev(const Poly& f, const Poly& g) {
    if (f.model() != g.model()) throw ModelError("model mismatch");
    auto pf = f.parity();
    if (pf) return soloviev_homogeneous(f, g, *pf);
    auto parts = parity_split(f);
    return soloviev_homogeneous(parts[0], g, Parity::even) +
           soloviev_homogeneous(parts[1], g, Parity::odd);
}

static Poly bv_homogeneous(const Poly& f, const Poly& g, Parity pf) {
    const ModelAlgebra& md = *f.model();
    Poly r(&md);
    for (int idx = 0; idx < md.num_fields(); ++idx) {
        const auto& fi = md.field(idx);
        if (fi.is_antifield || fi.partner < 0) continue;
        int anti = fi.partner;
        int sign_a = ((int(pf) + 1) * int(fi.desc.parity)) % 2 ? -1 : 1;
        int sign_b = sign_a * (pf == Parity::odd ? -1 : 1);
        for (int c = 0; c < fi.desc.components; ++c) {
            Poly da_f = variational_derivative(f, idx, c);
            Poly du_f = variational_derivative(f, anti, c);
            if (!da_f.is_zero()) {
                Poly du_g = variational_derivative(g, anti, c);
                if (!du_g.is_zero()) r += da_f * du_g * Rat(sign_a);
            }
            if (!du_f.is_zero()) {
                Poly da_g = variational_derivative(g, idx, c);
                if (!da_g.is_zero()) r += du_f * da_g * Rat(sign_b);
            }
        }
    }
    return r;
}

Poly bv_antibracket_density(const Poly& f, const Poly& g) {
    if (f.model() != g.model()) throw ModelError("model mismatch");
    auto pf = f.parity();
    if (pf) return bv_homogeneous(f, g, *pf);
    auto parts = parity_split(f);
    return bv_homogeneous(parts[0], g, Parity::even) +
           bv_homogeneous(parts[1], g, Parity::odd);
}

bool functional_is_zero(const Poly& density) {
    Poly d = density;
    Rat c = d.constant_term();
    if (c != 0) d -= Poly(d.model(), c);
    return is_total_derivative(d).is_exact;
}

} // namespace bv
