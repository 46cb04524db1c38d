#include "bv/vf.hpp"

#include <algorithm>

namespace bv {

void EvolutionaryVF::set_image(Gen g, Poly img) {
    if (jet_of(g) != 0) throw ModelError("vector field images are set on 0-jet generators");
    if (!img.is_zero()) {
        auto pa = img.parity();
        auto gh = img.ghost();
        if (pa && *pa != model_->parity(g) + parity_)
            throw ModelError("image parity inconsistent with field parity on " +
                             model_->gen_name(g));
        if (gh && *gh != model_->ghost(g) + ghost_)
            throw ModelError("image ghost inconsistent with field ghost on " +
                             model_->gen_name(g));
        if (weight_drop_ != INT32_MAX &&
            img.min_weight() < model_->weight(g) - weight_drop_)
            throw ModelError("image drops filtration weight too far on " +
                             model_->gen_name(g));
    }
    images_[g] = std::move(img);
    cache_.clear();
}

const Poly* EvolutionaryVF::image(Gen g) const {
    auto it = images_.find(g);
    return it == images_.end() ? nullptr : &it->second;
}

const Poly& EvolutionaryVF::prolonged(Gen g) const {
    auto it = cache_.find(g);
    if (it != cache_.end()) return it->second;
    Gen base = make_gen(field_of(g), comp_of(g), 0);
    auto im = images_.find(base);
    if (im == images_.end())
        throw ModelError("vector field has no image for " + model_->gen_name(g) +
                         " (tower overflow?)");
    Poly p = im->second;
    for (unsigned j = 0; j < jet_of(g); ++j) p = total_derivative(p);
    return cache_.emplace(g, std::move(p)).first->second;
}

Poly EvolutionaryVF::apply(const Poly& f) const { return apply_truncated(f, INT32_MAX); }

Poly EvolutionaryVF::apply_truncated(const Poly& f, int K) const {
    const ModelAlgebra& md = *model_;
    Poly r(&md);
    bool x_odd = parity_ == Parity::odd;
    Monomial tmp, prod;
    int s1, s2;
    for (auto& [m, c] : f.terms()) {
        int odd_before = 0;
        int w_before = 0;
        for (size_t i = 0; i < m.factors.size(); ++i) {
            const Factor& fa = m.factors[i];
            Gen base = make_gen(field_of(fa.g), comp_of(fa.g), 0);
            auto im = images_.find(base);
            if (im == images_.end() && strict_) {
                // a missing image may be skipped when any possible image term
                // would land above the cutoff
                bool skippable = false;
                if (K != INT32_MAX && weight_drop_ != INT32_MAX) {
                    int w_rest = f.monomial_weight(m) - md.weight(fa.g);
                    int w_img_min = std::max(0, md.weight(fa.g) - weight_drop_);
                    skippable = (w_rest + w_img_min >= K);
                }
                if (!skippable)
                    throw ModelError("vector field has no image for " + md.gen_name(fa.g) +
                                     " (tower overflow)");
            }
            if (im != images_.end() && !im->second.is_zero()) {
                const Poly& img = prolonged(fa.g);
                int sign = (x_odd && (odd_before & 1)) ? -1 : 1;
                // X(g^e) = e g^(e-1) X(g)
                Monomial prefix, suffix;
                prefix.factors.assign(m.factors.begin(), m.factors.begin() + i);
                suffix.factors.assign(m.factors.begin() + i + 1, m.factors.end());
                Monomial pw;
                if (fa.e != 1) pw.factors.push_back(Factor{fa.g, fa.e - 1});
                int w_rest = 0;
                if (K != INT32_MAX) {
                    w_rest = f.monomial_weight(m) - md.weight(fa.g);
                }
                for (auto& [gm, gc] : img.terms()) {
                    if (K != INT32_MAX && w_rest + img.monomial_weight(gm) >= K) continue;
                    if (!mul_monomial(md, prefix, pw, tmp, s1)) continue;
                    int s3;
                    Monomial t2;
                    if (!mul_monomial(md, tmp, gm, t2, s3)) continue;
                    if (!mul_monomial(md, t2, suffix, prod, s2)) continue;
                    r.add_term(prod, c * gc * Rat(fa.e) * (sign * s1 * s2 * s3));
                }
            }
            if (md.parity(fa.g) == Parity::odd && (fa.e & 1)) odd_before ^= 1;
            w_before += md.weight(fa.g) * fa.e;
        }
        (void)w_before;
    }
    return r;
}

EvolutionaryVF hamiltonian_vf(const Poly& F) {
    const ModelAlgebra& md = *F.model();
    auto pa = F.parity();
    auto gh = F.ghost();
    if (!pa || !gh) throw ModelError("hamiltonian_vf needs a homogeneous density");
    int pf = int(*pa);
    EvolutionaryVF X(&md, Parity((pf + 1) % 2), *gh + 1, /*strict=*/true);
    for (int idx = 0; idx < md.num_fields(); ++idx) {
        const auto& fi = md.field(idx);
        if (fi.is_antifield) continue;
        if (fi.partner < 0) {
            // unpaired field: no Hamiltonian flow through it
            for (int c = 0; c < fi.desc.components; ++c)
                X.set_image(make_gen(idx, c, 0), Poly(&md));
            continue;
        }
        int anti = fi.partner;
        int pa_field = int(fi.desc.parity);
        for (int c = 0; c < fi.desc.components; ++c) {
            // field image from the antifield-side Euler operator, and vice versa
            Poly img_field = variational_derivative(F, anti, c);
            Poly img_anti = variational_derivative(F, idx, c);
            int s_field = ((pa_field * (pf + 1)) % 2) ? -1 : 1;
            int s_anti = (((pa_field * (pf + 1)) + pf) % 2) ? -1 : 1;
            X.set_image(make_gen(idx, c, 0), img_field * Rat(s_field));
            X.set_image(make_gen(anti, c, 0), img_anti * Rat(s_anti));
        }
    }
    return X;
}

} // namespace bv
