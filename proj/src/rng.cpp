#include "bv/rng.hpp"

namespace bv {

Monomial PolySampler::random_monomial() {
    std::uniform_int_distribution<int> deg_d(0, opts_.max_degree);
    std::uniform_int_distribution<int> field_d(0, model_.num_fields() - 1);
    std::uniform_int_distribution<int> jet_d(0, opts_.max_jet);
    int deg = deg_d(rng_);
    Poly acc(&model_, 1);
    for (int i = 0; i < deg; ++i) {
        int idx = field_d(rng_);
        const auto& fi = model_.field(idx);
        std::uniform_int_distribution<int> comp_d(0, fi.desc.components - 1);
        int comp = comp_d(rng_);
        int jet = jet_d(rng_);
        int e = 1;
        if (fi.desc.invertible_at_jet0 && jet == 0 && opts_.allow_laurent) {
            std::uniform_int_distribution<int> e_d(-opts_.laurent_depth, 2);
            e = e_d(rng_);
            if (e == 0) e = 1;
        }
        Gen g = make_gen(idx, comp, jet);
        if (model_.parity(g) == Parity::odd) e = 1;
        Poly nxt = acc * Poly::generator(model_, g, e);
        if (nxt.is_zero()) continue;  // odd square; skip this factor
        acc = std::move(nxt);
    }
    if (acc.is_zero() || acc.terms().empty()) return Monomial{};
    return acc.terms().begin()->first;
}

Poly PolySampler::random_poly() {
    std::uniform_int_distribution<int> nterms_d(1, opts_.max_terms);
    std::uniform_int_distribution<int> coeff_d(-6, 6);
    Poly r(&model_);
    int n = nterms_d(rng_);
    for (int i = 0; i < n; ++i) {
        int c = coeff_d(rng_);
        if (c == 0) c = 1;
        std::uniform_int_distribution<int> den_d(1, 4);
        r.add_term(random_monomial(), Rat(c, den_d(rng_)));
    }
    return r;
}

Poly PolySampler::random_homogeneous() {
    // draw a pilot monomial, then collect matches of the same bidegree
    for (int attempt = 0; attempt < 200; ++attempt) {
        Monomial pilot = random_monomial();
        if (pilot.empty() && attempt + 1 < 200) continue;
        Poly probe(&model_);
        probe.add_term(pilot, 1);
        int gh = probe.monomial_ghost(pilot);
        Parity pa = probe.monomial_parity(pilot);
        std::uniform_int_distribution<int> nterms_d(1, opts_.max_terms);
        std::uniform_int_distribution<int> coeff_d(-6, 6);
        Poly r(&model_);
        int want = nterms_d(rng_);
        r.add_term(pilot, Rat(coeff_d(rng_) == 0 ? 1 : coeff_d(rng_)));
        for (int tries = 0; tries < 60 && int(r.size()) < want; ++tries) {
            Monomial m = random_monomial();
            if (probe.monomial_ghost(m) == gh && probe.monomial_parity(m) == pa) {
                int c = coeff_d(rng_);
                r.add_term(m, Rat(c == 0 ? 1 : c));
            }
        }
        if (!r.is_zero()) return r;
    }
    return Poly(&model_, 1);
}

Poly PolySampler::random_homogeneous(Parity p) {
    for (int attempt = 0; attempt < 400; ++attempt) {
        Poly r = random_homogeneous();
        if (r.parity() == p) return r;
    }
    throw ModelError("could not sample requested parity");
}

} // namespace bv
