#pragma once

#include <map>

#include "bv/poly.hpp"

namespace bv {

/// Evolutionary vector field: a graded derivation commuting with the total
/// derivative, determined by its images on the 0-jet generators. Images of
/// higher jets are the prolonged total derivatives of the 0-jet images,
/// cached on demand.
class EvolutionaryVF {
public:
    // In strict mode a generator without a declared image is an error when
    // hit (tower overflow); otherwise missing images are taken to be zero.
    EvolutionaryVF(const ModelAlgebra* model, Parity parity, int ghost, bool strict = false)
        : model_(model), parity_(parity), ghost_(ghost), strict_(strict) {}

    void set_image(Gen zero_jet_gen, Poly img);
    bool has_image(Gen g) const { return images_.count(make_gen(field_of(g), comp_of(g), 0)) > 0; }
    const Poly* image(Gen zero_jet_gen) const;

    // declare that images lower the filtration weight by at most d; lets the
    // truncated application skip missing tower images whose contribution
    // provably lies above the cutoff
    void set_weight_drop_bound(int d) { weight_drop_ = d; }

    Parity parity() const { return parity_; }
    int ghost() const { return ghost_; }
    const ModelAlgebra* model() const { return model_; }

    Poly apply(const Poly& f) const;
    // apply and truncate on the fly; cheaper on heavily filtered input
    Poly apply_truncated(const Poly& f, int K) const;

private:
    const Poly& prolonged(Gen g) const;

    const ModelAlgebra* model_;
    Parity parity_;
    int ghost_;
    bool strict_ = false;
    int weight_drop_ = INT32_MAX;
    std::map<Gen, Poly> images_;            // 0-jet generator -> image
    mutable std::map<Gen, Poly> cache_;     // jet generator -> prolonged image
};

// Hamiltonian vector field of a density F via variational derivatives, with
// the Koszul twist that makes it reduce to the textbook formula for even F
// and send the translation current to the total derivative.
EvolutionaryVF hamiltonian_vf(const Poly& F);

} // namespace bv
