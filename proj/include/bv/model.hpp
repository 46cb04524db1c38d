#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace bv {

enum class Parity : int { even = 0, odd = 1 };

inline Parity operator+(Parity a, Parity b) {
    return Parity((int(a) + int(b)) % 2);
}
inline Parity flip(Parity p) { return p == Parity::even ? Parity::odd : Parity::even; }

/// One declared field (or antifield) of a model.
struct FieldDescriptor {
    std::string name;
    int components = 1;
    int ghost = 0;
    Parity parity = Parity::even;
    bool invertible_at_jet0 = false;
    std::optional<std::string> antifield_of;
    char comp_sep = '_';             // spelling of the component index: '_', '^' or '.'
    int filtration_weight = -1;      // -1: derive (antifields: -ghost, fields: 0)
};

struct TruncationParams {
    int K = 6;   // antifield-ghost-weight cutoff
    int N = 8;   // spinor tower instantiated for 0 <= n <= N
    int J = 2;   // max jet order for random sampling
    int max_degree = 4;
    int samples = 100;
};

struct ModelError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A generator is one jet variable D^j of a field component, packed so that the
// numeric order is lexicographic on (field id, component, jet order). Field
// ids are ranks in the name-sorted catalog, which pins the canonical monomial
// order independently of declaration order.
using Gen = std::uint32_t;

constexpr Gen make_gen(unsigned field, unsigned comp, unsigned jet) {
    return (field << 24) | (comp << 16) | jet;
}
constexpr unsigned field_of(Gen g) { return g >> 24; }
constexpr unsigned comp_of(Gen g) { return (g >> 16) & 0xff; }
constexpr unsigned jet_of(Gen g) { return g & 0xffff; }
constexpr Gen raise_jet(Gen g, unsigned by = 1) { return g + by; }

/// Resolved, immutable algebra context: generator order, gradings, pairing.
class ModelAlgebra {
public:
    struct FieldInfo {
        FieldDescriptor desc;
        int partner = -1;   // antifield <-> field partner index, -1 if none
        int weight = 0;     // filtration weight per unit exponent
        bool is_antifield = false;
    };

    static ModelAlgebra build(std::vector<FieldDescriptor> catalog, TruncationParams trunc);

    int num_fields() const { return int(fields_.size()); }
    const FieldInfo& field(int idx) const { return fields_.at(idx); }
    int field_index(const std::string& name) const;
    bool has_field(const std::string& name) const { return by_name_.count(name) > 0; }

    int ghost(Gen g) const { return fields_[field_of(g)].desc.ghost; }
    Parity parity(Gen g) const { return fields_[field_of(g)].desc.parity; }
    bool invertible(Gen g) const {
        return jet_of(g) == 0 && fields_[field_of(g)].desc.invertible_at_jet0;
    }
    int weight(Gen g) const { return fields_[field_of(g)].weight; }
    int partner(int field_idx) const { return fields_[field_idx].partner; }

    const TruncationParams& trunc() const { return trunc_; }

    Gen gen(const std::string& name, int comp = 0, int jet = 0) const;
    std::string gen_name(Gen g) const;   // without the jet wrapper

    bool same_as(const ModelAlgebra& o) const { return this == &o; }

private:
    std::vector<FieldInfo> fields_;
    std::unordered_map<std::string, int> by_name_;
    TruncationParams trunc_;
};

} // namespace bv
