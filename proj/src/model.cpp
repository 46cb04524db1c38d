#include "bv/model.hpp"

#include <algorithm>
#include <set>

namespace bv {

ModelAlgebra ModelAlgebra::build(std::vector<FieldDescriptor> catalog, TruncationParams trunc) {
    // canonical field ids: rank in the name-sorted catalog
    std::sort(catalog.begin(), catalog.end(),
              [](const FieldDescriptor& a, const FieldDescriptor& b) { return a.name < b.name; });

    ModelAlgebra m;
    m.trunc_ = trunc;
    for (auto& d : catalog) {
        if (m.by_name_.count(d.name))
            throw ModelError("duplicate field name: " + d.name);
        if (d.components < 1 || d.components > 256)
            throw ModelError("bad component count on " + d.name);
        m.by_name_[d.name] = int(m.fields_.size());
        FieldInfo fi;
        fi.desc = d;
        m.fields_.push_back(std::move(fi));
    }
    if (m.fields_.size() > 250) throw ModelError("too many fields");

    for (size_t i = 0; i < m.fields_.size(); ++i) {
        auto& fi = m.fields_[i];
        const auto& d = fi.desc;
        if (d.antifield_of) {
            auto it = m.by_name_.find(*d.antifield_of);
            if (it == m.by_name_.end())
                throw ModelError("dangling antifield reference: " + d.name + " -> " + *d.antifield_of);
            auto& base = m.fields_[it->second];
            if (base.desc.antifield_of)
                throw ModelError("antifield of an antifield: " + d.name);
            if (d.ghost != -1 - base.desc.ghost)
                throw ModelError("antifield ghost mismatch on " + d.name +
                                 ": expected " + std::to_string(-1 - base.desc.ghost));
            if (d.parity != flip(base.desc.parity))
                throw ModelError("antifield parity mismatch on " + d.name);
            if (d.components != base.desc.components)
                throw ModelError("antifield component mismatch on " + d.name);
            fi.is_antifield = true;
            fi.partner = it->second;
            base.partner = int(i);
        }
        if (d.invertible_at_jet0 && (d.parity != Parity::even || d.ghost != 0))
            throw ModelError("invertible generator must be even of ghost 0: " + d.name);
        fi.weight = d.filtration_weight >= 0 ? d.filtration_weight
                                             : (fi.is_antifield ? -d.ghost : 0);
        if (fi.weight < 0) throw ModelError("negative filtration weight on " + d.name);
    }
    return m;
}

int ModelAlgebra::field_index(const std::string& name) const {
    auto it = by_name_.find(name);
    if (it == by_name_.end()) throw ModelError("unknown field: " + name);
    return it->second;
}

Gen ModelAlgebra::gen(const std::string& name, int comp, int jet) const {
    int idx = field_index(name);
    if (comp < 0 || comp >= fields_[idx].desc.components)
        throw ModelError("component out of range for " + name);
    if (jet < 0 || jet > 0xffff) throw ModelError("bad jet order");
    return make_gen(unsigned(idx), unsigned(comp), unsigned(jet));
}

std::string ModelAlgebra::gen_name(Gen g) const {
    const auto& d = fields_[field_of(g)].desc;
    if (d.components == 1) return d.name;
    return d.name + d.comp_sep + std::to_string(comp_of(g));
}

} // namespace bv
