#include "bv/simplex.hpp"

namespace bv {

int dmask_wedge_sign(std::uint32_t a, std::uint32_t b) {
    if (a & b) return 0;
    int inv = 0;
    for (int i = 0; i < 32; ++i)
        if (b & (1u << i)) inv += __builtin_popcount(a & ~((2u << i) - 1));
    return (inv & 1) ? -1 : 1;
}

SimplexForm SimplexForm::one(int k) {
    SimplexForm f(k);
    f.terms[FormKey{std::vector<int>(k, 0), 0}] = 1;
    return f;
}

SimplexForm SimplexForm::t(int k, int i) {
    SimplexForm f(k);
    FormKey key{std::vector<int>(k, 0), 0};
    if (i == 0) {
        // t_0 = 1 - t_1 - ... - t_k
        f.terms[key] = 1;
        for (int j = 1; j <= k; ++j) {
            FormKey kj = key;
            kj.tdeg[j - 1] = 1;
            f.terms[kj] = -1;
        }
    } else {
        key.tdeg[i - 1] = 1;
        f.terms[key] = 1;
    }
    return f;
}

SimplexForm SimplexForm::dt(int k, int i) {
    SimplexForm f(k);
    FormKey key{std::vector<int>(k, 0), 0};
    if (i == 0) {
        for (int j = 1; j <= k; ++j) {
            FormKey kj = key;
            kj.dmask = 1u << (j - 1);
            f.terms[kj] = -1;
        }
    } else {
        key.dmask = 1u << (i - 1);
        f.terms[key] = 1;
    }
    return f;
}

void SimplexForm::add_term(const FormKey& key, const Rat& c) {
    if (c == 0) return;
    auto [it, fresh] = terms.try_emplace(key, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) terms.erase(it);
    }
}

SimplexForm SimplexForm::operator+(const SimplexForm& o) const {
    if (k != o.k) throw ModelError("simplex dimension mismatch");
    SimplexForm r = *this;
    for (auto& [key, c] : o.terms) r.add_term(key, c);
    return r;
}

SimplexForm SimplexForm::operator-(const SimplexForm& o) const {
    if (k != o.k) throw ModelError("simplex dimension mismatch");
    SimplexForm r = *this;
    for (auto& [key, c] : o.terms) r.add_term(key, -c);
    return r;
}

SimplexForm SimplexForm::operator*(const SimplexForm& o) const {
    if (k != o.k) throw ModelError("simplex dimension mismatch");
    SimplexForm r(k);
    for (auto& [ka, ca] : terms)
        for (auto& [kb, cb] : o.terms) {
            int s = dmask_wedge_sign(ka.dmask, kb.dmask);
            if (!s) continue;
            FormKey key = ka;
            key.dmask |= kb.dmask;
            for (int i = 0; i < k; ++i) key.tdeg[i] += kb.tdeg[i];
            r.add_term(key, ca * cb * s);
        }
    return r;
}

SimplexForm SimplexForm::operator*(const Rat& c) const {
    SimplexForm r(k);
    if (c == 0) return r;
    for (auto& [key, v] : terms) r.terms[key] = v * c;
    return r;
}

SimplexForm omega_delta(const SimplexForm& a) {
    SimplexForm r(a.k);
    for (auto& [key, c] : a.terms)
        for (int i = 0; i < a.k; ++i) {
            int d = key.tdeg[i];
            if (d == 0) continue;
            std::uint32_t bit = 1u << i;
            if (key.dmask & bit) continue;
            // dt_i moves to its slot in the ascending mask order
            int below = __builtin_popcount(key.dmask & (bit - 1));
            FormKey nk = key;
            nk.tdeg[i] -= 1;
            nk.dmask |= bit;
            r.add_term(nk, c * d * ((below & 1) ? -1 : 1));
        }
    return r;
}

SimplexForm cosimplicial_pullback(const std::vector<int>& f, int k, const SimplexForm& a) {
    int l = a.k;
    if (int(f.size()) != k + 1) throw ModelError("monotone map arity mismatch");
    for (size_t i = 1; i < f.size(); ++i)
        if (f[i] < f[i - 1]) throw ModelError("map is not monotone");
    if (!f.empty() && (f.front() < 0 || f.back() > l)) throw ModelError("map out of range");

    // substitutes for the generators of the source simplex
    std::vector<SimplexForm> sub_t(l + 1, SimplexForm(k)), sub_dt(l + 1, SimplexForm(k));
    for (int i = 0; i <= l; ++i) {
        sub_t[i] = SimplexForm(k);
        sub_dt[i] = SimplexForm(k);
        for (int j = 0; j <= k; ++j)
            if (f[j] == i) {
                sub_t[i] = sub_t[i] + SimplexForm::t(k, j);
                sub_dt[i] = sub_dt[i] + SimplexForm::dt(k, j);
            }
    }
    SimplexForm r(k);
    for (auto& [key, c] : a.terms) {
        SimplexForm acc = SimplexForm::one(k) * c;
        for (int i = 1; i <= l && !acc.is_zero(); ++i)
            for (int d = 0; d < key.tdeg[i - 1]; ++d) acc = acc * sub_t[i];
        for (int i = 1; i <= l && !acc.is_zero(); ++i)
            if (key.dmask & (1u << (i - 1))) acc = acc * sub_dt[i];
        r = r + acc;
    }
    return r;
}

std::vector<std::vector<int>> monotone_maps(int k, int l) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(k + 1, 0);
    for (;;) {
        bool mono = true;
        for (int i = 1; i <= k; ++i)
            if (cur[i] < cur[i - 1]) mono = false;
        if (mono) out.push_back(cur);
        int i = k;
        while (i >= 0 && cur[i] == l) cur[i--] = 0;
        if (i < 0) break;
        ++cur[i];
    }
    return out;
}

} // namespace bv
