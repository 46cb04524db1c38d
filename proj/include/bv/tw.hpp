#pragma once

#include "bv/models.hpp"
#include "bv/simplex.hpp"

namespace bv {

/// Strictly increasing tuple of chart indices of the momentum cover; the
/// charts localize the corresponding momentum components.
struct ChartTuple {
    std::vector<int> charts;
    auto operator<=>(const ChartTuple&) const = default;
    int depth() const { return int(charts.size()) - 1; }
    int position(int chart) const;  // -1 if absent
    std::string str() const;
};

// all strictly increasing tuples over {0..9} with depth <= max_depth
std::vector<ChartTuple> cover_tuples(int max_depth);

/// Value of a Thom-Whitney cochain on one nerve component: a sum of simplex
/// form monomials with jet polynomial coefficients.
class TWValue {
public:
    TWValue() = default;
    TWValue(int k, const ModelAlgebra* m) : k_(k), model_(m) {}

    int k() const { return k_; }
    const ModelAlgebra* model() const { return model_; }
    const std::map<FormKey, Poly>& terms() const { return terms_; }
    bool is_zero() const;

    void add(const FormKey& key, const Poly& p);
    TWValue operator+(const TWValue& o) const;
    TWValue operator-(const TWValue& o) const;
    TWValue operator-() const;
    TWValue operator*(const Rat& c) const;
    bool operator==(const TWValue& o) const;

    // graded product: (w1 (x) x1)(w2 (x) x2) = +- (w1 w2) (x) (x1 x2)
    TWValue operator*(const TWValue& o) const;
    TWValue scaled_by_form(const SimplexForm& w) const;  // left multiplication

    TWValue truncated(int K) const;
    Poly component(const FormKey& key) const;
    TWValue form_component(int degree) const;
    int max_form_degree() const;

    // the two halves of the total differential
    TWValue delta() const;
    TWValue apply_s(const EvolutionaryVF& s, int K) const;  // with the form sign

    TWValue pullback(const std::vector<int>& f, int k_target) const;

private:
    int k_ = 0;
    const ModelAlgebra* model_ = nullptr;
    std::map<FormKey, Poly> terms_;
};

struct TWCochain {
    std::map<ChartTuple, TWValue> values;

    TWCochain operator+(const TWCochain& o) const;
    TWCochain operator-(const TWCochain& o) const;
    TWCochain operator*(const Rat& c) const;
    bool is_zero() const;
    TWCochain truncated(int K) const;
};

// total differential delta + s, truncating the density parts at K
TWCochain tw_total_diff(const SuperModel& M, const TWCochain& c, int K);

// chartwise Soloviev bracket with the tensor Koszul sign, truncated at K
TWCochain tw_bracket(const TWCochain& a, const TWCochain& b, int K = INT32_MAX);

// equalizer condition on the increasing-tuple representation; on failure
// names the offending tuple and face in *err
bool face_compatible(const TWCochain& c, std::string* err = nullptr);

// a density placed as a form-degree-0 value on every tuple
TWCochain constant_cochain(const std::vector<ChartTuple>& tuples, const Poly& density);

/// The explicit covariance cochain: seed plus the ladder of q dq ... dq
/// dressed spinor pairings, with the tower sum over all representable
/// indices. Densities are truncated at prune_W (pass INT32_MAX for none).
TWCochain g0_cochain(const SuperModel& M, const std::vector<ChartTuple>& tuples,
                     int kmax_form, int prune_W);

// chart observables: the corrected ghost and position cochains
TWCochain observable_c(const SuperModel& M, const std::vector<ChartTuple>& tuples,
                       bool with_tail);
TWCochain observable_x(const SuperModel& M, const std::vector<ChartTuple>& tuples, int mu);

// tower sum sum_n (-1)^C(n,2) T^{nu...}(Psi_{-n}, Psi_{n-len-1}) for a sorted
// index tuple; cached per model instance by the caller
Poly psi_pairing_sum(const SuperModel& M, const std::vector<int>& indices, int prune_W);

} // namespace bv
