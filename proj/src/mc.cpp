#include "bv/mc.hpp"

#include <algorithm>
#include <functional>

#include "bv/bracket.hpp"

namespace bv {

// ---------------------------------------------------------------------------
// the composite-coordinate subalgebra

static std::vector<FieldDescriptor> extended_catalog(const SuperModel& M) {
    // mirror the superparticle catalog and adjoin the composite spinors
    std::vector<FieldDescriptor> cat;
    const auto& alg = M.algebra();
    for (int i = 0; i < alg.num_fields(); ++i) cat.push_back(alg.field(i).desc);
    for (int n = M.psi_min(); n <= M.psi_max(); ++n) {
        FieldDescriptor d;
        d.name = "Ps" + std::to_string(n);
        d.components = 16;
        d.ghost = n;
        d.parity = (n % 2 == 0) ? Parity::odd : Parity::even;
        d.comp_sep = '.';
        d.filtration_weight = std::max(0, -n);
        cat.push_back(d);
    }
    return cat;
}

AStar::AStar(const SuperModel& M)
    : M_(M), ext_(std::make_shared<const ModelAlgebra>(ModelAlgebra::build(
                  extended_catalog(M), M.algebra().trunc()))) {}

Poly AStar::psi_hat(int n, int comp, int jet) const {
    return Poly::generator(*ext_, ext_->gen("Ps" + std::to_string(n), comp, jet));
}

// translate a polynomial between algebras whose fields are matched by name
static Poly translate(const Poly& f, const ModelAlgebra& to) {
    const ModelAlgebra& from = *f.model();
    std::vector<int> fmap(from.num_fields());
    for (int i = 0; i < from.num_fields(); ++i) fmap[i] = to.field_index(from.field(i).desc.name);
    Poly r(&to);
    for (auto& [m, c] : f.terms()) {
        Monomial nm;
        nm.factors.reserve(m.factors.size());
        for (auto& fa : m.factors)
            nm.factors.push_back(Factor{make_gen(fmap[field_of(fa.g)], comp_of(fa.g), jet_of(fa.g)), fa.e});
        std::sort(nm.factors.begin(), nm.factors.end(),
                  [](const Factor& a, const Factor& b) { return a.g < b.g; });
        // the coefficient is unchanged: both sorts order odd generators by a
        // total order, and the permutation between the two orders has the
        // same sign on the left and right of the translation
        // (verified by the round-trip tests)
        int sign = 1;
        {
            // recompute the Koszul sign of the resorting explicitly
            std::vector<std::pair<Gen, int>> seq;
            for (auto& fa : m.factors)
                seq.push_back({make_gen(fmap[field_of(fa.g)], comp_of(fa.g), jet_of(fa.g)),
                               int(from.parity(fa.g))});
            for (size_t i = 0; i < seq.size(); ++i)
                for (size_t j = i + 1; j < seq.size(); ++j)
                    if (seq[i].first > seq[j].first && seq[i].second && seq[j].second)
                        sign = -sign;
        }
        r.add_term(nm, sign > 0 ? c : -c);
    }
    return r;
}

Poly AStar::lift(const Poly& f) const { return translate(f, *ext_); }
Poly AStar::lower(const Poly& f) const { return translate(f, M_.algebra()); }

// substitute one generator by a polynomial throughout
static Poly substitute_gen(const Poly& f, Gen g, const Poly& image) {
    const ModelAlgebra& md = *f.model();
    bool changed = true;
    Poly cur = f;
    while (changed) {
        changed = false;
        Poly next(&md);
        for (auto& [m, c] : cur.terms()) {
            size_t pos = m.factors.size();
            for (size_t i = 0; i < m.factors.size(); ++i)
                if (m.factors[i].g == g) { pos = i; break; }
            if (pos == m.factors.size()) {
                next.add_term(m, c);
                continue;
            }
            changed = true;
            Monomial prefix, suffix;
            prefix.factors.assign(m.factors.begin(), m.factors.begin() + pos);
            suffix.factors.assign(m.factors.begin() + pos + 1, m.factors.end());
            const Factor& fa = m.factors[pos];
            Poly mid = image;
            for (int e = 1; e < fa.e; ++e) mid = mid * image;
            if (fa.e < 0) throw ModelError("cannot substitute a Laurent generator");
            Poly pre(&md);
            pre.add_term(prefix, c);
            Poly suf(&md);
            suf.add_term(suffix, Rat(1));
            next += pre * mid * suf;
        }
        cur = std::move(next);
    }
    return cur;
}

Poly AStar::to_composite_coordinates(const Poly& f) const {
    const ModelAlgebra& E = *ext_;
    Poly cur = lift(f);

    // pass 1: tower antifields in favor of the negative composites
    for (int n = 0; n <= M_.N(); ++n) {
        std::string nm = "th" + std::to_string(n) + "+";
        int idx = E.field_index(nm);
        int maxjet = 0;
        for (auto& [m, c] : cur.terms())
            for (auto& fa : m.factors)
                if (int(field_of(fa.g)) == idx) maxjet = std::max<int>(maxjet, jet_of(fa.g));
        for (int A = 0; A < 16; ++A) {
            Poly base(&E);
            if (n == 0) {
                base = psi_hat(-1, A);
                SpinorVector xg = M_.contract_gamma("x+", M_.theta(0));
                base -= lift(xg.c[A]) * Rat(1, 2);
                base -= lift((M_.theta(1).scaled(M_.gen("c+") * Rat(2))).c[A]);
            } else {
                base = psi_hat(-n - 1, A) * Rat(sign_binom2(n + 1));
            }
            for (int j = 0; j <= maxjet; ++j)
                cur = substitute_gen(cur, E.gen(nm, A, j), total_derivative(base, j));
        }
    }

    // pass 2: positive-jet thetas in favor of the non-negative composites,
    // top jet first
    for (;;) {
        Gen top = 0;
        bool found = false;
        for (auto& [m, c] : cur.terms())
            for (auto& fa : m.factors) {
                const auto& nm = E.field(field_of(fa.g)).desc.name;
                if (nm.size() > 2 && nm.substr(0, 2) == "th" && nm.back() != '+' &&
                    jet_of(fa.g) >= 1) {
                    if (!found || jet_of(fa.g) > jet_of(top) ||
                        (jet_of(fa.g) == jet_of(top) && fa.g > top)) {
                        top = fa.g;
                        found = true;
                    }
                }
            }
        if (!found) break;
        int n = std::stoi(E.field(field_of(top)).desc.name.substr(2));
        int A = comp_of(top);
        int j = jet_of(top);
        if (n + 2 > M_.N())
            throw ModelError("tower overflow while rewriting th" + std::to_string(n));
        // D th_n = PsiHat_n - (-1)^(n+1) x+ gamma th_{n+1} - 2 c+ th_{n+2}
        Poly base = psi_hat(n, A);
        SpinorVector xg = M_.contract_gamma("x+", M_.theta(n + 1));
        base += lift(xg.c[A]) * Rat(n % 2 == 0 ? 1 : -1);
        base -= lift((M_.theta(n + 2).scaled(M_.gen("c+") * Rat(2))).c[A]);
        cur = substitute_gen(cur, top, total_derivative(base, j - 1));
    }
    return cur;
}

Poly AStar::from_composite_coordinates(const Poly& f) const {
    const ModelAlgebra& E = *ext_;
    Poly cur = f;
    for (int n = M_.psi_min(); n <= M_.psi_max(); ++n) {
        std::string nm = "Ps" + std::to_string(n);
        int idx = E.field_index(nm);
        int maxjet = 0;
        for (auto& [m, c] : cur.terms())
            for (auto& fa : m.factors)
                if (int(field_of(fa.g)) == idx) maxjet = std::max<int>(maxjet, jet_of(fa.g));
        SpinorVector psi_n = M_.psi(n);
        for (int A = 0; A < 16; ++A)
            for (int j = 0; j <= maxjet; ++j)
                cur = substitute_gen(cur, E.gen(nm, A, j),
                                     total_derivative(lift(psi_n.c[A]), j));
    }
    return lower(cur);
}

bool AStar::contains(const Poly& f) const {
    Poly rewritten = to_composite_coordinates(f);
    const ModelAlgebra& E = *ext_;
    for (auto& [m, c] : rewritten.terms())
        for (auto& fa : m.factors) {
            const auto& nm = E.field(field_of(fa.g)).desc.name;
            bool ok = nm == "p" || nm == "x+" || nm == "e+" || nm == "c+" ||
                      nm.substr(0, 2) == "Ps";
            if (!ok) return false;
        }
    return true;
}

// ---------------------------------------------------------------------------

TWCochain mc_rhs(const SuperModel& M, const std::vector<const TWCochain*>& lower, int K) {
    (void)M;
    TWCochain acc;
    int n = int(lower.size());
    bool first = true;
    for (int j = 0; j + (n - 1 - j) == n - 1 && j < n; ++j) {
        TWCochain term = tw_bracket(*lower[j], *lower[n - 1 - j], K + 1);
        if (first) {
            acc = term;
            first = false;
        } else
            acc = acc + term;
    }
    return acc * Rat(-1, 2);
}

bool closed_mod_exact(const SuperModel& M, const TWCochain& c, int K, std::string* err) {
    TWCochain d = tw_total_diff(M, c, K);
    for (auto& [t, v] : d.values)
        for (auto& [key, p] : v.terms()) {
            Poly tp = truncate(p, K);
            if (tp.is_zero()) continue;
            auto r = is_total_derivative(tp);
            if (!r.is_exact) {
                if (err) *err = "tuple " + t.str() + ": " + r.note;
                return false;
            }
        }
    return true;
}

// ---------------------------------------------------------------------------
// the bounded solver

namespace {

struct Candidate {
    ChartTuple tuple;
    FormKey key;
    Monomial mono;   // in the extended algebra
};

// sparse row: column -> coefficient
using Row = std::map<long, Rat>;

struct SparseSystem {
    std::vector<Row> rows;
    std::vector<Rat> rhs;

    // returns empty optional when inconsistent
    std::optional<std::vector<Rat>> solve(size_t ncols, size_t* rank_out) {
        // ordered elimination with sparsest-pivot-first heuristics
        std::vector<Rat> sol(ncols, Rat(0));
        std::vector<int> where(ncols, -1);
        size_t rank = 0;
        for (size_t r = 0; r < rows.size(); ++r) {
            Row& row = rows[r];
            // reduce against pivots already chosen
            for (auto it = row.begin(); it != row.end();) {
                long col = it->first;
                if (where[col] >= 0 && size_t(where[col]) < r) {
                    Rat f = it->second;
                    const Row& prow = rows[where[col]];
                    Rat pc = prow.at(col);
                    Rat scale = f / pc;
                    rhs[r] -= scale * rhs[where[col]];
                    for (auto& [c2, v2] : prow) {
                        if (c2 == col) continue;
                        auto jt = row.find(c2);
                        if (jt == row.end()) {
                            Rat nv = -scale * v2;
                            if (nv != 0) row[c2] = nv;
                        } else {
                            jt->second -= scale * v2;
                            if (jt->second == 0) row.erase(jt);
                        }
                    }
                    it = row.erase(row.find(col));
                    it = row.begin();  // restart; cheap for sparse rows
                } else
                    ++it;
            }
            if (row.empty()) {
                if (rhs[r] != 0) return std::nullopt;
                continue;
            }
            long pivot = row.begin()->first;
            where[pivot] = int(r);
            ++rank;
        }
        // back substitution with free variables at zero
        for (size_t r = rows.size(); r-- > 0;) {
            const Row& row = rows[r];
            if (row.empty()) continue;
            long pivot = -1;
            for (auto& [c, v] : row)
                if (where[c] == int(r)) { pivot = c; break; }
            if (pivot < 0) continue;
            Rat acc = rhs[r];
            for (auto& [c, v] : row)
                if (c != pivot) acc -= v * sol[c];
            sol[pivot] = acc / row.at(pivot);
        }
        if (rank_out) *rank_out = rank;
        return sol;
    }
};

} // namespace

SolveReport solve_linear(const SuperModel& M, const TWCochain& target,
                         const std::vector<ChartTuple>& tuples, int total_degree,
                         const DegreeBounds& bounds) {
    SolveReport rep;
    rep.status = SolveReport::infeasible_at_bounds;
    AStar astar(M);
    const ModelAlgebra& E = astar.extended_algebra();
    int K = bounds.K;

    // allowed generator pool in the extended algebra
    struct GenInfo {
        Gen g;
        int ghost, weight;
        Parity pa;
        int kind;  // 0: momentum, 1: antifield, 2: composite
    };
    std::vector<GenInfo> pool;
    for (int i = 0; i < E.num_fields(); ++i) {
        const auto& d = E.field(i).desc;
        int kind;
        if (d.name == "p") kind = 0;
        else if (d.name == "x+" || d.name == "e+" || d.name == "c+") kind = 1;
        else if (d.name.substr(0, 2) == "Ps") kind = 2;
        else continue;
        for (int c = 0; c < d.components; ++c)
            for (int j = 0; j <= bounds.max_jet; ++j) {
                Gen g = make_gen(i, c, j);
                pool.push_back({g, d.ghost, E.field(i).weight, d.parity, kind});
            }
    }

    // enumerate candidate monomials of the requested ghost number and parity
    auto enumerate = [&](int ghost_needed, Parity pa_needed, const ChartTuple& t,
                         std::vector<Monomial>& out) {
        std::vector<Factor> stack;
        size_t cap = bounds.basis_cap;
        // Laurent dressings on the tuple charts, bounded depth
        std::vector<std::vector<Factor>> dressings;
        {
            std::vector<Factor> cur;
            std::function<void(size_t, int)> rec = [&](size_t pos, int depth_left) {
                if (pos == t.charts.size()) {
                    dressings.push_back(cur);
                    return;
                }
                rec(pos + 1, depth_left);
                int pidx = E.field_index("p");
                for (int d = 1; d <= std::min(bounds.laurent_per_chart, depth_left); ++d) {
                    cur.push_back(Factor{make_gen(pidx, t.charts[pos], 0), -d});
                    rec(pos + 1, depth_left - d);
                    cur.pop_back();
                }
            };
            rec(0, bounds.laurent_total);
        }
        std::function<void(size_t, int, int, int, int, int)> rec =
            [&](size_t from, int gh, int psi_used, int anti_used, int p_used, int w) {
                if (out.size() >= cap) return;
                if (w <= K + 1) {
                    if (gh == ghost_needed) {
                        // attach the Laurent dressings and test parity
                        for (auto& dress : dressings) {
                            Monomial m;
                            m.factors = stack;
                            for (auto& f : dress) {
                                // merge with possible positive power on the same chart
                                bool merged = false;
                                for (auto& mf : m.factors)
                                    if (mf.g == f.g) {
                                        mf.e += f.e;
                                        merged = true;
                                    }
                                if (!merged) m.factors.push_back(f);
                            }
                            std::sort(m.factors.begin(), m.factors.end(),
                                      [](const Factor& a, const Factor& b) { return a.g < b.g; });
                            m.factors.erase(std::remove_if(m.factors.begin(), m.factors.end(),
                                                           [](const Factor& f) { return f.e == 0; }),
                                            m.factors.end());
                            Poly probe(&E);
                            probe.add_term(m, 1);
                            if (probe.is_zero()) continue;
                            if (probe.monomial_parity(m) != pa_needed) continue;
                            out.push_back(m);
                            if (out.size() >= cap) return;
                        }
                    }
                }
                for (size_t i = from; i < pool.size(); ++i) {
                    const GenInfo& gi = pool[i];
                    if (gi.kind == 2 && psi_used >= bounds.max_psi_factors) continue;
                    if (gi.kind == 1 && anti_used >= bounds.max_anti_factors) continue;
                    if (gi.kind == 0 && p_used >= bounds.max_p_factors) continue;
                    if (w + gi.weight > K + 1) continue;
                    // odd generators only once; even ones at most twice here
                    int max_rep = gi.pa == Parity::odd ? 1 : 2;
                    if (!stack.empty() && stack.back().g == gi.g && stack.back().e >= max_rep)
                        continue;
                    stack.push_back(Factor{gi.g, 1});
                    rec(i, gh + gi.ghost, psi_used + (gi.kind == 2), anti_used + (gi.kind == 1),
                        p_used + (gi.kind == 0), w + gi.weight);
                    stack.pop_back();
                }
            };
        rec(0, 0, 0, 0, 0, 0);
    };

    // build the candidate list per tuple and form key
    std::vector<Candidate> cands;
    for (auto& t : tuples) {
        int kdim = t.depth();
        int fmax = std::min(bounds.max_form_degree, kdim);
        for (int f = 0; f <= fmax; ++f) {
            int ghost_needed = total_degree - f;
            Parity pa_needed = Parity((total_degree % 2 + f % 2 + 4) % 2);
            std::vector<Monomial> monos;
            enumerate(ghost_needed, pa_needed, t, monos);
            if (monos.size() >= bounds.basis_cap) {
                rep.status = SolveReport::cap_exceeded;
                rep.note = "candidate cap exceeded on tuple " + t.str();
                return rep;
            }
            // form keys: dmask of f bits, t-degree <= 1 on one coordinate
            std::vector<FormKey> keys;
            std::vector<std::uint32_t> masks;
            for (std::uint32_t msk = 0; msk < (1u << kdim); ++msk)
                if (__builtin_popcount(msk) == f) masks.push_back(msk);
            for (auto msk : masks) {
                FormKey base{std::vector<int>(kdim, 0), msk};
                keys.push_back(base);
                for (int i = 0; i < kdim; ++i) {
                    FormKey kt = base;
                    kt.tdeg[i] = 1;
                    keys.push_back(kt);
                }
            }
            for (auto& key : keys)
                for (auto& m : monos) cands.push_back(Candidate{t, key, m});
        }
    }
    rep.unknowns = cands.size();
    if (cands.empty()) {
        rep.status = SolveReport::empty_basis;
        return rep;
    }

    // variational-derivative rows of (delta+s)X + target per tuple/key
    struct RowKeyHash {
        size_t operator()(const std::string& s) const { return std::hash<std::string>()(s); }
    };
    std::map<std::tuple<ChartTuple, FormKey, int, int, Monomial>, long> row_ids;
    SparseSystem sys;
    auto row_of = [&](const ChartTuple& t, const FormKey& k, int fidx, int comp,
                      const Monomial& m) -> long {
        auto key = std::make_tuple(t, k, fidx, comp, m);
        auto it = row_ids.find(key);
        if (it != row_ids.end()) return it->second;
        long id = long(sys.rows.size());
        row_ids.emplace(key, id);
        sys.rows.emplace_back();
        sys.rhs.emplace_back(0);
        return id;
    };
    const ModelAlgebra& S = M.algebra();
    auto emit_euler_rows = [&](const ChartTuple& t, const TWValue& v, long col) {
        for (auto& [key, p] : v.terms()) {
            Poly tp = truncate(p, K);
            if (tp.is_zero()) continue;
            for (int idx = 0; idx < S.num_fields(); ++idx)
                for (int c = 0; c < S.field(idx).desc.components; ++c) {
                    Poly e = variational_derivative(tp, idx, c);
                    for (auto& [m, coef] : e.terms()) {
                        long r = row_of(t, key, idx, c, m);
                        if (col < 0) sys.rhs[r] -= coef;
                        else {
                            auto& row = sys.rows[r];
                            auto jt = row.find(col);
                            if (jt == row.end()) row[col] = coef;
                            else {
                                jt->second += coef;
                                if (jt->second == 0) row.erase(jt);
                            }
                        }
                    }
                }
        }
    };

    // face-compatibility rows
    std::map<std::tuple<ChartTuple, FormKey, Monomial>, long> face_rows;
    auto face_row_of = [&](const ChartTuple& t, const FormKey& k, const Monomial& m) -> long {
        auto key = std::make_tuple(t, k, m);
        auto it = face_rows.find(key);
        if (it != face_rows.end()) return it->second;
        long id = long(sys.rows.size());
        face_rows.emplace(key, id);
        sys.rows.emplace_back();
        sys.rhs.emplace_back(0);
        return id;
    };

    for (size_t ci = 0; ci < cands.size(); ++ci) {
        const Candidate& cd = cands[ci];
        // lower the candidate into the superparticle algebra
        Poly dens(&E);
        dens.add_term(cd.mono, 1);
        Poly low = astar.from_composite_coordinates(dens);
        TWValue v(cd.tuple.depth(), &S);
        v.add(cd.key, low);
        TWValue dv = v.delta() + v.apply_s(M.s(), K);
        emit_euler_rows(cd.tuple, dv, long(ci));

        // faces: pullback of this candidate must match the subtuple unknowns
        int kdim = cd.tuple.depth();
        for (int i = 0; i <= kdim && kdim > 0; ++i) {
            ChartTuple sub = cd.tuple;
            sub.charts.erase(sub.charts.begin() + i);
            std::vector<int> fmap(kdim);
            for (int j = 0; j < kdim; ++j) fmap[j] = j < i ? j : j + 1;
            TWValue ext(kdim, &E);
            ext.add(cd.key, dens);
            TWValue pulled = ext.pullback(fmap, kdim - 1);
            for (auto& [k2, p2] : pulled.terms())
                for (auto& [m2, c2] : p2.terms()) {
                    long r = face_row_of(sub, k2, m2);
                    auto& row = sys.rows[r];
                    auto jt = row.find(long(ci));
                    if (jt == row.end()) row[long(ci)] = c2;
                    else {
                        jt->second += c2;
                        if (jt->second == 0) row.erase(jt);
                    }
                }
        }
    }
    // subtuple unknowns enter the face rows with coefficient -1
    {
        std::map<std::tuple<ChartTuple, FormKey, Monomial>, long> direct;
        for (size_t ci = 0; ci < cands.size(); ++ci)
            direct[{cands[ci].tuple, cands[ci].key, cands[ci].mono}] = long(ci);
        for (auto& [key, r] : face_rows) {
            auto it = direct.find(key);
            if (it != direct.end()) {
                auto& row = sys.rows[r];
                auto jt = row.find(it->second);
                if (jt == row.end()) row[it->second] = Rat(-1);
                else {
                    jt->second -= 1;
                    if (jt->second == 0) row.erase(jt);
                }
            }
            // otherwise the pulled-back value must vanish outright
        }
    }

    // target rows (right-hand side)
    for (auto& [t, v] : target.values) emit_euler_rows(t, v, -1);

    rep.equations = sys.rows.size();
    size_t rank = 0;
    auto sol = sys.solve(cands.size(), &rank);
    rep.rank = rank;
    if (!sol) {
        rep.status = SolveReport::infeasible_at_bounds;
        rep.note = "system inconsistent at these bounds";
        return rep;
    }

    // assemble, re-substitute and verify
    TWCochain X;
    for (auto& t : tuples) X.values.emplace(t, TWValue(t.depth(), &S));
    for (size_t ci = 0; ci < cands.size(); ++ci) {
        if ((*sol)[ci] == 0) continue;
        Poly dens(&E);
        dens.add_term(cands[ci].mono, (*sol)[ci]);
        Poly low = astar.from_composite_coordinates(dens);
        X.values.at(cands[ci].tuple).add(cands[ci].key, low);
    }
    TWCochain resid = tw_total_diff(M, X, K) + target.truncated(K);
    for (auto& [t, v] : resid.values)
        for (auto& [key, p] : v.terms()) {
            Poly tp = truncate(p, K);
            if (tp.is_zero()) continue;
            auto r = is_total_derivative(tp);
            if (!r.is_exact) {
                rep.status = SolveReport::infeasible_at_bounds;
                rep.note = "re-substitution residual not exact on tuple " + t.str();
                return rep;
            }
        }
    rep.status = SolveReport::solved;
    rep.solution = std::move(X);
    return rep;
}

} // namespace bv
