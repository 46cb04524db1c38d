#pragma once

#include <map>
#include <optional>

#include "bv/model.hpp"
#include "bv/rat.hpp"

namespace bv {

struct Factor {
    Gen g;
    int e;   // exponent; odd generators always 1, negative only on invertibles
    auto operator<=>(const Factor&) const = default;
};

// Canonical signed super-monomial: factors sorted ascending by generator.
// The Koszul sign of sorting is folded into the owning coefficient.
struct Monomial {
    std::vector<Factor> factors;
    bool operator<(const Monomial& o) const { return factors < o.factors; }
    bool operator==(const Monomial& o) const { return factors == o.factors; }
    bool empty() const { return factors.empty(); }
};

/// Exact sparse element of the graded supercommutative jet algebra.
class Poly {
public:
    Poly() = default;
    explicit Poly(const ModelAlgebra* m) : model_(m) {}
    Poly(const ModelAlgebra* m, const Rat& c) : model_(m) {
        if (c != 0) terms_[Monomial{}] = c;
    }

    static Poly generator(const ModelAlgebra& m, Gen g, int e = 1);

    const ModelAlgebra* model() const { return model_; }
    const std::map<Monomial, Rat>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t size() const { return terms_.size(); }

    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly operator+(const Poly& o) const { Poly r = *this; r += o; return r; }
    Poly operator-(const Poly& o) const { Poly r = *this; r -= o; return r; }
    Poly operator*(const Poly& o) const;
    Poly operator-() const;
    Poly operator*(const Rat& c) const;
    bool operator==(const Poly& o) const { return terms_ == o.terms_; }

    void add_term(const Monomial& m, const Rat& c);

    // gradings; nullopt when non-homogeneous
    std::optional<int> ghost() const;
    std::optional<Parity> parity() const;
    int monomial_ghost(const Monomial& m) const;
    Parity monomial_parity(const Monomial& m) const;
    int monomial_weight(const Monomial& m) const;
    int min_weight() const;   // 0 for the zero polynomial

    Rat constant_term() const;

private:
    const ModelAlgebra* model_ = nullptr;
    std::map<Monomial, Rat> terms_;
    friend class PolyBuilder;
};

// monomial product; returns false if the product vanishes (odd square)
bool mul_monomial(const ModelAlgebra& m, const Monomial& a, const Monomial& b,
                  Monomial& out, int& sign);

// total derivative: the even derivation raising jet orders by one
Poly total_derivative(const Poly& f);
Poly total_derivative(const Poly& f, int times);

// graded left partial derivative with respect to a single generator
Poly partial_derivative(const Poly& f, Gen g);

// Euler operator: sum_k (-D)^k d/d(D^k of the component) of the named field
Poly variational_derivative(const Poly& f, int field_idx, int comp);

// drops monomials of antifield-ghost-weight >= K
Poly truncate(const Poly& f, int K);

struct TotalDerivativeResult {
    bool is_exact = false;
    std::optional<Poly> witness;
    std::string note;
};

// Exactness test per the Euler criterion, with a best-effort formal
// integration witness. A residue class on a Laurent generator (like z^-1 Dz)
// passes the Euler test but admits no witness in the algebra; such cases are
// reported not exact, with a note.
TotalDerivativeResult is_total_derivative(const Poly& f);

} // namespace bv
