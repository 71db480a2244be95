#pragma once

#include <map>
#include <vector>

#include "racah/json.hpp"
#include "racah/laurent.hpp"
#include "racah/matrix.hpp"

namespace racah {

// One normally ordered word: x-monomial, then derivatives, then reflections,
// then shifts.  x-exponents may be negative (Laurent), derivative exponents
// are nonnegative, the reflection mask is 0/1 per variable, shift exponents
// are signed.  The default comparison is lexicographic on (x, d, r, e), which
// fixes the term order used for storage and serialization.
struct OpTerm {
    std::vector<long> x;
    std::vector<long> d;
    std::vector<unsigned char> r;
    std::vector<long> e;

    auto operator<=>(const OpTerm&) const = default;

    static OpTerm unit(int nvars) {
        return OpTerm{std::vector<long>(nvars, 0), std::vector<long>(nvars, 0),
                      std::vector<unsigned char>(nvars, 0), std::vector<long>(nvars, 0)};
    }
};

// Element of the algebra generated by multiplication operators x_i,
// derivatives d_i, reflections R_i and integer shifts E_i, with rational
// coefficients.  Every expression is kept in normal form: products are
// rewritten through
//     d_i x_i = x_i d_i + 1,    R_i x_i = -x_i R_i,    R_i d_i = -d_i R_i,
//     R_i R_i = 1,              E_i x_i = (x_i + 1) E_i,
// generators with distinct indices commute, and zero coefficients are pruned
// after every operation, so equality of expressions is equality of term maps.
class OperatorExpr {
  public:
    using TermMap = std::map<OpTerm, Rational>;

    explicit OperatorExpr(int nvars) : nvars_(nvars) {}

    static OperatorExpr zero(int nvars) { return OperatorExpr(nvars); }
    static OperatorExpr scalar(int nvars, const Rational& c);
    static OperatorExpr one(int nvars) { return scalar(nvars, 1); }
    static OperatorExpr variable(int nvars, int i);
    static OperatorExpr derivative(int nvars, int i);
    static OperatorExpr reflection(int nvars, int i);
    static OperatorExpr shift(int nvars, int i, long power);
    static OperatorExpr term(int nvars, OpTerm t, const Rational& c);

    int nvars() const { return nvars_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool operator==(const OperatorExpr& o) const = default;

    OperatorExpr& operator+=(const OperatorExpr& o);
    OperatorExpr& operator-=(const OperatorExpr& o);
    OperatorExpr operator+(const OperatorExpr& o) const;
    OperatorExpr operator-(const OperatorExpr& o) const;
    OperatorExpr operator*(const OperatorExpr& o) const;
    OperatorExpr operator*(const Rational& c) const;
    OperatorExpr operator-() const;
    OperatorExpr pow(long p) const;

    bool is_scalar() const;
    Rational scalar_value() const;

    // Re-index every generator i -> i + delta inside a wider variable space.
    OperatorExpr shifted_indices(int delta, int new_nvars) const;

    Laurent apply(const Laurent& f) const;

    Json to_json() const;
    static OperatorExpr from_json(const Json& j);

    void add_term(const OpTerm& t, const Rational& c);

  private:
    int nvars_;
    TermMap terms_;
};

inline OperatorExpr operator*(const Rational& c, const OperatorExpr& a) { return a * c; }

OperatorExpr commutator(const OperatorExpr& a, const OperatorExpr& b);

// Normal-orders the product of the word's factors, left to right.
OperatorExpr normal_order(int nvars, const std::vector<OpTerm>& word);
OperatorExpr product(const std::vector<OperatorExpr>& factors);

// Finite representation bases: monomials of total degree <= d, homogeneous
// monomials of degree d, or indicator functions on a finite integer grid.
// Elements are ordered lexicographically.
struct BasisSpec {
    enum class Kind { DegreeAtMost, Homogeneous, Grid };

    Kind kind;
    int nvars;
    long degree = 0;
    std::vector<std::vector<long>> points;

    static BasisSpec degree_at_most(int nvars, long d);
    static BasisSpec homogeneous(int nvars, long d);
    static BasisSpec grid(std::vector<std::vector<long>> pts);

    // Exponent vectors or grid points, lex sorted.
    std::vector<std::vector<long>> elements() const;
};

// Matrix of op on the given basis; throws NotInvariant if the image leaves
// the span, NonPolynomialResult if a polynomial image keeps negative powers.
Matrix matrix_on_basis(const OperatorExpr& op, const BasisSpec& basis);

Rational apply_and_evaluate(const OperatorExpr& op, const Laurent& f,
                            const std::vector<Rational>& point);

} // namespace racah
