#pragma once

#include <memory>
#include <string>
#include <vector>

#include "racah/json.hpp"
#include "racah/matrix.hpp"
#include "racah/racah_core.hpp"
#include "racah/racah_poly.hpp"
#include "racah/rational.hpp"

namespace racah {

// Integer simplex 0 <= x_1 <= ... <= x_m <= N with m = n-2; the boundary
// values x_0 = 0 and x_{n-1} = N never vary and appear only in coefficients.
struct GridSpec {
    int n = 0;
    long level = 0;
    std::vector<std::vector<long>> points;  // lex sorted

    static GridSpec simplex(int n, long level);
    long index_of(const std::vector<long>& p) const;  // -1 when absent
    Json to_json() const;
};

// b_i^s and B_i^{s,t} with s,t in {-1,0,1}; xs and betas are indexed
// absolutely (xs[i] is x_i), negative superscripts substitute x_i -> -x_i-b_i.
Rational b_coeff(int i, int s, const std::vector<Rational>& xs,
                 const std::vector<Rational>& betas);
Rational B_coeff(int i, int s, int t, const std::vector<Rational>& xs,
                 const std::vector<Rational>& betas);

// G_nu = 2^{zeros} prod_{i=0..j} B_i^{nu_i,nu_{i+1}} / prod_{i=1..j} b_i^{nu_i}
// with the boundary convention nu_0 = nu_{j+1} = 0; xs holds x_0..x_{j+1} and
// betas beta_0..beta_{j+1}.  A vanishing denominator raises PoleOnGrid.
Rational G_coeff(const std::vector<int>& nu, const std::vector<Rational>& xs,
                 const std::vector<Rational>& betas);

// One summand coeff * E_shift of a difference operator.  The coefficient is
// kept symbolic (a constant, a kappa(x_i, beta_i) factor, or a G function
// sigma-shifted by an index offset) and evaluated lazily per grid point.
struct ShiftCoefficient {
    enum class Kind { Constant, Kappa, G };
    Kind kind = Kind::Constant;
    Rational scale = 1;
    long index = 0;       // Kappa: kappa(x_index, beta_index) before offset
    std::vector<int> nu;  // G
    long offset = 0;      // accumulated sigma power
};

struct ShiftTerm {
    std::vector<long> shift;  // one entry per grid variable x_1..x_{n-2}
    ShiftCoefficient coeff;
};

class ShiftExpr {
public:
    explicit ShiftExpr(int nvars) : nvars_(nvars) {}

    static ShiftExpr constant(int nvars, const Rational& c);
    static ShiftExpr kappa_diagonal(int nvars, long index);

    int nvars() const { return nvars_; }
    const std::vector<ShiftTerm>& terms() const { return terms_; }
    void add_term(ShiftTerm term);

    ShiftExpr& operator+=(const ShiftExpr& o);
    ShiftExpr& operator-=(const ShiftExpr& o);
    ShiftExpr operator-() const;
    ShiftExpr operator*(const Rational& c) const;

private:
    int nvars_;
    std::vector<ShiftTerm> terms_;
};

// L_j = sum over nonzero nu in {-1,0,1}^j of G_nu (E_nu - 1), realized over
// nvars grid variables.
ShiftExpr racah_operator_L(int j, int nvars);

// Adds one to every x, beta, and shift index.
ShiftExpr sigma_shift(const ShiftExpr& e);

Rational evaluate_coefficient(const ShiftCoefficient& c, const std::vector<long>& point,
                              const GridSpec& grid, const BetaLadder& ladder);

// The difference-operator realization attached to a beta ladder: interval
// generators per the closed formulas, arbitrary subsets assembled from the
// two-index combination and the linear-dependence identity, all as exact
// matrices on the simplex grid.
class DiscreteModel {
public:
    explicit DiscreteModel(const BetaLadder& ladder);

    const GridSpec& grid() const { return grid_; }
    const BetaLadder& ladder() const { return ladder_; }

    ShiftExpr interval_expr(int p, int q) const;
    Matrix interval_matrix(int p, int q) const;
    Matrix matrix_of(const ShiftExpr& e) const;
    Matrix casimir(const std::vector<int>& a) const;

    // For each degree multi-index and each final-chain generator C_{[2..j+2]},
    // checks that the grid function of multivariate Racah values is an exact
    // eigenvector with eigenvalue kappa(|k|_j, beta_{j+1}-beta_0-1).
    std::vector<RelationReport> verify_eigenfunctions() const;

private:
    BetaLadder ladder_;
    GridSpec grid_;
};

CasimirFamily<Matrix> discrete_matrix_family(const BetaLadder& ladder);

}  // namespace racah
