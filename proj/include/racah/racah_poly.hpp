#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "racah/json.hpp"
#include "racah/matrix.hpp"
#include "racah/racah_core.hpp"
#include "racah/rational.hpp"

namespace racah {

// kappa(x, beta) = (x + (beta+1)/2)(x + (beta-1)/2), the eigenvalue form shared
// by every intermediate Casimir spectrum.
Rational kappa(const Rational& x, const Rational& beta);

Rational pochhammer(const Rational& a, long j);

struct RacahParams {
    Rational alpha, beta, gamma, delta;
};

// Terminating series for r_n(alpha,beta,gamma,delta; x): the 4F3 sum of n+1
// terms times the prefactor (alpha+1)_n (beta+delta+1)_n (gamma+1)_n.  A term
// whose lower-Pochhammer denominator vanishes while its numerator does not is
// reported as DivisionByZero, never skipped.
Rational racah_univariate(long n, const RacahParams& p, const Rational& x);

// The beta-ladder attached to a weight vector: beta_j = 2(nu_1+...+nu_{j+1})-1,
// together with the total level N of the representation.
class BetaLadder {
public:
    BetaLadder(std::vector<Rational> betas, long level);
    static BetaLadder from_nu(const std::vector<Rational>& nu, long level);

    int sites() const { return static_cast<int>(betas_.size()); }
    long level() const { return level_; }
    const Rational& beta(int j) const;
    Rational nu(int site) const;  // 1-based site weight recovered from the ladder
    Rational subset_beta(const std::vector<int>& a) const;
    Rational site_casimir(int site) const;  // nu(nu-1) = kappa(0, 2nu-1)
    // Expected spectrum of the subset Casimir on a level-N module:
    // kappa(j, subset_beta(a)) for j = 0..N.
    std::vector<Rational> chain_spectrum(const std::vector<int>& a) const;
    // Two kappa labels j < j' collide iff j + j' + beta is zero, i.e. when
    // -beta is an integer in [1, 2N-1].  Throws LabelCollision.
    void check_labels(const Chain& chain) const;

    Json to_json() const;

private:
    std::vector<Rational> betas_;
    long level_;
};

struct LabeledBasis {
    Chain chain;
    std::vector<std::vector<int>> labels;  // lex-sorted interlacing labels
    Matrix vectors;                        // column c = eigenvector of labels[c]
};

LabeledBasis eigenbasis_for_chain(CasimirFamily<Matrix>& family, const Chain& chain,
                                  const BetaLadder& ladder);

// Overlap between two labeling eigenbases: row s, column k with
// phi_s = sum_k r[s][k] psi_k (the from-chain indexes columns).
struct OverlapMatrix {
    Chain from, to;
    std::vector<std::vector<int>> row_labels, col_labels;
    Matrix r;

    Json to_json() const;
};

OverlapMatrix connection_matrix(CasimirFamily<Matrix>& family, const Chain& from,
                                const Chain& to, const BetaLadder& ladder);

// phi_final = product of single-step overlaps along a path of pairwise
// adjacent chains.  Throws NotAdjacent on a bad step.
OverlapMatrix compose_path(CasimirFamily<Matrix>& family, const std::vector<Chain>& path,
                           const BetaLadder& ladder);

struct GaugeResult {
    bool ok = false;
    std::vector<Rational> witnesses;  // per-row scalars d_s with M1 = d_s * M2
    std::string note;
};

// Row-wise gauge comparison: true iff every row of m1 is a nonzero rational
// multiple of the matching row of m2.
GaugeResult gauge_equal(const Matrix& m1, const Matrix& m2);

// Fixes the column gauge of an overlap by scaling each eigenvector psi_k so
// the ground row (label 0...0) expands with unit coefficients, mirroring the
// r_0 = 1 row of the polynomial matrices.  Throws BadInput when the ground row
// has a zero entry.
Matrix ground_normalized(const OverlapMatrix& m);

struct GaugeComparison {
    bool pass = false;
    std::string orientation;  // which candidate matched
    std::vector<Rational> witnesses;
    std::string note;

    Json to_json() const;
};

// Ground-normalizes the overlap, then tries each named candidate matrix under
// row-wise gauge comparison; the first match wins and is reported.
GaugeComparison compare_up_to_gauge(const OverlapMatrix& m,
                                    const std::vector<std::pair<std::string, Matrix>>& candidates);

// Parameters of the rank-one overlap lemma for a three-site ladder:
// alpha = beta_1-beta_0-1, beta = beta_2-beta_1-1, gamma = -N-1, delta = beta_1+N.
RacahParams lemma_params(const BetaLadder& ladder);

// [s][k] = r_s(lemma_params; k) for s,k = 0..N.
Matrix lemma_overlap_matrix(const BetaLadder& ladder);

// Effective three-site parameters of one adjacency step: weights mu1, mu2, mu3
// and local level.
RacahParams embedded_step_params(const Rational& mu1, const Rational& mu2,
                                 const Rational& mu3, long level);

// Multivariate Racah value R_{k,s} = prod_j r_{k_j}(2|k|_{j-1}+beta_j-beta_0-1,
// beta_{j+1}-beta_j-1, |k|_{j-1}-s_{j+1}-1, |k|_{j-1}+beta_j+s_{j+1};
// s_j-|k|_{j-1}) with |k|_0 = 0 and the boundary convention s_{n-1} = N.
Rational tratnik_multivariate(const std::vector<int>& kv, const std::vector<int>& sv,
                              const BetaLadder& ladder);

// Matrix of Tratnik values over labeled bases.  Default orientation: the row
// (to-chain) label, decoded to coordinate differences, is the degree index k;
// the column (from-chain) label enters raw as the argument index s.  The
// swapped orientation exchanges the roles.
Matrix tratnik_matrix(const BetaLadder& ladder, const std::vector<std::vector<int>>& row_labels,
                      const std::vector<std::vector<int>>& col_labels, bool swap_roles);

// Four-site triple-sum overlap along (C12,C123) -> (C23,C123) -> (C23,C234)
// -> (C34,C234): entry[(t1,t2)][(j1,j2)] =
//   sum_l r_{t1}(P(nu2,nu3,nu4; t2); l)
//         * r_{t2-l}(P(nu1, nu2+nu3+l, nu4; N-l); j2-l)
//         * r_l(P(nu1,nu2,nu3; j2); j1).
Matrix bivariate_triple_sum_matrix(const BetaLadder& ladder,
                                   const std::vector<std::vector<int>>& row_labels,
                                   const std::vector<std::vector<int>>& col_labels,
                                   bool swap_roles);

}  // namespace racah
