#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "racah/linalg.hpp"
#include "racah/matrix.hpp"
#include "racah/operator_expr.hpp"

namespace racah {

enum class Realization { Sphere, Dunkl, BarutGirardello };

Realization realization_from_name(const std::string& name);
std::string realization_name(Realization kind);

// A triple of operators satisfying [j0, jp] = jp, [j0, jm] = -jm,
// [jm, jp] = 2 j0; verified on construction via verify_su11.
struct Su11Triple {
    OperatorExpr jp;
    OperatorExpr jm;
    OperatorExpr j0;
};

void verify_su11(const Su11Triple& t);

// n commuting copies of su(1,1) realized by operators in n variables:
//   sphere:  jp = y^2/2, jm = (d^2 + b/y^2)/2, j0 = (2 y d + 1)/4
//   dunkl:   jp = x^2/2, jm = T^2/2, j0 = (x d + mu + 1/2)/2, with the
//            dunkl operator T = d + mu (1 - R)/x
//   bg:      jp = x^2 d + 2 nu x, jm = d, j0 = x d + nu
// params holds b, mu or nu per site.
struct RepSpec {
    Realization kind;
    int n;
    std::vector<Rational> params;

    RepSpec(Realization kind_, int n_, std::vector<Rational> params_);

    // Halves of odd primes: 3/2, 5/2, 7/2, 11/2, 13/2, ...
    static std::vector<Rational> generic_params(int n);
};

// Sorted, duplicate-free, 1-based subset of [n]; throws on bad input.
std::vector<int> validate_subset(int n, std::vector<int> a);

Su11Triple site_triple(const RepSpec& rep, int site);
Su11Triple sum_triple(const RepSpec& rep, const std::vector<int>& subset);

OperatorExpr casimir_of(const Su11Triple& t);
OperatorExpr casimir_subset(const RepSpec& rep, std::vector<int> subset);

// Closed forms for cross-checking the construction.
OperatorExpr casimir_singleton_closed(const RepSpec& rep, int i);
OperatorExpr casimir_pair_closed(const RepSpec& rep, int i, int j);

// ---- the comultiplication route ----
// Words over the alphabet {'+', '-', '0'} stand for products of abstract
// su(1,1) generators; a tensor word holds one such word per slot.  The
// casimir is j0 j0 - j0 - jp jm; comult_last replaces the last slot by all
// splittings a -> a x 1 + 1 x a of its letters, keeping their order.
using TensorWord = std::vector<std::string>;
using TensorPoly = std::map<TensorWord, Rational>;

TensorPoly casimir_word();
TensorPoly comult_last(const TensorPoly& p);

// Realizes a tensor polynomial whose slots sit at the given sites.
OperatorExpr realize_tensor(const RepSpec& rep, const TensorPoly& p,
                            const std::vector<int>& sites);

// C_A by iterated comultiplication of the one-site casimir, embedded at the
// sites of A.  Agrees with casimir_subset but is computed along a different
// route: the tensor expansion produces cross terms (jm at one site times jp
// at another) before any realization happens.
OperatorExpr casimir_via_comultiplication(const RepSpec& rep, std::vector<int> subset);

// ---- the gauged polynomial model of the barut-girardello realization ----
// The kernel of jm,[n] inside homogeneous polynomials of degree k has basis
//   phi_alpha = (x1 - x2)^(k - |alpha|) prod_m (x_{m+2} - x_{m+1})^{alpha_m}
// indexed by alpha with |alpha| <= k.  Conjugating any operator that
// preserves this kernel by (x1 - x2)^k turns it into an operator on
// polynomials of degree at most k in n - 2 variables; its matrix in the
// phi basis is computed here by exact linear solving.
class BgKernelSpace {
  public:
    BgKernelSpace(int n, long k);

    int n() const { return n_; }
    long k() const { return k_; }
    std::size_t dim() const { return labels_.size(); }
    const std::vector<std::vector<long>>& labels() const { return labels_; }

    Laurent phi(const std::vector<long>& alpha) const;
    Matrix matrix_of(const OperatorExpr& op) const;

  private:
    int n_;
    long k_;
    std::vector<std::vector<long>> labels_;
    std::vector<std::vector<long>> ambient_;
    std::map<std::vector<long>, std::size_t> ambient_index_;
    std::unique_ptr<EchelonSolver> solver_;
};

// The gauged casimirs on polynomials of degree at most k in n - 2 variables,
// written directly as difference-free differential operators.  Pairs follow
// the closed-form realization; singletons are the scalars nu_i (nu_i - 1);
// larger subsets are assembled through the linear dependence
//   C_K = sum of pair casimirs over K - (|K| - 2) * sum of singletons.
OperatorExpr bg_gauged_singleton(const std::vector<Rational>& nu, int n, long k, int i);
OperatorExpr bg_gauged_pair(const std::vector<Rational>& nu, int n, long k, int i, int j);
OperatorExpr bg_gauged_subset(const std::vector<Rational>& nu, int n, long k,
                              std::vector<int> subset);

} // namespace racah
