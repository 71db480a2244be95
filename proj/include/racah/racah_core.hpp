#pragma once

#include <algorithm>
#include <array>
#include <functional>
#include <initializer_list>
#include <iterator>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "racah/matrix.hpp"
#include "racah/su11.hpp"

namespace racah {

// ---- subset casimir families ----
// A family hands out the casimir element C_A of any subset A of [n] inside
// some associative algebra (exact matrices or normally ordered operators),
// caching every element, together with the derived elements
//   P_ij = C_ij - C_i - C_j   and   F_ijk = [C_ij, C_jk] / 2.
template <class Elem>
class CasimirFamily {
  public:
    using Builder = std::function<Elem(const std::vector<int>&)>;

    CasimirFamily(int n, Builder build) : n_(n), build_(std::move(build)) {
        if (n < 1) throw BadInput("need at least one site");
    }

    int n() const { return n_; }

    const Elem& casimir(std::vector<int> subset) {
        std::vector<int> key = validate_subset(n_, std::move(subset));
        auto it = cache_.find(key);
        if (it == cache_.end()) it = cache_.emplace(key, build_(key)).first;
        return it->second;
    }
    const Elem& casimir(std::initializer_list<int> subset) {
        return casimir(std::vector<int>(subset));
    }

    const Elem& reduced_pair(int i, int j) {
        if (i > j) std::swap(i, j);
        auto key = std::make_pair(i, j);
        auto it = reduced_.find(key);
        if (it == reduced_.end()) {
            Elem value = casimir({i, j}) - casimir({i}) - casimir({j});
            it = reduced_.emplace(key, std::move(value)).first;
        }
        return it->second;
    }

    const Elem& half_commutator(int i, int j, int k) {
        std::array<int, 3> key{i, j, k};
        auto it = half_.find(key);
        if (it == half_.end()) {
            const Elem& a = casimir({i, j});
            const Elem& b = casimir({j, k});
            Elem value = (a * b - b * a) * Rational(1, 2);
            it = half_.emplace(key, std::move(value)).first;
        }
        return it->second;
    }

  private:
    int n_;
    Builder build_;
    std::map<std::vector<int>, Elem> cache_;
    std::map<std::pair<int, int>, Elem> reduced_;
    std::map<std::array<int, 3>, Elem> half_;
};

// ---- ready-made families ----
inline CasimirFamily<OperatorExpr> symbolic_family(const RepSpec& rep) {
    return CasimirFamily<OperatorExpr>(
        rep.n, [rep](const std::vector<int>& a) { return casimir_subset(rep, a); });
}

// Matrices on polynomials of total degree at most d (the natural invariant
// space of the dunkl realization).
inline CasimirFamily<Matrix> dunkl_matrix_family(const RepSpec& rep, long degree) {
    if (rep.kind != Realization::Dunkl) throw UnsupportedRealization("expected dunkl");
    BasisSpec basis = BasisSpec::degree_at_most(rep.n, degree);
    return CasimirFamily<Matrix>(rep.n, [rep, basis](const std::vector<int>& a) {
        return matrix_on_basis(casimir_subset(rep, a), basis);
    });
}

// Matrices of the barut-girardello casimirs on the kernel basis phi_alpha,
// i.e. the gauged action on polynomials of degree at most k; every subset is
// built from the su(1,1) construction itself.
inline CasimirFamily<Matrix> bg_gauge_matrix_family(const RepSpec& rep, long k) {
    if (rep.kind != Realization::BarutGirardello)
        throw UnsupportedRealization("expected barut-girardello");
    auto space = std::make_shared<BgKernelSpace>(rep.n, k);
    return CasimirFamily<Matrix>(rep.n, [rep, space](const std::vector<int>& a) {
        return space->matrix_of(casimir_subset(rep, a));
    });
}

// Matrices of the closed-form gauged operators on monomials of degree at
// most k in n - 2 variables (same basis order as the kernel model).
inline CasimirFamily<Matrix> bg_closed_matrix_family(std::vector<Rational> nu, int n, long k) {
    BasisSpec basis = BasisSpec::degree_at_most(n - 2, k);
    return CasimirFamily<Matrix>(n, [nu, n, k, basis](const std::vector<int>& a) {
        return matrix_on_basis(bg_gauged_subset(nu, n, k, a), basis);
    });
}

// ---- relation reports ----
struct RelationReport {
    std::string id;
    std::vector<int> args;
    bool pass = false;
    std::string note;
};

Json reports_to_json(const std::vector<RelationReport>& reports);
bool all_pass(const std::vector<RelationReport>& reports);

std::string residual_note(const Matrix& m);
std::string residual_note(const OperatorExpr& e);

std::vector<std::vector<int>> subsets_of(int n, int min_size, int max_size);

template <class Elem>
RelationReport make_report(std::string id, std::vector<int> args, const Elem& residual) {
    RelationReport r;
    r.id = std::move(id);
    r.args = std::move(args);
    r.pass = residual.is_zero();
    if (!r.pass) r.note = residual_note(residual);
    return r;
}

// C_K = sum of C_ij over pairs in K minus (|K| - 2) sum of C_i over K,
// for every K with at least three elements.
template <class Elem>
std::vector<RelationReport> check_linear_dependence(CasimirFamily<Elem>& fam) {
    std::vector<RelationReport> out;
    for (const auto& key : subsets_of(fam.n(), 3, fam.n())) {
        Elem lhs = fam.casimir(key);
        for (std::size_t p = 0; p < key.size(); ++p)
            for (std::size_t q = p + 1; q < key.size(); ++q)
                lhs = lhs - fam.casimir({key[p], key[q]});
        Rational excess(static_cast<long>(key.size()) - 2);
        for (int i : key) lhs = lhs + fam.casimir({i}) * excess;
        out.push_back(make_report("linear-dependence", key, lhs));
    }
    return out;
}

// [C_K, C_L] = 0 whenever K and L are nested or disjoint.  Args are encoded
// as K, 0, L (zero never names a site).
template <class Elem>
std::vector<RelationReport> check_commutativity(CasimirFamily<Elem>& fam) {
    std::vector<RelationReport> out;
    auto all = subsets_of(fam.n(), 1, fam.n());
    for (std::size_t p = 0; p < all.size(); ++p) {
        for (std::size_t q = p + 1; q < all.size(); ++q) {
            const auto& k = all[p];
            const auto& l = all[q];
            bool nested = std::includes(k.begin(), k.end(), l.begin(), l.end()) ||
                          std::includes(l.begin(), l.end(), k.begin(), k.end());
            std::vector<int> inter;
            std::set_intersection(k.begin(), k.end(), l.begin(), l.end(),
                                  std::back_inserter(inter));
            if (!nested && !inter.empty()) continue;
            const Elem& a = fam.casimir(k);
            const Elem& b = fam.casimir(l);
            std::vector<int> args = k;
            args.push_back(0);
            args.insert(args.end(), l.begin(), l.end());
            out.push_back(make_report("commutativity", args, a * b - b * a));
        }
    }
    return out;
}

// F changes sign under every transposition of its three indices.
template <class Elem>
std::vector<RelationReport> check_f_antisymmetry(CasimirFamily<Elem>& fam) {
    std::vector<RelationReport> out;
    int n = fam.n();
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            for (int k = j + 1; k <= n; ++k) {
                const Elem& base = fam.half_commutator(i, j, k);
                struct Perm {
                    int a, b, c;
                    int sign;
                };
                const Perm perms[] = {{i, j, k, 1},  {j, k, i, 1},  {k, i, j, 1},
                                      {j, i, k, -1}, {i, k, j, -1}, {k, j, i, -1}};
                Elem residual = base - base;
                for (const Perm& p : perms)
                    residual =
                        residual + (fam.half_commutator(p.a, p.b, p.c) - base * Rational(p.sign));
                // Summing the six deviations could hide cancellations, so
                // accumulate them only after testing each one.
                bool ok = true;
                for (const Perm& p : perms)
                    ok = ok &&
                         (fam.half_commutator(p.a, p.b, p.c) - base * Rational(p.sign)).is_zero();
                RelationReport r;
                r.id = "f-antisymmetry";
                r.args = {i, j, k};
                r.pass = ok;
                if (!ok) r.note = residual_note(residual);
                out.push_back(std::move(r));
            }
    return out;
}

// [C_jk, F_ijk] = C_ik C_jk - C_jk C_ij + (C_k - C_j)(C_i - C_ijk)
template <class Elem>
std::vector<RelationReport> check_raising_relation(CasimirFamily<Elem>& fam) {
    std::vector<RelationReport> out;
    int n = fam.n();
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            for (int k = 1; k <= n; ++k) {
                if (i == j || i == k || j == k) continue;
                const Elem& f = fam.half_commutator(i, j, k);
                const Elem& cjk = fam.casimir({j, k});
                Elem lhs = cjk * f - f * cjk;
                Elem rhs = fam.casimir({i, k}) * cjk - cjk * fam.casimir({i, j}) +
                           (fam.casimir({k}) - fam.casimir({j})) *
                               (fam.casimir({i}) - fam.casimir({i, j, k}));
                out.push_back(make_report("pair-f", {i, j, k}, lhs - rhs));
            }
    return out;
}

// [P_kl, F_ijk] = P_ik P_jl - P_il P_jk
template <class Elem>
std::vector<RelationReport> check_reduced_exchange(CasimirFamily<Elem>& fam) {
    std::vector<RelationReport> out;
    int n = fam.n();
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            for (int k = 1; k <= n; ++k)
                for (int l = 1; l <= n; ++l) {
                    if (i == j || i == k || i == l || j == k || j == l || k == l) continue;
                    const Elem& p = fam.reduced_pair(k, l);
                    const Elem& f = fam.half_commutator(i, j, k);
                    Elem lhs = p * f - f * p;
                    Elem rhs = fam.reduced_pair(i, k) * fam.reduced_pair(j, l) -
                               fam.reduced_pair(i, l) * fam.reduced_pair(j, k);
                    out.push_back(make_report("reduced-exchange", {i, j, k, l}, lhs - rhs));
                }
    return out;
}

// [F_ijk, F_jkl] = F_jkl P_ij - F_ikl (P_jk + 2 C_j) - F_ijk P_jl
template <class Elem>
std::vector<RelationReport> check_f_bracket(CasimirFamily<Elem>& fam) {
    std::vector<RelationReport> out;
    int n = fam.n();
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            for (int k = 1; k <= n; ++k)
                for (int l = 1; l <= n; ++l) {
                    if (i == j || i == k || i == l || j == k || j == l || k == l) continue;
                    const Elem& a = fam.half_commutator(i, j, k);
                    const Elem& b = fam.half_commutator(j, k, l);
                    Elem lhs = a * b - b * a;
                    Elem rhs = b * fam.reduced_pair(i, j) -
                               fam.half_commutator(i, k, l) *
                                   (fam.reduced_pair(j, k) + fam.casimir({j}) * Rational(2)) -
                               a * fam.reduced_pair(j, l);
                    out.push_back(make_report("f-bracket", {i, j, k, l}, lhs - rhs));
                }
    return out;
}

// [F_ijk, F_klm] = F_ilm P_jk - P_ik F_jlm, five distinct indices.
template <class Elem>
std::vector<RelationReport> check_f_bracket_disjoint(CasimirFamily<Elem>& fam) {
    std::vector<RelationReport> out;
    int n = fam.n();
    std::array<int, 5> t{};
    auto distinct = [&] {
        for (int p = 0; p < 5; ++p)
            for (int q = p + 1; q < 5; ++q)
                if (t[p] == t[q]) return false;
        return true;
    };
    for (t[0] = 1; t[0] <= n; ++t[0])
        for (t[1] = 1; t[1] <= n; ++t[1])
            for (t[2] = 1; t[2] <= n; ++t[2])
                for (t[3] = 1; t[3] <= n; ++t[3])
                    for (t[4] = 1; t[4] <= n; ++t[4]) {
                        if (!distinct()) continue;
                        auto [i, j, k, l, m] = t;
                        const Elem& a = fam.half_commutator(i, j, k);
                        const Elem& b = fam.half_commutator(k, l, m);
                        Elem lhs = a * b - b * a;
                        Elem rhs = fam.half_commutator(i, l, m) * fam.reduced_pair(j, k) -
                                   fam.reduced_pair(i, k) * fam.half_commutator(j, l, m);
                        out.push_back(
                            make_report("f-bracket-disjoint", {i, j, k, l, m}, lhs - rhs));
                    }
    return out;
}

template <class Elem>
std::vector<RelationReport> full_relation_suite(CasimirFamily<Elem>& fam) {
    std::vector<RelationReport> out;
    auto append = [&out](std::vector<RelationReport> part) {
        out.insert(out.end(), std::make_move_iterator(part.begin()),
                   std::make_move_iterator(part.end()));
    };
    append(check_linear_dependence(fam));
    append(check_commutativity(fam));
    append(check_f_antisymmetry(fam));
    append(check_raising_relation(fam));
    if (fam.n() >= 4) {
        append(check_reduced_exchange(fam));
        append(check_f_bracket(fam));
    }
    if (fam.n() >= 5) append(check_f_bracket_disjoint(fam));
    return out;
}

// ---- symbolic checks tied to a realization ----
// [C_A, J_{eps,[n]}] = 0 for every nonempty subset A and eps in {+, -, 0}.
std::vector<RelationReport> check_centralizer(const RepSpec& rep);

// The pair casimirs together with the identity are linearly independent:
// the span of their vectorized matrices has dimension n(n-1)/2 + 1.
RelationReport check_pair_independence(CasimirFamily<Matrix>& fam);

// ---- the sphere hamiltonian ----
// Points with rational coordinates, unit norm and no zero coordinate.
std::vector<std::vector<Rational>> rational_sphere_points(int n, int count);

// Deterministically seeded dense-ish integer polynomials of degree <= deg.
std::vector<Laurent> seeded_polynomials(int n, long deg, int count, unsigned seed);

struct SphereHamiltonianReport {
    std::vector<RelationReport> symmetry;   // [C_ij, C_[n]] = 0, symbolic
    int points = 0;
    int polynomials = 0;
    bool annihilated = false;  // residual multiplication operator vanishes
                               // on the sphere
};

SphereHamiltonianReport verify_sphere_hamiltonian(const RepSpec& rep, int min_points,
                                                  int poly_count, long poly_degree);

// ---- labeling chains and the connection graph ----
// A maximal chain A_1 < A_2 < ... < A_{n-2} of subsets of [n] with
// |A_i| = i + 1; the last set is a proper subset.  For n = 3 a chain is a
// single pair.
struct Chain {
    std::vector<std::vector<int>> sets;
    auto operator<=>(const Chain&) const = default;
};

std::string subset_name(const std::vector<int>& a);
std::string chain_name(const Chain& c);
Chain chain_from_sets(int n, std::vector<std::vector<int>> sets);
std::vector<Chain> labeling_chains(int n);

// Chains are adjacent when they differ in exactly one subset.
bool chains_adjacent(const Chain& a, const Chain& b);

struct ChainGraph {
    int n = 0;
    std::vector<Chain> vertices;
    std::vector<std::pair<std::size_t, std::size_t>> edges;
};

ChainGraph connection_graph(int n);
bool graph_connected(const ChainGraph& g);
std::vector<std::size_t> graph_degrees(const ChainGraph& g);
std::string graph_dot(const ChainGraph& g);

} // namespace racah
