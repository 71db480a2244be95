#include "racah/su11.hpp"

#include <algorithm>

#include "racah/errors.hpp"

namespace racah {

Realization realization_from_name(const std::string& name) {
    if (name == "sphere") return Realization::Sphere;
    if (name == "dunkl") return Realization::Dunkl;
    if (name == "bg" || name == "barut-girardello") return Realization::BarutGirardello;
    throw UnsupportedRealization("unknown realization: " + name);
}

std::string realization_name(Realization kind) {
    switch (kind) {
        case Realization::Sphere: return "sphere";
        case Realization::Dunkl: return "dunkl";
        case Realization::BarutGirardello: return "bg";
    }
    throw UnsupportedRealization("bad realization tag");
}

RepSpec::RepSpec(Realization kind_, int n_, std::vector<Rational> params_)
    : kind(kind_), n(n_), params(std::move(params_)) {
    if (n < 1) throw BadInput("need at least one site");
    if (static_cast<int>(params.size()) != n)
        throw DimensionMismatch("need one parameter per site");
}

std::vector<Rational> RepSpec::generic_params(int n) {
    static const long primes[] = {3, 5, 7, 11, 13, 17, 19, 23, 29, 31};
    if (n > static_cast<int>(std::size(primes))) throw BadInput("too many sites");
    std::vector<Rational> result;
    for (int i = 0; i < n; ++i) result.push_back(Rational(primes[i], 2));
    return result;
}

std::vector<int> validate_subset(int n, std::vector<int> a) {
    if (a.empty()) throw EmptySubset("empty subset");
    std::sort(a.begin(), a.end());
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] < 1 || a[i] > n) throw BadInput("subset element out of range");
        if (i > 0 && a[i] == a[i - 1]) throw RepeatedIndex("repeated subset element");
    }
    return a;
}

void verify_su11(const Su11Triple& t) {
    if (!(commutator(t.j0, t.jp) == t.jp)) throw RelationFailure("[j0, jp] != jp");
    if (!(commutator(t.j0, t.jm) == -t.jm)) throw RelationFailure("[j0, jm] != -jm");
    if (!(commutator(t.jm, t.jp) == t.j0 * Rational(2))) throw RelationFailure("[jm, jp] != 2 j0");
}

Su11Triple site_triple(const RepSpec& rep, int site) {
    if (site < 1 || site > rep.n) throw BadInput("site out of range");
    int n = rep.n;
    int i = site - 1;
    const Rational& p = rep.params[i];
    OperatorExpr x = OperatorExpr::variable(n, i);
    OperatorExpr d = OperatorExpr::derivative(n, i);
    Su11Triple t{OperatorExpr::zero(n), OperatorExpr::zero(n), OperatorExpr::zero(n)};
    switch (rep.kind) {
        case Realization::Sphere: {
            OpTerm inv2 = OpTerm::unit(n);
            inv2.x[i] = -2;
            t.jp = x * x * Rational(1, 2);
            t.jm = (d * d + OperatorExpr::term(n, inv2, p)) * Rational(1, 2);
            t.j0 = (x * d * Rational(2) + OperatorExpr::one(n)) * Rational(1, 4);
            break;
        }
        case Realization::Dunkl: {
            OpTerm inv = OpTerm::unit(n);
            inv.x[i] = -1;
            OpTerm invr = inv;
            invr.r[i] = 1;
            OperatorExpr dunkl =
                d + OperatorExpr::term(n, inv, p) - OperatorExpr::term(n, invr, p);
            t.jp = x * x * Rational(1, 2);
            t.jm = dunkl * dunkl * Rational(1, 2);
            t.j0 = (x * d + OperatorExpr::scalar(n, p + Rational(1, 2))) * Rational(1, 2);
            break;
        }
        case Realization::BarutGirardello: {
            t.jp = x * x * d + x * (p * 2);
            t.jm = d;
            t.j0 = x * d + OperatorExpr::scalar(n, p);
            break;
        }
    }
    verify_su11(t);
    return t;
}

Su11Triple sum_triple(const RepSpec& rep, const std::vector<int>& subset) {
    std::vector<int> a = validate_subset(rep.n, subset);
    Su11Triple total{OperatorExpr::zero(rep.n), OperatorExpr::zero(rep.n),
                     OperatorExpr::zero(rep.n)};
    for (int site : a) {
        Su11Triple t = site_triple(rep, site);
        total.jp += t.jp;
        total.jm += t.jm;
        total.j0 += t.j0;
    }
    return total;
}

OperatorExpr casimir_of(const Su11Triple& t) {
    return t.j0 * t.j0 - t.j0 - t.jp * t.jm;
}

OperatorExpr casimir_subset(const RepSpec& rep, std::vector<int> subset) {
    return casimir_of(sum_triple(rep, subset));
}

OperatorExpr casimir_singleton_closed(const RepSpec& rep, int i) {
    if (i < 1 || i > rep.n) throw BadInput("site out of range");
    int n = rep.n;
    const Rational& p = rep.params[i - 1];
    switch (rep.kind) {
        case Realization::Sphere:
            return OperatorExpr::scalar(n, -(Rational(3) + p * 4) / 16);
        case Realization::Dunkl: {
            OperatorExpr r = OperatorExpr::reflection(n, i - 1);
            return (OperatorExpr::scalar(n, p * p * 4 - 3) - r * (p * 4)) * Rational(1, 16);
        }
        case Realization::BarutGirardello:
            return OperatorExpr::scalar(n, p * (p - 1));
    }
    throw UnsupportedRealization("bad realization tag");
}

OperatorExpr casimir_pair_closed(const RepSpec& rep, int i, int j) {
    if (i == j) throw RepeatedIndex("pair needs distinct sites");
    if (i < 1 || i > rep.n || j < 1 || j > rep.n) throw BadInput("site out of range");
    int n = rep.n;
    int a = i - 1, b = j - 1;
    const Rational& pa = rep.params[a];
    const Rational& pb = rep.params[b];
    switch (rep.kind) {
        case Realization::Sphere: {
            OperatorExpr rot = OperatorExpr::variable(n, a) * OperatorExpr::derivative(n, b) -
                               OperatorExpr::variable(n, b) * OperatorExpr::derivative(n, a);
            OpTerm tij = OpTerm::unit(n);
            tij.x[a] = -2;
            tij.x[b] = 2;
            OpTerm tji = OpTerm::unit(n);
            tji.x[a] = 2;
            tji.x[b] = -2;
            OperatorExpr inner = rot * rot + OperatorExpr::term(n, tij, pa) +
                                 OperatorExpr::term(n, tji, pb) +
                                 OperatorExpr::scalar(n, pa + pb + 1);
            return inner * Rational(-1, 4);
        }
        case Realization::Dunkl: {
            auto dunkl = [&](int s) {
                OpTerm inv = OpTerm::unit(n);
                inv.x[s] = -1;
                OpTerm invr = inv;
                invr.r[s] = 1;
                return OperatorExpr::derivative(n, s) +
                       OperatorExpr::term(n, inv, rep.params[s]) -
                       OperatorExpr::term(n, invr, rep.params[s]);
            };
            OperatorExpr angular = OperatorExpr::variable(n, a) * dunkl(b) -
                                   OperatorExpr::variable(n, b) * dunkl(a);
            OperatorExpr refl = OperatorExpr::reflection(n, b) * pa +
                                OperatorExpr::reflection(n, a) * pb;
            return (refl * refl - angular * angular - OperatorExpr::one(n)) * Rational(1, 4);
        }
        case Realization::BarutGirardello:
            // No simpler closed form than the construction itself.
            return casimir_subset(rep, {i, j});
    }
    throw UnsupportedRealization("bad realization tag");
}

TensorPoly casimir_word() {
    TensorPoly p;
    p[{"00"}] = 1;
    p[{"0"}] = -1;
    p[{"+-"}] = -1;
    return p;
}

TensorPoly comult_last(const TensorPoly& p) {
    TensorPoly result;
    for (const auto& [word, coeff] : p) {
        if (word.empty()) throw BadInput("tensor word has no slots");
        const std::string& w = word.back();
        std::size_t r = w.size();
        for (std::size_t mask = 0; mask < (std::size_t{1} << r); ++mask) {
            std::string left, right;
            for (std::size_t t = 0; t < r; ++t)
                (mask >> t & 1 ? left : right) += w[t];
            TensorWord nw(word.begin(), word.end() - 1);
            nw.push_back(left);
            nw.push_back(right);
            auto [it, fresh] = result.emplace(std::move(nw), coeff);
            if (!fresh) {
                it->second += coeff;
                if (it->second == 0) result.erase(it);
            }
        }
    }
    return result;
}

OperatorExpr realize_tensor(const RepSpec& rep, const TensorPoly& p,
                            const std::vector<int>& sites) {
    OperatorExpr total = OperatorExpr::zero(rep.n);
    std::vector<Su11Triple> triples;
    for (int s : sites) triples.push_back(site_triple(rep, s));
    for (const auto& [word, coeff] : p) {
        if (word.size() != sites.size())
            throw DimensionMismatch("tensor word does not match the site list");
        OperatorExpr term = OperatorExpr::scalar(rep.n, coeff);
        for (std::size_t slot = 0; slot < word.size(); ++slot) {
            for (char letter : word[slot]) {
                const Su11Triple& t = triples[slot];
                switch (letter) {
                    case '+': term = term * t.jp; break;
                    case '-': term = term * t.jm; break;
                    case '0': term = term * t.j0; break;
                    default: throw BadInput("bad tensor letter");
                }
            }
        }
        total += term;
    }
    return total;
}

OperatorExpr casimir_via_comultiplication(const RepSpec& rep, std::vector<int> subset) {
    std::vector<int> a = validate_subset(rep.n, subset);
    TensorPoly p = casimir_word();
    for (std::size_t i = 1; i < a.size(); ++i) p = comult_last(p);
    return realize_tensor(rep, p, a);
}

BgKernelSpace::BgKernelSpace(int n, long k) : n_(n), k_(k) {
    if (n < 2) throw InsufficientSites("the kernel model needs at least two sites");
    if (k < 0) throw BadInput("negative degree");
    labels_ = BasisSpec::degree_at_most(std::max(n - 2, 1), k).elements();
    if (n == 2) labels_ = {std::vector<long>{}};
    ambient_ = BasisSpec::homogeneous(n, k).elements();
    for (std::size_t i = 0; i < ambient_.size(); ++i) ambient_index_.emplace(ambient_[i], i);

    Matrix coords(ambient_.size(), labels_.size());
    for (std::size_t j = 0; j < labels_.size(); ++j) {
        Laurent p = phi(labels_[j]);
        for (const auto& [exps, c] : p.terms()) coords.at(ambient_index_.at(exps), j) = c;
    }
    solver_ = std::make_unique<EchelonSolver>(coords);
}

Laurent BgKernelSpace::phi(const std::vector<long>& alpha) const {
    if (static_cast<int>(alpha.size()) != std::max(n_ - 2, 0) && !(n_ == 2 && alpha.empty()))
        throw DimensionMismatch("label arity mismatch");
    long total = 0;
    for (long a : alpha) total += a;
    if (total > k_) throw BadInput("label degree exceeds k");
    Laurent base = Laurent::variable(n_, 0) - Laurent::variable(n_, 1);
    Laurent result = Laurent::constant(n_, 1);
    for (long t = 0; t < k_ - total; ++t) result = result * base;
    for (int m = 0; m < static_cast<int>(alpha.size()); ++m) {
        Laurent diff = Laurent::variable(n_, m + 2) - Laurent::variable(n_, m + 1);
        for (long t = 0; t < alpha[m]; ++t) result = result * diff;
    }
    return result;
}

Matrix BgKernelSpace::matrix_of(const OperatorExpr& op) const {
    if (op.nvars() != n_) throw DimensionMismatch("operator arity mismatch");
    Matrix images(ambient_.size(), labels_.size());
    for (std::size_t j = 0; j < labels_.size(); ++j) {
        Laurent image = op.apply(phi(labels_[j]));
        for (const auto& [exps, c] : image.terms()) {
            auto it = ambient_index_.find(exps);
            if (it == ambient_index_.end())
                throw NotInvariant("image leaves the homogeneous component");
            images.at(it->second, j) = c;
        }
    }
    try {
        return solver_->solve(images);
    } catch (const SingularSystem&) {
        throw NotInvariant("image leaves the kernel");
    }
}

namespace {

// Operators on polynomials in the n - 2 gauge variables u_1..u_{n-2};
// indices below are 1-based, and u_{n-1} (hence its derivative) is zero.
OperatorExpr u_var(int m, int l) { return OperatorExpr::variable(m, l - 1); }

OperatorExpr u_der(int m, int l) {
    if (l == m + 1) return OperatorExpr::zero(m);
    return OperatorExpr::derivative(m, l - 1);
}

OperatorExpr u_euler(int m) {
    OperatorExpr e = OperatorExpr::zero(m);
    for (int l = 1; l <= m; ++l) e += u_var(m, l) * u_der(m, l);
    return e;
}

} // namespace

OperatorExpr bg_gauged_singleton(const std::vector<Rational>& nu, int n, long k, int i) {
    if (n < 3) throw InsufficientSites("the gauged model needs at least three sites");
    if (static_cast<int>(nu.size()) != n) throw DimensionMismatch("need one nu per site");
    if (i < 1 || i > n) throw BadInput("site out of range");
    (void)k;
    return OperatorExpr::scalar(n - 2, nu[i - 1] * (nu[i - 1] - 1));
}

OperatorExpr bg_gauged_pair(const std::vector<Rational>& nu, int n, long k, int i, int j) {
    if (n < 3) throw InsufficientSites("the gauged model needs at least three sites");
    if (static_cast<int>(nu.size()) != n) throw DimensionMismatch("need one nu per site");
    if (i == j) throw RepeatedIndex("pair needs distinct sites");
    if (i < 1 || i > n || j < 1 || j > n) throw BadInput("site out of range");
    if (i > j) std::swap(i, j);
    int m = n - 2;
    OperatorExpr euler = u_euler(m);
    auto scal = [&](const Rational& c) { return OperatorExpr::scalar(m, c); };
    // k + d/du_1 - euler, the recurring degree-counting factor.
    OperatorExpr kde = scal(k) + u_der(m, 1) - euler;
    Rational cas = (nu[i - 1] + nu[j - 1]) * (nu[i - 1] + nu[j - 1] - 1);

    if (i == 1 && j == 2)
        return -(scal(k - 1) - euler) * -kde + (scal(k) - euler) * (nu[1] * 2) +
               kde * (nu[0] * 2) + scal(cas);

    if (i == 1) {
        OperatorExpr s = OperatorExpr::zero(m);
        for (int l = 1; l <= j - 2; ++l) s += u_var(m, l);
        OperatorExpr front = OperatorExpr::one(m) - s;
        OperatorExpr dd = u_der(m, j - 2) - u_der(m, j - 1);
        return -(front * front * (scal(k - 1) - euler) * dd) +
               front * (scal(k) - euler) * (nu[j - 1] * 2) - front * dd * (nu[0] * 2) +
               scal(cas);
    }

    if (i == 2) {
        OperatorExpr s = OperatorExpr::zero(m);
        for (int l = 1; l <= j - 2; ++l) s += u_var(m, l);
        OperatorExpr dd = u_der(m, j - 2) - u_der(m, j - 1);
        return -(s * s * (OperatorExpr::one(m) - kde) * dd) + s * kde * (nu[j - 1] * 2) +
               s * dd * (nu[1] * 2) + scal(cas);
    }

    // Both sites at least 3; the closed form is stated for the larger site
    // first, so here the roles are (big, small) = (j, i).
    OperatorExpr s = OperatorExpr::zero(m);
    for (int l = i - 1; l <= j - 2; ++l) s += u_var(m, l);
    OperatorExpr dd_big = u_der(m, j - 2) - u_der(m, j - 1);
    OperatorExpr dd_small = u_der(m, i - 2) - u_der(m, i - 1);
    return -(s * s * dd_big * dd_small) + s * dd_big * (nu[i - 1] * 2) -
           s * dd_small * (nu[j - 1] * 2) + scal(cas);
}

OperatorExpr bg_gauged_subset(const std::vector<Rational>& nu, int n, long k,
                              std::vector<int> subset) {
    std::vector<int> a = validate_subset(n, subset);
    if (a.size() == 1) return bg_gauged_singleton(nu, n, k, a[0]);
    OperatorExpr total = OperatorExpr::zero(n - 2);
    for (std::size_t p = 0; p < a.size(); ++p)
        for (std::size_t q = p + 1; q < a.size(); ++q)
            total += bg_gauged_pair(nu, n, k, a[p], a[q]);
    Rational excess(static_cast<long>(a.size()) - 2);
    for (int i : a) total -= bg_gauged_singleton(nu, n, k, i) * excess;
    return total;
}

} // namespace racah
