#include "racah/discrete.hpp"

#include <algorithm>
#include <memory>
#include <sstream>

#include "racah/errors.hpp"
#include "racah/operator_expr.hpp"

namespace racah {

GridSpec GridSpec::simplex(int n, long level) {
    if (n < 3) throw InsufficientSites("the grid realization needs at least three sites");
    if (level < 0) throw BadInput("negative level in grid");
    GridSpec g;
    g.n = n;
    g.level = level;
    const int m = n - 2;
    std::vector<long> point(static_cast<std::size_t>(m), 0);
    // odometer over weakly increasing tuples bounded by the level
    while (true) {
        g.points.push_back(point);
        int i = m - 1;
        while (i >= 0) {
            const long cap = (i + 1 < m) ? point[static_cast<std::size_t>(i + 1)] : level;
            if (point[static_cast<std::size_t>(i)] < cap) break;
            --i;
        }
        if (i < 0) break;
        ++point[static_cast<std::size_t>(i)];
        for (int t = 0; t < i; ++t) point[static_cast<std::size_t>(t)] = 0;
    }
    std::sort(g.points.begin(), g.points.end());
    return g;
}

long GridSpec::index_of(const std::vector<long>& p) const {
    auto it = std::lower_bound(points.begin(), points.end(), p);
    if (it == points.end() || *it != p) return -1;
    return static_cast<long>(it - points.begin());
}

Json GridSpec::to_json() const {
    Json pts = Json::array();
    for (const auto& p : points) pts.push_back(p);
    return Json{{"sites", n}, {"level", level}, {"points", pts}};
}

namespace {

void check_index(int i, std::size_t size, const char* what) {
    if (i < 0 || static_cast<std::size_t>(i) >= size) {
        throw BadInput(std::string("index out of range for ") + what);
    }
}

}  // namespace

Rational b_coeff(int i, int s, const std::vector<Rational>& xs,
                 const std::vector<Rational>& betas) {
    check_index(i, xs.size(), "b coefficient");
    check_index(i, betas.size(), "b coefficient");
    const Rational& beta = betas[static_cast<std::size_t>(i)];
    // the involution sends x_i to -x_i - beta_i
    const Rational x = (s < 0) ? -xs[static_cast<std::size_t>(i)] - beta
                               : xs[static_cast<std::size_t>(i)];
    if (s == 0) return (2 * x + beta + 1) * (2 * x + beta - 1);
    return (2 * x + beta + 1) * (2 * x + beta);
}

Rational B_coeff(int i, int s, int t, const std::vector<Rational>& xs,
                 const std::vector<Rational>& betas) {
    check_index(i, xs.size(), "B coefficient");
    check_index(i + 1, xs.size(), "B coefficient");
    check_index(i + 1, betas.size(), "B coefficient");
    const Rational& bi = betas[static_cast<std::size_t>(i)];
    const Rational& bi1 = betas[static_cast<std::size_t>(i + 1)];
    const Rational xi = (s < 0) ? -xs[static_cast<std::size_t>(i)] - bi
                                : xs[static_cast<std::size_t>(i)];
    const Rational xi1 = (t < 0) ? -xs[static_cast<std::size_t>(i + 1)] - bi1
                                 : xs[static_cast<std::size_t>(i + 1)];
    const int as = s < 0 ? 1 : s, at = t < 0 ? 1 : t;
    if (as == 0 && at == 0) {
        return xi * (xi + bi) + xi1 * (xi1 + bi1) + (bi + 1) * (bi1 - 1) / 2;
    }
    if (as == 0 && at == 1) return (xi1 + xi + bi1) * (xi1 - xi + bi1 - bi);
    if (as == 1 && at == 0) return (xi1 - xi) * (xi1 + xi + bi1);
    return (xi1 + xi + bi1) * (xi1 + xi + bi1 + 1);
}

Rational G_coeff(const std::vector<int>& nu, const std::vector<Rational>& xs,
                 const std::vector<Rational>& betas) {
    const int j = static_cast<int>(nu.size());
    if (j == 0) throw BadInput("empty shift vector in G coefficient");
    if (std::all_of(nu.begin(), nu.end(), [](int v) { return v == 0; })) {
        throw BadInput("zero shift vector in G coefficient");
    }
    long zeros = 0;
    for (int v : nu) {
        if (v < -1 || v > 1) throw BadInput("shift entries must lie in {-1,0,1}");
        if (v == 0) ++zeros;
    }
    auto nu_at = [&](int i) { return (i == 0 || i == j + 1) ? 0 : nu[static_cast<std::size_t>(i - 1)]; };
    Rational numerator = 1;
    for (int i = 0; i <= j; ++i) numerator *= B_coeff(i, nu_at(i), nu_at(i + 1), xs, betas);
    for (long z = 0; z < zeros; ++z) numerator *= 2;
    Rational denominator = 1;
    for (int i = 1; i <= j; ++i) {
        const Rational b = b_coeff(i, nu_at(i), xs, betas);
        if (b == 0) {
            std::ostringstream msg;
            msg << "b_" << i << "^" << nu_at(i) << " vanishes at x_" << i << " = "
                << to_string(xs[static_cast<std::size_t>(i)]);
            throw PoleOnGrid(msg.str());
        }
        denominator *= b;
    }
    return numerator / denominator;
}

ShiftExpr ShiftExpr::constant(int nvars, const Rational& c) {
    ShiftExpr e(nvars);
    if (c != 0) {
        ShiftTerm term;
        term.shift.assign(static_cast<std::size_t>(nvars), 0);
        term.coeff.kind = ShiftCoefficient::Kind::Constant;
        term.coeff.scale = c;
        e.terms_.push_back(std::move(term));
    }
    return e;
}

ShiftExpr ShiftExpr::kappa_diagonal(int nvars, long index) {
    ShiftExpr e(nvars);
    ShiftTerm term;
    term.shift.assign(static_cast<std::size_t>(nvars), 0);
    term.coeff.kind = ShiftCoefficient::Kind::Kappa;
    term.coeff.index = index;
    e.terms_.push_back(std::move(term));
    return e;
}

void ShiftExpr::add_term(ShiftTerm term) {
    if (term.shift.size() != static_cast<std::size_t>(nvars_)) {
        throw DimensionMismatch("shift arity mismatch");
    }
    terms_.push_back(std::move(term));
}

ShiftExpr& ShiftExpr::operator+=(const ShiftExpr& o) {
    if (o.nvars_ != nvars_) throw DimensionMismatch("shift arity mismatch");
    terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
    return *this;
}

ShiftExpr& ShiftExpr::operator-=(const ShiftExpr& o) {
    return *this += -o;
}

ShiftExpr ShiftExpr::operator-() const {
    return *this * Rational(-1);
}

ShiftExpr ShiftExpr::operator*(const Rational& c) const {
    ShiftExpr out(nvars_);
    if (c == 0) return out;
    out.terms_ = terms_;
    for (ShiftTerm& t : out.terms_) t.coeff.scale *= c;
    return out;
}

ShiftExpr racah_operator_L(int j, int nvars) {
    if (j < 0 || j > nvars) throw BadInput("difference operator spans more variables than the grid");
    ShiftExpr e(nvars);
    if (j == 0) return e;
    std::vector<int> nu(static_cast<std::size_t>(j), -1);
    while (true) {
        if (std::any_of(nu.begin(), nu.end(), [](int v) { return v != 0; })) {
            ShiftTerm moved;
            moved.shift.assign(static_cast<std::size_t>(nvars), 0);
            for (int i = 0; i < j; ++i) moved.shift[static_cast<std::size_t>(i)] = nu[static_cast<std::size_t>(i)];
            moved.coeff.kind = ShiftCoefficient::Kind::G;
            moved.coeff.nu = nu;
            ShiftTerm stay;
            stay.shift.assign(static_cast<std::size_t>(nvars), 0);
            stay.coeff = moved.coeff;
            stay.coeff.scale = -1;
            e.add_term(std::move(moved));
            e.add_term(std::move(stay));
        }
        int i = j - 1;
        while (i >= 0 && nu[static_cast<std::size_t>(i)] == 1) --i;
        if (i < 0) break;
        ++nu[static_cast<std::size_t>(i)];
        for (int t = i + 1; t < j; ++t) nu[static_cast<std::size_t>(t)] = -1;
    }
    return e;
}

ShiftExpr sigma_shift(const ShiftExpr& e) {
    ShiftExpr out(e.nvars());
    for (ShiftTerm term : e.terms()) {
        if (term.shift.back() != 0) {
            throw BadInput("sigma shift pushes a difference step past the last variable");
        }
        for (std::size_t i = term.shift.size(); i-- > 1;) term.shift[i] = term.shift[i - 1];
        term.shift[0] = 0;
        if (term.coeff.kind != ShiftCoefficient::Kind::Constant) ++term.coeff.offset;
        out.add_term(std::move(term));
    }
    return out;
}

namespace {

Rational grid_value(long i, const std::vector<long>& point, const GridSpec& grid) {
    if (i == 0) return 0;
    if (i == grid.n - 1) return grid.level;
    if (i >= 1 && i <= grid.n - 2) return point[static_cast<std::size_t>(i - 1)];
    throw BadInput("variable index outside the grid range");
}

}  // namespace

Rational evaluate_coefficient(const ShiftCoefficient& c, const std::vector<long>& point,
                              const GridSpec& grid, const BetaLadder& ladder) {
    switch (c.kind) {
        case ShiftCoefficient::Kind::Constant:
            return c.scale;
        case ShiftCoefficient::Kind::Kappa: {
            const long idx = c.index + c.offset;
            return c.scale * kappa(grid_value(idx, point, grid), ladder.beta(static_cast<int>(idx)));
        }
        case ShiftCoefficient::Kind::G: {
            const long j = static_cast<long>(c.nu.size());
            std::vector<Rational> xs, betas;
            xs.reserve(static_cast<std::size_t>(j) + 2);
            betas.reserve(static_cast<std::size_t>(j) + 2);
            for (long t = 0; t <= j + 1; ++t) {
                xs.push_back(grid_value(c.offset + t, point, grid));
                betas.push_back(ladder.beta(static_cast<int>(c.offset + t)));
            }
            return c.scale * G_coeff(c.nu, xs, betas);
        }
    }
    throw BadInput("unknown coefficient kind");
}

DiscreteModel::DiscreteModel(const BetaLadder& ladder)
    : ladder_(ladder), grid_(GridSpec::simplex(ladder.sites(), ladder.level())) {
    // genericity guard: no denominator b_i^s may vanish anywhere on the grid
    const int n = ladder_.sites();
    for (const auto& point : grid_.points) {
        std::vector<Rational> xs, betas;
        for (long i = 0; i < n; ++i) {
            xs.push_back(grid_value(i, point, grid_));
            betas.push_back(ladder_.beta(static_cast<int>(i)));
        }
        for (int i = 1; i <= n - 2; ++i) {
            for (int s : {-1, 0, 1}) {
                if (b_coeff(i, s, xs, betas) == 0) {
                    std::ostringstream msg;
                    msg << "b_" << i << "^" << s << " vanishes at grid point (";
                    for (std::size_t t = 0; t < point.size(); ++t) {
                        if (t) msg << ",";
                        msg << point[t];
                    }
                    msg << ")";
                    throw PoleOnGrid(msg.str());
                }
            }
        }
    }
}

ShiftExpr DiscreteModel::interval_expr(int p, int q) const {
    const int n = ladder_.sites();
    if (p < 1 || p > q || q > n) throw BadInput("bad interval in discrete generator");
    const int m = n - 2;
    if (p == 1) return ShiftExpr::kappa_diagonal(m, q - 1);
    ShiftExpr e = -racah_operator_L(q - p, m);
    for (int t = 0; t < p - 2; ++t) e = sigma_shift(e);
    e += ShiftExpr::constant(
        m, kappa(Rational(0), ladder_.beta(q - 1) - ladder_.beta(p - 2) - 1));
    return e;
}

Matrix DiscreteModel::matrix_of(const ShiftExpr& e) const {
    const long dim = static_cast<long>(grid_.points.size());
    Matrix out(dim, dim);
    for (const ShiftTerm& term : e.terms()) {
        for (long r = 0; r < dim; ++r) {
            const auto& point = grid_.points[static_cast<std::size_t>(r)];
            const Rational value = evaluate_coefficient(term.coeff, point, grid_, ladder_);
            if (value == 0) continue;
            std::vector<long> target = point;
            for (std::size_t i = 0; i < target.size(); ++i) target[i] += term.shift[i];
            const long c = grid_.index_of(target);
            if (c < 0) {
                std::ostringstream msg;
                msg << "difference step leaves the grid at (";
                for (std::size_t t = 0; t < point.size(); ++t) {
                    if (t) msg << ",";
                    msg << point[t];
                }
                msg << ") with nonzero coefficient";
                throw NotInvariant(msg.str());
            }
            out.at(r, c) += value;
        }
    }
    return out;
}

Matrix DiscreteModel::interval_matrix(int p, int q) const {
    return matrix_of(interval_expr(p, q));
}

Matrix DiscreteModel::casimir(const std::vector<int>& a) const {
    const int n = ladder_.sites();
    std::vector<int> key = validate_subset(n, a);
    const long dim = static_cast<long>(grid_.points.size());
    if (key.size() == 1) {
        return Matrix::scalar(dim, ladder_.site_casimir(key[0]));
    }
    if (key.size() == 2) {
        const int i = key[0], j = key[1];
        if (j == i + 1) return interval_matrix(i, j);
        Matrix out = interval_matrix(i, j);
        out -= interval_matrix(i, j - 1);
        out -= interval_matrix(i + 1, j);
        out += interval_matrix(i + 1, j - 1);
        out += Matrix::scalar(dim, ladder_.site_casimir(i) + ladder_.site_casimir(j));
        return out;
    }
    const bool contiguous = key.back() - key.front() + 1 == static_cast<int>(key.size());
    if (contiguous) return interval_matrix(key.front(), key.back());
    // linear dependence: C_A = sum of pair casimirs minus (|A|-2) sum of sites
    Matrix out(dim, dim);
    for (std::size_t u = 0; u < key.size(); ++u) {
        for (std::size_t v = u + 1; v < key.size(); ++v) out += casimir({key[u], key[v]});
    }
    Rational sites = 0;
    for (int i : key) sites += ladder_.site_casimir(i);
    out -= Matrix::scalar(dim, sites * (static_cast<long>(key.size()) - 2));
    return out;
}

std::vector<RelationReport> DiscreteModel::verify_eigenfunctions() const {
    const int n = ladder_.sites();
    const long level = ladder_.level();
    const long dim = static_cast<long>(grid_.points.size());
    std::vector<std::vector<int>> degrees;
    for (const auto& e : BasisSpec::degree_at_most(n - 2, level).elements()) {
        degrees.emplace_back(e.begin(), e.end());
    }
    std::vector<RelationReport> reports;
    for (int j = 1; j <= n - 2; ++j) {
        std::vector<int> interval;
        for (int t = 2; t <= j + 2; ++t) interval.push_back(t);
        const Matrix op = casimir(interval);
        const Rational beta = ladder_.beta(j + 1) - ladder_.beta(0) - 1;
        RelationReport report;
        report.id = "discrete-eigenfunction";
        report.args = interval;
        report.pass = true;
        for (const auto& degree : degrees) {
            long partial = 0;
            for (int t = 0; t < j; ++t) partial += degree[static_cast<std::size_t>(t)];
            const Rational eigenvalue = kappa(Rational(partial), beta);
            std::vector<Rational> f;
            f.reserve(static_cast<std::size_t>(dim));
            for (const auto& point : grid_.points) {
                std::vector<int> arg(point.begin(), point.end());
                f.push_back(tratnik_multivariate(degree, arg, ladder_));
            }
            for (long r = 0; r < dim; ++r) {
                Rational acc = 0;
                for (long c = 0; c < dim; ++c) {
                    if (op.at(r, c) != 0) acc += op.at(r, c) * f[static_cast<std::size_t>(c)];
                }
                if (acc != eigenvalue * f[static_cast<std::size_t>(r)]) {
                    report.pass = false;
                    std::ostringstream msg;
                    msg << "degree (";
                    for (std::size_t t = 0; t < degree.size(); ++t) {
                        if (t) msg << ",";
                        msg << degree[t];
                    }
                    msg << ") fails at grid row " << r;
                    report.note = msg.str();
                    break;
                }
            }
            if (!report.pass) break;
        }
        reports.push_back(std::move(report));
    }
    return reports;
}

CasimirFamily<Matrix> discrete_matrix_family(const BetaLadder& ladder) {
    auto model = std::make_shared<DiscreteModel>(ladder);
    return CasimirFamily<Matrix>(ladder.sites(), [model](const std::vector<int>& a) {
        return model->casimir(a);
    });
}

}  // namespace racah
