#include "racah/operator_expr.hpp"

#include <algorithm>

#include "racah/errors.hpp"

namespace racah {

namespace {

Integer binom(long n, long k) {
    if (k < 0 || k > n) return 0;
    Integer result;
    mpz_bin_uiui(result.get_mpz_t(), static_cast<unsigned long>(n),
                 static_cast<unsigned long>(k));
    return result;
}

// Falling factorial m(m-1)...(m-k+1); defined for any integer m, k >= 0.
Integer falling(long m, long k) {
    Integer result = 1;
    for (long i = 0; i < k; ++i) result *= Integer(m - i);
    return result;
}

Integer int_pow(long base, long exp) {
    Integer result = 1;
    for (long i = 0; i < exp; ++i) result *= base;
    return result;
}

void check_term_shape(const OpTerm& t, int nvars) {
    if (static_cast<int>(t.x.size()) != nvars || static_cast<int>(t.d.size()) != nvars ||
        static_cast<int>(t.r.size()) != nvars || static_cast<int>(t.e.size()) != nvars)
        throw DimensionMismatch("operator term has wrong arity");
    for (long di : t.d)
        if (di < 0) throw BadInput("negative derivative exponent");
    for (unsigned char ri : t.r)
        if (ri > 1) throw BadInput("reflection mask entries must be 0 or 1");
}

} // namespace

OperatorExpr OperatorExpr::scalar(int nvars, const Rational& c) {
    OperatorExpr result(nvars);
    result.add_term(OpTerm::unit(nvars), c);
    return result;
}

OperatorExpr OperatorExpr::variable(int nvars, int i) {
    OpTerm t = OpTerm::unit(nvars);
    t.x.at(i) = 1;
    return term(nvars, t, 1);
}

OperatorExpr OperatorExpr::derivative(int nvars, int i) {
    OpTerm t = OpTerm::unit(nvars);
    t.d.at(i) = 1;
    return term(nvars, t, 1);
}

OperatorExpr OperatorExpr::reflection(int nvars, int i) {
    OpTerm t = OpTerm::unit(nvars);
    t.r.at(i) = 1;
    return term(nvars, t, 1);
}

OperatorExpr OperatorExpr::shift(int nvars, int i, long power) {
    OpTerm t = OpTerm::unit(nvars);
    t.e.at(i) = power;
    return term(nvars, t, 1);
}

OperatorExpr OperatorExpr::term(int nvars, OpTerm t, const Rational& c) {
    check_term_shape(t, nvars);
    OperatorExpr result(nvars);
    result.add_term(t, c);
    return result;
}

void OperatorExpr::add_term(const OpTerm& t, const Rational& c) {
    if (c == 0) return;
    auto it = terms_.find(t);
    if (it == terms_.end()) {
        terms_.emplace(t, c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

OperatorExpr& OperatorExpr::operator+=(const OperatorExpr& o) {
    if (nvars_ != o.nvars_) throw DimensionMismatch("operator arity mismatch");
    for (const auto& [t, c] : o.terms_) add_term(t, c);
    return *this;
}

OperatorExpr& OperatorExpr::operator-=(const OperatorExpr& o) {
    if (nvars_ != o.nvars_) throw DimensionMismatch("operator arity mismatch");
    for (const auto& [t, c] : o.terms_) add_term(t, -c);
    return *this;
}

OperatorExpr OperatorExpr::operator+(const OperatorExpr& o) const {
    OperatorExpr result = *this;
    result += o;
    return result;
}

OperatorExpr OperatorExpr::operator-(const OperatorExpr& o) const {
    OperatorExpr result = *this;
    result -= o;
    return result;
}

OperatorExpr OperatorExpr::operator-() const {
    OperatorExpr result(nvars_);
    for (const auto& [t, c] : terms_) result.terms_.emplace(t, -c);
    return result;
}

OperatorExpr OperatorExpr::operator*(const Rational& c) const {
    OperatorExpr result(nvars_);
    if (c == 0) return result;
    for (const auto& [t, cc] : terms_) result.terms_.emplace(t, cc * c);
    return result;
}

namespace {

// Normal-orders the product of two words.  Moving the left factor's shifts
// past the right factor's x-powers binomially expands (x_i + e_i)^{c_i}
// (possible only for c_i >= 0 when e_i != 0); the left derivatives then pass
// the surviving x-powers by the Weyl relation, and reflections contribute
// parity signs against the x- and d-exponents they cross.
void multiply_terms(const OpTerm& a, const OpTerm& b, const Rational& coeff, int nvars,
                    OperatorExpr& out) {
    OpTerm base = OpTerm::unit(nvars);
    Rational sign = 1;
    for (int i = 0; i < nvars; ++i) {
        base.r[i] = a.r[i] ^ b.r[i];
        base.e[i] = (b.r[i] ? -a.e[i] : a.e[i]) + b.e[i];
        if (a.r[i] && (b.d[i] % 2 != 0)) sign = -sign;
        if (a.e[i] != 0 && b.x[i] < 0)
            throw NonPolynomialResult("shift past a negative power does not terminate");
    }

    // Per-variable expansion choices: (x-exponent, d-exponent, factor).
    struct Choice {
        long xexp;
        long dexp;
        Rational factor;
    };
    std::vector<std::vector<Choice>> choices(nvars);
    for (int i = 0; i < nvars; ++i) {
        long tmax = (a.e[i] != 0) ? b.x[i] : 0;
        for (long t = 0; t <= tmax; ++t) {
            Rational shift_part = Rational(binom(b.x[i], t) * int_pow(a.e[i], t));
            if (shift_part == 0) continue;
            long m = b.x[i] - t;
            if (a.r[i] && (m % 2 != 0)) shift_part = -shift_part;
            for (long k = 0; k <= a.d[i]; ++k) {
                Integer weyl = binom(a.d[i], k) * falling(m, k);
                if (weyl == 0) continue;
                choices[i].push_back(
                    {a.x[i] + m - k, a.d[i] + b.d[i] - k, shift_part * Rational(weyl)});
            }
        }
    }

    OpTerm cur = base;
    Rational acc = coeff * sign;
    auto descend = [&](auto&& self, int i, const Rational& partial) -> void {
        if (i == nvars) {
            out.add_term(cur, partial);
            return;
        }
        for (const Choice& ch : choices[i]) {
            cur.x[i] = ch.xexp;
            cur.d[i] = ch.dexp;
            self(self, i + 1, partial * ch.factor);
        }
    };
    descend(descend, 0, acc);
}

} // namespace

OperatorExpr OperatorExpr::operator*(const OperatorExpr& o) const {
    if (nvars_ != o.nvars_) throw DimensionMismatch("operator arity mismatch");
    OperatorExpr result(nvars_);
    for (const auto& [ta, ca] : terms_)
        for (const auto& [tb, cb] : o.terms_) multiply_terms(ta, tb, ca * cb, nvars_, result);
    return result;
}

OperatorExpr OperatorExpr::pow(long p) const {
    if (p < 0) throw BadInput("negative operator power");
    OperatorExpr result = one(nvars_);
    for (long i = 0; i < p; ++i) result = result * *this;
    return result;
}

bool OperatorExpr::is_scalar() const {
    if (terms_.empty()) return true;
    return terms_.size() == 1 && terms_.begin()->first == OpTerm::unit(nvars_);
}

Rational OperatorExpr::scalar_value() const {
    if (!is_scalar()) throw BadInput("operator is not a scalar");
    return terms_.empty() ? Rational(0) : terms_.begin()->second;
}

OperatorExpr OperatorExpr::shifted_indices(int delta, int new_nvars) const {
    if (delta < 0 || nvars_ + delta > new_nvars)
        throw DimensionMismatch("re-indexed operator does not fit");
    OperatorExpr result(new_nvars);
    for (const auto& [t, c] : terms_) {
        OpTerm nt = OpTerm::unit(new_nvars);
        for (int i = 0; i < nvars_; ++i) {
            nt.x[i + delta] = t.x[i];
            nt.d[i + delta] = t.d[i];
            nt.r[i + delta] = t.r[i];
            nt.e[i + delta] = t.e[i];
        }
        result.terms_.emplace(nt, c);
    }
    return result;
}

Laurent OperatorExpr::apply(const Laurent& f) const {
    if (f.nvars() != nvars_) throw DimensionMismatch("operand arity mismatch");
    Laurent result(nvars_);
    for (const auto& [t, c] : terms_) {
        for (const auto& [exps, fc] : f.terms()) {
            // Shift first: (x + e)^m expands only for m >= 0.
            for (int i = 0; i < nvars_; ++i)
                if (t.e[i] != 0 && exps[i] < 0)
                    throw NonPolynomialResult("shift of a negative power");
            std::vector<long> cur(nvars_, 0);
            Rational base = c * fc;
            auto descend = [&](auto&& self, int i, const Rational& partial) -> void {
                if (i == nvars_) {
                    result.add_term(cur, partial);
                    return;
                }
                long tmax = (t.e[i] != 0) ? exps[i] : 0;
                for (long s = 0; s <= tmax; ++s) {
                    Rational factor = Rational(binom(exps[i], s) * int_pow(t.e[i], s));
                    if (factor == 0) continue;
                    long m = exps[i] - s;
                    if (t.r[i] && (m % 2 != 0)) factor = -factor;
                    Integer der = falling(m, t.d[i]);
                    if (der == 0) continue;
                    factor *= Rational(der);
                    cur[i] = t.x[i] + m - t.d[i];
                    self(self, i + 1, partial * factor);
                }
            };
            descend(descend, 0, base);
        }
    }
    return result;
}

Json OperatorExpr::to_json() const {
    Json arr = Json::array();
    for (const auto& [t, c] : terms_) {
        Json jt;
        jt["x"] = t.x;
        jt["d"] = t.d;
        jt["r"] = Json::array();
        for (unsigned char ri : t.r) jt["r"].push_back(static_cast<int>(ri));
        jt["e"] = t.e;
        jt["c"] = to_string(c);
        arr.push_back(std::move(jt));
    }
    return arr;
}

OperatorExpr OperatorExpr::from_json(const Json& j) {
    if (!j.is_array() || j.empty()) {
        if (j.is_array()) throw BadInput("cannot infer arity of an empty operator");
        throw BadInput("operator JSON must be an array of terms");
    }
    int nvars = static_cast<int>(j.front().at("x").size());
    OperatorExpr result(nvars);
    for (const Json& jt : j) {
        OpTerm t;
        t.x = jt.at("x").get<std::vector<long>>();
        t.d = jt.at("d").get<std::vector<long>>();
        for (const Json& ri : jt.at("r")) t.r.push_back(static_cast<unsigned char>(ri.get<int>()));
        t.e = jt.at("e").get<std::vector<long>>();
        check_term_shape(t, nvars);
        result.add_term(t, parse_rational(jt.at("c").get<std::string>()));
    }
    return result;
}

OperatorExpr commutator(const OperatorExpr& a, const OperatorExpr& b) {
    return a * b - b * a;
}

OperatorExpr normal_order(int nvars, const std::vector<OpTerm>& word) {
    OperatorExpr result = OperatorExpr::one(nvars);
    for (const OpTerm& t : word) result = result * OperatorExpr::term(nvars, t, 1);
    return result;
}

OperatorExpr product(const std::vector<OperatorExpr>& factors) {
    if (factors.empty()) throw BadInput("empty operator product");
    OperatorExpr result = factors.front();
    for (std::size_t i = 1; i < factors.size(); ++i) result = result * factors[i];
    return result;
}

BasisSpec BasisSpec::degree_at_most(int nvars, long d) {
    if (nvars <= 0 || d < 0) throw BadInput("bad basis parameters");
    return BasisSpec{Kind::DegreeAtMost, nvars, d, {}};
}

BasisSpec BasisSpec::homogeneous(int nvars, long d) {
    if (nvars <= 0 || d < 0) throw BadInput("bad basis parameters");
    return BasisSpec{Kind::Homogeneous, nvars, d, {}};
}

BasisSpec BasisSpec::grid(std::vector<std::vector<long>> pts) {
    if (pts.empty()) throw BadInput("empty grid");
    int nvars = static_cast<int>(pts.front().size());
    for (const auto& p : pts)
        if (static_cast<int>(p.size()) != nvars) throw DimensionMismatch("ragged grid");
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return BasisSpec{Kind::Grid, nvars, 0, std::move(pts)};
}

std::vector<std::vector<long>> BasisSpec::elements() const {
    if (kind == Kind::Grid) return points;
    std::vector<std::vector<long>> result;
    std::vector<long> cur(nvars, 0);
    auto descend = [&](auto&& self, int i, long used) -> void {
        if (i == nvars) {
            if (kind == Kind::DegreeAtMost || used == degree) result.push_back(cur);
            return;
        }
        for (long a = 0; a <= degree - used; ++a) {
            cur[i] = a;
            self(self, i + 1, used + a);
        }
    };
    descend(descend, 0, 0);
    std::sort(result.begin(), result.end());
    return result;
}

Matrix matrix_on_basis(const OperatorExpr& op, const BasisSpec& basis) {
    if (basis.nvars != op.nvars()) throw DimensionMismatch("basis arity mismatch");
    std::vector<std::vector<long>> elems = basis.elements();
    std::map<std::vector<long>, std::size_t> index;
    for (std::size_t i = 0; i < elems.size(); ++i) index.emplace(elems[i], i);
    Matrix m(elems.size(), elems.size());

    if (basis.kind == BasisSpec::Kind::Grid) {
        // A term x^a d^b R^r E^e maps the indicator of grid point q to
        // (value at p) times the indicator of p = sigma_r(q - e); derivatives
        // have no action on grid functions, and any nonzero value escaping
        // the grid breaks invariance.
        for (const auto& [t, c] : op.terms())
            for (long di : t.d)
                if (di != 0) throw NotInvariant("derivative term on a grid basis");
        for (std::size_t col = 0; col < elems.size(); ++col) {
            for (const auto& [t, c] : op.terms()) {
                std::vector<long> p(basis.nvars);
                for (int i = 0; i < basis.nvars; ++i) {
                    p[i] = elems[col][i] - t.e[i];
                    if (t.r[i]) p[i] = -p[i];
                }
                Rational value = c;
                for (int i = 0; i < basis.nvars; ++i) {
                    if (t.x[i] == 0) continue;
                    if (p[i] == 0) {
                        if (t.x[i] < 0) throw PoleAtPoint("negative power at a zero coordinate");
                        value = 0;
                        break;
                    }
                    Rational coord(p[i]);
                    if (t.x[i] > 0)
                        for (long a = 0; a < t.x[i]; ++a) value *= coord;
                    else
                        for (long a = 0; a < -t.x[i]; ++a) value /= coord;
                }
                if (value == 0) continue;
                auto it = index.find(p);
                if (it == index.end()) throw NotInvariant("image leaves the grid");
                m.at(it->second, col) += value;
            }
        }
        return m;
    }

    for (std::size_t col = 0; col < elems.size(); ++col) {
        Laurent image = op.apply(Laurent::monomial(basis.nvars, elems[col], 1));
        for (const auto& [exps, c] : image.terms()) {
            for (long ei : exps)
                if (ei < 0) throw NonPolynomialResult("image has a negative power");
            auto it = index.find(exps);
            if (it == index.end()) throw NotInvariant("image leaves the span");
            m.at(it->second, col) = c;
        }
    }
    return m;
}

Rational apply_and_evaluate(const OperatorExpr& op, const Laurent& f,
                            const std::vector<Rational>& point) {
    return op.apply(f).eval(point);
}

} // namespace racah
