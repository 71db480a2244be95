#include "racah/laurent.hpp"

#include <numeric>

#include "racah/errors.hpp"

namespace racah {

namespace {

void check_var(int nvars, int i) {
    if (i < 0 || i >= nvars)
        throw BadInput("variable index " + std::to_string(i) + " out of range for " +
                       std::to_string(nvars) + " variables");
}

Rational rational_pow(const Rational& base, long e) {
    if (e == 0) return 1;
    if (base == 0) {
        if (e < 0) throw PoleAtPoint("zero coordinate raised to negative power");
        return 0;
    }
    Rational b = e < 0 ? Rational(1 / base) : base;
    long k = e < 0 ? -e : e;
    Rational acc = 1;
    while (k > 0) {
        if (k & 1) acc *= b;
        b *= b;
        k >>= 1;
    }
    return acc;
}

} // namespace

void Laurent::add_term(const Exponents& e, const Rational& c) {
    if ((int)e.size() != nvars_) throw DimensionMismatch("exponent vector length mismatch");
    if (c == 0) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Laurent Laurent::constant(int nvars, const Rational& c) {
    Laurent p(nvars);
    p.add_term(Exponents(nvars, 0), c);
    return p;
}

Laurent Laurent::variable(int nvars, int i) {
    check_var(nvars, i);
    Laurent p(nvars);
    Exponents e(nvars, 0);
    e[i] = 1;
    p.add_term(e, 1);
    return p;
}

Laurent Laurent::monomial(int nvars, Exponents exps, const Rational& c) {
    Laurent p(nvars);
    p.add_term(exps, c);
    return p;
}

Laurent& Laurent::operator+=(const Laurent& o) {
    if (nvars_ != o.nvars_) throw DimensionMismatch("variable count mismatch");
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

Laurent& Laurent::operator-=(const Laurent& o) {
    if (nvars_ != o.nvars_) throw DimensionMismatch("variable count mismatch");
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

Laurent Laurent::operator+(const Laurent& o) const {
    Laurent r = *this;
    r += o;
    return r;
}

Laurent Laurent::operator-(const Laurent& o) const {
    Laurent r = *this;
    r -= o;
    return r;
}

Laurent Laurent::operator*(const Laurent& o) const {
    if (nvars_ != o.nvars_) throw DimensionMismatch("variable count mismatch");
    Laurent r(nvars_);
    for (const auto& [ea, ca] : terms_) {
        for (const auto& [eb, cb] : o.terms_) {
            Exponents e(nvars_);
            for (int i = 0; i < nvars_; ++i) e[i] = ea[i] + eb[i];
            r.add_term(e, ca * cb);
        }
    }
    return r;
}

Laurent Laurent::operator*(const Rational& c) const {
    Laurent r(nvars_);
    if (c == 0) return r;
    for (const auto& [e, coeff] : terms_) r.terms_.emplace(e, coeff * c);
    return r;
}

Laurent Laurent::operator-() const { return *this * Rational(-1); }

Laurent Laurent::derivative(int i) const {
    check_var(nvars_, i);
    Laurent r(nvars_);
    for (const auto& [e, c] : terms_) {
        if (e[i] == 0) continue;
        Exponents d = e;
        d[i] -= 1;
        r.add_term(d, c * e[i]);
    }
    return r;
}

Laurent Laurent::reflected(int i) const {
    check_var(nvars_, i);
    Laurent r(nvars_);
    for (const auto& [e, c] : terms_) r.add_term(e, (e[i] % 2 != 0) ? Rational(-c) : c);
    return r;
}

Laurent Laurent::shifted(int i, const Rational& c) const {
    check_var(nvars_, i);
    if (c == 0) return *this;
    Laurent r(nvars_);
    for (const auto& [e, coeff] : terms_) {
        if (e[i] < 0)
            throw NonPolynomialResult("shift applied to a negative power of variable " +
                                      std::to_string(i));
        // (x_i + c)^m expanded binomially.
        Rational binom = 1, cp = 1;
        for (long t = 0; t <= e[i]; ++t) {
            Exponents d = e;
            d[i] = e[i] - t;
            r.add_term(d, coeff * binom * cp);
            binom *= Rational(e[i] - t) / Rational(t + 1);
            cp *= c;
        }
    }
    return r;
}

Rational Laurent::eval(const std::vector<Rational>& point) const {
    if ((int)point.size() != nvars_) throw DimensionMismatch("evaluation point length mismatch");
    Rational acc = 0;
    for (const auto& [e, c] : terms_) {
        Rational v = c;
        for (int i = 0; i < nvars_; ++i) {
            if (e[i] == 0) continue;
            if (point[i] == 0 && e[i] < 0)
                throw PoleAtPoint("pole at coordinate " + std::to_string(i));
            v *= rational_pow(point[i], e[i]);
        }
        acc += v;
    }
    return acc;
}

bool Laurent::is_polynomial() const {
    for (const auto& [e, c] : terms_)
        for (long ei : e)
            if (ei < 0) return false;
    return true;
}

long Laurent::total_degree() const {
    long deg = 0;
    for (const auto& [e, c] : terms_)
        deg = std::max(deg, std::accumulate(e.begin(), e.end(), 0L));
    return deg;
}

bool Laurent::is_homogeneous(long d) const {
    for (const auto& [e, c] : terms_)
        if (std::accumulate(e.begin(), e.end(), 0L) != d) return false;
    return true;
}

} // namespace racah
