#pragma once

#include <map>
#include <vector>

#include "racah/rational.hpp"

namespace racah {

// Laurent polynomials with rational coefficients in a fixed number of
// variables.  Exponents may be negative; the term map drops zero
// coefficients on every operation, so equality is plain map equality.
class Laurent {
  public:
    using Exponents = std::vector<long>;
    using TermMap = std::map<Exponents, Rational>;

    explicit Laurent(int nvars) : nvars_(nvars) {}

    static Laurent constant(int nvars, const Rational& c);
    static Laurent variable(int nvars, int i);
    static Laurent monomial(int nvars, Exponents exps, const Rational& c);

    int nvars() const { return nvars_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool operator==(const Laurent& o) const = default;

    Laurent& operator+=(const Laurent& o);
    Laurent& operator-=(const Laurent& o);
    Laurent operator+(const Laurent& o) const;
    Laurent operator-(const Laurent& o) const;
    Laurent operator*(const Laurent& o) const;
    Laurent operator*(const Rational& c) const;
    Laurent operator-() const;

    Laurent derivative(int i) const;
    Laurent reflected(int i) const;                      // x_i -> -x_i
    Laurent shifted(int i, const Rational& c) const;     // x_i -> x_i + c
    Rational eval(const std::vector<Rational>& point) const;

    bool is_polynomial() const;                          // no negative exponents
    long total_degree() const;                           // polynomials only
    bool is_homogeneous(long d) const;

    void add_term(const Exponents& e, const Rational& c);

  private:
    int nvars_;
    TermMap terms_;
};

inline Laurent operator*(const Rational& c, const Laurent& p) { return p * c; }

} // namespace racah
