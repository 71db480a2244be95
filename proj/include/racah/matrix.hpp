#pragma once

#include <vector>

#include "racah/json.hpp"
#include "racah/rational.hpp"

namespace racah {

// Dense matrix over the rationals, row-major.
class Matrix {
  public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(long rows, long cols);

    static Matrix identity(long n);
    static Matrix scalar(long n, const Rational& c);

    long rows() const { return rows_; }
    long cols() const { return cols_; }

    Rational& at(long r, long c) { return entries_[r * cols_ + c]; }
    const Rational& at(long r, long c) const { return entries_[r * cols_ + c]; }

    Matrix& operator+=(const Matrix& o);
    Matrix& operator-=(const Matrix& o);
    Matrix operator+(const Matrix& o) const;
    Matrix operator-(const Matrix& o) const;
    Matrix operator-() const;
    Matrix operator*(const Matrix& o) const;
    Matrix operator*(const Rational& c) const;
    bool operator==(const Matrix& o) const;

    bool is_zero() const;
    Matrix transpose() const;

    Json to_json() const;
    static Matrix from_json(const Json& j);

  private:
    long rows_, cols_;
    std::vector<Rational> entries_;
};

inline Matrix operator*(const Rational& c, const Matrix& m) { return m * c; }

Matrix commutator(const Matrix& a, const Matrix& b);

} // namespace racah
