#pragma once

#include <vector>

#include "racah/matrix.hpp"

namespace racah {

// Scale a vector so its first nonzero coordinate becomes 1.  This is the
// gauge fix used everywhere a basis vector leaves a linear-algebra routine;
// it makes eigenbases and overlap matrices reproducible.
void normalize_leading(std::vector<Rational>& v);

// Basis of the right nullspace, deterministic: echelon by fraction-free
// (Bareiss) elimination on the integerized rows, one basis vector per free
// column in ascending column order, each normalized via normalize_leading.
std::vector<std::vector<Rational>> nullspace(const Matrix& m);

long rank(const Matrix& m);

// Exact solver for A x = b with full column rank A (square or tall).
// Factors once, then solves repeatedly; solutions are verified against all
// rows, so an inconsistent right-hand side throws SingularSystem.
class EchelonSolver {
  public:
    explicit EchelonSolver(const Matrix& a);
    std::vector<Rational> solve(const std::vector<Rational>& b) const;
    Matrix solve(const Matrix& b) const;

  private:
    Matrix a_;
    Matrix inv_;                   // inverse of the pivot-row square submatrix
    std::vector<long> pivot_rows_; // original row indices of that submatrix
};

// Convenience for square invertible A.
Matrix solve(const Matrix& a, const Matrix& b);

struct EigenBlock {
    std::vector<long> label;            // positions of the eigenvalues in the supplied lists
    std::vector<Rational> eigenvalues;  // one per operator
    std::vector<std::vector<Rational>> basis;
};

struct EigenDecomposition {
    long dim = 0;
    std::vector<EigenBlock> blocks;
};

// Splits the ambient space into joint eigenspaces of pairwise-commuting
// operators.  expected[t] lists the admissible eigenvalues of ops[t]; the
// split happens by exact nullspace computations, one operator at a time.
// Throws NonCommuting if some pair fails to commute, IncompleteSpectrum if a
// supplied list has repeats or fails to exhaust a block.
EigenDecomposition simultaneous_eigenbasis(const std::vector<Matrix>& ops,
                                           const std::vector<std::vector<Rational>>& expected);

Matrix columns_to_matrix(long dim, const std::vector<std::vector<Rational>>& cols);
std::vector<Rational> column_of(const Matrix& m, long j);

} // namespace racah
