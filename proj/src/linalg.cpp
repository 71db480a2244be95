#include "racah/linalg.hpp"

#include <algorithm>

#include "racah/errors.hpp"

namespace racah {

void normalize_leading(std::vector<Rational>& v) {
    for (const auto& e : v) {
        if (e != 0) {
            if (e != 1) {
                Rational inv = 1 / e;
                for (auto& x : v) x *= inv;
            }
            return;
        }
    }
}

namespace {

// Fraction-free row echelon form of an integerized copy of the matrix.
// Intermediate entries stay integral (they are minors of the input up to
// sign), which keeps the bit growth polynomial instead of exponential.
struct IntEchelon {
    long rows = 0, cols = 0;
    std::vector<std::vector<Integer>> m;
    std::vector<long> pivot_cols;
    std::vector<long> pivot_rows_orig;

    long rank() const { return (long)pivot_cols.size(); }
};

IntEchelon bareiss_echelon(const Matrix& a) {
    IntEchelon e;
    e.rows = a.rows();
    e.cols = a.cols();
    e.m.resize(e.rows);
    std::vector<long> orig(e.rows);
    for (long i = 0; i < e.rows; ++i) {
        orig[i] = i;
        Integer scale = 1;
        for (long j = 0; j < e.cols; ++j)
            mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), a.at(i, j).get_den().get_mpz_t());
        e.m[i].resize(e.cols);
        for (long j = 0; j < e.cols; ++j)
            e.m[i][j] = a.at(i, j).get_num() * (scale / a.at(i, j).get_den());
    }

    long r = 0;
    Integer prev = 1;
    for (long col = 0; col < e.cols && r < e.rows; ++col) {
        long p = -1;
        for (long i = r; i < e.rows; ++i)
            if (e.m[i][col] != 0) {
                p = i;
                break;
            }
        if (p < 0) continue;
        std::swap(e.m[r], e.m[p]);
        std::swap(orig[r], orig[p]);
        for (long i = r + 1; i < e.rows; ++i) {
            for (long j = col + 1; j < e.cols; ++j) {
                Integer t = e.m[r][col] * e.m[i][j] - e.m[i][col] * e.m[r][j];
                mpz_divexact(e.m[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            e.m[i][col] = 0;
        }
        prev = e.m[r][col];
        e.pivot_cols.push_back(col);
        e.pivot_rows_orig.push_back(orig[r]);
        ++r;
    }
    return e;
}

} // namespace

std::vector<std::vector<Rational>> nullspace(const Matrix& a) {
    IntEchelon e = bareiss_echelon(a);
    std::vector<bool> is_pivot(a.cols(), false);
    for (long c : e.pivot_cols) is_pivot[c] = true;

    std::vector<std::vector<Rational>> basis;
    for (long f = 0; f < a.cols(); ++f) {
        if (is_pivot[f]) continue;
        std::vector<Rational> x(a.cols());
        x[f] = 1;
        for (long r = e.rank() - 1; r >= 0; --r) {
            long pc = e.pivot_cols[r];
            Rational s = 0;
            for (long j = pc + 1; j < a.cols(); ++j)
                if (x[j] != 0) s += Rational(e.m[r][j]) * x[j];
            x[pc] = -s / Rational(e.m[r][pc]);
        }
        normalize_leading(x);
        basis.push_back(std::move(x));
    }
    return basis;
}

long rank(const Matrix& m) { return bareiss_echelon(m).rank(); }

EchelonSolver::EchelonSolver(const Matrix& a) : a_(a) {
    IntEchelon e = bareiss_echelon(a);
    if (e.rank() < a.cols())
        throw SingularSystem("system matrix is column-rank deficient: rank " +
                             std::to_string(e.rank()) + " of " + std::to_string(a.cols()));
    pivot_rows_ = e.pivot_rows_orig;

    // Invert the square submatrix on the pivot rows by Gauss-Jordan.
    long n = a.cols();
    Matrix work(n, 2 * n);
    for (long i = 0; i < n; ++i) {
        for (long j = 0; j < n; ++j) work.at(i, j) = a.at(pivot_rows_[i], j);
        work.at(i, n + i) = 1;
    }
    for (long col = 0; col < n; ++col) {
        long p = -1;
        for (long i = col; i < n; ++i)
            if (work.at(i, col) != 0) {
                p = i;
                break;
            }
        if (p < 0) throw SingularSystem("pivot submatrix unexpectedly singular");
        if (p != col)
            for (long j = 0; j < 2 * n; ++j) std::swap(work.at(p, j), work.at(col, j));
        Rational inv = 1 / work.at(col, col);
        for (long j = 0; j < 2 * n; ++j) work.at(col, j) *= inv;
        for (long i = 0; i < n; ++i) {
            if (i == col || work.at(i, col) == 0) continue;
            Rational f = work.at(i, col);
            for (long j = col; j < 2 * n; ++j) work.at(i, j) -= f * work.at(col, j);
        }
    }
    inv_ = Matrix(n, n);
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) inv_.at(i, j) = work.at(i, n + j);
}

Matrix EchelonSolver::solve(const Matrix& b) const {
    if (b.rows() != a_.rows()) throw DimensionMismatch("right-hand side row count mismatch");
    long n = a_.cols();
    Matrix bsub(n, b.cols());
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < b.cols(); ++j) bsub.at(i, j) = b.at(pivot_rows_[i], j);
    Matrix x = inv_ * bsub;
    if (!(a_ * x == b)) throw SingularSystem("inconsistent system: right-hand side not in column span");
    return x;
}

std::vector<Rational> EchelonSolver::solve(const std::vector<Rational>& b) const {
    Matrix bm((long)b.size(), 1);
    for (long i = 0; i < (long)b.size(); ++i) bm.at(i, 0) = b[i];
    return column_of(solve(bm), 0);
}

Matrix solve(const Matrix& a, const Matrix& b) {
    if (a.rows() != a.cols()) throw DimensionMismatch("solve expects a square matrix");
    return EchelonSolver(a).solve(b);
}

Matrix columns_to_matrix(long dim, const std::vector<std::vector<Rational>>& cols) {
    Matrix m(dim, (long)cols.size());
    for (long j = 0; j < (long)cols.size(); ++j) {
        if ((long)cols[j].size() != dim) throw DimensionMismatch("column length mismatch");
        for (long i = 0; i < dim; ++i) m.at(i, j) = cols[j][i];
    }
    return m;
}

std::vector<Rational> column_of(const Matrix& m, long j) {
    std::vector<Rational> v(m.rows());
    for (long i = 0; i < m.rows(); ++i) v[i] = m.at(i, j);
    return v;
}

EigenDecomposition simultaneous_eigenbasis(const std::vector<Matrix>& ops,
                                           const std::vector<std::vector<Rational>>& expected) {
    if (ops.size() != expected.size())
        throw DimensionMismatch("one expected-eigenvalue list per operator required");
    if (ops.empty()) throw BadInput("no operators supplied");
    long dim = ops[0].rows();
    for (const auto& op : ops)
        if (op.rows() != dim || op.cols() != dim)
            throw DimensionMismatch("operators must be square and of equal size");
    for (size_t i = 0; i < ops.size(); ++i)
        for (size_t j = i + 1; j < ops.size(); ++j)
            if (!commutator(ops[i], ops[j]).is_zero())
                throw NonCommuting("operators " + std::to_string(i) + " and " + std::to_string(j) +
                                   " do not commute");
    for (size_t t = 0; t < expected.size(); ++t)
        for (size_t i = 0; i < expected[t].size(); ++i)
            for (size_t j = i + 1; j < expected[t].size(); ++j)
                if (expected[t][i] == expected[t][j])
                    throw IncompleteSpectrum("degenerate expected eigenvalue " +
                                             to_string(expected[t][i]) + " for operator " +
                                             std::to_string(t));

    EigenDecomposition dec;
    dec.dim = dim;
    EigenBlock ambient;
    ambient.basis.resize(dim);
    for (long i = 0; i < dim; ++i) {
        ambient.basis[i].assign(dim, Rational(0));
        ambient.basis[i][i] = 1;
    }
    dec.blocks.push_back(std::move(ambient));

    for (size_t t = 0; t < ops.size(); ++t) {
        std::vector<EigenBlock> next;
        for (const auto& block : dec.blocks) {
            long b = (long)block.basis.size();
            Matrix bas = columns_to_matrix(dim, block.basis);
            // Representation of the operator on the invariant block.
            Matrix s = EchelonSolver(bas).solve(ops[t] * bas);
            long found = 0;
            for (size_t li = 0; li < expected[t].size(); ++li) {
                Matrix shifted = s - Matrix::scalar(b, expected[t][li]);
                auto kern = nullspace(shifted);
                if (kern.empty()) continue;
                EigenBlock nb;
                nb.label = block.label;
                nb.label.push_back((long)li);
                nb.eigenvalues = block.eigenvalues;
                nb.eigenvalues.push_back(expected[t][li]);
                for (const auto& k : kern) {
                    std::vector<Rational> v(dim);
                    for (long i = 0; i < dim; ++i) {
                        Rational acc = 0;
                        for (long j = 0; j < b; ++j)
                            if (k[j] != 0) acc += bas.at(i, j) * k[j];
                        v[i] = acc;
                    }
                    nb.basis.push_back(std::move(v));
                }
                found += (long)kern.size();
                next.push_back(std::move(nb));
            }
            if (found != b)
                throw IncompleteSpectrum("expected eigenvalues of operator " + std::to_string(t) +
                                         " span " + std::to_string(found) + " of " +
                                         std::to_string(b) + " block dimensions");
        }
        dec.blocks = std::move(next);
    }

    for (auto& block : dec.blocks)
        for (auto& v : block.basis) normalize_leading(v);
    return dec;
}

} // namespace racah
