#include "racah/matrix.hpp"

#include "racah/errors.hpp"

namespace racah {

namespace {

void require_same_shape(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionMismatch("matrix shapes differ: " + std::to_string(a.rows()) + "x" +
                                std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                                std::to_string(b.cols()));
}

} // namespace

Matrix::Matrix(long rows, long cols) : rows_(rows), cols_(cols), entries_(rows * cols) {
    if (rows < 0 || cols < 0) throw DimensionMismatch("negative matrix dimension");
}

Matrix Matrix::identity(long n) {
    Matrix m(n, n);
    for (long i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

Matrix Matrix::scalar(long n, const Rational& c) {
    Matrix m(n, n);
    for (long i = 0; i < n; ++i) m.at(i, i) = c;
    return m;
}

Matrix& Matrix::operator+=(const Matrix& o) {
    require_same_shape(*this, o);
    for (size_t i = 0; i < entries_.size(); ++i) entries_[i] += o.entries_[i];
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
    require_same_shape(*this, o);
    for (size_t i = 0; i < entries_.size(); ++i) entries_[i] -= o.entries_[i];
    return *this;
}

Matrix Matrix::operator+(const Matrix& o) const {
    Matrix r = *this;
    r += o;
    return r;
}

Matrix Matrix::operator-(const Matrix& o) const {
    Matrix r = *this;
    r -= o;
    return r;
}

Matrix Matrix::operator-() const {
    Matrix r = *this;
    for (auto& e : r.entries_) e = -e;
    return r;
}

// Exact product.  Both operands are scaled to integer matrices first so the
// inner loop runs on mpz with fused multiply-add; a final division by the two
// scale factors restores the rational entries.  This is several times faster
// than accumulating mpq values directly, which matters for the relation
// suites that multiply hundreds of Casimir matrices.
Matrix Matrix::operator*(const Matrix& o) const {
    if (cols_ != o.rows_)
        throw DimensionMismatch("matrix product shapes: " + std::to_string(rows_) + "x" +
                                std::to_string(cols_) + " times " + std::to_string(o.rows_) + "x" +
                                std::to_string(o.cols_));

    auto integerize = [](const Matrix& m, Integer& scale) {
        scale = 1;
        for (const auto& e : m.entries_) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), e.get_den().get_mpz_t());
        std::vector<Integer> z(m.entries_.size());
        for (size_t i = 0; i < m.entries_.size(); ++i) {
            Integer f = scale / m.entries_[i].get_den();
            z[i] = m.entries_[i].get_num() * f;
        }
        return z;
    };

    Integer sa, sb;
    std::vector<Integer> a = integerize(*this, sa);
    std::vector<Integer> b = integerize(o, sb);

    std::vector<Integer> acc(rows_ * o.cols_);
    for (long i = 0; i < rows_; ++i) {
        for (long k = 0; k < cols_; ++k) {
            const Integer& aik = a[i * cols_ + k];
            if (aik == 0) continue;
            const Integer* brow = &b[k * o.cols_];
            Integer* crow = &acc[i * o.cols_];
            for (long j = 0; j < o.cols_; ++j)
                mpz_addmul(crow[j].get_mpz_t(), aik.get_mpz_t(), brow[j].get_mpz_t());
        }
    }

    Integer scale = sa * sb;
    Matrix r(rows_, o.cols_);
    for (long i = 0; i < rows_ * o.cols_; ++i) {
        Rational q(acc[i], scale);
        q.canonicalize();
        r.entries_[i] = q;
    }
    return r;
}

Matrix Matrix::operator*(const Rational& c) const {
    Matrix r = *this;
    for (auto& e : r.entries_) e *= c;
    return r;
}

bool Matrix::operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && entries_ == o.entries_;
}

bool Matrix::is_zero() const {
    for (const auto& e : entries_)
        if (e != 0) return false;
    return true;
}

Matrix Matrix::transpose() const {
    Matrix r(cols_, rows_);
    for (long i = 0; i < rows_; ++i)
        for (long j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
}

Json Matrix::to_json() const {
    Json entries = Json::array();
    for (const auto& e : entries_) entries.push_back(to_string(e));
    return Json{{"rows", rows_}, {"cols", cols_}, {"entries", std::move(entries)}};
}

Matrix Matrix::from_json(const Json& j) {
    long rows = j.at("rows").get<long>();
    long cols = j.at("cols").get<long>();
    const Json& entries = j.at("entries");
    if ((long)entries.size() != rows * cols)
        throw BadInput("matrix entry count " + std::to_string(entries.size()) + " does not match " +
                       std::to_string(rows) + "x" + std::to_string(cols));
    Matrix m(rows, cols);
    for (long i = 0; i < rows * cols; ++i)
        m.entries_[i] = parse_rational(entries[i].get<std::string>());
    return m;
}

Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

} // namespace racah
