#pragma once

/// Dense matrices and vector helpers.
///
/// One small row-major template serves both the exact side (Rational
/// entries, equality is entrywise exact) and the floating side (double
/// entries produced by the spectral kernels). Exact elimination routines
/// (determinant, inverse, rank) are only meaningful for Rational.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <sstream>
#include <vector>

#include "conelyap/errors.hpp"
#include "conelyap/rational.hpp"

namespace conelyap {

template <typename T>
class Matrix {
public:
    Matrix() : rows_(0), cols_(0) {}

    Matrix(std::size_t rows, std::size_t cols, const T& fill = T(0))
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    Matrix(std::initializer_list<std::initializer_list<T>> rows) {
        rows_ = rows.size();
        cols_ = rows_ == 0 ? 0 : rows.begin()->size();
        data_.reserve(rows_ * cols_);
        for (const auto& r : rows) {
            if (r.size() != cols_) {
                throw DimensionError("matrix initializer rows have unequal lengths");
            }
            data_.insert(data_.end(), r.begin(), r.end());
        }
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    static Matrix diagonal(const std::vector<T>& d) {
        Matrix m(d.size(), d.size());
        for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    bool operator==(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }
    bool operator!=(const Matrix& o) const { return !(*this == o); }

    Matrix operator+(const Matrix& o) const {
        check_same_shape(o, "+");
        Matrix r = *this;
        for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] += o.data_[k];
        return r;
    }

    Matrix operator-(const Matrix& o) const {
        check_same_shape(o, "-");
        Matrix r = *this;
        for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] -= o.data_[k];
        return r;
    }

    Matrix operator-() const {
        Matrix r = *this;
        for (auto& x : r.data_) x = -x;
        return r;
    }

    Matrix operator*(const Matrix& o) const {
        if (cols_ != o.rows_) {
            throw DimensionError("matrix product shape mismatch: " + shape() + " * " + o.shape());
        }
        Matrix r(rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t k = 0; k < cols_; ++k) {
                const T& a = (*this)(i, k);
                if (a == T(0)) continue;
                for (std::size_t j = 0; j < o.cols_; ++j) {
                    r(i, j) += a * o(k, j);
                }
            }
        }
        return r;
    }

    Matrix operator*(const T& s) const {
        Matrix r = *this;
        for (auto& x : r.data_) x *= s;
        return r;
    }

    std::vector<T> operator*(const std::vector<T>& v) const {
        if (cols_ != v.size()) {
            throw DimensionError("matrix-vector shape mismatch");
        }
        std::vector<T> r(rows_, T(0));
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) {
                r[i] += (*this)(i, j) * v[j];
            }
        }
        return r;
    }

    Matrix transpose() const {
        Matrix r(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
        }
        return r;
    }

    T trace() const {
        require_square("trace");
        T t(0);
        for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
        return t;
    }

    /// Copies `block` into this matrix with upper-left corner (i0, j0).
    void set_block(std::size_t i0, std::size_t j0, const Matrix& block) {
        if (i0 + block.rows_ > rows_ || j0 + block.cols_ > cols_) {
            throw DimensionError("block does not fit at the given offset");
        }
        for (std::size_t i = 0; i < block.rows_; ++i) {
            for (std::size_t j = 0; j < block.cols_; ++j) {
                (*this)(i0 + i, j0 + j) = block(i, j);
            }
        }
    }

    std::vector<T> row(std::size_t i) const {
        return std::vector<T>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
    }

    std::vector<T> col(std::size_t j) const {
        std::vector<T> c(rows_);
        for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
        return c;
    }

    void require_square(const char* op) const {
        if (!square()) {
            throw DimensionError(std::string(op) + " requires a square matrix, got " + shape());
        }
    }

    std::string shape() const {
        std::ostringstream os;
        os << rows_ << "x" << cols_;
        return os.str();
    }

private:
    void check_same_shape(const Matrix& o, const char* op) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) {
            throw DimensionError(std::string("matrix ") + op + " shape mismatch: " + shape() + " vs " + o.shape());
        }
    }

    std::size_t rows_, cols_;
    std::vector<T> data_;
};

using RationalMatrix = Matrix<Rational>;
using RealMatrix = Matrix<double>;
using RationalVector = std::vector<Rational>;
using RealVector = std::vector<double>;

template <typename T>
T dot(const std::vector<T>& a, const std::vector<T>& b) {
    if (a.size() != b.size()) throw DimensionError("dot product length mismatch");
    T s(0);
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

template <typename T>
bool is_zero_vector(const std::vector<T>& v) {
    for (const auto& x : v) {
        if (!(x == T(0))) return false;
    }
    return true;
}

inline RealMatrix to_real(const RationalMatrix& m) {
    RealMatrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = to_double(m(i, j));
    }
    return r;
}

inline RealVector to_real(const RationalVector& v) {
    RealVector r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = to_double(v[i]);
    return r;
}

inline double norm_inf(const RealMatrix& m) {
    double best = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < m.cols(); ++j) s += std::abs(m(i, j));
        if (s > best) best = s;
    }
    return best;
}

inline double norm_inf(const RealVector& v) {
    double best = 0.0;
    for (double x : v) best = std::max(best, std::abs(x));
    return best;
}

inline double norm2(const RealVector& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

/// Exact determinant by Gaussian elimination with division; pivot search
/// takes the first nonzero entry (exact arithmetic needs no magnitude pivoting).
inline Rational determinant(RationalMatrix a) {
    a.require_square("determinant");
    const std::size_t n = a.rows();
    Rational det(1);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a(p, c) == 0) ++p;
        if (p == n) return Rational(0);
        if (p != c) {
            for (std::size_t j = c; j < n; ++j) std::swap(a(p, j), a(c, j));
            det = -det;
        }
        det *= a(c, c);
        for (std::size_t i = c + 1; i < n; ++i) {
            if (a(i, c) == 0) continue;
            const Rational f = a(i, c) / a(c, c);
            for (std::size_t j = c; j < n; ++j) a(i, j) -= f * a(c, j);
        }
    }
    return det;
}

/// Exact inverse via Gauss-Jordan; nullopt when singular.
inline std::optional<RationalMatrix> inverse(const RationalMatrix& m) {
    m.require_square("inverse");
    const std::size_t n = m.rows();
    RationalMatrix a = m;
    RationalMatrix inv = RationalMatrix::identity(n);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a(p, c) == 0) ++p;
        if (p == n) return std::nullopt;
        if (p != c) {
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a(p, j), a(c, j));
                std::swap(inv(p, j), inv(c, j));
            }
        }
        const Rational piv = a(c, c);
        for (std::size_t j = 0; j < n; ++j) {
            a(c, j) /= piv;
            inv(c, j) /= piv;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || a(i, c) == 0) continue;
            const Rational f = a(i, c);
            for (std::size_t j = 0; j < n; ++j) {
                a(i, j) -= f * a(c, j);
                inv(i, j) -= f * inv(c, j);
            }
        }
    }
    return inv;
}

/// Exact rank of the row set over the rationals.
inline std::size_t rank(const std::vector<RationalVector>& rows, std::size_t dim) {
    std::vector<RationalVector> work;
    work.reserve(rows.size());
    for (const auto& r : rows) {
        if (r.size() != dim) throw DimensionError("rank: row length mismatch");
        work.push_back(r);
    }
    std::size_t rk = 0;
    for (std::size_t c = 0; c < dim && rk < work.size(); ++c) {
        std::size_t p = rk;
        while (p < work.size() && work[p][c] == 0) ++p;
        if (p == work.size()) continue;
        std::swap(work[p], work[rk]);
        for (std::size_t i = rk + 1; i < work.size(); ++i) {
            if (work[i][c] == 0) continue;
            const Rational f = work[i][c] / work[rk][c];
            for (std::size_t j = c; j < dim; ++j) work[i][j] -= f * work[rk][j];
        }
        ++rk;
    }
    return rk;
}

inline std::size_t rank(const RationalMatrix& m) {
    std::vector<RationalVector> rows;
    rows.reserve(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(m.row(i));
    return rank(rows, m.cols());
}

template <typename T>
std::ostream& operator<<(std::ostream& os, const Matrix<T>& m) {
    for (std::size_t i = 0; i < m.rows(); ++i) {
        os << (i == 0 ? "[" : " ");
        for (std::size_t j = 0; j < m.cols(); ++j) {
            os << m(i, j) << (j + 1 < m.cols() ? " " : "");
        }
        os << (i + 1 < m.rows() ? "\n" : "]");
    }
    return os;
}

} // namespace conelyap
