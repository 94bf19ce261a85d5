#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace szasz {

using cxd = std::complex<double>;

inline constexpr cxd imag_unit{0.0, 1.0};

struct dimension_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct iteration_limit_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Dense complex matrix, row-major storage, value semantics.
class Matrix {
public:
    Matrix() = default;

    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    Matrix(std::initializer_list<std::initializer_list<cxd>> init) {
        rows_ = init.size();
        cols_ = rows_ == 0 ? 0 : init.begin()->size();
        data_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            if (row.size() != cols_)
                throw dimension_error("Matrix: ragged initializer list");
            data_.insert(data_.end(), row.begin(), row.end());
        }
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    static Matrix zero(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }

    static Matrix constant(std::size_t rows, std::size_t cols, cxd value) {
        Matrix m(rows, cols);
        std::fill(m.data_.begin(), m.data_.end(), value);
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return data_.empty(); }
    bool is_square() const noexcept { return rows_ == cols_; }

    cxd& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    cxd operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<const cxd> data() const noexcept { return data_; }
    std::span<cxd> data() noexcept { return data_; }

    Matrix adjoint() const {
        Matrix m(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
        return m;
    }

    cxd trace() const {
        if (!is_square()) throw dimension_error("trace: matrix not square");
        cxd t = 0.0;
        for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
        return t;
    }

    bool is_finite() const noexcept {
        for (const cxd& z : data_)
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
        return true;
    }

    double max_abs() const noexcept {
        double m = 0.0;
        for (const cxd& z : data_) m = std::max(m, std::abs(z));
        return m;
    }

    Matrix& operator+=(const Matrix& other) {
        require_same_shape(other, "operator+=");
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
        return *this;
    }

    Matrix& operator-=(const Matrix& other) {
        require_same_shape(other, "operator-=");
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
        return *this;
    }

    Matrix& operator*=(cxd s) {
        for (cxd& z : data_) z *= s;
        return *this;
    }

    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(Matrix a, cxd s) { return a *= s; }
    friend Matrix operator*(cxd s, Matrix a) { return a *= s; }
    friend Matrix operator*(Matrix a, double s) { return a *= cxd(s); }
    friend Matrix operator*(double s, Matrix a) { return a *= cxd(s); }
    friend Matrix operator-(Matrix a) { return a *= cxd(-1.0); }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_)
            throw dimension_error("operator*: inner dimensions " + shape_str(a) + " vs " +
                                  shape_str(b));
        Matrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const cxd aik = a(i, k);
                if (aik == cxd{}) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
            }
        return c;
    }

private:
    static std::string shape_str(const Matrix& m) {
        return std::to_string(m.rows_) + "x" + std::to_string(m.cols_);
    }

    void require_same_shape(const Matrix& other, const char* op) const {
        if (rows_ != other.rows_ || cols_ != other.cols_)
            throw dimension_error(std::string(op) + ": shape mismatch " + shape_str(*this) +
                                  " vs " + shape_str(other));
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cxd> data_;
};

inline Matrix matrix_power(Matrix base, std::size_t exponent) {
    if (!base.is_square()) throw dimension_error("matrix_power: matrix not square");
    Matrix result = Matrix::identity(base.rows());
    while (exponent > 0) {
        if (exponent & 1) result = result * base;
        exponent >>= 1;
        if (exponent > 0) base = base * base;
    }
    return result;
}

/// Conjugate-linear in the first argument: dot(u, v) = u*v.
inline cxd dot(std::span<const cxd> u, std::span<const cxd> v) {
    if (u.size() != v.size()) throw dimension_error("dot: length mismatch");
    cxd s = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) s += std::conj(u[i]) * v[i];
    return s;
}

/// Rank-one matrix u v*.
inline Matrix outer(std::span<const cxd> u, std::span<const cxd> v) {
    Matrix m(u.size(), v.size());
    for (std::size_t i = 0; i < u.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j) m(i, j) = u[i] * std::conj(v[j]);
    return m;
}

inline std::vector<cxd> mat_vec(const Matrix& m, std::span<const cxd> v) {
    if (m.cols() != v.size()) throw dimension_error("mat_vec: length mismatch");
    std::vector<cxd> w(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        cxd s = 0.0;
        for (std::size_t j = 0; j < m.cols(); ++j) s += m(i, j) * v[j];
        w[i] = s;
    }
    return w;
}

inline double frobenius_norm(const Matrix& m) {
    double s = 0.0;
    for (const cxd& z : m.data()) s += std::norm(z);
    return std::sqrt(s);
}

/// Hermitian/skew split M = Re M + i Im M with Re M = (M+M*)/2, Im M = (M-M*)/(2i).
inline std::pair<Matrix, Matrix> matrix_parts(const Matrix& m) {
    if (!m.is_square()) throw dimension_error("matrix_parts: matrix not square");
    const std::size_t n = m.rows();
    Matrix re(n, n), im(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const cxd a = m(i, j);
            const cxd b = std::conj(m(j, i));
            re(i, j) = 0.5 * (a + b);
            im(i, j) = (a - b) / (2.0 * imag_unit);
        }
    return {re, im};
}

inline Matrix hermitian_part(const Matrix& m) { return matrix_parts(m).first; }
inline Matrix skew_part(const Matrix& m) { return matrix_parts(m).second; }

/// Entrywise (Hadamard) product.
inline Matrix hadamard(const Matrix& x, const Matrix& y) {
    if (x.rows() != y.rows() || x.cols() != y.cols())
        throw dimension_error("hadamard: shape mismatch");
    Matrix z(x.rows(), x.cols());
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t j = 0; j < x.cols(); ++j) z(i, j) = x(i, j) * y(i, j);
    return z;
}

inline Matrix kronecker(const Matrix& x, const Matrix& y) {
    Matrix z(x.rows() * y.rows(), x.cols() * y.cols());
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t j = 0; j < x.cols(); ++j) {
            const cxd xij = x(i, j);
            if (xij == cxd{}) continue;
            for (std::size_t p = 0; p < y.rows(); ++p)
                for (std::size_t q = 0; q < y.cols(); ++q)
                    z(i * y.rows() + p, j * y.cols() + q) = xij * y(p, q);
        }
    return z;
}

namespace detail {

inline double vec_norm(std::span<const cxd> v) {
    double s = 0.0;
    for (const cxd& z : v) s += std::norm(z);
    return std::sqrt(s);
}

// Rayleigh-quotient power iteration on a Hermitian PSD matrix from one start
// vector.  Returns the converged quotient, or nullopt if the iteration budget
// runs out.  An iterate annihilated by the matrix means the start lies in the
// kernel; the quotient 0 is exact for that start.
inline std::optional<double> psd_power_pass(const Matrix& h, std::vector<cxd> v, double tol,
                                            std::size_t max_iter) {
    const double scale = frobenius_norm(h);
    double vn = vec_norm(v);
    if (vn == 0.0) return std::nullopt;
    for (cxd& z : v) z /= vn;

    double prev = -1.0;
    int settled = 0;
    for (std::size_t it = 0; it < max_iter; ++it) {
        std::vector<cxd> w = mat_vec(h, v);
        const double wn = vec_norm(w);
        if (wn <= scale * 1e-300) return 0.0;
        const double lambda = std::real(dot(v, w));
        if (std::abs(lambda - prev) <= tol * std::max(std::abs(lambda), 1e-300)) {
            if (++settled >= 2) return lambda;
        } else {
            settled = 0;
        }
        prev = lambda;
        for (std::size_t i = 0; i < w.size(); ++i) v[i] = w[i] / wn;
    }
    return std::nullopt;
}

// Largest eigenvalue of a Hermitian PSD matrix.  The deterministic all-ones
// start can sit exactly on a minor invariant subspace, so a second, seeded
// pseudo-random start always runs and the larger converged quotient wins.
inline double psd_top_eigenvalue(const Matrix& h, double tol, std::size_t max_iter) {
    const std::size_t n = h.rows();
    std::vector<cxd> ones(n, cxd{1.0, 0.0});

    std::mt19937_64 gen(0x5a5a5a5a17ULL);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    std::vector<cxd> rnd(n);
    for (cxd& z : rnd) z = cxd(unif(gen), unif(gen));

    const auto a = psd_power_pass(h, std::move(ones), tol, max_iter);
    const auto b = n > 1 ? psd_power_pass(h, std::move(rnd), tol, max_iter) : a;
    if (!a && !b)
        throw iteration_limit_error("power iteration: no convergence after " +
                                    std::to_string(max_iter) + " iterations");
    double top = 0.0;
    if (a) top = std::max(top, *a);
    if (b) top = std::max(top, *b);
    return top;
}

}  // namespace detail

/// Largest eigenvalue of a Hermitian matrix (the caller guarantees Hermiticity).
/// Power iteration on H + ||H||_F I, which is PSD, then unshifted.
inline double hermitian_top_eigenvalue(const Matrix& h, double tol = 1e-12,
                                       std::size_t max_iter = 100000) {
    if (!h.is_square()) throw dimension_error("hermitian_top_eigenvalue: matrix not square");
    const double shift = frobenius_norm(h);
    if (shift == 0.0) return 0.0;
    Matrix hs = h;
    for (std::size_t i = 0; i < h.rows(); ++i) hs(i, i) += shift;
    return detail::psd_top_eigenvalue(hs, tol, max_iter) - shift;
}

/// Largest singular value via power iteration on M*M (or MM*, whichever is smaller).
inline double operator_norm(const Matrix& m, double tol = 1e-12, std::size_t max_iter = 100000) {
    if (tol <= 0.0) throw std::invalid_argument("operator_norm: tol must be positive");
    if (frobenius_norm(m) == 0.0) return 0.0;
    const Matrix h = m.rows() < m.cols() ? m * m.adjoint() : m.adjoint() * m;
    return std::sqrt(std::max(detail::psd_top_eigenvalue(h, tol, max_iter), 0.0));
}

/// Maximal real coordinate of the numerical range: the top eigenvalue of (X+X*)/2.
inline double hermitian_part_top_eigenvalue(const Matrix& x, double tol = 1e-12,
                                            std::size_t max_iter = 100000) {
    if (!x.is_square()) throw dimension_error("hermitian_part_top_eigenvalue: matrix not square");
    return hermitian_top_eigenvalue(hermitian_part(x), tol, max_iter);
}

}  // namespace szasz
