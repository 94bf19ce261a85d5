#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "szasz/matrix.hpp"

namespace szasz {

struct hypothesis_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Scalar polynomial p(x) = 1 + a_1 x + ... + a_d x^d with the constant term
/// pinned to 1.  Optionally carries the inverse-root parameters b_1..b_d of a
/// factorization p(x) = prod_j (1 + b_j x); when present, the stored
/// coefficients are the elementary symmetric functions of the b_j.
class ScalarPoly {
public:
    static ScalarPoly from_coeffs(std::vector<cxd> coeffs) {
        if (coeffs.empty()) throw std::invalid_argument("ScalarPoly: degree must be >= 1");
        ScalarPoly p;
        p.coeffs_ = std::move(coeffs);
        return p;
    }

    /// Expands prod_j (1 + b_j x); a_1 = sum b_j, a_2 = sum_{j<k} b_j b_k, ...
    static ScalarPoly from_factors(std::vector<cxd> factors) {
        if (factors.empty()) throw std::invalid_argument("ScalarPoly: no factors given");
        ScalarPoly p;
        p.coeffs_.assign(factors.size(), cxd{});
        std::size_t filled = 0;
        for (const cxd b : factors) {
            ++filled;
            for (std::size_t k = filled; k-- > 1;) p.coeffs_[k] += b * p.coeffs_[k - 1];
            p.coeffs_[0] += b;
        }
        p.factors_ = std::move(factors);
        return p;
    }

    std::size_t degree() const noexcept { return coeffs_.size(); }

    /// 1-based coefficient accessor; a(j) = 0 beyond the degree.
    cxd a(std::size_t j) const { return j >= 1 && j <= coeffs_.size() ? coeffs_[j - 1] : cxd{}; }
    cxd a1() const { return a(1); }
    cxd a2() const { return a(2); }

    std::span<const cxd> coeffs() const noexcept { return coeffs_; }
    bool has_factors() const noexcept { return factors_.has_value(); }
    const std::vector<cxd>& factors() const {
        if (!factors_) throw std::logic_error("ScalarPoly: no factorization stored");
        return *factors_;
    }
    std::size_t factor_count() const { return factors().size(); }

    /// Horner evaluation of the coefficient form.
    cxd eval(cxd x) const {
        cxd r = 0.0;
        for (std::size_t j = coeffs_.size(); j-- > 0;) r = r * x + coeffs_[j];
        return 1.0 + x * r;
    }

    /// Evaluation through the stored factors.
    cxd eval_factored(cxd x) const {
        cxd r = 1.0;
        for (const cxd b : factors()) r *= 1.0 + b * x;
        return r;
    }

    /// p(A) = I + sum_j a_j A^j by Horner; diagonal A reduces to entrywise
    /// scalar evaluation.
    Matrix eval_at(const Matrix& arg) const {
        if (!arg.is_square()) throw dimension_error("ScalarPoly::eval_at: matrix not square");
        const std::size_t n = arg.rows();
        Matrix r = coeffs_.back() * Matrix::identity(n);
        for (std::size_t j = coeffs_.size() - 1; j-- > 0;) {
            r = arg * r;
            for (std::size_t i = 0; i < n; ++i) r(i, i) += coeffs_[j];
        }
        return Matrix::identity(n) + arg * r;
    }

private:
    std::vector<cxd> coeffs_;
    std::optional<std::vector<cxd>> factors_;
};

enum class MatrixArgMode { doubly_commuting, kronecker };

/// Matrix polynomial P(x) = I + sum_{j=1}^N x^j A_j with identity constant
/// term.  An optional ordered factorization P(x) = prod_j (I + x B_j) may be
/// attached; factor order is evaluation order (leftmost first) and is
/// semantically significant since the factors need not commute.
class MatrixPoly {
public:
    static MatrixPoly from_coeffs(std::size_t n, std::vector<Matrix> coeffs) {
        if (n == 0) throw std::invalid_argument("MatrixPoly: size must be positive");
        for (const Matrix& c : coeffs)
            if (!c.is_square() || c.rows() != n)
                throw dimension_error("MatrixPoly: coefficient size mismatch");
        MatrixPoly p;
        p.n_ = n;
        p.coeffs_ = std::move(coeffs);
        return p;
    }

    /// Expands the ordered product prod_j (I + x B_j); A_1 = sum B_j,
    /// A_2 = sum_{j<k} B_j B_k.  Trailing exactly-zero coefficients are
    /// trimmed, so the resulting degree N never exceeds the factor count d.
    static MatrixPoly from_factors(std::vector<Matrix> factors) {
        if (factors.empty()) throw std::invalid_argument("MatrixPoly: no factors given");
        const std::size_t n = factors.front().rows();
        for (const Matrix& b : factors)
            if (!b.is_square() || b.rows() != n)
                throw dimension_error("MatrixPoly: factor size mismatch");

        std::vector<Matrix> coeffs;
        coeffs.reserve(factors.size());
        for (const Matrix& b : factors) {
            coeffs.push_back(coeffs.empty() ? b : coeffs.back() * b);
            for (std::size_t k = coeffs.size() - 1; k-- > 1;) coeffs[k] += coeffs[k - 1] * b;
            if (coeffs.size() > 1) coeffs[0] += b;
        }
        while (!coeffs.empty() && coeffs.back().max_abs() == 0.0) coeffs.pop_back();

        MatrixPoly p;
        p.n_ = n;
        p.coeffs_ = std::move(coeffs);
        p.factors_ = std::move(factors);
        return p;
    }

    std::size_t size() const noexcept { return n_; }
    std::size_t degree() const noexcept { return coeffs_.size(); }

    /// 1-based coefficient accessor; zero matrix beyond the degree.
    Matrix coeff(std::size_t j) const {
        return j >= 1 && j <= coeffs_.size() ? coeffs_[j - 1] : Matrix::zero(n_, n_);
    }
    Matrix A1() const { return coeff(1); }
    Matrix A2() const { return coeff(2); }

    std::span<const Matrix> coeffs() const noexcept { return coeffs_; }
    bool has_factors() const noexcept { return factors_.has_value(); }
    const std::vector<Matrix>& factors() const {
        if (!factors_) throw std::logic_error("MatrixPoly: no factorization stored");
        return *factors_;
    }
    std::size_t factor_count() const { return factors().size(); }

    Matrix eval(cxd x) const {
        if (coeffs_.empty()) return Matrix::identity(n_);
        Matrix r = coeffs_.back();
        for (std::size_t j = coeffs_.size() - 1; j-- > 0;) r = coeffs_[j] + x * r;
        return Matrix::identity(n_) + x * r;
    }

    /// Ordered product of the stored factors at the point x.
    Matrix eval_factored(cxd x) const {
        Matrix r = Matrix::identity(n_);
        for (const Matrix& b : factors()) r = r * (Matrix::identity(n_) + x * b);
        return r;
    }

    /// P(T) = I + sum_j A_j T^j without any hypothesis check.
    Matrix eval_at_plain(const Matrix& t) const {
        if (!t.is_square() || t.rows() != n_)
            throw dimension_error("MatrixPoly::eval_at_plain: argument must be n x n");
        if (coeffs_.empty()) return Matrix::identity(n_);
        Matrix r = coeffs_.back();
        for (std::size_t j = coeffs_.size() - 1; j-- > 0;) r = coeffs_[j] + r * t;
        return Matrix::identity(n_) + r * t;
    }

    /// Matrix-argument evaluation.  doubly_commuting verifies T A_j = A_j T and
    /// T A_j* = A_j* T for every coefficient (tolerance 1e-10 scaled by
    /// ||T||_F ||A_j||_F) and returns I + sum A_j T^j.  kronecker accepts any
    /// square T of size m and returns I_n (x) I_m + sum A_j (x) T^j.
    Matrix eval_at(const Matrix& t, MatrixArgMode mode) const {
        if (mode == MatrixArgMode::doubly_commuting) {
            require_doubly_commuting(t);
            return eval_at_plain(t);
        }
        if (!t.is_square())
            throw dimension_error("MatrixPoly::eval_at: kronecker argument must be square");
        const std::size_t m = t.rows();
        Matrix acc = Matrix::identity(n_ * m);
        Matrix tpow = Matrix::identity(m);
        for (std::size_t j = 0; j < coeffs_.size(); ++j) {
            tpow = tpow * t;
            acc += kronecker(coeffs_[j], tpow);
        }
        return acc;
    }

    /// Largest scaled commutation residual of T against the coefficients and
    /// their adjoints, with the index where it occurs.
    std::pair<double, std::size_t> commutation_residual(const Matrix& t) const {
        const double tn = frobenius_norm(t);
        double worst = 0.0;
        std::size_t worst_index = 0;
        for (std::size_t j = 0; j < coeffs_.size(); ++j) {
            const Matrix& a = coeffs_[j];
            const double scale = 1.0 + tn * frobenius_norm(a);
            const double res =
                std::max(frobenius_norm(t * a - a * t),
                         frobenius_norm(t * a.adjoint() - a.adjoint() * t)) /
                scale;
            if (res > worst) {
                worst = res;
                worst_index = j + 1;
            }
        }
        return {worst, worst_index};
    }

    bool doubly_commutes(const Matrix& t) const {
        if (!t.is_square() || t.rows() != n_) return false;
        return commutation_residual(t).first <= 1e-10;
    }

    /// Residual check behind the doubly-commuting mode; throws hypothesis_error
    /// naming the worst-offending coefficient.
    void require_doubly_commuting(const Matrix& t) const {
        if (!t.is_square() || t.rows() != n_)
            throw dimension_error("MatrixPoly::eval_at: doubly-commuting argument must be n x n");
        const auto [res, index] = commutation_residual(t);
        if (res > 1e-10)
            throw hypothesis_error("doubly-commuting evaluation: coefficient " +
                                   std::to_string(index) + " fails commutation, residual " +
                                   std::to_string(res));
    }

private:
    std::size_t n_ = 0;
    std::vector<Matrix> coeffs_;
    std::optional<std::vector<Matrix>> factors_;
};

}  // namespace szasz
