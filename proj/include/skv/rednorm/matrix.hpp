#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "skv/errors.hpp"

namespace skv {

/// Dense row-major matrix over a ring T. T needs +, -, * and ==; zero
/// entries are supplied by the caller because some rings (group rings) have
/// no parameterless zero.
template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, const T& fill) : r_(rows), c_(cols), d_(rows * cols, fill) {}

    static Matrix identity(std::size_t n, const T& zero, const T& one) {
        Matrix m(n, n, zero);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = one;
        return m;
    }

    std::size_t rows() const { return r_; }
    std::size_t cols() const { return c_; }
    bool is_square() const { return r_ == c_; }

    T& operator()(std::size_t i, std::size_t j) { return d_[i * c_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return d_[i * c_ + j]; }

    template <class F>
    auto map(F&& f) const {
        using U = decltype(f(d_[0]));
        Matrix<U> out;
        out.r_ = r_;
        out.c_ = c_;
        out.d_.reserve(d_.size());
        for (const auto& x : d_) out.d_.push_back(f(x));
        return out;
    }

    Matrix transpose() const {
        Matrix t;
        t.r_ = c_;
        t.c_ = r_;
        t.d_ = d_;
        for (std::size_t i = 0; i < r_; ++i)
            for (std::size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    /// Rows listed in `idx`, in that order.
    Matrix select_rows(const std::vector<std::size_t>& idx) const {
        Matrix s;
        s.r_ = idx.size();
        s.c_ = c_;
        for (auto i : idx) {
            if (i >= r_) throw InvalidArgument("row index out of range");
            for (std::size_t j = 0; j < c_; ++j) s.d_.push_back((*this)(i, j));
        }
        return s;
    }

    Matrix& operator+=(const Matrix& o) {
        check_shape(o);
        for (std::size_t i = 0; i < d_.size(); ++i) d_[i] += o.d_[i];
        return *this;
    }
    Matrix& operator-=(const Matrix& o) {
        check_shape(o);
        for (std::size_t i = 0; i < d_.size(); ++i) d_[i] -= o.d_[i];
        return *this;
    }
    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.c_ != b.r_) throw InvalidArgument("matrix shapes do not compose");
        if (a.c_ == 0) throw InvalidArgument("empty inner dimension");
        Matrix p;
        p.r_ = a.r_;
        p.c_ = b.c_;
        p.d_.reserve(a.r_ * b.c_);
        for (std::size_t i = 0; i < a.r_; ++i)
            for (std::size_t j = 0; j < b.c_; ++j) {
                T s = a(i, 0) * b(0, j);
                for (std::size_t k = 1; k < a.c_; ++k) s += a(i, k) * b(k, j);
                p.d_.push_back(std::move(s));
            }
        return p;
    }

    /// Every entry multiplied on the left by s.
    Matrix scaled_left(const T& s) const {
        Matrix m = *this;
        for (auto& x : m.d_) x = s * x;
        return m;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) { return a.r_ == b.r_ && a.c_ == b.c_ && a.d_ == b.d_; }

    const std::vector<T>& data() const { return d_; }

private:
    template <class>
    friend class Matrix;

    void check_shape(const Matrix& o) const {
        if (r_ != o.r_ || c_ != o.c_) throw InvalidArgument("matrix shapes differ");
    }

    std::size_t r_ = 0, c_ = 0;
    std::vector<T> d_;
};

/// Characteristic polynomial det(X I - M) over a commutative ring, by
/// Berkowitz's division-free algorithm. Coefficients low degree first; the
/// leading coefficient is `one`.
template <class T>
std::vector<T> charpoly(const Matrix<T>& m, const T& zero, const T& one) {
    if (!m.is_square()) throw InvalidArgument("characteristic polynomial of a non-square matrix");
    const std::size_t n = m.rows();
    // p holds coefficients highest degree first while iterating.
    std::vector<T> p{one};
    for (std::size_t r = 0; r < n; ++r) {
        // Leading r x r block A, column C = m[0..r)[r], row R = m[r][0..r), a = m[r][r].
        // Toeplitz column t = (1, -a, -R C, -R A C, ..., -R A^(r-1) C).
        std::vector<T> t;
        t.reserve(r + 2);
        t.push_back(one);
        t.push_back(zero - m(r, r));
        std::vector<T> v(r, zero);  // A^k C
        for (std::size_t i = 0; i < r; ++i) v[i] = m(i, r);
        for (std::size_t k = 0; k < r; ++k) {
            T s = zero;
            for (std::size_t i = 0; i < r; ++i) s += m(r, i) * v[i];
            t.push_back(zero - s);
            if (k + 1 < r) {
                std::vector<T> w(r, zero);
                for (std::size_t i = 0; i < r; ++i)
                    for (std::size_t j = 0; j < r; ++j) w[i] += m(i, j) * v[j];
                v = std::move(w);
            }
        }
        // new p (length r + 2) = Toeplitz(t) * p
        std::vector<T> q(r + 2, zero);
        for (std::size_t i = 0; i < r + 2; ++i)
            for (std::size_t j = 0; j <= i && j < p.size(); ++j) q[i] += t[i - j] * p[j];
        p = std::move(q);
    }
    return std::vector<T>(p.rbegin(), p.rend());
}

/// Determinant via the characteristic polynomial: det M = (-1)^n charpoly(0).
template <class T>
T determinant(const Matrix<T>& m, const T& zero, const T& one) {
    if (m.rows() == 0) return one;
    auto p = charpoly(m, zero, one);
    return m.rows() % 2 == 0 ? p[0] : zero - p[0];
}

}  // namespace skv
