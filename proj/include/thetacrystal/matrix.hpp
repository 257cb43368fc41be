#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "exact.hpp"

namespace tc {

// zero/one with the same "shape" as a prototype (matters for CycElem orders)
template <class T> T zero_like(const T&) { return T(0); }
template <class T> T one_like(const T&) { return T(1); }
inline CycElem zero_like(const CycElem& x) { return CycElem(x.order()); }
inline CycElem one_like(const CycElem& x) { return CycElem(x.order(), Rational(1)); }

template <class T> bool is_zero(const T& x) { return x == T(0); }
inline bool is_zero(const Rational& x) { return x.is_zero(); }
inline bool is_zero(const QuadElem& x) { return x.is_zero(); }
inline bool is_zero(const CycElem& x) { return x.is_zero(); }

template <class T, std::size_t N>
using Vec = std::array<T, N>;
template <class T, std::size_t R, std::size_t C = R>
using FMat = std::array<std::array<T, C>, R>;

using Vec3Q = Vec<QuadElem, 3>;
using Mat3Q = FMat<QuadElem, 3>;
using Vec3i = Vec<long long, 3>;
using Mat3i = FMat<long long, 3>;
using Mat3R = FMat<Rational, 3>;
using Mat6i = FMat<long long, 6>;

template <class T, std::size_t N>
FMat<T, N> identity_fixed() {
    FMat<T, N> m{};
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) m[i][j] = T(i == j ? 1 : 0);
    return m;
}

template <class T, std::size_t R, std::size_t K, std::size_t C>
FMat<T, R, C> operator*(const FMat<T, R, K>& a, const FMat<T, K, C>& b) {
    FMat<T, R, C> m{};
    for (std::size_t i = 0; i < R; ++i)
        for (std::size_t j = 0; j < C; ++j) {
            T s = T(0);
            for (std::size_t t = 0; t < K; ++t) s = s + a[i][t] * b[t][j];
            m[i][j] = s;
        }
    return m;
}

template <class T, std::size_t R, std::size_t C>
Vec<T, R> operator*(const FMat<T, R, C>& a, const Vec<T, C>& v) {
    Vec<T, R> r{};
    for (std::size_t i = 0; i < R; ++i) {
        T s = T(0);
        for (std::size_t t = 0; t < C; ++t) s = s + a[i][t] * v[t];
        r[i] = s;
    }
    return r;
}

template <class T, std::size_t R, std::size_t C>
FMat<T, R, C> operator+(const FMat<T, R, C>& a, const FMat<T, R, C>& b) {
    FMat<T, R, C> m{};
    for (std::size_t i = 0; i < R; ++i)
        for (std::size_t j = 0; j < C; ++j) m[i][j] = a[i][j] + b[i][j];
    return m;
}

template <class T, std::size_t R, std::size_t C>
FMat<T, R, C> operator-(const FMat<T, R, C>& a, const FMat<T, R, C>& b) {
    FMat<T, R, C> m{};
    for (std::size_t i = 0; i < R; ++i)
        for (std::size_t j = 0; j < C; ++j) m[i][j] = a[i][j] - b[i][j];
    return m;
}

template <class T, std::size_t R, std::size_t C>
FMat<T, R, C> scale(const T& s, const FMat<T, R, C>& a) {
    FMat<T, R, C> m{};
    for (std::size_t i = 0; i < R; ++i)
        for (std::size_t j = 0; j < C; ++j) m[i][j] = s * a[i][j];
    return m;
}

template <class T, std::size_t R, std::size_t C>
FMat<T, C, R> transpose(const FMat<T, R, C>& a) {
    FMat<T, C, R> m{};
    for (std::size_t i = 0; i < R; ++i)
        for (std::size_t j = 0; j < C; ++j) m[j][i] = a[i][j];
    return m;
}

template <class T>
T det3(const FMat<T, 3>& m) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

template <class T>
FMat<T, 3> adjugate3(const FMat<T, 3>& m) {
    FMat<T, 3> a{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            int r0 = (j + 1) % 3, r1 = (j + 2) % 3, c0 = (i + 1) % 3, c1 = (i + 2) % 3;
            a[i][j] = m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0];
        }
    return a;
}

template <class T>
FMat<T, 3> inverse3(const FMat<T, 3>& m) {
    T d = det3(m);
    if (is_zero(d)) throw std::domain_error("singular 3x3 matrix");
    FMat<T, 3> a = adjugate3(m);
    for (auto& row : a)
        for (auto& x : row) x = x / d;
    return a;
}

// integer 3x3 inverse for det = +-1
inline Mat3i inverse_unimodular(const Mat3i& m) {
    long long d = det3(m);
    if (d != 1 && d != -1) throw std::domain_error("matrix is not unimodular");
    Mat3i a = adjugate3(m);
    for (auto& row : a)
        for (auto& x : row) x *= d;
    return a;
}

template <class T, std::size_t R, std::size_t C>
bool all_zero(const FMat<T, R, C>& a) {
    for (const auto& row : a)
        for (const auto& x : row)
            if (!is_zero(x)) return false;
    return true;
}

// Dense row-major matrix over a field-like T.
template <class T>
struct Mat {
    int rows = 0, cols = 0;
    std::vector<T> a;

    Mat() = default;
    Mat(int r, int c, const T& fill) : rows(r), cols(c), a(std::size_t(r) * c, fill) {}

    T& operator()(int i, int j) { return a[std::size_t(i) * cols + j]; }
    const T& operator()(int i, int j) const { return a[std::size_t(i) * cols + j]; }

    static Mat identity(int n, const T& zero, const T& one) {
        Mat m(n, n, zero);
        for (int i = 0; i < n; ++i) m(i, i) = one;
        return m;
    }

    friend bool operator==(const Mat& x, const Mat& y) { return x.rows == y.rows && x.cols == y.cols && x.a == y.a; }
    friend bool operator!=(const Mat& x, const Mat& y) { return !(x == y); }
};

template <class T>
Mat<T> matmul(const Mat<T>& x, const Mat<T>& y) {
    if (x.cols != y.rows) throw std::invalid_argument("matmul: shape mismatch");
    T z = zero_like(x.a.front());
    Mat<T> m(x.rows, y.cols, z);
    for (int i = 0; i < x.rows; ++i)
        for (int t = 0; t < x.cols; ++t) {
            const T& xv = x(i, t);
            if (is_zero(xv)) continue;
            for (int j = 0; j < y.cols; ++j) {
                const T& yv = y(t, j);
                if (!is_zero(yv)) m(i, j) += xv * yv;
            }
        }
    return m;
}

// Row-reduce in place; returns the rank. Pivot columns are recorded if requested.
template <class T>
int row_reduce(Mat<T>& m, std::vector<int>* pivots = nullptr) {
    int rank = 0;
    for (int col = 0; col < m.cols && rank < m.rows; ++col) {
        int piv = -1;
        for (int r = rank; r < m.rows; ++r)
            if (!is_zero(m(r, col))) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        if (piv != rank)
            for (int j = 0; j < m.cols; ++j) std::swap(m(piv, j), m(rank, j));
        T inv = one_like(m(rank, col)) / m(rank, col);
        for (int j = col; j < m.cols; ++j) m(rank, j) = m(rank, j) * inv;
        for (int r = 0; r < m.rows; ++r) {
            if (r == rank || is_zero(m(r, col))) continue;
            T f = m(r, col);
            for (int j = col; j < m.cols; ++j)
                if (!is_zero(m(rank, j))) m(r, j) = m(r, j) - f * m(rank, j);
        }
        if (pivots) pivots->push_back(col);
        ++rank;
    }
    return rank;
}

template <class T>
int rank(Mat<T> m) {
    return row_reduce(m);
}

// Solve A X = B (A square, invertible); nullopt if singular.
template <class T>
std::optional<Mat<T>> solve(const Mat<T>& A, const Mat<T>& B) {
    if (A.rows != A.cols || A.rows != B.rows) throw std::invalid_argument("solve: shape mismatch");
    T z = zero_like(A.a.front());
    Mat<T> aug(A.rows, A.cols + B.cols, z);
    for (int i = 0; i < A.rows; ++i) {
        for (int j = 0; j < A.cols; ++j) aug(i, j) = A(i, j);
        for (int j = 0; j < B.cols; ++j) aug(i, A.cols + j) = B(i, j);
    }
    std::vector<int> piv;
    int r = row_reduce(aug, &piv);
    if (r < A.rows || piv.back() >= A.cols) return std::nullopt;
    Mat<T> X(A.rows, B.cols, z);
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < B.cols; ++j) X(i, j) = aug(i, A.cols + j);
    return X;
}

}  // namespace tc
