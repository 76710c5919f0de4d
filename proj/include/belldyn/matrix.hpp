#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>

namespace belldyn {

using Complex = std::complex<double>;

// Dense N x N complex matrix with value semantics. Everything the library
// touches is 2x2 (single-qubit operators) or 4x4 (two-qubit operators), so
// storage is a flat std::array and all operations are plain loops.
template <std::size_t N>
class Matrix {
  public:
    Matrix() : e_{} {}

    static Matrix identity() {
        Matrix m;
        for (std::size_t i = 0; i < N; ++i)
            m(i, i) = 1.0;
        return m;
    }

    Complex &operator()(std::size_t r, std::size_t c) { return e_[r * N + c]; }
    const Complex &operator()(std::size_t r, std::size_t c) const {
        return e_[r * N + c];
    }

    static constexpr std::size_t dim() { return N; }

    Matrix operator+(const Matrix &o) const {
        Matrix m;
        for (std::size_t i = 0; i < N * N; ++i)
            m.e_[i] = e_[i] + o.e_[i];
        return m;
    }

    Matrix operator-(const Matrix &o) const {
        Matrix m;
        for (std::size_t i = 0; i < N * N; ++i)
            m.e_[i] = e_[i] - o.e_[i];
        return m;
    }

    Matrix operator*(const Matrix &o) const {
        Matrix m;
        for (std::size_t r = 0; r < N; ++r)
            for (std::size_t k = 0; k < N; ++k) {
                const Complex a = (*this)(r, k);
                if (a == Complex{})
                    continue;
                for (std::size_t c = 0; c < N; ++c)
                    m(r, c) += a * o(k, c);
            }
        return m;
    }

    Matrix &operator+=(const Matrix &o) {
        for (std::size_t i = 0; i < N * N; ++i)
            e_[i] += o.e_[i];
        return *this;
    }

    friend Matrix operator*(const Complex &s, const Matrix &m) {
        Matrix r;
        for (std::size_t i = 0; i < N * N; ++i)
            r.e_[i] = s * m.e_[i];
        return r;
    }

    friend Matrix operator*(double s, const Matrix &m) {
        return Complex(s, 0.0) * m;
    }

    Matrix adjoint() const {
        Matrix m;
        for (std::size_t r = 0; r < N; ++r)
            for (std::size_t c = 0; c < N; ++c)
                m(r, c) = std::conj((*this)(c, r));
        return m;
    }

    Complex trace() const {
        Complex t;
        for (std::size_t i = 0; i < N; ++i)
            t += (*this)(i, i);
        return t;
    }

    // Largest entry modulus.
    double max_abs() const {
        double m = 0.0;
        for (const auto &v : e_)
            m = std::max(m, std::abs(v));
        return m;
    }

    double max_abs_diff(const Matrix &o) const {
        double m = 0.0;
        for (std::size_t i = 0; i < N * N; ++i)
            m = std::max(m, std::abs(e_[i] - o.e_[i]));
        return m;
    }

    bool all_finite() const {
        for (const auto &v : e_)
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                return false;
        return true;
    }

  private:
    std::array<Complex, N * N> e_;
};

using Matrix2 = Matrix<2>;
using Matrix4 = Matrix<4>;

// max |m - m†|, zero for an exactly Hermitian matrix.
template <std::size_t N>
inline double hermiticity_defect(const Matrix<N> &m) {
    double d = 0.0;
    for (std::size_t r = 0; r < N; ++r)
        for (std::size_t c = r; c < N; ++c)
            d = std::max(d, std::abs(m(r, c) - std::conj(m(c, r))));
    return d;
}

inline Matrix2 pauli_x() {
    Matrix2 m;
    m(0, 1) = 1.0;
    m(1, 0) = 1.0;
    return m;
}

inline Matrix2 pauli_y() {
    Matrix2 m;
    m(0, 1) = Complex(0.0, -1.0);
    m(1, 0) = Complex(0.0, 1.0);
    return m;
}

inline Matrix2 pauli_z() {
    Matrix2 m;
    m(0, 0) = 1.0;
    m(1, 1) = -1.0;
    return m;
}

// sigma_1, sigma_2, sigma_3 by index; 0 gives the identity.
inline Matrix2 pauli(int i) {
    switch (i) {
    case 0:
        return Matrix2::identity();
    case 1:
        return pauli_x();
    case 2:
        return pauli_y();
    default:
        return pauli_z();
    }
}

// Kronecker product in the computational-basis ordering |00>,|01>,|10>,|11>:
// the first factor indexes the first qubit.
inline Matrix4 kron(const Matrix2 &a, const Matrix2 &b) {
    Matrix4 m;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            for (std::size_t k = 0; k < 2; ++k)
                for (std::size_t l = 0; l < 2; ++l)
                    m(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
    return m;
}

} // namespace belldyn
