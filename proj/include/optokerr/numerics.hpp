#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace optokerr {

using Complex = std::complex<double>;

// Dense 4x4 real matrix, row-major.
class Mat4 {
public:
    Mat4() = default;
    explicit Mat4(const std::array<double, 16>& entries) : a_(entries) {}

    static Mat4 identity();
    static Mat4 diagonal(double d0, double d1, double d2, double d3);

    double& operator()(int r, int c) { return a_[static_cast<std::size_t>(4 * r + c)]; }
    double operator()(int r, int c) const { return a_[static_cast<std::size_t>(4 * r + c)]; }

    const std::array<double, 16>& entries() const { return a_; }

    Mat4 transposed() const;
    double trace() const;
    double frobenius_norm() const;
    double max_abs() const;
    bool is_finite() const;

    friend Mat4 operator+(const Mat4& a, const Mat4& b);
    friend Mat4 operator-(const Mat4& a, const Mat4& b);
    friend Mat4 operator*(const Mat4& a, const Mat4& b);
    friend Mat4 operator*(double s, const Mat4& a);
    bool operator==(const Mat4&) const = default;

private:
    std::array<double, 16> a_{};
};

// Square matrix for the small linear systems (n <= 16), row-major.
class SquareMatrix {
public:
    explicit SquareMatrix(std::size_t n) : n_(n), a_(n * n, 0.0) {}

    std::size_t size() const { return n_; }
    double& operator()(std::size_t r, std::size_t c) { return a_[r * n_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return a_[r * n_ + c]; }
    std::vector<double> multiply(std::span<const double> x) const;
    double max_abs() const;

private:
    std::size_t n_;
    std::vector<double> a_;
};

inline constexpr std::size_t max_dense_size = 16;

// All real roots, ascending, near-coincident roots merged (relative gap
// 1e-6 (1 + |r|)). Degrades to quadratic/linear when the leading
// coefficients are exactly zero. Throws AllCoefficientsZero.
std::vector<double> cubic_real_roots(double c3, double c2, double c1, double c0);

// Eigenvalues of a real 4x4 matrix via balancing, Hessenberg reduction and
// Francis double-shift QR. Complex eigenvalues come in conjugate pairs.
// Throws NoConvergence.
std::array<Complex, 4> eig4(const Mat4& m);

// Characteristic polynomial det(lambda I - m) = l^4 + c[0] l^3 + c[1] l^2 + c[2] l + c[3].
std::array<double, 4> characteristic_polynomial(const Mat4& m);

double det2(double a, double b, double c, double d);
double det4(const Mat4& m);

// Gaussian elimination with partial pivoting and one step of iterative
// refinement. Throws SingularMatrix.
std::vector<double> solve_dense(const SquareMatrix& a, std::span<const double> b);

}  // namespace optokerr
