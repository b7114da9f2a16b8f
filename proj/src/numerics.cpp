#include "optokerr/numerics.hpp"

#include "optokerr/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <utility>

namespace optokerr {

Mat4 Mat4::identity() { return diagonal(1.0, 1.0, 1.0, 1.0); }

Mat4 Mat4::diagonal(double d0, double d1, double d2, double d3) {
    Mat4 m;
    m(0, 0) = d0;
    m(1, 1) = d1;
    m(2, 2) = d2;
    m(3, 3) = d3;
    return m;
}

Mat4 Mat4::transposed() const {
    Mat4 t;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) t(c, r) = (*this)(r, c);
    return t;
}

double Mat4::trace() const { return a_[0] + a_[5] + a_[10] + a_[15]; }

double Mat4::frobenius_norm() const {
    double s = 0.0;
    for (double x : a_) s += x * x;
    return std::sqrt(s);
}

double Mat4::max_abs() const {
    double m = 0.0;
    for (double x : a_) m = std::max(m, std::abs(x));
    return m;
}

bool Mat4::is_finite() const {
    return std::all_of(a_.begin(), a_.end(), [](double x) { return std::isfinite(x); });
}

Mat4 operator+(const Mat4& a, const Mat4& b) {
    Mat4 r;
    for (std::size_t i = 0; i < 16; ++i) r.a_[i] = a.a_[i] + b.a_[i];
    return r;
}

Mat4 operator-(const Mat4& a, const Mat4& b) {
    Mat4 r;
    for (std::size_t i = 0; i < 16; ++i) r.a_[i] = a.a_[i] - b.a_[i];
    return r;
}

Mat4 operator*(const Mat4& a, const Mat4& b) {
    Mat4 r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            double s = 0.0;
            for (int k = 0; k < 4; ++k) s += a(i, k) * b(k, j);
            r(i, j) = s;
        }
    return r;
}

Mat4 operator*(double s, const Mat4& a) {
    Mat4 r;
    for (std::size_t i = 0; i < 16; ++i) r.a_[i] = s * a.a_[i];
    return r;
}

std::vector<double> SquareMatrix::multiply(std::span<const double> x) const {
    std::vector<double> y(n_, 0.0);
    for (std::size_t r = 0; r < n_; ++r) {
        double s = 0.0;
        for (std::size_t c = 0; c < n_; ++c) s += (*this)(r, c) * x[c];
        y[r] = s;
    }
    return y;
}

double SquareMatrix::max_abs() const {
    double m = 0.0;
    for (double x : a_) m = std::max(m, std::abs(x));
    return m;
}

// ---------------------------------------------------------------------------
// Cubic

namespace {

double eval_cubic(double c3, double c2, double c1, double c0, double x) {
    return ((c3 * x + c2) * x + c1) * x + c0;
}

double newton_polish(double c3, double c2, double c1, double c0, double x) {
    double fx = eval_cubic(c3, c2, c1, c0, x);
    for (int it = 0; it < 4 && fx != 0.0; ++it) {
        const double df = (3.0 * c3 * x + 2.0 * c2) * x + c1;
        if (df == 0.0 || !std::isfinite(df)) break;
        const double next = x - fx / df;
        const double fnext = eval_cubic(c3, c2, c1, c0, next);
        if (!(std::abs(fnext) < std::abs(fx))) break;
        x = next;
        fx = fnext;
    }
    return x;
}

std::vector<double> quadratic_real_roots(double a, double b, double c) {
    if (a == 0.0) return {-c / b};
    const double disc = b * b - 4.0 * a * c;
    if (disc < 0.0) return {};
    const double sq = std::sqrt(disc);
    const double q = -0.5 * (b + std::copysign(sq, b));
    if (q == 0.0) return {0.0, 0.0};
    return {q / a, c / q};
}

// Roots of the monic depressed-free form y^3 + a y^2 + b y + c with O(1)
// coefficients.
std::vector<double> monic_cubic_roots(double a, double b, double c) {
    const double shift = -a / 3.0;
    const double p = b - a * a / 3.0;
    const double q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
    const double half_q = 0.5 * q;
    const double third_p = p / 3.0;
    const double disc = half_q * half_q + third_p * third_p * third_p;

    if (disc > 0.0) {
        const double t = -(half_q + std::copysign(std::sqrt(disc), half_q));
        const double u = std::cbrt(t);
        const double root = (u != 0.0) ? u - third_p / u : 0.0;
        return {root + shift};
    }
    if (p == 0.0) return {shift, shift, shift};
    const double r = std::sqrt(-third_p);
    const double cos_arg = std::clamp(half_q / (third_p * r), -1.0, 1.0);
    const double phi = std::acos(cos_arg) / 3.0;
    constexpr double third_turn = 2.0 * std::numbers::pi / 3.0;
    return {2.0 * r * std::cos(phi) + shift, 2.0 * r * std::cos(phi - third_turn) + shift,
            2.0 * r * std::cos(phi + third_turn) + shift};
}

}  // namespace

std::vector<double> cubic_real_roots(double c3, double c2, double c1, double c0) {
    if (c3 == 0.0 && c2 == 0.0 && c1 == 0.0) {
        throw NumericalError(NumericalFailure::AllCoefficientsZero,
                             "cubic has no variable terms");
    }

    std::vector<double> roots;
    if (c3 == 0.0) {
        roots = quadratic_real_roots(c2, c1, c0);
    } else {
        const double a = c2 / c3;
        const double b = c1 / c3;
        const double c = c0 / c3;
        // rescale x = s y so the monic coefficients are O(1)
        double s = std::max({std::abs(a), std::sqrt(std::abs(b)), std::cbrt(std::abs(c))});
        if (s == 0.0 || !std::isfinite(s)) s = 1.0;
        roots = monic_cubic_roots(a / s, b / (s * s), c / (s * s * s));
        for (double& r : roots) r *= s;
    }

    for (double& r : roots) r = newton_polish(c3, c2, c1, c0, r);
    std::sort(roots.begin(), roots.end());

    std::vector<double> merged;
    for (double r : roots) {
        if (!merged.empty() && std::abs(r - merged.back()) <= 1e-6 * (1.0 + std::abs(r))) {
            const double prev = merged.back();
            if (std::abs(eval_cubic(c3, c2, c1, c0, r)) <
                std::abs(eval_cubic(c3, c2, c1, c0, prev))) {
                merged.back() = r;
            }
            continue;
        }
        merged.push_back(r);
    }
    return merged;
}

// ---------------------------------------------------------------------------
// Eigenvalues

namespace {

using Block = std::array<std::array<double, 4>, 4>;
constexpr int n4 = 4;

void balance(Block& a) {
    constexpr double radix = 2.0;
    constexpr double sqrdx = radix * radix;
    bool done = false;
    while (!done) {
        done = true;
        for (int i = 0; i < n4; ++i) {
            double r = 0.0;
            double c = 0.0;
            for (int j = 0; j < n4; ++j) {
                if (j == i) continue;
                c += std::abs(a[j][i]);
                r += std::abs(a[i][j]);
            }
            if (c == 0.0 || r == 0.0) continue;
            double g = r / radix;
            double f = 1.0;
            const double s = c + r;
            while (c < g) {
                f *= radix;
                c *= sqrdx;
            }
            g = r * radix;
            while (c > g) {
                f /= radix;
                c /= sqrdx;
            }
            if ((c + r) / f < 0.95 * s) {
                done = false;
                g = 1.0 / f;
                for (int j = 0; j < n4; ++j) a[i][j] *= g;
                for (int j = 0; j < n4; ++j) a[j][i] *= f;
            }
        }
    }
}

// Reduction to upper Hessenberg form by stabilized elementary similarities.
void to_hessenberg(Block& a) {
    for (int m = 1; m < n4 - 1; ++m) {
        double x = 0.0;
        int pivot = m;
        for (int j = m; j < n4; ++j) {
            if (std::abs(a[j][m - 1]) > std::abs(x)) {
                x = a[j][m - 1];
                pivot = j;
            }
        }
        if (pivot != m) {
            for (int j = m - 1; j < n4; ++j) std::swap(a[pivot][j], a[m][j]);
            for (int j = 0; j < n4; ++j) std::swap(a[j][pivot], a[j][m]);
        }
        if (x == 0.0) continue;
        for (int i = m + 1; i < n4; ++i) {
            double y = a[i][m - 1];
            if (y == 0.0) continue;
            y /= x;
            a[i][m - 1] = y;
            for (int j = m; j < n4; ++j) a[i][j] -= y * a[m][j];
            for (int j = 0; j < n4; ++j) a[j][m] += y * a[j][i];
        }
    }
    for (int i = 2; i < n4; ++i)
        for (int j = 0; j < i - 1; ++j) a[i][j] = 0.0;
}

double sign_of(double magnitude, double sign_source) {
    return sign_source >= 0.0 ? std::abs(magnitude) : -std::abs(magnitude);
}

// Francis double-shift QR on an upper Hessenberg matrix.
std::array<Complex, 4> hessenberg_qr(Block& a) {
    constexpr double eps = std::numeric_limits<double>::epsilon();
    constexpr int max_iterations = 60;
    std::array<Complex, 4> w{};

    double anorm = 0.0;
    for (int i = 0; i < n4; ++i)
        for (int j = std::max(i - 1, 0); j < n4; ++j) anorm += std::abs(a[i][j]);

    int nn = n4 - 1;
    double t = 0.0;
    while (nn >= 0) {
        int its = 0;
        int l = 0;
        do {
            for (l = nn; l > 0; --l) {
                double s = std::abs(a[l - 1][l - 1]) + std::abs(a[l][l]);
                if (s == 0.0) s = anorm;
                if (std::abs(a[l][l - 1]) <= eps * s) {
                    a[l][l - 1] = 0.0;
                    break;
                }
            }
            double x = a[nn][nn];
            if (l == nn) {
                w[static_cast<std::size_t>(nn)] = x + t;
                --nn;
            } else {
                double y = a[nn - 1][nn - 1];
                double ww = a[nn][nn - 1] * a[nn - 1][nn];
                if (l == nn - 1) {
                    const double p = 0.5 * (y - x);
                    const double q = p * p + ww;
                    double z = std::sqrt(std::abs(q));
                    x += t;
                    const auto hi = static_cast<std::size_t>(nn);
                    if (q >= 0.0) {
                        z = p + sign_of(z, p);
                        w[hi - 1] = w[hi] = x + z;
                        if (z != 0.0) w[hi] = x - ww / z;
                    } else {
                        w[hi] = Complex(x + p, -z);
                        w[hi - 1] = std::conj(w[hi]);
                    }
                    nn -= 2;
                } else {
                    if (its == max_iterations) {
                        throw NumericalError(NumericalFailure::NoConvergence,
                                             "eig4: QR iteration cap exceeded");
                    }
                    if (its == 10 || its == 20 || its == 40) {
                        t += x;
                        for (int i = 0; i <= nn; ++i) a[i][i] -= x;
                        const double s = std::abs(a[nn][nn - 1]) + std::abs(a[nn - 1][nn - 2]);
                        y = x = 0.75 * s;
                        ww = -0.4375 * s * s;
                    }
                    ++its;
                    int m = nn - 2;
                    double p = 0.0, q = 0.0, r = 0.0, z = 0.0;
                    for (; m >= l; --m) {
                        z = a[m][m];
                        r = x - z;
                        double s = y - z;
                        p = (r * s - ww) / a[m + 1][m] + a[m][m + 1];
                        q = a[m + 1][m + 1] - z - r - s;
                        r = a[m + 2][m + 1];
                        s = std::abs(p) + std::abs(q) + std::abs(r);
                        p /= s;
                        q /= s;
                        r /= s;
                        if (m == l) break;
                        const double u = std::abs(a[m][m - 1]) * (std::abs(q) + std::abs(r));
                        const double v =
                            std::abs(p) * (std::abs(a[m - 1][m - 1]) + std::abs(z) +
                                           std::abs(a[m + 1][m + 1]));
                        if (u <= eps * v) break;
                    }
                    for (int i = m; i < nn - 1; ++i) {
                        a[i + 2][i] = 0.0;
                        if (i != m) a[i + 2][i - 1] = 0.0;
                    }
                    for (int k = m; k < nn; ++k) {
                        if (k != m) {
                            p = a[k][k - 1];
                            q = a[k + 1][k - 1];
                            r = (k + 1 != nn) ? a[k + 2][k - 1] : 0.0;
                            x = std::abs(p) + std::abs(q) + std::abs(r);
                            if (x != 0.0) {
                                p /= x;
                                q /= x;
                                r /= x;
                            }
                        }
                        const double s = sign_of(std::sqrt(p * p + q * q + r * r), p);
                        if (s == 0.0) continue;
                        if (k == m) {
                            if (l != m) a[k][k - 1] = -a[k][k - 1];
                        } else {
                            a[k][k - 1] = -s * x;
                        }
                        p += s;
                        x = p / s;
                        y = q / s;
                        z = r / s;
                        q /= p;
                        r /= p;
                        for (int j = k; j <= nn; ++j) {
                            p = a[k][j] + q * a[k + 1][j];
                            if (k + 1 != nn) {
                                p += r * a[k + 2][j];
                                a[k + 2][j] -= p * z;
                            }
                            a[k + 1][j] -= p * y;
                            a[k][j] -= p * x;
                        }
                        const int mmin = nn < k + 3 ? nn : k + 3;
                        for (int i = l; i <= mmin; ++i) {
                            p = x * a[i][k] + y * a[i][k + 1];
                            if (k + 1 != nn) {
                                p += z * a[i][k + 2];
                                a[i][k + 2] -= p * r;
                            }
                            a[i][k + 1] -= p * q;
                            a[i][k] -= p;
                        }
                    }
                }
            }
        } while (l + 1 < nn);
    }
    return w;
}

}  // namespace

std::array<Complex, 4> eig4(const Mat4& m) {
    if (!m.is_finite()) {
        throw NumericalError(NumericalFailure::NoConvergence, "eig4: non-finite matrix entry");
    }
    Block a{};
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) a[r][c] = m(r, c);
    balance(a);
    to_hessenberg(a);
    auto w = hessenberg_qr(a);
    std::sort(w.begin(), w.end(), [](const Complex& x, const Complex& y) {
        if (x.real() != y.real()) return x.real() < y.real();
        return x.imag() < y.imag();
    });
    return w;
}

std::array<double, 4> characteristic_polynomial(const Mat4& m) {
    // Faddeev-LeVerrier
    std::array<double, 4> c{};
    Mat4 mk = m;
    c[0] = -mk.trace();
    for (int k = 2; k <= 4; ++k) {
        mk = m * (mk + c[static_cast<std::size_t>(k - 2)] * Mat4::identity());
        c[static_cast<std::size_t>(k - 1)] = -mk.trace() / k;
    }
    return c;
}

double det2(double a, double b, double c, double d) { return a * d - b * c; }

double det4(const Mat4& m) {
    Block a{};
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) a[r][c] = m(r, c);
    double det = 1.0;
    for (int k = 0; k < 4; ++k) {
        int piv = k;
        for (int i = k + 1; i < 4; ++i)
            if (std::abs(a[i][k]) > std::abs(a[piv][k])) piv = i;
        if (a[piv][k] == 0.0) return 0.0;
        if (piv != k) {
            std::swap(a[piv], a[k]);
            det = -det;
        }
        det *= a[k][k];
        for (int i = k + 1; i < 4; ++i) {
            const double f = a[i][k] / a[k][k];
            for (int j = k + 1; j < 4; ++j) a[i][j] -= f * a[k][j];
        }
    }
    return det;
}

// ---------------------------------------------------------------------------
// Dense solve

namespace {

struct LuFactors {
    SquareMatrix lu;
    std::vector<std::size_t> perm;
};

LuFactors lu_factor(const SquareMatrix& a) {
    const std::size_t n = a.size();
    LuFactors f{a, std::vector<std::size_t>(n)};
    for (std::size_t i = 0; i < n; ++i) f.perm[i] = i;
    const double scale = a.max_abs();
    if (scale == 0.0) {
        throw NumericalError(NumericalFailure::SingularMatrix, "solve_dense: zero matrix");
    }
    auto& lu = f.lu;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::abs(lu(i, k)) > std::abs(lu(piv, k))) piv = i;
        if (std::abs(lu(piv, k)) / scale < 1e-30) {
            throw NumericalError(NumericalFailure::SingularMatrix,
                                 "solve_dense: pivot below threshold at column " +
                                     std::to_string(k));
        }
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(lu(piv, j), lu(k, j));
            std::swap(f.perm[piv], f.perm[k]);
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            const double m = lu(i, k) / lu(k, k);
            lu(i, k) = m;
            if (m == 0.0) continue;
            for (std::size_t j = k + 1; j < n; ++j) lu(i, j) -= m * lu(k, j);
        }
    }
    return f;
}

std::vector<double> lu_solve(const LuFactors& f, std::span<const double> b) {
    const std::size_t n = f.lu.size();
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = b[f.perm[i]];
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j) x[i] -= f.lu(i, j) * x[j];
    for (std::size_t i = n; i-- > 0;) {
        for (std::size_t j = i + 1; j < n; ++j) x[i] -= f.lu(i, j) * x[j];
        x[i] /= f.lu(i, i);
    }
    return x;
}

}  // namespace

std::vector<double> solve_dense(const SquareMatrix& a, std::span<const double> b) {
    const std::size_t n = a.size();
    if (n == 0 || n > max_dense_size || b.size() != n) {
        throw NumericalError(NumericalFailure::SingularMatrix,
                             "solve_dense: expected 1 <= n <= 16 and a conformable rhs");
    }
    const LuFactors f = lu_factor(a);
    std::vector<double> x = lu_solve(f, b);

    const std::vector<double> ax = a.multiply(x);
    std::vector<double> residual(n);
    for (std::size_t i = 0; i < n; ++i) residual[i] = b[i] - ax[i];
    const std::vector<double> dx = lu_solve(f, residual);
    for (std::size_t i = 0; i < n; ++i) x[i] += dx[i];
    return x;
}

}  // namespace optokerr
