#pragma once

#include <array>

namespace stereocolor {

using Vec3 = std::array<double, 3>;

/// Row-major 3x3 matrix.
struct Mat3 {
    std::array<double, 9> m{};

    double& operator()(int r, int c) { return m[static_cast<std::size_t>(3 * r + c)]; }
    double operator()(int r, int c) const { return m[static_cast<std::size_t>(3 * r + c)]; }

    static Mat3 identity();
    static Mat3 diagonal(const Vec3& d);
    /// Matrix whose columns are the given vectors.
    static Mat3 from_columns(const Vec3& c0, const Vec3& c1, const Vec3& c2);

    Vec3 column(int c) const { return {(*this)(0, c), (*this)(1, c), (*this)(2, c)}; }
    Vec3 row(int r) const { return {(*this)(r, 0), (*this)(r, 1), (*this)(r, 2)}; }
};

Mat3 operator*(const Mat3& a, const Mat3& b);
Vec3 operator*(const Mat3& a, const Vec3& v);
Mat3 operator+(const Mat3& a, const Mat3& b);
Mat3 operator-(const Mat3& a, const Mat3& b);
Mat3 operator*(double s, const Mat3& a);
Vec3 operator+(const Vec3& a, const Vec3& b);
Vec3 operator-(const Vec3& a, const Vec3& b);

Mat3 transpose(const Mat3& a);
double determinant(const Mat3& a);
/// Throws InvalidArgument when |det| is zero or not finite.
Mat3 inverse(const Mat3& a);
double frobenius_norm(const Mat3& a);
/// max |a_ij - a_ji|
double asymmetry(const Mat3& a);
bool all_finite(const Mat3& a);

/// Eigendecomposition of a symmetric matrix, a = vectors * diag(values) * vectors^T.
/// Values are sorted in descending order; columns of `vectors` are orthonormal and
/// each column is signed so its largest-magnitude component is positive.
struct SymmetricEigen {
    Vec3 values{};
    Mat3 vectors{};
};

/// Cyclic Jacobi rotations; exact to machine precision for 3x3 input.
SymmetricEigen eigen_symmetric(const Mat3& a);

/// f(a) = V diag(f(lambda)) V^T for symmetric a.
Mat3 spd_sqrt(const Mat3& a);
Mat3 spd_inv_sqrt(const Mat3& a);

/// Lower-triangular L with a = L L^T. Throws InvalidArgument if a is not PD.
Mat3 cholesky(const Mat3& a);

}  // namespace stereocolor
