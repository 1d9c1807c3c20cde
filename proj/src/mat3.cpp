#include "stereocolor/mat3.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "stereocolor/errors.hpp"

namespace stereocolor {

Mat3 Mat3::identity() { return diagonal({1.0, 1.0, 1.0}); }

Mat3 Mat3::diagonal(const Vec3& d) {
    Mat3 out;
    for (int i = 0; i < 3; ++i) out(i, i) = d[static_cast<std::size_t>(i)];
    return out;
}

Mat3 Mat3::from_columns(const Vec3& c0, const Vec3& c1, const Vec3& c2) {
    Mat3 out;
    for (int r = 0; r < 3; ++r) {
        const auto i = static_cast<std::size_t>(r);
        out(r, 0) = c0[i];
        out(r, 1) = c1[i];
        out(r, 2) = c2[i];
    }
    return out;
}

Mat3 operator*(const Mat3& a, const Mat3& b) {
    Mat3 out;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) out(r, c) = a(r, 0) * b(0, c) + a(r, 1) * b(1, c) + a(r, 2) * b(2, c);
    return out;
}

Vec3 operator*(const Mat3& a, const Vec3& v) {
    return {a(0, 0) * v[0] + a(0, 1) * v[1] + a(0, 2) * v[2],
            a(1, 0) * v[0] + a(1, 1) * v[1] + a(1, 2) * v[2],
            a(2, 0) * v[0] + a(2, 1) * v[1] + a(2, 2) * v[2]};
}

Mat3 operator+(const Mat3& a, const Mat3& b) {
    Mat3 out;
    for (std::size_t i = 0; i < 9; ++i) out.m[i] = a.m[i] + b.m[i];
    return out;
}

Mat3 operator-(const Mat3& a, const Mat3& b) {
    Mat3 out;
    for (std::size_t i = 0; i < 9; ++i) out.m[i] = a.m[i] - b.m[i];
    return out;
}

Mat3 operator*(double s, const Mat3& a) {
    Mat3 out;
    for (std::size_t i = 0; i < 9; ++i) out.m[i] = s * a.m[i];
    return out;
}

Vec3 operator+(const Vec3& a, const Vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
Vec3 operator-(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }

Mat3 transpose(const Mat3& a) {
    Mat3 out;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) out(r, c) = a(c, r);
    return out;
}

double determinant(const Mat3& a) {
    return a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) -
           a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
           a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
}

Mat3 inverse(const Mat3& a) {
    const double det = determinant(a);
    if (det == 0.0 || !std::isfinite(det)) throw InvalidArgument("inverse: singular 3x3 matrix");
    Mat3 adj;
    adj(0, 0) = a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1);
    adj(0, 1) = a(0, 2) * a(2, 1) - a(0, 1) * a(2, 2);
    adj(0, 2) = a(0, 1) * a(1, 2) - a(0, 2) * a(1, 1);
    adj(1, 0) = a(1, 2) * a(2, 0) - a(1, 0) * a(2, 2);
    adj(1, 1) = a(0, 0) * a(2, 2) - a(0, 2) * a(2, 0);
    adj(1, 2) = a(0, 2) * a(1, 0) - a(0, 0) * a(1, 2);
    adj(2, 0) = a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0);
    adj(2, 1) = a(0, 1) * a(2, 0) - a(0, 0) * a(2, 1);
    adj(2, 2) = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
    return (1.0 / det) * adj;
}

double frobenius_norm(const Mat3& a) {
    return std::sqrt(std::inner_product(a.m.begin(), a.m.end(), a.m.begin(), 0.0));
}

double asymmetry(const Mat3& a) {
    return std::max({std::abs(a(0, 1) - a(1, 0)), std::abs(a(0, 2) - a(2, 0)), std::abs(a(1, 2) - a(2, 1))});
}

bool all_finite(const Mat3& a) {
    return std::all_of(a.m.begin(), a.m.end(), [](double v) { return std::isfinite(v); });
}

SymmetricEigen eigen_symmetric(const Mat3& input) {
    Mat3 a = input;
    // symmetrize so round-off asymmetry in the input cannot bias the result
    for (int r = 0; r < 3; ++r)
        for (int c = r + 1; c < 3; ++c) a(r, c) = a(c, r) = 0.5 * (input(r, c) + input(c, r));
    Mat3 v = Mat3::identity();

    for (int sweep = 0; sweep < 64; ++sweep) {
        const double off = a(0, 1) * a(0, 1) + a(0, 2) * a(0, 2) + a(1, 2) * a(1, 2);
        const double diag = a(0, 0) * a(0, 0) + a(1, 1) * a(1, 1) + a(2, 2) * a(2, 2);
        if (off == 0.0 || off <= 1e-36 * diag) break;
        for (int p = 0; p < 2; ++p) {
            for (int q = p + 1; q < 3; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int k = 0; k < 3; ++k) {
                    const double akp = a(k, p);
                    const double akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < 3; ++k) {
                    const double apk = a(p, k);
                    const double aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                for (int k = 0; k < 3; ++k) {
                    const double vkp = v(k, p);
                    const double vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }

    std::array<int, 3> order{0, 1, 2};
    std::sort(order.begin(), order.end(), [&](int i, int j) { return a(i, i) > a(j, j); });

    SymmetricEigen out;
    for (int k = 0; k < 3; ++k) {
        const int src = order[static_cast<std::size_t>(k)];
        out.values[static_cast<std::size_t>(k)] = a(src, src);
        Vec3 col = v.column(src);
        std::size_t big = 0;
        for (std::size_t i = 1; i < 3; ++i)
            if (std::abs(col[i]) > std::abs(col[big])) big = i;
        if (col[big] < 0.0)
            for (auto& x : col) x = -x;
        for (int r = 0; r < 3; ++r) out.vectors(r, k) = col[static_cast<std::size_t>(r)];
    }
    return out;
}

namespace {

template <class Fn>
Mat3 spectral_apply(const Mat3& a, Fn fn) {
    const SymmetricEigen e = eigen_symmetric(a);
    Vec3 d{};
    for (std::size_t i = 0; i < 3; ++i) d[i] = fn(e.values[i]);
    return e.vectors * Mat3::diagonal(d) * transpose(e.vectors);
}

}  // namespace

Mat3 spd_sqrt(const Mat3& a) {
    return spectral_apply(a, [](double x) { return std::sqrt(std::max(x, 0.0)); });
}

Mat3 spd_inv_sqrt(const Mat3& a) {
    return spectral_apply(a, [](double x) {
        if (x <= 0.0) throw InvalidArgument("spd_inv_sqrt: matrix is not positive definite");
        return 1.0 / std::sqrt(x);
    });
}

Mat3 cholesky(const Mat3& a) {
    Mat3 l;
    for (int j = 0; j < 3; ++j) {
        double d = a(j, j);
        for (int k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
        if (!(d > 0.0)) throw InvalidArgument("cholesky: matrix is not positive definite");
        l(j, j) = std::sqrt(d);
        for (int i = j + 1; i < 3; ++i) {
            double s = a(i, j);
            for (int k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
            l(i, j) = s / l(j, j);
        }
    }
    return l;
}

}  // namespace stereocolor
