/**
 * @file core_algebra.hpp
 * @brief Stokes/Mueller algebra over the Minkowski metric and the exact
 *        forward maps quaternion -> SO(3) and spinor parameter k -> SO(3,1).
 *
 * Conventions used throughout the library:
 * - Mueller matrices act on column Stokes vectors, S_out = M * S_in, with
 *   m(row, col) = m_{row,col}; the row is the output Stokes component.
 * - Metric g = diag(+1, -1, -1, -1).
 * - A Lorentz transformation is parameterised by a complex 4-vector
 *   k = (k0, kvec) normalised by k0^2 - kvec.kvec = 1, determined up to
 *   overall sign. Real kvec (with real k0) is a pure boost, purely imaginary
 *   kvec is a pure rotation.
 * - The vector parameter is q = kvec / k0, so boosts have real q and
 *   rotations imaginary q (q = -i tan(theta/2) axis).
 */

#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <string_view>

namespace lorentzpol {

using Complex = std::complex<double>;
using Vec3 = std::array<double, 3>;
using Mat3 = std::array<std::array<double, 3>, 3>;

/// Stokes 4-vector (I, Q, U, V). No sign constraint is imposed here.
struct StokesVector {
    std::array<double, 4> s{};

    constexpr StokesVector() = default;
    constexpr StokesVector(double s0, double s1, double s2, double s3) : s{s0, s1, s2, s3} {}

    constexpr double& operator[](std::size_t i) { return s[i]; }
    constexpr double operator[](std::size_t i) const { return s[i]; }

    /// Spatial part (s1, s2, s3).
    constexpr Vec3 spatial() const { return {s[1], s[2], s[3]}; }

    friend constexpr bool operator==(const StokesVector&, const StokesVector&) = default;
};

/// Real 4x4 matrix acting on Stokes vectors, stored row-major.
struct MuellerMatrix {
    std::array<std::array<double, 4>, 4> m{};

    static constexpr MuellerMatrix identity() {
        MuellerMatrix r;
        for (std::size_t i = 0; i < 4; ++i) r.m[i][i] = 1.0;
        return r;
    }

    static constexpr MuellerMatrix diagonal(double d0, double d1, double d2, double d3) {
        MuellerMatrix r;
        r.m[0][0] = d0;
        r.m[1][1] = d1;
        r.m[2][2] = d2;
        r.m[3][3] = d3;
        return r;
    }

    constexpr double& operator()(std::size_t row, std::size_t col) { return m[row][col]; }
    constexpr double operator()(std::size_t row, std::size_t col) const { return m[row][col]; }

    MuellerMatrix transposed() const;
    double trace() const;
    double determinant() const;
    /// Largest absolute entry.
    double max_abs() const;

    friend constexpr bool operator==(const MuellerMatrix&, const MuellerMatrix&) = default;
};

MuellerMatrix operator*(const MuellerMatrix& lhs, const MuellerMatrix& rhs);
MuellerMatrix operator-(const MuellerMatrix& lhs, const MuellerMatrix& rhs);
MuellerMatrix operator*(double scale, const MuellerMatrix& m);

/// max |a_ij - b_ij|
double max_abs_diff(const MuellerMatrix& a, const MuellerMatrix& b);
double max_abs_diff(const Mat3& a, const Mat3& b);

/// g = diag(+1, -1, -1, -1).
inline constexpr std::array<double, 4> kMetricDiagonal{1.0, -1.0, -1.0, -1.0};

constexpr MuellerMatrix minkowski_metric() {
    return MuellerMatrix::diagonal(1.0, -1.0, -1.0, -1.0);
}

/// Totally antisymmetric symbol in three indices, eps_{123} = +1 (0-based here).
constexpr int levi_civita(std::size_t i, std::size_t j, std::size_t k) {
    if (i == j || j == k || i == k) return 0;
    return ((i + 1) % 3 == j) ? 1 : -1;
}

/// Totally antisymmetric symbol in four indices, eps^{0123} = +1.
constexpr int levi_civita(std::size_t a, std::size_t b, std::size_t c, std::size_t d) {
    const std::array<std::size_t, 4> idx{a, b, c, d};
    int sign = 1;
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = i + 1; j < 4; ++j) {
            if (idx[i] == idx[j]) return 0;
            if (idx[i] > idx[j]) sign = -sign;
        }
    }
    return sign;
}

struct UnitQuaternion {
    double n0 = 1.0;
    double n1 = 0.0;
    double n2 = 0.0;
    double n3 = 0.0;

    constexpr double norm_squared() const { return n0 * n0 + n1 * n1 + n2 * n2 + n3 * n3; }
    constexpr UnitQuaternion operator-() const { return {-n0, -n1, -n2, -n3}; }
};

struct ComplexVector3 {
    std::array<Complex, 3> q{};

    constexpr Complex& operator[](std::size_t i) { return q[i]; }
    constexpr const Complex& operator[](std::size_t i) const { return q[i]; }
};

/// Spinor-level parameter k = (k0, kvec) of a proper orthochronous Lorentz transformation.
struct ComplexFourVector {
    Complex k0{1.0, 0.0};
    std::array<Complex, 3> kvec{};

    /// Component a of (k0, k1, k2, k3), lower index.
    Complex component(std::size_t a) const { return a == 0 ? k0 : kvec[a - 1]; }

    ComplexFourVector operator-() const { return {-k0, {-kvec[0], -kvec[1], -kvec[2]}}; }

    /// k0^2 - kvec.kvec (complex bilinear, no conjugation).
    Complex bilinear_norm() const;
    /// Delta = |k0|.
    double delta() const { return std::abs(k0); }
    /// kappa = arg k0.
    double kappa() const { return std::arg(k0); }
    /// Phase-rotated parts: exp(-i kappa) kvec = M - i N.
    Vec3 mvec() const;
    Vec3 nvec() const;
};

enum class LorentzClass { ProperOrthochronousLorentz, Rotation, NotLorentzian };

/// s0^2 - s1^2 - s2^2 - s3^2
double minkowski_norm(const StokesVector& s);

StokesVector apply_mueller(const MuellerMatrix& m, const StokesVector& s);

/// SO(3) matrix parameterised by a unit quaternion (n0; n1, n2, n3).
/// Throws NormViolation if | |n|^2 - 1 | >= 1e-9.
Mat3 quaternion_to_rotation(const UnitQuaternion& n);

/// Block-diagonal embedding diag(1, r) of a 3x3 rotation.
MuellerMatrix embed_rotation(const Mat3& r);

/**
 * Lorentz matrix of a normalised spinor parameter:
 *
 *   L_b^a = bar-delta_b^c ( -delta_c^a k^n k*_n + k_c k^{a*} + k*_c k^a
 *                           + i eps_c^{anm} k_n k*_m )
 *
 * evaluated in complex arithmetic with the lower index as the matrix row,
 * indices raised with g, eps^{0123} = +1. The result is checked to be real
 * and returned with imaginary parts dropped. L(k) == L(-k).
 *
 * Throws NormViolation if |k0^2 - kvec^2 - 1| >= 1e-9, NonRealResult if an
 * entry carries an imaginary part above 1e-9 (relative to |k|^2).
 */
MuellerMatrix lorentz_from_k(const ComplexFourVector& k);

/// Normalised k with kvec = q k0 and k0 = 1 / sqrt(1 - q.q), canonical sign.
/// Throws SingularParameter if |1 - q.q| < 1e-12.
ComplexFourVector k_from_q(const ComplexVector3& q);

/// Fixes the +-k ambiguity: Re k0 > 0, or on a tie the first nonzero of
/// (Im k0, Re k1, Im k1, Re k2, ...) positive.
ComplexFourVector canonical_sign(const ComplexFourVector& k);

/// Classification against g: ProperOrthochronousLorentz iff
/// max|M^T g M - g| < tol * max|M|^2, det M > 0 and M00 > 0; Rotation if in
/// addition row 0 and column 0 equal (1, 0, 0, 0) within tol.
LorentzClass is_lorentzian(const MuellerMatrix& m, double tol);

std::string_view to_string(LorentzClass c);

}  // namespace lorentzpol
