// Test-only reference constructions. Nothing here calls the library's
// forward maps; each routine is an independent route to the same quantity.
#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <random>

#include "lorentzpol/core_algebra.hpp"

namespace oracle {

using lorentzpol::Complex;
using lorentzpol::ComplexFourVector;
using lorentzpol::ComplexVector3;
using lorentzpol::Mat3;
using lorentzpol::MuellerMatrix;
using lorentzpol::UnitQuaternion;

using Mat2 = std::array<std::array<Complex, 2>, 2>;

inline Mat2 mul(const Mat2& a, const Mat2& b) {
    Mat2 r{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) r[i][j] += a[i][k] * b[k][j];
    return r;
}

inline Mat2 dagger(const Mat2& a) {
    return Mat2{{{std::conj(a[0][0]), std::conj(a[1][0])}, {std::conj(a[0][1]), std::conj(a[1][1])}}};
}

inline Mat2 pauli(int a) {
    const Complex i{0.0, 1.0};
    switch (a) {
        case 0: return Mat2{{{1.0, 0.0}, {0.0, 1.0}}};
        case 1: return Mat2{{{0.0, 1.0}, {1.0, 0.0}}};
        case 2: return Mat2{{{0.0, -i}, {i, 0.0}}};
        default: return Mat2{{{1.0, 0.0}, {0.0, -1.0}}};
    }
}

/// SO(3,1) image of the SL(2,C) matrix B = conj(k0) - conj(kvec).sigma,
/// L_ab = 1/2 Tr(sigma_a B sigma_b B^dagger).
inline MuellerMatrix lorentz_via_pauli(const ComplexFourVector& k) {
    Mat2 b{};
    const Mat2 id = pauli(0);
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) {
            b[r][c] = std::conj(k.k0) * id[r][c];
            for (int j = 1; j <= 3; ++j) b[r][c] -= std::conj(k.kvec[j - 1]) * pauli(j)[r][c];
        }
    const Mat2 bd = dagger(b);
    MuellerMatrix out;
    for (int a = 0; a < 4; ++a)
        for (int c = 0; c < 4; ++c) {
            const Mat2 p = mul(mul(mul(pauli(a), b), pauli(c)), bd);
            out.m[a][c] = 0.5 * (p[0][0] + p[1][1]).real();
        }
    return out;
}

/// Rodrigues: rotation by theta about the unit axis u.
inline Mat3 axis_angle(const std::array<double, 3>& u, double theta) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    Mat3 r{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r[i][j] = (i == j ? c : 0.0) + (1.0 - c) * u[i] * u[j];
    r[0][1] -= s * u[2];
    r[1][0] += s * u[2];
    r[0][2] += s * u[1];
    r[2][0] -= s * u[1];
    r[1][2] -= s * u[0];
    r[2][1] += s * u[0];
    return r;
}

inline UnitQuaternion random_quaternion(std::mt19937_64& rng, double min_n0) {
    std::normal_distribution<double> g(0.0, 1.0);
    for (;;) {
        std::array<double, 4> v{g(rng), g(rng), g(rng), g(rng)};
        const double norm = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2] + v[3] * v[3]);
        if (norm < 1e-6) continue;
        for (double& x : v) x /= norm;
        if (v[0] < 0.0)
            for (double& x : v) x = -x;
        if (v[0] >= min_n0) return {v[0], v[1], v[2], v[3]};
    }
}

inline ComplexVector3 random_q(std::mt19937_64& rng, double bound) {
    std::uniform_real_distribution<double> u(-bound, bound);
    ComplexVector3 q;
    for (int i = 0; i < 3; ++i) q[i] = Complex{u(rng), u(rng)};
    return q;
}

inline MuellerMatrix random_dense(std::mt19937_64& rng, double bound) {
    std::uniform_real_distribution<double> u(-bound, bound);
    MuellerMatrix m;
    for (auto& row : m.m)
        for (double& v : row) v = u(rng);
    return m;
}

inline double max_abs_diff(const ComplexFourVector& a, const ComplexFourVector& b) {
    double r = 0.0;
    for (std::size_t i = 0; i < 4; ++i) r = std::max(r, std::abs(a.component(i) - b.component(i)));
    return r;
}

}  // namespace oracle
