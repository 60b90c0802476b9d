#include "lorentzpol/core_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "detail/format.hpp"
#include "lorentzpol/errors.hpp"

namespace lorentzpol {

MuellerMatrix MuellerMatrix::transposed() const {
    MuellerMatrix r;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) r.m[i][j] = m[j][i];
    return r;
}

double MuellerMatrix::trace() const { return m[0][0] + m[1][1] + m[2][2] + m[3][3]; }

double MuellerMatrix::determinant() const {
    // Expansion along row 0 with 3x3 minors.
    auto minor3 = [this](std::size_t skip_col) {
        std::array<std::size_t, 3> cols{};
        std::size_t n = 0;
        for (std::size_t c = 0; c < 4; ++c)
            if (c != skip_col) cols[n++] = c;
        const auto& a = m[1];
        const auto& b = m[2];
        const auto& d = m[3];
        return a[cols[0]] * (b[cols[1]] * d[cols[2]] - b[cols[2]] * d[cols[1]]) -
               a[cols[1]] * (b[cols[0]] * d[cols[2]] - b[cols[2]] * d[cols[0]]) +
               a[cols[2]] * (b[cols[0]] * d[cols[1]] - b[cols[1]] * d[cols[0]]);
    };
    double det = 0.0;
    double sign = 1.0;
    for (std::size_t c = 0; c < 4; ++c) {
        det += sign * m[0][c] * minor3(c);
        sign = -sign;
    }
    return det;
}

double MuellerMatrix::max_abs() const {
    double r = 0.0;
    for (const auto& row : m)
        for (double v : row) r = std::max(r, std::abs(v));
    return r;
}

MuellerMatrix operator*(const MuellerMatrix& lhs, const MuellerMatrix& rhs) {
    MuellerMatrix r;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            double acc = 0.0;
            for (std::size_t k = 0; k < 4; ++k) acc += lhs.m[i][k] * rhs.m[k][j];
            r.m[i][j] = acc;
        }
    return r;
}

MuellerMatrix operator-(const MuellerMatrix& lhs, const MuellerMatrix& rhs) {
    MuellerMatrix r;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) r.m[i][j] = lhs.m[i][j] - rhs.m[i][j];
    return r;
}

MuellerMatrix operator*(double scale, const MuellerMatrix& m) {
    MuellerMatrix r = m;
    for (auto& row : r.m)
        for (double& v : row) v *= scale;
    return r;
}

double max_abs_diff(const MuellerMatrix& a, const MuellerMatrix& b) { return (a - b).max_abs(); }

double max_abs_diff(const Mat3& a, const Mat3& b) {
    double r = 0.0;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) r = std::max(r, std::abs(a[i][j] - b[i][j]));
    return r;
}

Complex ComplexFourVector::bilinear_norm() const {
    return k0 * k0 - (kvec[0] * kvec[0] + kvec[1] * kvec[1] + kvec[2] * kvec[2]);
}

Vec3 ComplexFourVector::mvec() const {
    const Complex phase = std::polar(1.0, -kappa());
    return {(phase * kvec[0]).real(), (phase * kvec[1]).real(), (phase * kvec[2]).real()};
}

Vec3 ComplexFourVector::nvec() const {
    const Complex phase = std::polar(1.0, -kappa());
    return {-(phase * kvec[0]).imag(), -(phase * kvec[1]).imag(), -(phase * kvec[2]).imag()};
}

double minkowski_norm(const StokesVector& s) {
    return s[0] * s[0] - s[1] * s[1] - s[2] * s[2] - s[3] * s[3];
}

StokesVector apply_mueller(const MuellerMatrix& m, const StokesVector& s) {
    StokesVector r;
    for (std::size_t i = 0; i < 4; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < 4; ++j) acc += m.m[i][j] * s[j];
        r[i] = acc;
    }
    return r;
}

Mat3 quaternion_to_rotation(const UnitQuaternion& n) {
    if (std::abs(n.norm_squared() - 1.0) >= 1e-9) {
        throw Error(ErrorCode::NormViolation,
                    "quaternion norm^2 = " + detail::fmt(n.norm_squared()));
    }
    const double n0 = n.n0, n1 = n.n1, n2 = n.n2, n3 = n.n3;
    return Mat3{{
        {1.0 - 2.0 * (n2 * n2 + n3 * n3), -2.0 * n0 * n3 + 2.0 * n1 * n2, 2.0 * n0 * n2 + 2.0 * n1 * n3},
        {2.0 * n0 * n3 + 2.0 * n1 * n2, 1.0 - 2.0 * (n3 * n3 + n1 * n1), -2.0 * n0 * n1 + 2.0 * n2 * n3},
        {-2.0 * n0 * n2 + 2.0 * n1 * n3, 2.0 * n0 * n1 + 2.0 * n2 * n3, 1.0 - 2.0 * (n1 * n1 + n2 * n2)},
    }};
}

MuellerMatrix embed_rotation(const Mat3& r) {
    MuellerMatrix m;
    m.m[0][0] = 1.0;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) m.m[i + 1][j + 1] = r[i][j];
    return m;
}

MuellerMatrix lorentz_from_k(const ComplexFourVector& k) {
    const Complex norm = k.bilinear_norm();
    if (std::abs(norm - 1.0) >= 1e-9) {
        throw Error(ErrorCode::NormViolation,
                    "k0^2 - k^2 = (" + detail::fmt(norm.real()) + ", " +
                        detail::fmt(norm.imag()) + "), expected 1");
    }

    std::array<Complex, 4> lower{};
    std::array<Complex, 4> upper{};
    double scale = 0.0;
    for (std::size_t a = 0; a < 4; ++a) {
        lower[a] = k.component(a);
        upper[a] = kMetricDiagonal[a] * lower[a];
        scale += std::norm(lower[a]);
    }

    // k^n k*_n
    Complex contraction{};
    for (std::size_t n = 0; n < 4; ++n) contraction += upper[n] * std::conj(lower[n]);

    const Complex i_unit{0.0, 1.0};
    MuellerMatrix result;
    double worst_imag = 0.0;
    for (std::size_t c = 0; c < 4; ++c) {
        for (std::size_t a = 0; a < 4; ++a) {
            Complex v = lower[c] * std::conj(upper[a]) + std::conj(lower[c]) * upper[a];
            if (a == c) v -= contraction;
            // eps_c^{anm} = g_cc eps^{canm}
            Complex eps_term{};
            for (std::size_t n = 0; n < 4; ++n)
                for (std::size_t m = 0; m < 4; ++m) {
                    const int e = levi_civita(c, a, n, m);
                    if (e != 0) eps_term += static_cast<double>(e) * lower[n] * std::conj(lower[m]);
                }
            v += i_unit * kMetricDiagonal[c] * eps_term;
            // bar-delta flips rows 1..3
            v *= kMetricDiagonal[c];
            worst_imag = std::max(worst_imag, std::abs(v.imag()));
            result.m[c][a] = v.real();
        }
    }
    if (worst_imag > 1e-9 * std::max(1.0, scale)) {
        throw Error(ErrorCode::NonRealResult,
                    "imaginary part " + detail::fmt(worst_imag) + " in Lorentz matrix");
    }
    return result;
}

ComplexFourVector k_from_q(const ComplexVector3& q) {
    const Complex qq = q[0] * q[0] + q[1] * q[1] + q[2] * q[2];
    const Complex denom = 1.0 - qq;
    if (std::abs(denom) < 1e-12) {
        throw Error(ErrorCode::SingularParameter, "1 - q.q vanishes");
    }
    const Complex k0 = 1.0 / std::sqrt(denom);
    return canonical_sign(ComplexFourVector{k0, {q[0] * k0, q[1] * k0, q[2] * k0}});
}

ComplexFourVector canonical_sign(const ComplexFourVector& k) {
    double scale = 0.0;
    for (std::size_t a = 0; a < 4; ++a) scale = std::max(scale, std::abs(k.component(a)));
    const double threshold = 1e-12 * scale;

    std::array<double, 8> keys{};
    for (std::size_t a = 0; a < 4; ++a) {
        keys[2 * a] = k.component(a).real();
        keys[2 * a + 1] = k.component(a).imag();
    }
    // Order: Re k0, Im k0, Re k1, Im k1, ...
    for (double key : keys) {
        if (std::abs(key) > threshold) return key > 0.0 ? k : -k;
    }
    return k;
}

LorentzClass is_lorentzian(const MuellerMatrix& m, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("is_lorentzian: tol must be positive");

    const MuellerMatrix g = minkowski_metric();
    const double scale = std::max(m.max_abs() * m.max_abs(), 1e-300);
    const double metric_dev = max_abs_diff(m.transposed() * g * m, g);
    if (!(metric_dev < tol * scale) || !(m.determinant() > 0.0) || !(m(0, 0) > 0.0)) {
        return LorentzClass::NotLorentzian;
    }
    bool rotation = std::abs(m(0, 0) - 1.0) < tol;
    for (std::size_t i = 1; i < 4 && rotation; ++i) {
        rotation = std::abs(m(0, i)) < tol && std::abs(m(i, 0)) < tol;
    }
    return rotation ? LorentzClass::Rotation : LorentzClass::ProperOrthochronousLorentz;
}

std::string_view to_string(LorentzClass c) {
    switch (c) {
        case LorentzClass::ProperOrthochronousLorentz: return "lorentz";
        case LorentzClass::Rotation: return "rotation";
        case LorentzClass::NotLorentzian: return "not-lorentzian";
    }
    return "unknown";
}

}  // namespace lorentzpol
