#include "lorentzpol/rotation_recovery.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "detail/format.hpp"
#include "lorentzpol/errors.hpp"

namespace lorentzpol {

namespace {

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

double det3(const Mat3& r) {
    return r[0][0] * (r[1][1] * r[2][2] - r[1][2] * r[2][1]) -
           r[0][1] * (r[1][0] * r[2][2] - r[1][2] * r[2][0]) +
           r[0][2] * (r[1][0] * r[2][1] - r[1][1] * r[2][0]);
}

// r(i, j) - r(j, i) arranged as the axial vector (r32 - r23, r13 - r31, r21 - r12).
Vec3 antisymmetric_axial(const Mat3& r) {
    return {r[2][1] - r[1][2], r[0][2] - r[2][0], r[1][0] - r[0][1]};
}

}  // namespace

bool TriadReport::valid() const {
    return std::all_of(conditions.begin(), conditions.end(),
                       [](const TriadCondition& c) { return c.pass; });
}

Mat3 rotation_from_measurements(const MeasurementSet& ms, double rel_tol) {
    if (!(ms.intensity > 0.0)) {
        throw Error(ErrorCode::NonPositiveIntensity, "probe intensity must be > 0");
    }
    const double i = ms.intensity;
    const double tol = rel_tol * i;
    auto off = [&](double value, double expected) { return !(std::abs(value - expected) <= tol); };

    if (off(ms.f[0], i) || off(ms.f[1], 0.0) || off(ms.f[2], 0.0) || off(ms.f[3], 0.0)) {
        throw Error(ErrorCode::NotRotationType,
                    "natural-light output is not (I, 0, 0, 0); the element has boost content");
    }
    if (off(ms.a[0], i) || off(ms.b[0], i) || off(ms.c[0], i)) {
        throw Error(ErrorCode::NotRotationType,
                    "polarised-probe output intensities differ from I; the element has boost content");
    }

    Mat3 r{};
    for (std::size_t row = 0; row < 3; ++row) {
        for (std::size_t col = 0; col < 3; ++col) r[row][col] = ms.output(col + 1)[row + 1] / i;
    }
    return r;
}

PolarizationTriad triad_from_measurements(const MeasurementSet& ms) {
    if (!(ms.intensity > 0.0)) {
        throw Error(ErrorCode::NonPositiveIntensity, "probe intensity must be > 0");
    }
    auto p = [&](const StokesVector& s) {
        const Vec3 v = s.spatial();
        return Vec3{v[0] / ms.intensity, v[1] / ms.intensity, v[2] / ms.intensity};
    };
    return {p(ms.a), p(ms.b), p(ms.c)};
}

TriadReport validate_triad(const PolarizationTriad& t, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("validate_triad: tol must be positive");

    auto make = [tol](std::string_view name, double residual) {
        return TriadCondition{name, residual, residual <= tol};
    };
    auto norm_residual = [](const Vec3& p) { return std::abs(std::sqrt(dot(p, p)) - 1.0); };

    TriadReport report;
    report.conditions = {
        make("|p1| = 1", norm_residual(t.p1)),
        make("|p2| = 1", norm_residual(t.p2)),
        make("|p3| = 1", norm_residual(t.p3)),
        make("p1 . p2 = 0", std::abs(dot(t.p1, t.p2))),
        make("p2 . p3 = 0", std::abs(dot(t.p2, t.p3))),
        make("p3 . p1 = 0", std::abs(dot(t.p3, t.p1))),
        make("p1 . (p2 x p3) = 1", std::abs(dot(t.p1, cross(t.p2, t.p3)) - 1.0)),
    };
    return report;
}

UnitQuaternion recover_quaternion(const Mat3& r, double pi_eps) {
    double ortho_dev = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            double acc = 0.0;
            for (std::size_t k = 0; k < 3; ++k) acc += r[k][i] * r[k][j];
            ortho_dev = std::max(ortho_dev, std::abs(acc - (i == j ? 1.0 : 0.0)));
        }
    }
    const double det = det3(r);
    if (!(ortho_dev <= 1e-6) || !(std::abs(det - 1.0) <= 1e-6)) {
        throw Error(ErrorCode::NotRotation, "matrix is not in SO(3): |R^T R - 1| = " +
                                                detail::fmt(ortho_dev) +
                                                ", det = " + detail::fmt(det));
    }

    const double trace_plus_one = r[0][0] + r[1][1] + r[2][2] + 1.0;
    if (!(trace_plus_one > pi_eps)) {
        throw Error(ErrorCode::NearPiRotation,
                    "trace + 1 = " + detail::fmt(trace_plus_one) +
                        "; the trace-based extraction is singular for rotations by pi");
    }
    const double root = std::sqrt(trace_plus_one);
    const Vec3 d = antisymmetric_axial(r);
    return UnitQuaternion{root / 2.0, d[0] / (2.0 * root), d[1] / (2.0 * root), d[2] / (2.0 * root)};
}

double norm_identity_sum(const Mat3& r) {
    const double t = r[0][0] + r[1][1] + r[2][2] + 1.0;
    const Vec3 d = antisymmetric_axial(r);
    return t + (d[0] * d[0] + d[1] * d[1] + d[2] * d[2]) / t;
}

}  // namespace lorentzpol
