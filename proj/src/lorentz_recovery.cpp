#include "lorentzpol/lorentz_recovery.hpp"

#include <cmath>
#include <string>
#include <tuple>

#include "detail/format.hpp"

namespace lorentzpol {

namespace {

constexpr double kSingularNormalization = 1e-12;

Complex normalization_radicand(double delta, const Vec3& m, const Vec3& n) {
    Complex v2{};
    for (std::size_t i = 0; i < 3; ++i) {
        const Complex v{m[i], -n[i]};
        v2 += v * v;
    }
    return delta * delta - v2;
}

}  // namespace

MuellerMatrix lambda_from_mueller(const MuellerMatrix& m) {
    MuellerMatrix r = m;
    for (std::size_t row = 1; row < 4; ++row)
        for (double& v : r.m[row]) v = -v;
    return r;
}

double trace_sum(const MeasurementSet& ms) {
    return ms.f[0] + (ms.a[1] - ms.f[1]) + (ms.b[2] - ms.f[2]) + (ms.c[3] - ms.f[3]);
}

double delta_from_trace(const MeasurementSet& ms, double eps) {
    if (!(ms.intensity > 0.0)) {
        throw Error(ErrorCode::NonPositiveIntensity, "probe intensity must be > 0");
    }
    const double ratio = trace_sum(ms) / ms.intensity;
    if (!(ratio > eps)) {
        throw Error(ErrorCode::DegenerateTrace,
                    "trace of the reconstructed matrix is " + detail::fmt(ratio) +
                        " (needs > " + detail::fmt(eps) +
                        "); Delta = 0, parameters cannot be extracted from the trace");
    }
    return std::sqrt(ratio) / 2.0;
}

std::pair<Vec3, Vec3> mn_from_antisymmetric(const MeasurementSet& ms, double delta) {
    if (!(delta > 0.0)) {
        throw Error(ErrorCode::DegenerateTrace, "Delta must be positive");
    }
    const auto& F = ms.f;
    const auto& A = ms.a;
    const auto& B = ms.b;
    const auto& C = ms.c;
    const double scale = 1.0 / (2.0 * ms.intensity * 2.0 * delta);

    const Vec3 mvec{
        (F[0] - F[1] - A[0]) * scale,
        (F[0] - F[2] - B[0]) * scale,
        (F[0] - F[3] - C[0]) * scale,
    };
    const Vec3 nvec{
        (F[2] - F[3] - C[2] + B[3]) * scale,
        (F[3] - F[1] - A[3] + C[1]) * scale,
        (F[1] - F[2] - B[1] + A[2]) * scale,
    };
    return {mvec, nvec};
}

RecoveryIntermediates recover_intermediates(const MeasurementSet& ms) {
    RecoveryIntermediates out;
    out.trace_sum = trace_sum(ms);
    out.delta = delta_from_trace(ms);
    std::tie(out.mvec, out.nvec) = mn_from_antisymmetric(ms, out.delta);
    out.lambda = lambda_from_mueller(reconstruct_mueller(ms));
    return out;
}

ComplexFourVector recover_k(const MeasurementSet& ms) {
    const double delta = delta_from_trace(ms);
    const auto [mvec, nvec] = mn_from_antisymmetric(ms, delta);

    const Complex radicand = normalization_radicand(delta, mvec, nvec);
    if (std::abs(radicand) < kSingularNormalization) {
        throw Error(ErrorCode::SingularNormalization, "Delta^2 - (M - iN)^2 vanishes");
    }
    const Complex inv_root = 1.0 / std::sqrt(radicand);
    ComplexFourVector k;
    k.k0 = delta * inv_root;
    for (std::size_t i = 0; i < 3; ++i) k.kvec[i] = Complex{mvec[i], -nvec[i]} * inv_root;
    return canonical_sign(k);
}

ComplexVector3 recover_q(const MeasurementSet& ms) {
    const double delta = delta_from_trace(ms);
    const auto [mvec, nvec] = mn_from_antisymmetric(ms, delta);
    if (std::abs(normalization_radicand(delta, mvec, nvec)) < kSingularNormalization) {
        throw Error(ErrorCode::SingularNormalization, "Delta^2 - (M - iN)^2 vanishes");
    }

    const auto& F = ms.f;
    const auto& A = ms.a;
    const auto& B = ms.b;
    const auto& C = ms.c;
    const double denom = trace_sum(ms);
    ComplexVector3 q;
    q[0] = Complex{(F[0] - A[0]) - F[1], -((F[2] - F[3]) - (C[2] - B[3]))} / denom;
    q[1] = Complex{(F[0] - B[0]) - F[2], -((F[3] - F[1]) - (A[3] - C[1]))} / denom;
    q[2] = Complex{(F[0] - C[0]) - F[3], -((F[1] - F[2]) - (B[1] - A[2]))} / denom;
    return q;
}

RoundTripReport verify_round_trip(const MeasurementSet& ms, double tol) {
    RoundTripReport report;
    report.residuals = lorentz_residuals(ms);
    try {
        report.reconstructed = reconstruct_mueller(ms);
        report.intermediates = recover_intermediates(ms);
        report.k = recover_k(ms);
        report.q = recover_q(ms);
        report.rebuilt = lorentz_from_k(*report.k);
        report.max_deviation = max_abs_diff(*report.rebuilt, report.reconstructed);
        report.pass = *report.max_deviation < tol;
        if (!report.pass) {
            report.message = "rebuilt Lorentz matrix deviates from the measured matrix by " +
                             detail::fmt(*report.max_deviation);
        }
    } catch (const Error& e) {
        report.pass = false;
        report.error = e.code();
        report.message = e.what();
    }
    return report;
}

}  // namespace lorentzpol
