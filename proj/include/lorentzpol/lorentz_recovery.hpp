/**
 * @file lorentz_recovery.hpp
 * @brief Parameters of a Lorentzian-type element straight from the four
 *        probe measurements F, A, B, C.
 *
 * Recipe:
 *  1. trace of the reconstructed matrix gives 4 Delta^2, Delta = |k0|;
 *  2. the antisymmetric part of Lambda (rows 1..3 of M negated) equals
 *         2 Delta [[0, -M^T], [M, N^x]],   (N^x)_ij = eps_ijk N_k
 *     which yields the real 3-vectors M and N;
 *  3. k = (Delta, M - iN) / sqrt(Delta^2 - (M - iN)^2), up to sign;
 *  4. q = kvec / k0 = (M - iN) / Delta.
 *
 * All steps divide by Delta; Delta = 0 (e.g. rotations by pi) is reported as
 * DegenerateTrace rather than handled by another extraction.
 */

#pragma once

#include <optional>
#include <string>
#include <utility>

#include "lorentzpol/core_algebra.hpp"
#include "lorentzpol/errors.hpp"
#include "lorentzpol/probe_protocol.hpp"

namespace lorentzpol {

struct RecoveryIntermediates {
    double delta = 0.0;
    Vec3 mvec{};
    Vec3 nvec{};
    MuellerMatrix lambda;
    /// F0 + (A1 - F1) + (B2 - F2) + (C3 - F3); equals 4 Delta^2 I.
    double trace_sum = 0.0;
};

/// Rows 1..3 negated. Applying it twice gives back m.
MuellerMatrix lambda_from_mueller(const MuellerMatrix& m);

/// F0 + (A1 - F1) + (B2 - F2) + (C3 - F3)
double trace_sum(const MeasurementSet& ms);

/// Delta = sqrt(trace_sum / I) / 2. Throws DegenerateTrace unless
/// trace_sum / I > eps.
double delta_from_trace(const MeasurementSet& ms, double eps = 1e-10);

/// (M, N) from the antisymmetric part, e.g.
///   2 Delta M1 = (F0 - F1 - A0) / 2I,   2 Delta N1 = (F2 - F3 - C2 + B3) / 2I.
std::pair<Vec3, Vec3> mn_from_antisymmetric(const MeasurementSet& ms, double delta);

RecoveryIntermediates recover_intermediates(const MeasurementSet& ms);

/// Normalised k with canonical sign. Throws DegenerateTrace or
/// SingularNormalization (|Delta^2 - (M - iN)^2| < 1e-12).
ComplexFourVector recover_k(const MeasurementSet& ms);

/**
 * Vector parameter evaluated directly on the measurements,
 *
 *   q1 = [(F0 - A0) - F1 - i((F2 - F3) - (C2 - B3))] / trace_sum
 *   q2 = [(F0 - B0) - F2 - i((F3 - F1) - (A3 - C1))] / trace_sum
 *   q3 = [(F0 - C0) - F3 - i((F1 - F2) - (B1 - A2))] / trace_sum
 *
 * This route is algebraically independent of recover_k and agrees with
 * kvec / k0. Same preconditions and errors as recover_k.
 */
ComplexVector3 recover_q(const MeasurementSet& ms);

struct RoundTripReport {
    MuellerMatrix reconstructed;
    LorentzResiduals residuals;
    std::optional<RecoveryIntermediates> intermediates;
    std::optional<ComplexFourVector> k;
    std::optional<ComplexVector3> q;
    std::optional<MuellerMatrix> rebuilt;
    /// max |L(k) - M|; empty when recovery failed.
    std::optional<double> max_deviation;
    bool pass = false;
    std::optional<ErrorCode> error;
    std::string message;
};

/// Reconstruct M, recover k, rebuild L(k) and compare. Recovery errors are
/// captured in the report instead of propagating.
RoundTripReport verify_round_trip(const MeasurementSet& ms, double tol);

}  // namespace lorentzpol
