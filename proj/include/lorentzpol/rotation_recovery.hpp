#pragma once

#include <array>
#include <string_view>

#include "lorentzpol/core_algebra.hpp"
#include "lorentzpol/probe_protocol.hpp"

namespace lorentzpol {

/// Output polarisation vectors of the three polarised probes, divided by I.
struct PolarizationTriad {
    Vec3 p1{};
    Vec3 p2{};
    Vec3 p3{};
};

struct TriadCondition {
    std::string_view name;
    double residual = 0.0;
    bool pass = false;
};

/// Three unit norms, three orthogonalities, one handedness check.
struct TriadReport {
    std::array<TriadCondition, 7> conditions{};

    bool valid() const;
};

/// 3x3 block of a rotation-type element, columns = p1, p2, p3.
/// Requires F = (I, 0, 0, 0) and A0 = B0 = C0 = I, each within rel_tol * I;
/// throws NotRotationType otherwise.
Mat3 rotation_from_measurements(const MeasurementSet& ms, double rel_tol = 1e-9);

PolarizationTriad triad_from_measurements(const MeasurementSet& ms);

/// Norm residuals are | |p_i| - 1 |, orthogonality residuals |p_i . p_j|,
/// handedness residual |p1 . (p2 x p3) - 1|.
TriadReport validate_triad(const PolarizationTriad& t, double tol);

/**
 * Quaternion from the trace and antisymmetric part of a rotation matrix:
 *
 *   n0 = sqrt(tr + 1) / 2,  n1 = (r32 - r23) / (2 sqrt(tr + 1)),  (cyclic)
 *
 * n0 is always the non-negative root. Throws NotRotation if r is not
 * orthogonal with det +1 within 1e-6, NearPiRotation if tr + 1 <= pi_eps.
 */
UnitQuaternion recover_quaternion(const Mat3& r, double pi_eps = 1e-8);

/// (tr + 1) + sum_i d_i^2 / (tr + 1) where d_i are the antisymmetric
/// differences; equals 4 for every rotation with tr + 1 > 0.
double norm_identity_sum(const Mat3& r);

}  // namespace lorentzpol
