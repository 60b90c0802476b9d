/**
 * @file probe_protocol.hpp
 * @brief Four-probe measurement protocol.
 *
 * The element is probed with one natural beam and three fully polarised
 * beams of equal intensity I:
 *
 *   (I, 0, 0, 0) -> F,  (I, I, 0, 0) -> A,  (I, 0, I, 0) -> B,  (I, 0, 0, I) -> C
 *
 * which determines all 16 Mueller elements by an exact linear inversion:
 * column 0 is F / I and column j is (X_j - F) / I.
 */

#pragma once

#include <array>
#include <cstdint>

#include "lorentzpol/core_algebra.hpp"

namespace lorentzpol {

struct MeasurementSet {
    double intensity = 1.0;
    StokesVector f;  ///< output for the natural beam
    StokesVector a;  ///< output for (I, I, 0, 0)
    StokesVector b;  ///< output for (I, 0, I, 0)
    StokesVector c;  ///< output for (I, 0, 0, I)

    /// Output for probe j (0 -> F, 1 -> A, 2 -> B, 3 -> C).
    const StokesVector& output(std::size_t probe) const;

    friend bool operator==(const MeasurementSet&, const MeasurementSet&) = default;
};

/// Additive i.i.d. Gaussian detector noise, sigma in intensity units.
struct NoiseSpec {
    double sigma = 0.0;
    std::uint64_t seed = 0;
};

/// Minkowski norms of the outputs: r0 = g(F,F) - I^2, r_j = g(X_j, X_j).
struct LorentzResiduals {
    std::array<double, 4> r{};
    /// max |r_i| / I^2
    double normalized = 0.0;
};

/// Throws NonPositiveIntensity unless intensity > 0.
std::array<StokesVector, 4> probe_set(double intensity);

/// Forward model: apply m to each probe and add noise drawn from a generator
/// seeded with noise.seed. sigma == 0 gives exact outputs. Outputs are not
/// clamped, so negative intensities may appear under large noise.
MeasurementSet simulate_measurements(const MuellerMatrix& m, double intensity,
                                     const NoiseSpec& noise = {});

MuellerMatrix reconstruct_mueller(const MeasurementSet& ms);

LorentzResiduals lorentz_residuals(const MeasurementSet& ms);

}  // namespace lorentzpol
