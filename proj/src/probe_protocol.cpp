#include "lorentzpol/probe_protocol.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "detail/format.hpp"
#include "lorentzpol/errors.hpp"

namespace lorentzpol {

namespace {

void require_positive_intensity(double intensity) {
    if (!(intensity > 0.0)) {
        throw Error(ErrorCode::NonPositiveIntensity,
                    "probe intensity must be > 0, got " + detail::fmt(intensity));
    }
}

}  // namespace

const StokesVector& MeasurementSet::output(std::size_t probe) const {
    switch (probe) {
        case 0: return f;
        case 1: return a;
        case 2: return b;
        case 3: return c;
        default: throw std::out_of_range("MeasurementSet::output: probe index " + std::to_string(probe));
    }
}

std::array<StokesVector, 4> probe_set(double intensity) {
    require_positive_intensity(intensity);
    const double i = intensity;
    return {StokesVector{i, 0.0, 0.0, 0.0}, StokesVector{i, i, 0.0, 0.0},
            StokesVector{i, 0.0, i, 0.0}, StokesVector{i, 0.0, 0.0, i}};
}

MeasurementSet simulate_measurements(const MuellerMatrix& m, double intensity,
                                     const NoiseSpec& noise) {
    require_positive_intensity(intensity);
    if (!(noise.sigma >= 0.0)) throw std::invalid_argument("noise sigma must be >= 0");

    const auto probes = probe_set(intensity);
    std::array<StokesVector, 4> outputs{};
    for (std::size_t p = 0; p < 4; ++p) outputs[p] = apply_mueller(m, probes[p]);

    if (noise.sigma > 0.0) {
        std::mt19937_64 rng(noise.seed);
        std::normal_distribution<double> gauss(0.0, noise.sigma);
        for (auto& out : outputs)
            for (std::size_t i = 0; i < 4; ++i) out[i] += gauss(rng);
    }
    return MeasurementSet{intensity, outputs[0], outputs[1], outputs[2], outputs[3]};
}

MuellerMatrix reconstruct_mueller(const MeasurementSet& ms) {
    require_positive_intensity(ms.intensity);
    const double inv = 1.0 / ms.intensity;
    MuellerMatrix m;
    for (std::size_t row = 0; row < 4; ++row) {
        m(row, 0) = ms.f[row] * inv;
        for (std::size_t col = 1; col < 4; ++col) {
            m(row, col) = (ms.output(col)[row] - ms.f[row]) * inv;
        }
    }
    return m;
}

LorentzResiduals lorentz_residuals(const MeasurementSet& ms) {
    const double i2 = ms.intensity * ms.intensity;
    LorentzResiduals res;
    res.r = {minkowski_norm(ms.f) - i2, minkowski_norm(ms.a), minkowski_norm(ms.b),
             minkowski_norm(ms.c)};
    double worst = 0.0;
    for (double r : res.r) worst = std::max(worst, std::abs(r));
    res.normalized = i2 > 0.0 ? worst / i2 : worst;
    return res;
}

}  // namespace lorentzpol
