#pragma once

#include <stdexcept>
#include <string>

#include "json.hpp"
#include "lorentzpol/core_algebra.hpp"
#include "lorentzpol/probe_protocol.hpp"

namespace lorentzpol {

using ordered_json = nlohmann::ordered_json;

/// Malformed or schema-violating JSON input.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// {"intensity": I, "outputs": {"F": [4], "A": [4], "B": [4], "C": [4]}}
ordered_json to_json(const MeasurementSet& ms);
MeasurementSet measurement_set_from_json(const nlohmann::json& j);
MeasurementSet parse_measurement_set(const std::string& text);

ordered_json to_json(const StokesVector& s);
ordered_json to_json(const MuellerMatrix& m);
ordered_json to_json(const Vec3& v);
/// {"re": [4], "im": [4]}
ordered_json to_json(const ComplexFourVector& k);
/// {"re": [3], "im": [3]}
ordered_json to_json(const ComplexVector3& q);
ordered_json to_json(const UnitQuaternion& n);
ordered_json to_json(const LorentzResiduals& r);

/// Pretty-printed with two-space indent and a trailing newline.
std::string dump(const ordered_json& j);

}  // namespace lorentzpol
