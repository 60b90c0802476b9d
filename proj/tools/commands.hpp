#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "lorentzpol/core_algebra.hpp"

namespace lorentzpol::cli {

/// Process exit codes.
enum ExitCode : int {
    kExitOk = 0,
    kExitRotation = 1,  ///< classify: element is a pure rotation
    kExitUsage = 2,     ///< bad flags, invalid element spec, unparseable input
    kExitIntensity = 3,
    kExitDegenerate = 4,     ///< DegenerateTrace / NearPiRotation / SingularNormalization
    kExitNotLorentzian = 5,  ///< element is not of the requested type
};

/// Invalid element description.
class SpecError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ElementSpec {
    enum class Kind { Matrix, Boost, Rotation, Quaternion, QParam };

    Kind kind = Kind::Matrix;
    MuellerMatrix matrix = MuellerMatrix::identity();
    int axis = 3;        ///< 1..3 for Boost / Rotation
    double angle = 0.0;  ///< rapidity beta or rotation angle theta (radians)
    UnitQuaternion quaternion;
    ComplexVector3 q;
};

/// Boost: L00 = Ljj = cosh beta, L0j = Lj0 = sinh beta along axis j.
MuellerMatrix boost_matrix(int axis, double beta);
/// Rotation by theta about axis j through the quaternion (cos theta/2, sin theta/2 e_j).
MuellerMatrix rotation_matrix(int axis, double theta);

/// Throws SpecError for axes outside 1..3, non-unit quaternions (1e-6) and
/// singular q-parameters.
MuellerMatrix build_element(const ElementSpec& spec);

enum class Model { Auto, Rotation, Lorentz, Raw };

struct CommandOutput {
    int exit_code = kExitOk;
    std::string out;
    std::string err;
};

CommandOutput simulate(const ElementSpec& spec, double intensity, double noise_sigma,
                       std::uint64_t seed);
CommandOutput recover(const std::string& measurement_json, Model model, double tol);
CommandOutput recover_batch(const std::filesystem::path& dir, Model model, double tol);
CommandOutput classify(const std::string& measurement_json, double tol);

/// Full command line: `simulate`, `recover`, `classify`. Input path "-" reads stdin.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace lorentzpol::cli
