#ifndef ABELJAC_ERRORS_HPP
#define ABELJAC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace abeljac {

// Error taxonomy mirrors the CLI exit codes: input errors (1),
// verification/convergence failures (2), internal numerical errors (3).
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InputError : Error {
    using Error::Error;
};

struct VerificationError : Error {
    using Error::Error;
};

struct NumericError : Error {
    using Error::Error;
};

// curve_model
struct EvenDegreeError : InputError { using InputError::InputError; };
struct DegreeTooSmallError : InputError { using InputError::InputError; };
struct LeadingZeroError : InputError { using InputError::InputError; };
struct NearDegenerateError : InputError { using InputError::InputError; };
struct NotOnCurveError : InputError { using InputError::InputError; };

// path_tracking
struct EndpointAtInfinityError : InputError { using InputError::InputError; };
struct NoRouteFoundError : InputError { using InputError::InputError; };
struct InconsistentStartError : InputError { using InputError::InputError; };
struct PathNotClosedError : InputError { using InputError::InputError; };
struct BranchTooCloseError : NumericError { using NumericError::NumericError; };
struct QuadratureNotConvergedError : NumericError { using NumericError::NumericError; };

// homology
struct AmbiguousCrossingError : NumericError { using NumericError::NumericError; };
struct NotUnimodularError : NumericError { using NumericError::NumericError; };

// periods / lattice
struct SingularAError : NumericError { using NumericError::NumericError; };
struct IllConditionedLatticeError : NumericError { using NumericError::NumericError; };

// abel_jacobi
struct NonzeroDegreeError : InputError { using InputError::InputError; };
struct PoleOnPathError : NumericError { using NumericError::NumericError; };
struct SingularJacobianAtBaseError : VerificationError { using VerificationError::VerificationError; };
struct LeftChartError : VerificationError { using VerificationError::VerificationError; };
struct NoConvergenceError : VerificationError { using VerificationError::VerificationError; };

// elliptic_oracle
struct ZeroInputError : InputError { using InputError::InputError; };
struct WrongGenusError : InputError { using InputError::InputError; };
struct DimensionMismatchError : InputError { using InputError::InputError; };

} // namespace abeljac

#endif
