#pragma once

#include <stdexcept>
#include <string>

namespace gae2e {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

#define GAE2E_DEFINE_ERROR(Name)                                   \
    class Name : public Error {                                    \
    public:                                                        \
        explicit Name(const std::string& msg) : Error(msg) {}      \
    }

// param-space
GAE2E_DEFINE_ERROR(DuplicateNameError);
GAE2E_DEFINE_ERROR(InvalidBoundsError);
GAE2E_DEFINE_ERROR(DimensionMismatchError);

// ga-core
GAE2E_DEFINE_ERROR(PopulationTooSmallError);
GAE2E_DEFINE_ERROR(UnevaluatedIndividualError);
GAE2E_DEFINE_ERROR(EvaluatorFailure);

// codec
GAE2E_DEFINE_ERROR(OutOfBoundsError);
GAE2E_DEFINE_ERROR(BadBitWidthError);
GAE2E_DEFINE_ERROR(LengthMismatchError);

// metrics
GAE2E_DEFINE_ERROR(DegenerateLabelsError);
GAE2E_DEFINE_ERROR(EmptyHistoryError);

// fitness
GAE2E_DEFINE_ERROR(NonFiniteInputError);
GAE2E_DEFINE_ERROR(DivergedError);
GAE2E_DEFINE_ERROR(TimeoutError);
GAE2E_DEFINE_ERROR(MalformedResponseError);
GAE2E_DEFINE_ERROR(NonZeroExitError);

// dist-exec
GAE2E_DEFINE_ERROR(BindFailureError);
GAE2E_DEFINE_ERROR(MasterUnreachableError);
GAE2E_DEFINE_ERROR(ProtocolError);

// runlog
GAE2E_DEFINE_ERROR(IoFailureError);
GAE2E_DEFINE_ERROR(MalformedLogError);

// cli / config
GAE2E_DEFINE_ERROR(ConfigError);

#undef GAE2E_DEFINE_ERROR

} // namespace gae2e
