#pragma once

#include <stdexcept>
#include <string>

namespace skforge {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DegenerateInput : Error {
    using Error::Error;
};
struct EmptyGateSet : Error {
    using Error::Error;
};
struct NonSymmetricGateSet : Error {
    using Error::Error;
};
struct NetTooCoarse : Error {
    using Error::Error;
};
struct VersionMismatch : Error {
    using Error::Error;
};
struct CorruptFile : Error {
    using Error::Error;
};
struct StepUnreachable : Error {
    using Error::Error;
};
struct NoConjugatorFound : Error {
    using Error::Error;
};
struct Unsolvable : Error {
    using Error::Error;
};
struct TargetUnreachable : Error {
    using Error::Error;
};
struct PrecisionShortfall : Error {
    using Error::Error;
};
struct ConvergenceFailure : Error {
    using Error::Error;
};

}  // namespace skforge
