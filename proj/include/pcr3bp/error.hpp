#pragma once

#include <stdexcept>
#include <string>

namespace pcr3bp {

enum class ErrorKind {
    Domain,
    EmptyInterval,
    SingularityApproach,
    StepFailure,
    NotFound,
    NotPeriodic,
    IrregularOrbit,
    PointOnCurve,
    WindingMismatch,
    NonSimpleLifting,
    Unclassifiable,
    RegionExitsHillRegion,
    ExtrapolationUnstable,
    QuadratureFailure,
    CriticalValue,
    Schema,
};

const char *to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string &what) : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace pcr3bp
