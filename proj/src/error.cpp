#include "pcr3bp/error.hpp"

namespace pcr3bp {

const char *to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::Domain: return "domain";
    case ErrorKind::EmptyInterval: return "empty-interval";
    case ErrorKind::SingularityApproach: return "singularity-approach";
    case ErrorKind::StepFailure: return "step-failure";
    case ErrorKind::NotFound: return "not-found";
    case ErrorKind::NotPeriodic: return "not-periodic";
    case ErrorKind::IrregularOrbit: return "irregular-orbit";
    case ErrorKind::PointOnCurve: return "point-on-curve";
    case ErrorKind::WindingMismatch: return "winding-mismatch";
    case ErrorKind::NonSimpleLifting: return "non-simple-lifting";
    case ErrorKind::Unclassifiable: return "unclassifiable";
    case ErrorKind::RegionExitsHillRegion: return "region-exits-hill-region";
    case ErrorKind::ExtrapolationUnstable: return "extrapolation-unstable";
    case ErrorKind::QuadratureFailure: return "quadrature-failure";
    case ErrorKind::CriticalValue: return "critical-value";
    case ErrorKind::Schema: return "schema";
    }
    return "unknown";
}

} // namespace pcr3bp
