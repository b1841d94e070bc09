#include "wfl/error.hpp"

namespace wfl {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidScale: return "invalid-scale";
    case ErrorKind::DegenerateProfile: return "degenerate-profile";
    case ErrorKind::InvalidProfile: return "invalid-profile";
    case ErrorKind::InvalidModel: return "invalid-model";
    case ErrorKind::InadmissibleModel: return "inadmissible-model";
    case ErrorKind::InadmissibleSlopeFactor: return "inadmissible-slope-factor";
    case ErrorKind::ZeroTension: return "zero-tension";
    case ErrorKind::InversionFailure: return "inversion-failure";
    case ErrorKind::Geometry: return "geometry";
    case ErrorKind::Validity: return "validity";
    case ErrorKind::InvalidInitialState: return "invalid-initial-state";
    case ErrorKind::InvalidSystem: return "invalid-system";
    case ErrorKind::StiffnessFailure: return "stiffness-failure";
    case ErrorKind::Domain: return "domain";
    case ErrorKind::Config: return "config";
  }
  return "unknown";
}

}  // namespace wfl
