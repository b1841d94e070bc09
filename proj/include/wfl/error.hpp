#ifndef WFL_ERROR_HPP
#define WFL_ERROR_HPP

#include <stdexcept>
#include <string>

namespace wfl {

enum class ErrorKind {
  InvalidScale,
  DegenerateProfile,
  InvalidProfile,
  InvalidModel,
  InadmissibleModel,
  InadmissibleSlopeFactor,
  ZeroTension,
  InversionFailure,
  Geometry,
  Validity,
  InvalidInitialState,
  InvalidSystem,
  StiffnessFailure,
  Domain,
  Config,
};

const char* to_string(ErrorKind kind);

/// Every failure raised by the library carries a kind so the CLI can map it
/// to an exit code and tests can match on it.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace wfl

#endif
