#ifndef SWIM_ERRORS_HPP
#define SWIM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace swim {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IntegrationError : std::runtime_error {
  double t_abort;
  IntegrationError(const std::string& msg, double t)
      : std::runtime_error(msg), t_abort(t) {}
};

struct VerificationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace swim

#endif
