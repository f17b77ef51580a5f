#pragma once

#include <stdexcept>

namespace memfract {

class PoleError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Euler gamma. Throws PoleError at 0, -1, -2, ...
double gamma(double x);

/// 1/Gamma(x); exactly 0 at the poles of Gamma.
double recip_gamma(double x);

}  // namespace memfract
