#pragma once

#include <stdexcept>
#include <string>

namespace lmom {

// Precondition on mathematical input violated (non-prime modulus, gcd != 1, ...).
// std::domain_error is used directly for those.

// Requested size exceeds what the chosen algorithm can do at desk scale.
class feasibility_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace lmom
