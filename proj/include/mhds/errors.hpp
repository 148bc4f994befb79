#pragma once

#include <stdexcept>
#include <string>

namespace mhds {

// Invalid configuration or constraint violation detected before any work is done.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Time step rejected by the advective stability bound.
struct CflError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Non-finite values appeared in the state.
struct DivergedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace mhds
