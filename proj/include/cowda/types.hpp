#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace cowda {

// User data: entries in {-1,0,+1}, 0 = inactive user.
using TernaryVector = std::vector<int8_t>;

// Difference of two ternary vectors or a lattice coefficient: entries in {-2..+2}.
using QuinaryVector = std::vector<int8_t>;

// Exact integer chip vector (C*X and friends).
using IntegerVector = std::vector<int>;

// Thrown when an operation would exceed its configured enumeration or memory
// limits. Never downgraded to a guess: callers must pick another method.
class capacity_error : public std::runtime_error {
 public:
  explicit capacity_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace cowda
