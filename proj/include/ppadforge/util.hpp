#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ppadforge {

// Caller handed us something that violates a documented precondition.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An enumeration would exceed its configured budget; refused up front.
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A construction broke one of its own invariants. Always a bug.
class InternalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Binomial coefficient; throws InternalError on uint64 overflow.
std::uint64_t choose(int n, int k);

// All size-k subsets of [n] as bitmasks in ascending numeric order.
std::vector<std::uint64_t> subsets_of_size(int n, int k);

// All length-`parts` vectors of nonnegative ints summing to `total`,
// in lexicographic order.
std::vector<std::vector<int>> compositions(int total, int parts);

// FNV-1a 64-bit digest, lowercase hex. Used for input digests in reports.
std::string fnv1a_hex(const std::string& bytes);

}  // namespace ppadforge
