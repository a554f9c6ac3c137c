#pragma once

#include <stdexcept>
#include <string>

namespace moodpipe {

// Bad input data or an unusable file. Argument mistakes by the caller are
// reported with std::invalid_argument instead.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace moodpipe
