// Copyright 2026 The ssdlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SSDLAB_COMMON_ERROR_H_
#define SSDLAB_COMMON_ERROR_H_

#include <sstream>
#include <stdexcept>
#include <string>

namespace ssdlab {

// Bad user-supplied configuration (maps, config files, CLI arguments).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A caller broke an operation's precondition.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Training produced non-finite values.
class NumericalAbort : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace internal {

template <typename... Args>
std::string StrCat(const Args&... args) {
  std::ostringstream out;
  (out << ... << args);
  return out.str();
}

}  // namespace internal

}  // namespace ssdlab

#define SSD_CHECK(cond, ...)                                              \
  do {                                                                    \
    if (!(cond)) {                                                        \
      throw ::ssdlab::ContractViolation(::ssdlab::internal::StrCat(       \
          __FILE__, ":", __LINE__, ": check failed: " #cond " ", ##__VA_ARGS__)); \
    }                                                                     \
  } while (false)

#endif  // SSDLAB_COMMON_ERROR_H_
