//
// Copyright 2026 The CSC Toolkit Authors
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
//

#ifndef CSC_ERROR_H_
#define CSC_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace csc {

// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input. `index` is the 0-based record (or line) number the
// problem was found at.
class ParseError : public Error {
 public:
  ParseError(std::size_t index, const std::string& what)
      : Error("record " + std::to_string(index) + ": " + what), index_(index) {}

  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

// A caller broke an operation's precondition (length mismatch, empty
// position, out-of-range argument).
class ContractViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace csc

#endif  // CSC_ERROR_H_
