// Copyright 2026 The fregret Authors
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

#ifndef FREGRET_ERROR_HPP
#define FREGRET_ERROR_HPP

#include <stdexcept>
#include <string>

namespace fregret {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad argument or precondition violation (empty vector, length mismatch, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A profile lacks an information set the game needs.
class MissingInfoSet : public Error {
 public:
  explicit MissingInfoSet(const std::string& key)
      : Error("profile has no entry for infoset '" + key + "'"), key_(key) {}
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

/// Structural problem with a game tree, infoset key, or input file.
class ValidationError : public Error {
 public:
  using Error::Error;
};

}  // namespace fregret

#endif  // FREGRET_ERROR_HPP
