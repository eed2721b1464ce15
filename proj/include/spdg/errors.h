//
// Copyright 2026 The SPDG Tools Authors
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

#ifndef SPDG_ERRORS_H_
#define SPDG_ERRORS_H_

#include <stdexcept>
#include <string>

namespace spdg {

// Missing or inconsistent configuration: a lexicon that is not loaded, a
// language without a corpus, an invalid parameter. The CLI maps it to exit 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Problems with the data itself. The CLI maps these to exit 3.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IngestError : public DataError {
 public:
  using DataError::DataError;
};

class LexiconLoadError : public DataError {
 public:
  using DataError::DataError;
};

class CalibrationError : public DataError {
 public:
  using DataError::DataError;
};

// Raised by the external-process hook on timeouts and protocol violations.
class HookError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace spdg

#endif  // SPDG_ERRORS_H_
