// Copyright 2026 The gtprob Authors
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

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "gtp/rational.hpp"

namespace gtp {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or out-of-contract input (bad parameters, dimension mismatch,
/// a path that plays a forced-out move).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// A stake that wins a strictly positive amount whatever Reality plays.
struct ArbitrageCertificate {
  int round = 0;            // 0 when not attached to a game node
  std::string node;         // rendered state, empty when not attached
  Vec stake;
  Rational guaranteed_gain;
};

/// Raised when a quoted price leaves the admissible region.
class ArbitrageError : public Error {
 public:
  explicit ArbitrageError(ArbitrageCertificate cert)
      : Error("arbitrage: stake [" + join(cert.stake) +
              "] gains at least " + to_string(cert.guaranteed_gain) +
              (cert.node.empty() ? std::string()
                                 : " at round " + std::to_string(cert.round) +
                                       " node " + cert.node)),
        certificate_(std::move(cert)) {}

  const ArbitrageCertificate& certificate() const noexcept {
    return certificate_;
  }

 private:
  ArbitrageCertificate certificate_;
};

/// The oracle refuses to enumerate more paths than its cap allows.
class EnumerationCapExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace gtp
