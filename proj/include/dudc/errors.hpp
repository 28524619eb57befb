// SPDX-License-Identifier: Apache-2.0
//
// dudc — stochastic-geometry analysis of decoupled uplink/downlink cell
// association under dual connectivity.
//
// Licensed under the Apache License, Version 2.0; see LICENSE or
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace dudc {

/// Parameter/configuration rejection. Carries the offending field name so
/// callers can report which input to fix.
class invalid_parameter : public std::invalid_argument {
 public:
  invalid_parameter(std::string field, const std::string& reason)
      : std::invalid_argument(field + ": " + reason), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace dudc
