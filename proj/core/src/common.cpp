// Copyright 2026 The timesym Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "timesym/common.hpp"

#include <cmath>
#include <sstream>

namespace timesym {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NonIntegrableKernel: return "NonIntegrableKernel";
    case ErrorCode::ContinuumBath: return "ContinuumBath";
    case ErrorCode::UnsupportedPotential: return "UnsupportedPotential";
    case ErrorCode::AmbiguousSecularGrouping: return "AmbiguousSecularGrouping";
    case ErrorCode::NotPositiveSemidefinite: return "NotPositiveSemidefinite";
    case ErrorCode::DegenerateSpectrum: return "DegenerateSpectrum";
    case ErrorCode::AsymmetricGrid: return "AsymmetricGrid";
    case ErrorCode::CflViolation: return "CflViolation";
    case ErrorCode::PositivityLoss: return "PositivityLoss";
  }
  return "Unknown";
}

namespace {

long steps_for(double dt, double span) {
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw Error(ErrorCode::InvalidArgument, "time step dt must be positive and finite");
  }
  if (!(span >= 0.0) || !std::isfinite(span)) {
    throw Error(ErrorCode::InvalidArgument, "time span must be finite and non-negative");
  }
  // Tolerate round-off so that t_max = n * dt lands on the grid.
  return static_cast<long>(std::floor(span / dt + 1e-9));
}

}  // namespace

TimeGrid TimeGrid::forward(double dt, double t_max) {
  return TimeGrid{dt, 0, steps_for(dt, t_max)};
}

TimeGrid TimeGrid::symmetric(double dt, double t_max) {
  const long n = steps_for(dt, t_max);
  return TimeGrid{dt, n, n};
}

TimeGrid TimeGrid::span(double dt, double t_min, double t_max) {
  if (t_min > 0.0 || t_max < 0.0) {
    std::ostringstream os;
    os << "time span [" << t_min << ", " << t_max << "] must contain t = 0";
    throw Error(ErrorCode::InvalidArgument, os.str());
  }
  return TimeGrid{dt, steps_for(dt, -t_min), steps_for(dt, t_max)};
}

std::vector<double> TimeGrid::times() const {
  std::vector<double> out(static_cast<std::size_t>(size()));
  for (long i = 0; i < size(); ++i) out[static_cast<std::size_t>(i)] = time(i);
  return out;
}

}  // namespace timesym
