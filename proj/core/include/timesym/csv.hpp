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

#ifndef TIMESYM_CSV_HPP
#define TIMESYM_CSV_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace timesym::csv {

/// 17 significant digits via std::to_chars; locale independent.
std::string format(double value);

void write_row(std::ostream& os, const std::vector<double>& row);
void write_header(std::ostream& os, const std::vector<std::string>& columns);

/// Parses a CSV of doubles with one header line. Returns rows.
std::vector<std::vector<double>> read(std::istream& is, std::vector<std::string>* header);

}  // namespace timesym::csv

#endif  // TIMESYM_CSV_HPP
