// Copyright 2026 The gentyp Authors
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

// Text formats: the JSON Kraus channel file, the typicality report, and
// the fixed-precision number formatting used by every CSV writer.

#ifndef GENTYP_SERIALIZATION_H
#define GENTYP_SERIALIZATION_H

#include <string>
#include <string_view>
#include <vector>

#include "gentyp/channels.h"
#include "gentyp/typicality.h"

namespace gentyp {

/// %.17g with '.' as decimal separator regardless of locale.
std::string format_double(double x);

/// {"dim_in": .., "dim_out": .., "kraus": [[[re, im], ...], ...]} with each
/// Kraus operator flattened row-major.
std::string channel_to_json(const QuantumChannel& ch);

/// Accepts the flat row-major layout above and, for hand-written files,
/// nested rows [[[re, im], ...], ...]. FormatError on malformed input,
/// NotCptpError when the family is not trace preserving.
QuantumChannel channel_from_json(std::string_view text);

/// Pretty-printed JSON with every report field.
std::string report_to_json(const TypicalityReport& report);

/// "index,distance" CSV, LF line endings.
std::string distances_to_csv(const std::vector<double>& distances);

}  // namespace gentyp

#endif  // GENTYP_SERIALIZATION_H
