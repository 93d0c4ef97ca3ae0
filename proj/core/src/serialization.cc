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

#include "gentyp/serialization.h"

#include <cstdio>
#include <sstream>

#include "gentyp/errors.h"
#include "json.hpp"

namespace gentyp {

using nlohmann::json;

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  // snprintf honours LC_NUMERIC; the formats here are always '.'.
  for (char* p = buf; *p; ++p)
    if (*p == ',') *p = '.';
  return buf;
}

std::string channel_to_json(const QuantumChannel& ch) {
  json kraus = json::array();
  for (const Matrix& k : ch.kraus()) {
    json flat = json::array();
    for (Index r = 0; r < k.rows(); ++r)
      for (Index c = 0; c < k.cols(); ++c) flat.push_back({k(r, c).real(), k(r, c).imag()});
    kraus.push_back(std::move(flat));
  }
  json doc = {{"dim_in", ch.dim_in()}, {"dim_out", ch.dim_out()}, {"kraus", std::move(kraus)}};
  return doc.dump(2) + "\n";
}

namespace {

Complex parse_entry(const json& e) {
  if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
    return {e[0].get<double>(), e[1].get<double>()};
  }
  if (e.is_number()) return {e.get<double>(), 0.0};
  throw FormatError("channel JSON: matrix entry must be [re, im] or a real number");
}

Matrix parse_kraus(const json& k, Index rows, Index cols) {
  if (!k.is_array()) throw FormatError("channel JSON: each Kraus operator must be an array");
  Matrix m(rows, cols);
  const bool nested = !k.empty() && k[0].is_array() && !k[0].empty() && k[0][0].is_array();
  if (nested) {
    if (static_cast<Index>(k.size()) != rows) throw FormatError("channel JSON: Kraus operator has wrong row count");
    for (Index r = 0; r < rows; ++r) {
      const json& row = k[static_cast<std::size_t>(r)];
      if (!row.is_array() || static_cast<Index>(row.size()) != cols) {
        throw FormatError("channel JSON: Kraus operator has wrong column count");
      }
      for (Index c = 0; c < cols; ++c) m(r, c) = parse_entry(row[static_cast<std::size_t>(c)]);
    }
    return m;
  }
  if (static_cast<Index>(k.size()) != rows * cols) {
    throw FormatError("channel JSON: Kraus operator has " + std::to_string(k.size()) + " entries, expected " +
                      std::to_string(rows * cols));
  }
  for (Index r = 0; r < rows; ++r)
    for (Index c = 0; c < cols; ++c) m(r, c) = parse_entry(k[static_cast<std::size_t>(r * cols + c)]);
  return m;
}

}  // namespace

QuantumChannel channel_from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("channel JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("dim_in") || !doc.contains("dim_out") || !doc.contains("kraus")) {
    throw FormatError("channel JSON: expected an object with dim_in, dim_out and kraus");
  }
  if (!doc["dim_in"].is_number_integer() || !doc["dim_out"].is_number_integer() || !doc["kraus"].is_array()) {
    throw FormatError("channel JSON: dim_in/dim_out must be integers and kraus an array");
  }
  const auto dim_in = doc["dim_in"].get<Index>();
  const auto dim_out = doc["dim_out"].get<Index>();
  if (dim_in < 1 || dim_out < 1) throw FormatError("channel JSON: dimensions must be >= 1");
  std::vector<Matrix> kraus;
  for (const json& k : doc["kraus"]) kraus.push_back(parse_kraus(k, dim_out, dim_in));
  return QuantumChannel(dim_in, dim_out, std::move(kraus));
}

std::string report_to_json(const TypicalityReport& report) {
  json tails = json::array();
  for (const TailRow& row : report.tail_table) {
    tails.push_back({{"epsilon", row.epsilon},
                     {"empirical_tail_fraction", row.empirical_fraction},
                     {"levy_bound", row.levy_bound},
                     {"levy_bound_unclamped", row.levy_bound_unclamped}});
  }
  json doc = {
      {"d_R", report.d_r},
      {"d_S", report.d_s},
      {"samples", report.samples},
      {"master_seed", report.master_seed},
      {"mean_distance", report.mean_distance},
      {"std_distance", report.std_distance},
      {"max_distance", report.max_distance},
      {"entropy_bound", report.entropy_bound},
      {"partial_trace_bound", report.partial_trace_bound ? json(*report.partial_trace_bound) : json(nullptr)},
      {"linear_entropy", report.linear_entropy},
      {"eta_used", report.eta_used},
      {"eta_estimated", report.eta_estimated},
      {"tail_diagnostic_only", report.tail_diagnostic_only},
      {"mean_within_bound", report.mean_within_bound},
      {"tail_table", std::move(tails)},
  };
  return doc.dump(2) + "\n";
}

std::string distances_to_csv(const std::vector<double>& distances) {
  std::ostringstream os;
  os << "index,distance\n";
  for (std::size_t i = 0; i < distances.size(); ++i) os << i << ',' << format_double(distances[i]) << '\n';
  return os.str();
}

}  // namespace gentyp
