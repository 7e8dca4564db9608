// Copyright 2026 The PulseForge Authors
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

#include "pulseforge/twin.hpp"

#include <openssl/evp.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include <httplib.h>
#include <json.hpp>

#include "pulseforge/errors.hpp"

namespace pulseforge {

using nlohmann::json;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string describe(const json& qubit, std::size_t index) {
  if (qubit.is_object()) {
    const auto it = qubit.find("id");
    if (it != qubit.end() && it->is_string()) {
      return "qubit '" + it->get<std::string>() + "'";
    }
  }
  return "qubit #" + std::to_string(index);
}

double require_number(const json& qubit, const char* field,
                      const std::string& who) {
  const auto it = qubit.find(field);
  if (it == qubit.end()) {
    throw SchemaError(who + ": missing field '" + field + "'");
  }
  if (!it->is_number()) {
    throw SchemaError(who + ": field '" + field + "' must be a number");
  }
  const double v = it->get<double>();
  if (!std::isfinite(v)) {
    throw SchemaError(who + ": field '" + field + "' must be finite");
  }
  return v;
}

std::string require_string(const json& obj, const char* field,
                           const std::string& who) {
  const auto it = obj.find(field);
  if (it == obj.end()) throw SchemaError(who + ": missing field '" + field + "'");
  if (!it->is_string()) {
    throw SchemaError(who + ": field '" + field + "' must be a string");
  }
  return it->get<std::string>();
}

DeviceCalibration to_engine_units(const QubitRecord& q,
                                  const std::string& timestamp) {
  return DeviceCalibration(q.id, q.t1_us * 1000.0, q.t2_us * 1000.0,
                           kTwoPi * q.frequency_ghz,
                           kTwoPi * (q.anharmonicity_mhz / 1000.0), timestamp);
}

}  // namespace

CalibrationDocument parse_calibration(std::string_view payload) {
  json root;
  try {
    root = json::parse(payload.begin(), payload.end());
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("calibration: malformed JSON: ") + e.what(),
                     e.byte);
  }
  if (!root.is_object()) throw SchemaError("calibration: document must be an object");

  CalibrationDocument doc;
  doc.device_name = require_string(root, "device_name", "calibration");
  doc.retrieved_at = require_string(root, "retrieved_at", "calibration");

  const auto qubits = root.find("qubits");
  if (qubits == root.end()) throw SchemaError("calibration: missing field 'qubits'");
  if (!qubits->is_array()) throw SchemaError("calibration: 'qubits' must be an array");

  std::set<std::string> seen;
  for (std::size_t index = 0; index < qubits->size(); ++index) {
    const json& entry = (*qubits)[index];
    const std::string who = describe(entry, index);
    if (!entry.is_object()) throw SchemaError(who + ": entry must be an object");

    QubitRecord q;
    q.id = require_string(entry, "id", who);
    if (q.id.empty()) throw SchemaError(who + ": field 'id' must be non-empty");
    if (!seen.insert(q.id).second) throw SchemaError(who + ": duplicate id");
    q.t1_us = require_number(entry, "t1_us", who);
    q.t2_us = require_number(entry, "t2_us", who);
    q.frequency_ghz = require_number(entry, "frequency_ghz", who);
    q.anharmonicity_mhz = require_number(entry, "anharmonicity_mhz", who);

    if (!(q.t1_us > 0.0)) throw PhysicalityError(who + ": t1_us must be positive");
    if (!(q.t2_us > 0.0)) throw PhysicalityError(who + ": t2_us must be positive");
    if (!(q.frequency_ghz > 0.0)) {
      throw PhysicalityError(who + ": frequency_ghz must be positive");
    }
    if (q.anharmonicity_mhz > 0.0) {
      throw PhysicalityError(who + ": anharmonicity_mhz must be <= 0");
    }
    // The engine-unit constructor enforces T2 <= 2 T1 after conversion.
    to_engine_units(q, doc.retrieved_at);
    doc.qubits.push_back(std::move(q));
  }
  return doc;
}

std::string serialize_calibration(const CalibrationDocument& doc) {
  json qubits = json::array();
  for (const auto& q : doc.qubits) {
    qubits.push_back({{"id", q.id},
                      {"t1_us", q.t1_us},
                      {"t2_us", q.t2_us},
                      {"frequency_ghz", q.frequency_ghz},
                      {"anharmonicity_mhz", q.anharmonicity_mhz}});
  }
  const json root = {{"device_name", doc.device_name},
                     {"retrieved_at", doc.retrieved_at},
                     {"qubits", std::move(qubits)}};
  return root.dump(2);
}

DeviceCalibration select_qubit(const CalibrationDocument& doc,
                               std::string_view qubit_id) {
  for (const auto& q : doc.qubits) {
    if (q.id == qubit_id) return to_engine_units(q, doc.retrieved_at);
  }
  std::string available;
  for (const auto& q : doc.qubits) {
    if (!available.empty()) available += ", ";
    available += q.id;
  }
  throw LookupError("unknown qubit '" + std::string(qubit_id) +
                    "'; available: [" + available + "]");
}

LindbladModel build_twin(const DeviceCalibration& calib, std::size_t dim,
                         Frame frame) {
  TruncatedOscillator osc = build_oscillator(dim);
  ControlHamiltonians controls = build_controls(dim);
  LindbladModel model{build_drift(calib, dim, frame),
                      std::move(controls.in_phase),
                      std::move(controls.quadrature),
                      {}};
  model.jumps.push_back({std::move(osc.lowering), calib.relaxation_rate()});
  model.jumps.push_back({std::move(osc.number), 2.0 * calib.dephasing_rate()});
  return model;
}

namespace {

std::string fetch_url(const std::string& url, std::chrono::seconds timeout) {
  const auto scheme_end = url.find("://");
  const auto path_begin = url.find('/', scheme_end + 3);
  const std::string origin = url.substr(0, path_begin);
  const std::string path =
      path_begin == std::string::npos ? "/" : url.substr(path_begin);

  httplib::Client client(origin);
  if (!client.is_valid()) {
    throw TransportError("cannot open '" + url + "': unsupported scheme", url);
  }
  client.set_connection_timeout(timeout);
  client.set_read_timeout(timeout);
  client.set_follow_location(true);
  auto response = client.Get(path);
  if (!response) {
    throw TransportError("GET '" + url + "' failed: " +
                             httplib::to_string(response.error()),
                         url);
  }
  if (response->status < 200 || response->status >= 300) {
    throw TransportError("GET '" + url + "' returned HTTP " +
                             std::to_string(response->status),
                         url);
  }
  return response->body;
}

}  // namespace

std::string fetch_calibration(const std::string& source,
                              std::chrono::seconds timeout) {
  if (source.starts_with("http://") || source.starts_with("https://")) {
    return fetch_url(source, timeout);
  }
  std::ifstream in(source, std::ios::binary);
  if (!in) throw TransportError("cannot open calibration file '" + source + "'", source);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw TransportError("error reading '" + source + "'", source);
  return buffer.str();
}

DeviceCalibration representative_garnet() {
  return to_engine_units({"representative", 50.0, 70.0, 5.0, -300.0}, "");
}

std::string calibration_hash(const DeviceCalibration& calib) {
  char numbers[160];
  std::snprintf(numbers, sizeof(numbers), "|%.17g|%.17g|%.17g|%.17g", calib.t1(),
                calib.t2(), calib.omega_q(), calib.alpha());
  const std::string canonical = calib.qubit_id() + numbers;

  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(canonical.data(), canonical.size(), digest, &length,
                 EVP_sha256(), nullptr) != 1) {
    throw Error("calibration_hash: SHA-256 failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  hex.reserve(2 * length);
  for (unsigned int i = 0; i < length; ++i) {
    hex.push_back(kHex[digest[i] >> 4]);
    hex.push_back(kHex[digest[i] & 0xF]);
  }
  return hex;
}

}  // namespace pulseforge
