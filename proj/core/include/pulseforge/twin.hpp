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

#pragma once

// Digital-twin construction from device calibration documents.
//
// Document schema (JSON, unknown keys ignored):
//   {"device_name": str, "retrieved_at": str,
//    "qubits": [{"id": str, "t1_us": num, "t2_us": num,
//                "frequency_ghz": num, "anharmonicity_mhz": num}]}
//
// Payload units are us / GHz / MHz; select_qubit is the single place where
// they are converted to ns and rad/ns.

#include <chrono>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "pulseforge/dynamics.hpp"
#include "pulseforge/model.hpp"

namespace pulseforge {

struct QubitRecord {
  std::string id;
  double t1_us = 0.0;
  double t2_us = 0.0;
  double frequency_ghz = 0.0;
  double anharmonicity_mhz = 0.0;

  bool operator==(const QubitRecord&) const = default;
};

struct CalibrationDocument {
  std::string device_name;
  std::string retrieved_at;
  std::vector<QubitRecord> qubits;

  bool operator==(const CalibrationDocument&) const = default;
};

/// Parses and fully validates a calibration payload.
/// Throws ParseError (malformed JSON, with byte offset), SchemaError (missing
/// or mistyped field, duplicate id) or PhysicalityError (T2 > 2 T1 and other
/// out-of-range values).
CalibrationDocument parse_calibration(std::string_view payload);

/// Canonical JSON form of a document; parse_calibration inverts it.
std::string serialize_calibration(const CalibrationDocument& doc);

/// Unit-converted parameters of one qubit. Throws LookupError listing the
/// available ids when qubit_id is absent.
DeviceCalibration select_qubit(const CalibrationDocument& doc,
                               std::string_view qubit_id);

/// Drift and controls for the given truncation and frame, with jumps
/// [(a, gamma_1), (a^dag a, 2 gamma_phi)]; rho_01 then decays as exp(-t / T2).
LindbladModel build_twin(const DeviceCalibration& calib, std::size_t dim,
                         Frame frame);

/// Reads a local file, or performs one HTTP(S) GET for http:// and https://
/// sources. No retries. Throws TransportError carrying the source.
std::string fetch_calibration(
    const std::string& source,
    std::chrono::seconds timeout = std::chrono::seconds(30));

/// T1 = 50 us, T2 = 70 us, f = 5.0 GHz, alpha / 2pi = -300 MHz.
DeviceCalibration representative_garnet();

/// Hex SHA-256 of the canonical text of a calibration.
std::string calibration_hash(const DeviceCalibration& calib);

}  // namespace pulseforge
