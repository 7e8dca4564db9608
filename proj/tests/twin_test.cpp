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

#include <gtest/gtest.h>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <numbers>
#include <random>
#include <thread>

#include <httplib.h>

#include "pulseforge/errors.hpp"
#include "pulseforge/io.hpp"
#include "support/test_support.hpp"

namespace pulseforge {
namespace {

constexpr double kPi = std::numbers::pi;
const std::filesystem::path kFixtures = PULSEFORGE_FIXTURE_DIR;

std::string fixture(const char* name) { return read_text_file(kFixtures / name); }

std::string one_qubit(const std::string& fields) {
  return R"({"device_name": "d", "retrieved_at": "2025-01-01T00:00:00Z", "qubits": [{)" +
         fields + "}]}";
}

TEST(ParseCalibrationTest, RepresentativeQubitIsValid) {
  const CalibrationDocument doc = parse_calibration(one_qubit(
      R"("id": "QB3", "t1_us": 50, "t2_us": 70, "frequency_ghz": 5.0, "anharmonicity_mhz": -300)"));
  ASSERT_EQ(doc.qubits.size(), 1u);
  EXPECT_EQ(doc.qubits[0], (QubitRecord{"QB3", 50.0, 70.0, 5.0, -300.0}));
  EXPECT_EQ(doc.device_name, "d");
  EXPECT_EQ(doc.retrieved_at, "2025-01-01T00:00:00Z");
}

TEST(ParseCalibrationTest, UnphysicalFixtureRejected) {
  EXPECT_THROW(parse_calibration(fixture("garnet_unphysical.json")), PhysicalityError);
  EXPECT_THROW(parse_calibration(one_qubit(
                   R"("id": "q", "t1_us": 50, "t2_us": 150, "frequency_ghz": 5, "anharmonicity_mhz": -300)")),
               PhysicalityError);
}

TEST(ParseCalibrationTest, T2AtTwiceT1IsAcceptedAndOneUlpAboveIsNot) {
  EXPECT_NO_THROW(parse_calibration(one_qubit(
      R"("id": "q", "t1_us": 50, "t2_us": 100, "frequency_ghz": 5, "anharmonicity_mhz": -300)")));
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                R"("id": "q", "t1_us": 50, "t2_us": %.17g, "frequency_ghz": 5, "anharmonicity_mhz": -300)",
                std::nextafter(100.0, 200.0));
  EXPECT_THROW(parse_calibration(one_qubit(buf)), PhysicalityError);
}

TEST(ParseCalibrationTest, EmptyQubitListIsValidButSelectionFails) {
  const CalibrationDocument doc = parse_calibration(fixture("empty_device.json"));
  EXPECT_TRUE(doc.qubits.empty());
  EXPECT_THROW(select_qubit(doc, "QB1"), LookupError);
}

TEST(ParseCalibrationTest, MalformedJsonCarriesByteOffset) {
  const std::string text = R"({"device_name": "d", "qubits": [)";
  try {
    parse_calibration(text);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_GT(e.byte_offset(), 0u);
    EXPECT_LE(e.byte_offset(), text.size() + 1);
  }
  try {
    parse_calibration("{\"a\": tru}");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_GE(e.byte_offset(), 7u);
    EXPECT_LE(e.byte_offset(), 10u);
  }
}

TEST(ParseCalibrationTest, SchemaErrorsNameFieldAndQubit) {
  try {
    parse_calibration(one_qubit(
        R"("id": "QB7", "t1_us": 50, "t2_us": 70, "anharmonicity_mhz": -300)"));
    FAIL() << "expected SchemaError";
  } catch (const SchemaError& e) {
    const std::string what = e.what();
    EXPECT_NE(what.find("frequency_ghz"), std::string::npos) << what;
    EXPECT_NE(what.find("QB7"), std::string::npos) << what;
  }
  try {
    parse_calibration(one_qubit(
        R"("id": "QB8", "t1_us": "50", "t2_us": 70, "frequency_ghz": 5, "anharmonicity_mhz": -300)"));
    FAIL() << "expected SchemaError";
  } catch (const SchemaError& e) {
    const std::string what = e.what();
    EXPECT_NE(what.find("t1_us"), std::string::npos) << what;
    EXPECT_NE(what.find("QB8"), std::string::npos) << what;
  }
  EXPECT_THROW(parse_calibration(R"({"device_name": "d", "retrieved_at": "t"})"), SchemaError);
  EXPECT_THROW(parse_calibration(R"([1, 2])"), SchemaError);
  EXPECT_THROW(parse_calibration(one_qubit(
                   R"("id": "", "t1_us": 50, "t2_us": 70, "frequency_ghz": 5, "anharmonicity_mhz": -300)")),
               SchemaError);
}

TEST(ParseCalibrationTest, DuplicateIdsAndRangeErrors) {
  const std::string q = R"({"id": "A", "t1_us": 50, "t2_us": 70, "frequency_ghz": 5, "anharmonicity_mhz": -300})";
  EXPECT_THROW(parse_calibration(R"({"device_name": "d", "retrieved_at": "t", "qubits": [)" + q +
                                 "," + q + "]}"),
               SchemaError);
  EXPECT_THROW(parse_calibration(one_qubit(
                   R"("id": "q", "t1_us": 0, "t2_us": 70, "frequency_ghz": 5, "anharmonicity_mhz": -300)")),
               PhysicalityError);
  EXPECT_THROW(parse_calibration(one_qubit(
                   R"("id": "q", "t1_us": 50, "t2_us": 70, "frequency_ghz": -5, "anharmonicity_mhz": -300)")),
               PhysicalityError);
  EXPECT_THROW(parse_calibration(one_qubit(
                   R"("id": "q", "t1_us": 50, "t2_us": 70, "frequency_ghz": 5, "anharmonicity_mhz": 10)")),
               PhysicalityError);
}

TEST(ParseCalibrationTest, TwentyQubitFixture) {
  const CalibrationDocument doc = parse_calibration(fixture("garnet_20q.json"));
  ASSERT_EQ(doc.qubits.size(), 20u);
  for (std::size_t k = 0; k < 20; ++k) EXPECT_EQ(doc.qubits[k].id, "QB" + std::to_string(k + 1));
  const DeviceCalibration qb3 = select_qubit(doc, "QB3");
  EXPECT_EQ(qb3.qubit_id(), "QB3");
  EXPECT_EQ(qb3.t1(), 50000.0);
  EXPECT_EQ(qb3.t2(), 70000.0);
  EXPECT_NEAR(qb3.omega_q(), 2.0 * kPi * 5.0, 1e-12);
  EXPECT_NEAR(qb3.alpha(), -2.0 * kPi * 0.3, 1e-15);
  EXPECT_EQ(qb3.source_timestamp(), doc.retrieved_at);
}

TEST(SelectQubitTest, UnknownIdListsAvailable) {
  const CalibrationDocument doc = parse_calibration(fixture("garnet_20q.json"));
  try {
    select_qubit(doc, "QB99");
    FAIL() << "expected LookupError";
  } catch (const LookupError& e) {
    const std::string what = e.what();
    EXPECT_NE(what.find("QB99"), std::string::npos);
    for (int k = 1; k <= 20; ++k) {
      EXPECT_NE(what.find("QB" + std::to_string(k)), std::string::npos) << k;
    }
  }
}

TEST(RepresentativeGarnetTest, EngineUnits) {
  const DeviceCalibration c = representative_garnet();
  EXPECT_EQ(c.t1(), 50000.0);
  EXPECT_EQ(c.t2(), 70000.0);
  EXPECT_NEAR(c.alpha(), -2.0 * kPi * 0.3, 1e-15);
  EXPECT_NEAR(c.omega_q(), 2.0 * kPi * 5.0, 1e-12);
}

TEST(BuildTwinTest, RatesFromRepresentativeValues) {
  const DeviceCalibration c = representative_garnet();
  // 1/50000 and 1/70000 - 1/100000 = 3/700000, worked by hand.
  EXPECT_NEAR(c.relaxation_rate(), 2.0e-5, 1e-20);
  EXPECT_NEAR(c.dephasing_rate(), 3.0 / 700000.0, 1e-20);
  EXPECT_NEAR(c.dephasing_rate(), 4.2857142857e-6, 1e-15);
  const LindbladModel twin = build_twin(c, 2, Frame::kRotating);
  ASSERT_EQ(twin.jumps.size(), 2u);
  EXPECT_EQ(twin.jumps[0].op, build_oscillator(2).lowering);
  EXPECT_EQ(twin.jumps[0].rate, c.relaxation_rate());
  EXPECT_EQ(twin.jumps[1].op, build_oscillator(2).number);
  EXPECT_EQ(twin.jumps[1].rate, 2.0 * c.dephasing_rate());
  EXPECT_EQ(twin.drift, ComplexMatrix(2));
  EXPECT_EQ(twin.h_i, build_controls(2).in_phase);
}

TEST(BuildTwinTest, PureT1TwinAtBoundary) {
  const DeviceCalibration c("q", 40000.0, 80000.0, 30.0, -1.9);
  EXPECT_EQ(c.dephasing_rate(), 0.0);
  EXPECT_EQ(build_twin(c, 3, Frame::kLab).jumps[1].rate, 0.0);
}

TEST(BuildTwinProperty, RatesNonNegativeForRandomDocuments) {
  std::mt19937_64 rng(401);
  for (int trial = 0; trial < 200; ++trial) {
    const double t1 = testing::uniform(rng, 1.0, 300.0);
    const double t2 = testing::uniform(rng, 0.0, 1.0) * 2.0 * t1 + 1e-9;
    char buf[256];
    std::snprintf(buf, sizeof(buf),
                  R"("id": "q", "t1_us": %.17g, "t2_us": %.17g, "frequency_ghz": %.17g, "anharmonicity_mhz": %.17g)",
                  t1, std::min(t2, 2.0 * t1), testing::uniform(rng, 3.0, 7.0),
                  testing::uniform(rng, -400.0, 0.0));
    const CalibrationDocument doc = parse_calibration(one_qubit(buf));
    const DeviceCalibration c = select_qubit(doc, "q");
    EXPECT_GT(c.t2(), 0.0);
    EXPECT_LE(c.t2(), 2.0 * c.t1());
    for (const auto& j : build_twin(c, 2 + trial % 2, Frame::kRotating).jumps) {
      EXPECT_GE(j.rate, 0.0);
    }
  }
}

TEST(SerializeCalibrationProperty, RoundTrip) {
  const CalibrationDocument garnet = parse_calibration(fixture("garnet_20q.json"));
  EXPECT_EQ(parse_calibration(serialize_calibration(garnet)), garnet);
  std::mt19937_64 rng(409);
  for (int trial = 0; trial < 100; ++trial) {
    CalibrationDocument doc{"dev" + std::to_string(trial), "2025-11-09T00:00:00Z", {}};
    const int n = trial % 6;
    for (int k = 0; k < n; ++k) {
      const double t1 = testing::uniform(rng, 1.0, 300.0);
      doc.qubits.push_back({"Q" + std::to_string(k), t1, testing::uniform(rng, 0.01, 2.0 * t1),
                            testing::uniform(rng, 3.0, 7.0), testing::uniform(rng, -400.0, 0.0)});
    }
    EXPECT_EQ(parse_calibration(serialize_calibration(doc)), doc);
  }
}

TEST(FetchCalibrationTest, LocalFileBytes) {
  const std::string path = (kFixtures / "garnet_20q.json").string();
  EXPECT_EQ(fetch_calibration(path), fixture("garnet_20q.json"));
}

TEST(FetchCalibrationTest, MissingFileIsTransportError) {
  const std::string path = (kFixtures / "does_not_exist.json").string();
  try {
    fetch_calibration(path);
    FAIL() << "expected TransportError";
  } catch (const TransportError& e) {
    EXPECT_EQ(e.source(), path);
  }
}

class LocalServer : public ::testing::Test {
 protected:
  void SetUp() override {
    server_.Get("/calibration", [](const httplib::Request&, httplib::Response& res) {
      res.set_content(read_text_file(kFixtures / "garnet_20q.json"), "application/json");
    });
    server_.Get("/moved", [](const httplib::Request&, httplib::Response& res) {
      res.set_redirect("/calibration");
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    ASSERT_GT(port_, 0);
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  void TearDown() override {
    server_.stop();
    if (thread_.joinable()) thread_.join();
  }
  std::string url(const char* path) const {
    return "http://127.0.0.1:" + std::to_string(port_) + path;
  }

  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
};

TEST_F(LocalServer, GetReturnsBody) {
  const std::string body = fetch_calibration(url("/calibration"), std::chrono::seconds(5));
  EXPECT_EQ(parse_calibration(body).qubits.size(), 20u);
}

TEST_F(LocalServer, FollowsRedirect) {
  EXPECT_EQ(fetch_calibration(url("/moved"), std::chrono::seconds(5)),
            fixture("garnet_20q.json"));
}

TEST_F(LocalServer, NonSuccessStatusIsTransportError) {
  const std::string source = url("/missing");
  try {
    fetch_calibration(source, std::chrono::seconds(5));
    FAIL() << "expected TransportError";
  } catch (const TransportError& e) {
    EXPECT_EQ(e.source(), source);
    EXPECT_NE(std::string(e.what()).find("404"), std::string::npos);
  }
}

TEST(FetchCalibrationTest, RefusedConnectionIsTransportError) {
  // Bind and release a port so nothing listens on it.
  httplib::Server probe;
  const int port = probe.bind_to_any_port("127.0.0.1");
  probe.stop();
  EXPECT_THROW(fetch_calibration("http://127.0.0.1:" + std::to_string(port) + "/x",
                                 std::chrono::seconds(2)),
               TransportError);
}

TEST(CalibrationHashTest, StableAndSensitive) {
  const DeviceCalibration a = representative_garnet();
  const std::string h = calibration_hash(a);
  EXPECT_EQ(h.size(), 64u);
  EXPECT_EQ(h, calibration_hash(representative_garnet()));
  const DeviceCalibration b("representative", 50000.0, 70001.0, a.omega_q(), a.alpha());
  EXPECT_NE(h, calibration_hash(b));
}

}  // namespace
}  // namespace pulseforge
