// Copyright 2026 The qakg Authors
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

#include "qakg/io.h"

#include <cstdio>
#include <filesystem>

#include "gtest/gtest.h"

using namespace qakg;
using nlohmann::json;

TEST(io, family_round_trip_reverifies) {
    PtcFamily f = search_ptc(1, 2, 0.6, 20, 1);
    json j = family_to_json(f);
    EXPECT_EQ(j["schema"], kFamilySchema);
    double stored = -1;
    PtcFamily g = family_from_json(j, &stored);
    EXPECT_EQ(stored, f.epsilon_verified);
    EXPECT_EQ(g.epsilon_verified, f.epsilon_verified);
    ASSERT_EQ(g.size(), f.size());
    for (std::size_t i = 0; i < f.size(); i++) {
        EXPECT_EQ(g.codes[i], f.codes[i]);
    }
}

TEST(io, family_file_round_trip) {
    auto path = std::filesystem::temp_directory_path() / "qakg_io_family.json";
    PtcFamily f = search_ptc(1, 1, 4.0 / 3.0, 5, 2);
    save_json(path.string(), family_to_json(f));
    PtcFamily g = family_from_json(load_json(path.string()));
    EXPECT_EQ(g.epsilon_verified, f.epsilon_verified);
    std::filesystem::remove(path);
}

TEST(io, malformed_family_is_schema_error) {
    json j = family_to_json(search_ptc(1, 1, 4.0 / 3.0, 5, 2));
    json missing = j;
    missing.erase("codes");
    EXPECT_THROW(family_from_json(missing), SchemaError);
    json wrong_type = j;
    wrong_type["m"] = "one";
    EXPECT_THROW(family_from_json(wrong_type), SchemaError);
    json bad_code = j;
    bad_code["codes"] = json::array({json::array({"xz:10|00", "xz:00|10"})});
    EXPECT_THROW(family_from_json(bad_code), SchemaError);
    json bad_shape = j;
    bad_shape["s"] = 2;
    EXPECT_THROW(family_from_json(bad_shape), SchemaError);
    json other = j;
    other["schema"] = "something-else";
    EXPECT_THROW(family_from_json(other), SchemaError);
    EXPECT_THROW(family_from_json(json::array()), SchemaError);
}

TEST(io, unreadable_file_is_schema_error) {
    EXPECT_THROW(load_json("/nonexistent/qakg.json"), SchemaError);
    auto path = std::filesystem::temp_directory_path() / "qakg_io_bad.json";
    {
        std::FILE *f = std::fopen(path.string().c_str(), "w");
        std::fputs("{not json", f);
        std::fclose(f);
    }
    EXPECT_THROW(load_json(path.string()), SchemaError);
    std::filesystem::remove(path);
}

TEST(io, attack_round_trip_over_suite) {
    for (const auto &d : standard_suite(1, 2)) {
        AttackDescriptor back = attack_from_json(attack_to_json(d));
        EXPECT_EQ(back.label(), d.label());
        EXPECT_TRUE(back == d) << d.label();
    }
    EXPECT_THROW(attack_from_json(json{{"kind", "teleport"}}), SchemaError);
    EXPECT_THROW(attack_from_json(json{{"kind", "depolarizing"}}), SchemaError);
}

TEST(io, report_fields) {
    AdvantageReport r = make_report("qa_kg", "identity@T", "entangled", 1.0, 0.2, 1.0, 0.5);
    json j = report_to_json(r);
    EXPECT_EQ(j["protocol"], "qa_kg");
    EXPECT_EQ(j["pass"], true);
    EXPECT_DOUBLE_EQ(j["distinguishing_probability"].get<double>(), 0.55);
}

TEST(io, composition_round_trip) {
    CompositionTree t;
    t.nodes = {{"a", 0.1}, {"b", 0.2}};
    t.edges = {{"a", "b"}};
    CompositionTree back = composition_from_json(composition_to_json(t));
    EXPECT_NEAR(compose(back), 0.3, 1e-15);
    EXPECT_THROW(composition_from_json(json{{"nodes", json{{"a", "x"}}}}), SchemaError);
    EXPECT_THROW(composition_from_json(json{{"nodes", json::object()}, {"edges", json::array({json::array({"a"})})}}),
                 SchemaError);
}

TEST(io, cipher_descriptor) {
    ApproxCipher c = sample_cipher(1, 4, 7);
    json j = cipher_to_json(c);
    EXPECT_EQ(j["m"], 1);
    EXPECT_EQ(j["K"], 4);
    EXPECT_EQ(j["seed"], 7);
    EXPECT_DOUBLE_EQ(j["delta_measured"].get<double>(), c.delta_measured);
}
