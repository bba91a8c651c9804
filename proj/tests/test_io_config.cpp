// Copyright 2026 The foil-pinn Authors
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

#include <doctest.h>

#include <cmath>
#include <filesystem>

#include "foil/error.hpp"
#include "foil/io.hpp"
#include "foil/run_config.hpp"

using namespace foil;
namespace fs = std::filesystem;

TEST_CASE("number formatting round trips") {
    for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 0.0}) {
        double back = 0.0;
        REQUIRE(parse_double(format_double(v), back));
        CHECK(back == v);
    }
    CHECK(format_double(std::nan("")) == "nan");
    double out = 0.0;
    CHECK_FALSE(parse_double("1.5x", out));
    CHECK_FALSE(parse_double("", out));
}

TEST_CASE("FNV-1a test vectors") {
    CHECK(fnv1a_hex("") == "cbf29ce484222325");
    CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
    CHECK(fnv1a_hex("foobar") == "85944171f73967e8");
}

TEST_CASE("artifact headers") {
    const std::string h = artifact_header("case", 1, {{"naca", "2412"}, {"u_in", "3"}});
    CHECK(h == "# foil-pinn case v1, naca=2412, u_in=3");
    const ArtifactHeader back = parse_artifact_header(h);
    CHECK(back.kind == "case");
    CHECK(back.version == 1);
    CHECK(back.fields.at("u_in") == "3");
    CHECK(parse_artifact_header("# something else").kind.empty());
}

TEST_CASE("CSV parsing keeps comments and line numbers") {
    const CsvTable t = parse_csv("# foil-pinn case v1\nx,y\n1,2\n\n3,4\n");
    CHECK(t.comments.size() == 1);
    CHECK(t.column("y") == 1);
    CHECK(t.column("z") == -1);
    REQUIRE(t.rows.size() == 2);
    CHECK(t.line_numbers[1] == 5);
    CHECK_THROWS_AS(parse_csv("x,y\n1,2,3\n"), LoadError);
}

TEST_CASE("atomic writes replace the whole file") {
    const fs::path p = fs::temp_directory_path() / "foil_pinn_atomic.txt";
    write_file_atomic(p, "first version, longer");
    write_file_atomic(p, "second");
    CHECK(read_file(p) == "second");
    for (const auto& e : fs::directory_iterator(p.parent_path())) {
        CHECK(e.path().filename().string().find("foil_pinn_atomic.txt.") == std::string::npos);
    }
    fs::remove(p);
}

TEST_CASE("run config defaults and overrides") {
    const RunConfig def = parse_run_config(nlohmann::json::object());
    CHECK(def.train.schedule.total_steps == 10000);
    CHECK(def.train.schedule.warmstart_steps == 2000);
    CHECK(def.train.model.hidden_layers == 6);
    CHECK(def.train.model.width == 64);
    CHECK(def.zone_threshold == 0.25);

    const auto j = nlohmann::json::parse(R"({
        "model": {"variant": "LG", "activation": "sine"},
        "schedule": {"total_steps": 500},
        "weights": {"data": 2.0},
        "cases": [{"naca": "4412", "u_in": 3.5, "points": 100, "seed": 2}]
    })");
    const RunConfig rc = parse_run_config(j);
    CHECK(rc.train.model.variant == ModelVariant::LG);
    CHECK(rc.train.model.activation == Activation::sine);
    CHECK(rc.train.schedule.total_steps == 500);
    CHECK(rc.train.schedule.warmstart_steps == 100);
    CHECK(rc.train.weights.data == 2.0);
    REQUIRE(rc.cases.size() == 1);
    CHECK(rc.cases[0].naca == "4412");
    CHECK(rc.cases[0].points == 100);

    const RunConfig again = parse_run_config(to_json(rc));
    CHECK(config_hash(again) == config_hash(rc));
    CHECK(config_hash(rc) != config_hash(def));
}

TEST_CASE("run config errors name the field") {
    auto message = [](const char* text) {
        try {
            parse_run_config(nlohmann::json::parse(text));
        } catch (const ValidationError& e) {
            return std::string(e.what());
        }
        return std::string();
    };
    CHECK(message(R"({"schedule": {"totl_steps": 5}})").find("schedule.totl_steps") != std::string::npos);
    CHECK(message(R"({"model": {"width": "wide"}})").find("model.width") != std::string::npos);
    CHECK(message(R"({"model": {"activation": "relu"}})").find("activation") != std::string::npos);
    CHECK_FALSE(message(R"({"schedule": {"total_steps": -1}})").empty());
    CHECK_FALSE(message(R"({"cases": [{"naca": "4412", "speed": 3}]})").empty());
    CHECK_THROWS_AS(load_run_config(fs::temp_directory_path() / "no_such_config.json"), LoadError);
}
