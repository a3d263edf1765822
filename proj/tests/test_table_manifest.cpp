#include <doctest.h>

#include <nlohmann/json.hpp>

#include "hvlab/errors.hpp"
#include "hvlab/manifest.hpp"
#include "hvlab/table.hpp"

using namespace hvlab;

TEST_CASE("fnv1a64 reference values") {
    CHECK(fnv1a64("") == 0xcbf29ce484222325ull);
    CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cull);
    CHECK(hex64(0xcbf29ce484222325ull) == "cbf29ce484222325");
}

TEST_CASE("table: csv layout and hash comment") {
    Table table;
    table.columns = {"name", "count", "value"};
    table.push_row({std::string("alpha"), std::int64_t{3}, 0.25});
    table.push_row({std::string("beta,comma"), std::int64_t{-1}, 1e-9});

    const std::string csv = to_csv(table, "deadbeefdeadbeef");
    CHECK(csv ==
          "# manifest=deadbeefdeadbeef\n"
          "name,count,value\n"
          "alpha,3,0.25\n"
          "\"beta,comma\",-1,1e-09\n");

    // byte-stable
    CHECK(to_csv(table, "deadbeefdeadbeef") == csv);

    std::vector<Cell> short_row = {std::string("x")};
    CHECK_THROWS_AS(table.push_row(short_row), ConfigError);
}

TEST_CASE("table: json mirror carries the same content") {
    Table table;
    table.columns = {"k", "v"};
    table.push_row({std::int64_t{1}, 0.5});
    const auto doc = nlohmann::json::parse(to_json(table, "0123456789abcdef"));
    CHECK(doc["manifest_hash"] == "0123456789abcdef");
    CHECK(doc["columns"].size() == 2);
    CHECK(doc["rows"].size() == 1);
    CHECK(doc["rows"][0][0] == 1);
    CHECK(doc["rows"][0][1] == 0.5);
}

TEST_CASE("manifest: hash covers the physics config, not the execution metadata") {
    RunManifest manifest;
    manifest.subcommand = "bell";
    manifest.version = "0.0-test";
    manifest.seed = 7;
    manifest.partitions = 4;
    manifest.duration_ms = 123.0;
    manifest.set("state", "psi-minus");
    manifest.set("alpha", 0.5);
    manifest.set("n", std::int64_t{1000});

    const std::string hash = manifest.hash();
    RunManifest other = manifest;
    other.partitions = 8;
    other.version = "9.9";
    other.duration_ms = 1.0;
    CHECK(other.hash() == hash);

    other.set("alpha", 0.6);
    CHECK(other.hash() != hash);

    RunManifest reseeded = manifest;
    reseeded.seed = 8;
    CHECK(reseeded.hash() != hash);
}

TEST_CASE("manifest: set() overwrites in place and file text round-trips") {
    RunManifest manifest;
    manifest.subcommand = "malus";
    manifest.version = "0.0-test";
    manifest.seed = 11;
    manifest.set("alpha", 0.1);
    manifest.set("alpha", 0.2);
    CHECK(manifest.config.size() == 1);

    manifest.set("beta", -1.0471975511965976);
    const std::string text = manifest.to_file_text();
    const auto parsed = RunManifest::parse_text(text);
    CHECK(parsed.at("subcommand") == "malus");
    CHECK(parsed.at("seed") == "11");
    CHECK(parsed.at("alpha") == format_double_exact(0.2));
    CHECK(parsed.at("beta") == format_double_exact(-1.0471975511965976));
    CHECK(parsed.count("manifest_hash") == 1);

    // exact decimal round-trip for angles
    CHECK(std::stod(parsed.at("beta")) == -1.0471975511965976);
}
