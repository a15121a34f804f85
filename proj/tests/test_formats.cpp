#include <doctest.h>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "csram/errors.hpp"
#include "csram/keyval.hpp"
#include "csram/tensor_io.hpp"

using namespace csram;

namespace {

std::string serialize(const Tensor& t) {
    std::ostringstream out(std::ios::binary);
    write_tensor(out, t);
    return out.str();
}

Tensor deserialize(const std::string& bytes) {
    std::istringstream in(bytes, std::ios::binary);
    return read_tensor(in);
}

} // namespace

TEST_CASE("bit tensor round-trips through the container") {
    std::mt19937_64 rng(11);
    for (uint32_t len : {1u, 5u, 63u, 64u, 65u, 100u, 128u, 1152u}) {
        Tensor t = make_bit_tensor({3, len});
        for (auto& row : t.rows) {
            for (size_t i = 0; i < row.length(); ++i) row.set_bit(i, rng() & 1);
        }
        Tensor back = deserialize(serialize(t));
        REQUIRE(back.dtype == Dtype::bits);
        REQUIRE(back.dims == t.dims);
        CHECK(back.rows == t.rows);
    }
}

TEST_CASE("integer tensor round-trips through the container") {
    Tensor t = make_int_tensor({2, 3, 4});
    for (size_t i = 0; i < t.values.size(); ++i) {
        t.values[i] = static_cast<int32_t>(i * 7919) - 50000;
    }
    t.values[0] = INT32_MIN;
    t.values[1] = INT32_MAX;
    Tensor back = deserialize(serialize(t));
    REQUIRE(back.dtype == Dtype::i32);
    CHECK(back.dims == t.dims);
    CHECK(back.values == t.values);
}

TEST_CASE("bit rows are padded to 64-bit boundaries in the payload") {
    Tensor t = make_bit_tensor({2, 65});
    std::string bytes = serialize(t);
    // 4 magic + 4 rank + 8 dims + 1 dtype + 2 rows * 2 words * 8 bytes
    CHECK(bytes.size() == 17 + 32);

    Tensor ti = make_int_tensor({2, 65});
    CHECK(serialize(ti).size() == 17 + 130 * 4);
}

TEST_CASE("container rejects malformed input") {
    Tensor t = make_bit_tensor({2, 8});
    std::string good = serialize(t);

    SUBCASE("bad magic") {
        std::string bad = good;
        bad[0] = 'Y';
        CHECK_THROWS_AS(deserialize(bad), IoError);
    }
    SUBCASE("truncated header") {
        CHECK_THROWS_AS(deserialize(good.substr(0, 3)), IoError);
        CHECK_THROWS_AS(deserialize(good.substr(0, 6)), IoError);
        CHECK_THROWS_AS(deserialize(good.substr(0, 12)), IoError);
    }
    SUBCASE("truncated payload") {
        CHECK_THROWS_AS(deserialize(good.substr(0, good.size() - 1)), IoError);
    }
    SUBCASE("unknown dtype") {
        std::string bad = good;
        bad[16] = 7;
        CHECK_THROWS_AS(deserialize(bad), IoError);
    }
    SUBCASE("zero dimension") {
        std::string bad = good;
        bad[8] = 0; // dims[0] low byte
        CHECK_THROWS_AS(deserialize(bad), IoError);
    }
    SUBCASE("nonzero padding bits") {
        std::string bad = good;
        bad[17 + 1] = char(0x80); // bit 15 of an 8-bit row
        CHECK_THROWS_AS(deserialize(bad), IoError);
    }
    SUBCASE("rank zero or huge") {
        std::string bad = good;
        bad[4] = 0;
        CHECK_THROWS_AS(deserialize(bad), IoError);
        bad[4] = 100;
        CHECK_THROWS_AS(deserialize(bad), IoError);
    }
}

TEST_CASE("tensor file io round-trips and rejects trailing bytes") {
    auto dir = std::filesystem::temp_directory_path() / "csram_fmt_test";
    std::filesystem::create_directories(dir);
    auto file = dir / "t.xrt";

    Tensor t = make_bit_tensor({4, 100});
    std::mt19937_64 rng(3);
    for (auto& row : t.rows) {
        for (size_t i = 0; i < row.length(); ++i) row.set_bit(i, rng() & 1);
    }
    write_tensor(file, t);
    CHECK(read_tensor(file).rows == t.rows);

    std::ofstream app(file, std::ios::binary | std::ios::app);
    app << "junk";
    app.close();
    CHECK_THROWS_AS(read_tensor(file), IoError);
    CHECK_THROWS_AS(read_tensor(dir / "missing.xrt"), IoError);
    std::filesystem::remove_all(dir);
}

TEST_CASE("keyval parses sections, comments and dotted keys") {
    std::string text =
        "# header comment\n"
        "engine = proposal_a\n"
        "adc.seed = 99\n"
        "\n"
        "[adc]\n"
        "sigma = 0.4359\n"
        "  seed =   7\n"
        "\n"
        "[geometry]\n"
        "sections = 4\n"
        "note = a#b = c\n";
    KeyValueMap kv = parse_keyval_text(text);
    CHECK(kv.size() == 5);
    CHECK(kv.at("engine") == "proposal_a");
    CHECK(kv.at("adc.sigma") == "0.4359");
    CHECK(kv.at("adc.seed") == "7"); // later assignment wins
    CHECK(kv.at("geometry.sections") == "4");
    CHECK(kv.at("geometry.note") == "a#b = c");
}

TEST_CASE("keyval emission re-parses to the same map") {
    KeyValueMap kv = {
        {"engine", "proposal_b"},
        {"trials", "10"},
        {"adc.sigma", "0.4359"},
        {"adc.seed", "1"},
        {"geometry.sections", "1"},
        {"zz", "end"},
    };
    std::string text = emit_keyval(kv);
    CHECK(parse_keyval_text(text) == kv);
    // Canonical: a second emission is byte-identical.
    CHECK(emit_keyval(parse_keyval_text(text)) == text);
}

TEST_CASE("keyval rejects malformed lines") {
    CHECK_THROWS_AS(parse_keyval_text("[unterminated\n"), ConfigError);
    CHECK_THROWS_AS(parse_keyval_text("[]\n"), ConfigError);
    CHECK_THROWS_AS(parse_keyval_text("[a b]\n"), ConfigError);
    CHECK_THROWS_AS(parse_keyval_text("no equals sign\n"), ConfigError);
    CHECK_THROWS_AS(parse_keyval_text("= value\n"), ConfigError);
    CHECK_THROWS_AS(parse_keyval_text("bad key = 1\n"), ConfigError);
    CHECK_THROWS_AS(parse_keyval_text("[s]\na.b = 1\n"), ConfigError);
    CHECK_THROWS_AS(parse_keyval_text("a..b = 1\n"), ConfigError);
    const char* with_line = "ok = 1\nbroken line\n";
    try {
        parse_keyval_text(with_line);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
}

TEST_CASE("typed getters parse and validate") {
    KeyValueMap kv = parse_keyval_text("a = 12\nb = 0.5\nc = true\nd = nope\ne = -3\n");
    CHECK(kv_get_int(kv, "a", 0) == 12);
    CHECK(kv_get_int(kv, "e", 0) == -3);
    CHECK(kv_get_int(kv, "missing", 42) == 42);
    CHECK(kv_get_double(kv, "b", 0.0) == 0.5);
    CHECK(kv_get_bool(kv, "c", false));
    CHECK_FALSE(kv_get_bool(kv, "missing", false));
    CHECK(kv_require(kv, "a") == "12");
    CHECK_THROWS_AS(kv_require(kv, "missing"), ConfigError);
    CHECK_THROWS_AS(kv_get_int(kv, "b", 0), ConfigError);
    CHECK_THROWS_AS(kv_get_int(kv, "d", 0), ConfigError);
    CHECK_THROWS_AS(kv_get_double(kv, "d", 0.0), ConfigError);
    CHECK_THROWS_AS(kv_get_bool(kv, "a", false), ConfigError); // "12" is not a bool
    CHECK_THROWS_AS(kv_get_bool(kv, "d", false), ConfigError);
}
