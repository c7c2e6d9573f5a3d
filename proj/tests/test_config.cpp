#include <doctest.h>

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ghostsim/config.hpp"

using namespace ghostsim;

namespace {

bool throws_mentioning(const std::function<void()>& fn, const std::string& needle) {
    try {
        fn();
    } catch (const std::exception& e) {
        return std::string(e.what()).find(needle) != std::string::npos;
    }
    return false;
}

}  // namespace

TEST_CASE("parse, access and serialise round trip") {
    const std::string text =
        "# run setup\n"
        "grid.n_x = 256\n"
        "grid.pitch_um = 12.5\n"
        "\n"
        "run.seed = 18446744073709551615\n"  // max uint64
        "run.threads = 4\n"
        "mask.kind = grating\n"
        "experiment.widths_um = 300, 150, 100, 75\n"
        "run.verbose = true\n";
    const Config c = Config::parse_string(text, "inline.cfg");

    CHECK(c.get_int("grid.n_x") == 256);
    CHECK(c.get_double("grid.pitch_um") == doctest::Approx(12.5));
    CHECK(c.get_uint64("run.seed") == UINT64_MAX);
    CHECK(c.get_string("mask.kind") == "grating");
    CHECK(c.get_bool("run.verbose"));
    CHECK(c.has("run.threads"));
    CHECK_FALSE(c.has("run.draws"));

    const std::vector<double> widths = c.get_double_list("experiment.widths_um");
    REQUIRE(widths.size() == 4);
    CHECK(widths[0] == doctest::Approx(300.0));
    CHECK(widths[3] == doctest::Approx(75.0));

    // serialise -> parse -> serialise is a fixed point
    const std::string once = c.serialize();
    const Config again = Config::parse_string(once, "round-trip");
    CHECK(again.serialize() == once);
    CHECK(again.keys() == c.keys());
}

TEST_CASE("parse diagnostics carry the origin and line number") {
    CHECK(throws_mentioning(
        [] { Config::parse_string("a = 1\nnot a key value line\n", "bad.cfg"); }, "bad.cfg:2"));
    CHECK(throws_mentioning([] { Config::parse_string("Key = 1\n", "caps.cfg"); }, "caps.cfg:1"));
    CHECK(throws_mentioning([] { Config::parse_string("a.b = 1\na.b = 2\n", "dup.cfg"); },
                            "a.b"));  // duplicate key named
    CHECK(throws_mentioning([] { Config::parse_string("a.b =\n", "empty.cfg"); }, "empty.cfg:1"));
    CHECK_THROWS(Config::parse_file("/nonexistent/path/to.cfg"));
}

TEST_CASE("typed accessor failures name the key") {
    const Config c = Config::parse_string("a = hello\nb = 1.5\n");
    CHECK(throws_mentioning([&] { (void)c.get_double("a"); }, "a"));
    CHECK(throws_mentioning([&] { (void)c.get_int("b"); }, "b"));
    CHECK(throws_mentioning([&] { (void)c.get_bool("a"); }, "a"));
    CHECK(throws_mentioning([&] { (void)c.get_string("missing"); }, "missing"));
    CHECK(throws_mentioning([&] { (void)c.get_double_list("a"); }, "a"));
}

TEST_CASE("defaulted accessors fall back only when absent") {
    const Config c = Config::parse_string("x = 3\n");
    CHECK(c.get_int("x", 7) == 3);
    CHECK(c.get_int("y", 7) == 7);
    CHECK(c.get_double("y", 2.5) == doctest::Approx(2.5));
    CHECK(c.get_string("y", "dflt") == "dflt");
    CHECK(c.get_bool("y", true));
    // a present-but-malformed value still throws rather than falling back
    const Config bad = Config::parse_string("x = notanumber\n");
    CHECK_THROWS(bad.get_int("x", 7));
}

TEST_CASE("bool accepts the documented spellings") {
    const Config c = Config::parse_string("a = true\nb = false\nc = 1\nd = 0\n");
    CHECK(c.get_bool("a"));
    CHECK_FALSE(c.get_bool("b"));
    CHECK(c.get_bool("c"));
    CHECK_FALSE(c.get_bool("d"));
}

TEST_CASE("integer lists and malformed list entries") {
    const Config c = Config::parse_string("counts = 2, 4, 6\nbad = 1, x, 3\n");
    const std::vector<long long> counts = c.get_int_list("counts");
    REQUIRE(counts.size() == 3);
    CHECK(counts[1] == 4);
    CHECK_THROWS(c.get_int_list("bad"));
}

TEST_CASE("unknown keys are rejected by name") {
    const Config c = Config::parse_string("grid.n_x = 8\ngrid.typo = 1\n");
    CHECK(throws_mentioning([&] { c.require_known_keys({"grid.n_x"}); }, "grid.typo"));
    CHECK_NOTHROW(c.require_known_keys({"grid.n_x", "grid.typo"}));
}

TEST_CASE("set overrides and extends") {
    Config c = Config::parse_string("run.seed = 1\n");
    c.set("run.seed", "9");
    c.set("run.threads", "2");
    CHECK(c.get_uint64("run.seed") == 9);
    CHECK(c.get_int("run.threads") == 2);
}
