#include "plw/errors.hpp"
#include "plw/run_config.hpp"

#include "test_util.hpp"

using namespace plw;

TEST_CASE("t-grid parsing") {
    const TGridSpec g = TGridSpec::parse("0.5:2:4:linear");
    CHECK(g.start == "0.5");
    CHECK(g.stop == "2");
    CHECK(g.count == 4);
    CHECK(g.spacing == Spacing::Linear);
    CHECK(TGridSpec::parse("1:8:4").spacing == Spacing::Linear);
    CHECK(TGridSpec::parse("1:8:4:log").spacing == Spacing::Log);
    CHECK_THROWS_AS(TGridSpec::parse("1:8"), ConfigError);
    CHECK_THROWS_AS(TGridSpec::parse("1:8:x"), ConfigError);
    CHECK_THROWS_AS(TGridSpec::parse("1:8:4:cubic"), ConfigError);
}

TEST_CASE("grid values") {
    RunConfig c;
    c.t_grid = TGridSpec::parse("0.5:2:4:linear");
    c.validate();
    const auto lin = c.t_values(128);
    REQUIRE(lin.size() == 4);
    CHECK(lin[1] == 1L);
    CHECK(lin[3] == 2L);
    c.t_grid = TGridSpec::parse("1:8:4:log");
    const auto lg = c.t_values(128);
    CHECK(test::close(lg[1], Real(2L, 128), 35));
    CHECK(test::close(lg[2], Real(4L, 128), 35));
    CHECK(lg[3] == 8L);
}

TEST_CASE("validation") {
    auto bad = [](auto mutate) {
        RunConfig c;
        mutate(c);
        return c;
    };
    CHECK_THROWS_AS(bad([](RunConfig& c) { c.lambda = "-1"; }).validate(), ConfigError);
    CHECK_THROWS_AS(bad([](RunConfig& c) { c.t = "0"; }).validate(), ConfigError);
    CHECK_THROWS_AS(bad([](RunConfig& c) { c.t = "one"; }).validate(), ConfigError);
    CHECK_THROWS_AS(bad([](RunConfig& c) { c.n_max = 1; }).validate(), ConfigError);
    CHECK_THROWS_AS(bad([](RunConfig& c) { c.target_digits = 5; }).validate(), ConfigError);
    CHECK_THROWS_AS(bad([](RunConfig& c) { c.h = "-1e-3"; }).validate(), ConfigError);
    CHECK_THROWS_AS(bad([](RunConfig& c) { c.t_grid = TGridSpec{"2", "1", 3, Spacing::Linear}; }).validate(),
                    ConfigError);
    CHECK_THROWS_AS(parse_suite("everything"), ConfigError);
    CHECK_THROWS_AS(parse_format("xml"), ConfigError);
}

TEST_CASE("suites are canonicalized and default to all but asym") {
    RunConfig c;
    c.validate();
    CHECK(c.effective_suites().size() == 5);
    CHECK_FALSE(c.has_suite(Suite::Asym));
    c.suites = {Suite::Pearson, Suite::Difference, Suite::Pearson};
    c.validate();
    CHECK(c.suites == std::vector<Suite>{Suite::Difference, Suite::Pearson});
}

TEST_CASE("serialization round-trips byte-identically") {
    RunConfig c;
    c.lambda = "2.5";
    c.t_grid = TGridSpec::parse("0.5:2:4:log");
    c.n_max = 80;
    c.target_digits = 40;
    c.suites = {Suite::Ladder, Suite::DiffDiff};
    c.format = OutputFormat::Json;
    c.out_dir = "out/run";
    c.h = "1e-12";
    c.richardson = true;
    c.validate();
    const std::string text = c.serialize();
    const RunConfig back = RunConfig::from_json(nlohmann::ordered_json::parse(text));
    CHECK(back.serialize() == text);

    RunConfig plain;
    plain.validate();
    const std::string t2 = plain.serialize();
    CHECK(RunConfig::from_json(nlohmann::ordered_json::parse(t2)).serialize() == t2);
    CHECK_THROWS_AS(RunConfig::from_json(nlohmann::ordered_json::parse("{\"lambda\": \"1\"}")), ConfigError);
}
