#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "topochain/config.hpp"
#include "topochain/csv.hpp"
#include "topochain/errors.hpp"
#include "topochain/presets.hpp"

using namespace topochain;

namespace {

std::vector<std::string> violations_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const SchemaError& e) {
    return e.violations();
  }
  return {};
}

bool any_mentions(const std::vector<std::string>& v, const std::string& needle) {
  return std::any_of(v.begin(), v.end(),
                     [&](const std::string& s) { return s.find(needle) != std::string::npos; });
}

}  // namespace

TEST_SUITE("config") {
  TEST_CASE("minimal spectrum config") {
    const auto cfg = parse_config(R"({"command":"spectrum","kind":"ssh","L":7,"a":0.1,"b":1})");
    CHECK(cfg.command == Command::spectrum);
    const auto& p = std::get<SpectrumParams>(cfg.params);
    REQUIRE(p.model);
    CHECK(p.model->n_sites() == 14);
    CHECK(p.model->values.at("a") == 0.1);
    CHECK(cfg.output_stem() == "spectrum");
  }

  TEST_CASE("foreign model key is named") {
    const auto v = violations_of(R"({"command":"spectrum","kind":"ssh","L":7,"a":0.1,"b":1,"u":0.2})");
    REQUIRE(v.size() == 1);
    CHECK(any_mentions(v, "'u'"));
  }

  TEST_CASE("every violation is reported") {
    const auto v = violations_of(R"({"command":"spectrum","kind":"ssh","L":0,"a":0.1,"colour":3})");
    CHECK(v.size() >= 3);
    CHECK(any_mentions(v, "'b'"));
    CHECK(any_mentions(v, "'colour'"));
    CHECK(any_mentions(v, "'L'"));
  }

  TEST_CASE("syntax and command errors") {
    CHECK_THROWS_AS(parse_config("{\"command\": "), SchemaError);
    CHECK(any_mentions(violations_of("{\"command\": "), "malformed"));
    CHECK(any_mentions(violations_of(R"({"command":"teleport"})"), "teleport"));
    CHECK(any_mentions(violations_of(R"({"kind":"ssh"})"), "'command'"));
    CHECK(any_mentions(violations_of(R"({"schema":2,"command":"spectrum","kind":"ssh","L":2,"a":1,"b":1})"),
                       "'schema'"));
    CHECK(any_mentions(violations_of(R"({"command":"spectrum","output":"../x","kind":"ssh","L":2,"a":1,"b":1})"),
                       "'output'"));
  }

  TEST_CASE("pump config with T = 100") {
    ScheduleSpec s;
    s.kind = ModelKind::rice_mele;
    s.cells = 7;
    s.schedule = standard_pump(100.0);
    json doc{{"command", "pump"},
             {"schedule", schedule_to_json(s)},
             {"initial", {{"sites", {1}}}},
             {"target", {{"sites", {14}}}}};
    const auto cfg = parse_config(doc);
    const auto& p = std::get<PumpParams>(cfg.params);
    CHECK(p.schedule.cells == 7);
    CHECK(p.schedule.schedule.period == 100.0);
    CHECK(p.schedule.schedule.params == standard_pump(100.0).params);

    doc["target"]["sites"] = {15};
    CHECK(any_mentions(violations_of(doc.dump()), "target"));
  }

  TEST_CASE("lz and flux ranges") {
    CHECK(any_mentions(violations_of(R"({"command":"lz","path":"C","alpha":1,"T":10,"theta":1.6})"), "theta"));
    CHECK_NOTHROW(parse_config(R"({"command":"lz","path":"C","alpha":1,"T":10,"theta":0.7})"));
    CHECK(any_mentions(violations_of(R"({"command":"fluxqubit","f_alpha":0.2,"levels":1})"), "levels"));
    CHECK(any_mentions(violations_of(R"({"command":"couplings","scheme":"matched","a":1,"b":1,"alpha_1":{"from":0,"to":60,"points":3},"alpha_2":{"from":0,"to":1,"points":2}})"),
                       "alpha_1"));
  }

  TEST_CASE("presets round-trip") {
    CHECK(preset_ids().size() == 11);
    for (const auto& id : preset_ids()) {
      const auto docs = preset_configs(id);
      CHECK(!docs.empty());
      for (const auto& doc : docs) {
        INFO(id << ": " << doc.dump());
        const auto cfg = parse_config(doc);
        CHECK(to_json(cfg) == doc);
        CHECK(to_json(parse_config(doc.dump())) == doc);
      }
    }
    CHECK_THROWS_WITH_AS(preset_configs("fig9"), doctest::Contains("belltransfer"), InvalidParameter);
  }

  TEST_CASE("csv number format") {
    CHECK(format_number(-0.0) == "0");
    CHECK(format_number(0.1) == "0.1");
    CHECK(format_number(1e-300) == "1e-300");
    CHECK(std::stod(format_number(1.0 / 3.0)) == 1.0 / 3.0);
    CHECK_THROWS_AS(format_number(std::numeric_limits<double>::quiet_NaN()), NumericError);

    CsvTable t({"x", "y"});
    t.add_row({1.5, -0.0});
    t.add_row({2.0, 0.25});
    CHECK(t.text() == "x,y\n1.5,0\n2,0.25\n");
    CHECK(t.rows() == 2);
    CHECK_THROWS_AS(t.add_row({1.0}), InvalidDimension);
  }
}
