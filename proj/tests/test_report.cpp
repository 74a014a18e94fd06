#include <stdexcept>

#include "doctest.h"
#include "scl/report.hpp"

using namespace scl;

TEST_CASE("empty reports") {
  Table t;
  t.columns = {"n", "value"};
  CHECK(emit_report(t, Format::json) == "[]\n");
  CHECK(emit_report(t, Format::csv) == "n,value\n");
}

TEST_CASE("rationals are strings in JSON") {
  Table t;
  t.columns = {"n", "value", "decimal", "missing"};
  t.add_row({std::uint64_t{3}, ExactRational(9, 4), 2.25, Cell()});
  const auto j = nlohmann::json::parse(emit_report(t, Format::json));
  CHECK(j[0]["value"] == "9/4");
  CHECK(j[0]["n"] == 3);
  CHECK(j[0]["decimal"] == 2.25);
  CHECK(j[0]["missing"].is_null());
  CHECK(parse_rational(j[0]["value"].get<std::string>()) == ExactRational(9, 4));
  CHECK_THROWS_AS(t.add_row({std::uint64_t{1}}), std::invalid_argument);
}

TEST_CASE("field order is stable") {
  const Record rec{{"z", std::int64_t{1}}, {"a", std::string("x")}, {"m", true}};
  CHECK(emit_record(rec, Format::json) == "{\n  \"z\": 1,\n  \"a\": \"x\",\n  \"m\": true\n}\n");
  CHECK(emit_record(rec, Format::csv) == "z,a,m\n1,x,true\n");
}

TEST_CASE("CSV quoting") {
  Table t;
  t.columns = {"spec"};
  t.add_row({std::string(R"(g="a1" exps=[2,3])")});
  CHECK(emit_report(t, Format::csv) == "spec\n\"g=\"\"a1\"\" exps=[2,3]\"\n");
}

TEST_CASE("formats") {
  CHECK(parse_format("json") == Format::json);
  CHECK(parse_format("csv") == Format::csv);
  CHECK_THROWS_AS(parse_format("xml"), std::invalid_argument);
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(1.0 / 0.0) == "inf");
}

TEST_CASE("convergence report round trip") {
  ExperimentPlan p;
  p.spec = parse_spec(R"(x="a1" exps=[1])", Genus(2));
  p.n_values = {2, 3};
  const auto report = run_convergence(p);
  const std::string a = emit_report(to_table(report), Format::json);
  const std::string b = emit_report(to_table(run_convergence(p)), Format::json);
  CHECK(a == b);
  const auto j = nlohmann::ordered_json::parse(a);
  CHECK(j.size() == 2);
  CHECK(j[1]["joint_exact"] == "10/9");
  CHECK(j[1].begin().key() == "kind");
  CHECK(j.dump(2) + "\n" == a);
  CHECK(to_table(report, true).columns.back() == "runtime_ms");
}
