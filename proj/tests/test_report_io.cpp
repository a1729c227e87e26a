#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <string>

#include "gft/report_io.hpp"
#include "json.hpp"

using gft::Complex;
using nlohmann::json;

TEST_CASE("doubles survive a text round trip exactly", "[report_io]") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> mant(-1.0, 1.0);
  std::uniform_int_distribution<int> expo(-300, 300);
  for (int i = 0; i < 500; ++i) {
    const double v = std::ldexp(mant(rng), expo(rng));
    REQUIRE(std::stod(gft::format_double(v)) == v);
  }
  for (double v : {0.0, -0.0, 1.0 / 3.0, 2.0 / 3.0, 6.283185307179586,
                   std::sqrt(2.0 / 3.0), 1e308, 2.2250738585072014e-308}) {
    REQUIRE(std::stod(gft::format_double(v)) == v);
  }
  REQUIRE(std::signbit(std::stod(gft::format_double(-0.0))));
}

TEST_CASE("complex formatting", "[report_io]") {
  REQUIRE(gft::format_complex(Complex(1.0, 2.0)) == "1+2i");
  REQUIRE(gft::format_complex(Complex(1.0, -2.0)) == "1-2i");
  REQUIRE(gft::format_complex(Complex(-0.5, 0.0)) == "-0.5+0i");
  REQUIRE(gft::format_complex(Complex(0.0, -0.0)) == "0-0i");
}

TEST_CASE("complex parsing", "[report_io]") {
  REQUIRE(gft::parse_complex("1+2i") == Complex(1.0, 2.0));
  REQUIRE(gft::parse_complex("1-2i") == Complex(1.0, -2.0));
  REQUIRE(gft::parse_complex("3.5") == Complex(3.5, 0.0));
  REQUIRE(gft::parse_complex("-3.5") == Complex(-3.5, 0.0));
  REQUIRE(gft::parse_complex("2i") == Complex(0.0, 2.0));
  REQUIRE(gft::parse_complex("-2i") == Complex(0.0, -2.0));
  REQUIRE(gft::parse_complex("i") == Complex(0.0, 1.0));
  REQUIRE(gft::parse_complex("-i") == Complex(0.0, -1.0));
  REQUIRE(gft::parse_complex("1+i") == Complex(1.0, 1.0));
  REQUIRE(gft::parse_complex("1-i") == Complex(1.0, -1.0));
  REQUIRE(gft::parse_complex("  0.25-0.75i  ") == Complex(0.25, -0.75));
  REQUIRE(gft::parse_complex("1e-3+2.5e+2i") == Complex(0.001, 250.0));
  REQUIRE(gft::parse_complex("-1E-3-2E-4i") == Complex(-0.001, -0.0002));

  REQUIRE_THROWS_AS(gft::parse_complex(""), std::invalid_argument);
  REQUIRE_THROWS_AS(gft::parse_complex("abc"), std::invalid_argument);
  REQUIRE_THROWS_AS(gft::parse_complex("1+2j"), std::invalid_argument);
  REQUIRE_THROWS_AS(gft::parse_complex("1 +2i"), std::invalid_argument);

  SECTION("format and parse are inverse on random values") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    for (int i = 0; i < 300; ++i) {
      const Complex z(u(rng) * std::exp(u(rng)), u(rng) * std::exp(u(rng)));
      const Complex back = gft::parse_complex(gft::format_complex(z));
      REQUIRE(back.real() == z.real());
      REQUIRE(back.imag() == z.imag());
    }
  }
}

TEST_CASE("json writer emits deterministic bytes", "[report_io]") {
  gft::JsonWriter w;
  w.begin_object();
  w.key("a").value(1);
  w.key("b");
  w.begin_array();
  w.value(1.5);
  w.value("x");
  w.null();
  w.value(true);
  w.end_array();
  w.key("c");
  w.begin_object();
  w.key("d").value("q\"uote\n");
  w.end_object();
  w.key("nan").value(std::nan(""));
  w.end_object();
  REQUIRE(w.str() ==
          "{\"a\":1,\"b\":[1.5,\"x\",null,true],\"c\":{\"d\":\"q\\\"uote\\n\"},"
          "\"nan\":null}");
  REQUIRE_NOTHROW(json::parse(w.str()));

  gft::JsonWriter arr;
  arr.begin_array();
  arr.value(1);
  arr.value(2);
  arr.end_array();
  REQUIRE(arr.str() == "[1,2]");
}

TEST_CASE("csv escaping", "[report_io]") {
  REQUIRE(gft::csv_escape("plain") == "plain");
  REQUIRE(gft::csv_escape("a,b") == "\"a,b\"");
  REQUIRE(gft::csv_escape("say \"hi\"") == "\"say \"\"hi\"\"\"");
  REQUIRE(gft::csv_escape("line\nbreak") == "\"line\nbreak\"");
}

namespace {

int comma_count(const std::string& s) {
  int n = 0;
  for (char c : s)
    if (c == ',') ++n;
  return n;
}

}  // namespace

TEST_CASE("consistency rows line up with the header", "[report_io]") {
  const gft::ClassSpec spec{gft::HBetaParams{0.25, 2.0}, gft::CesaroParams{4, 1.0},
                            false, gft::CesaroFlavor::Normalized};
  const gft::ConsistencyReport rep{spec,
                                   gft::FormulaId::A2RealPart,
                                   0.5,
                                   std::string(),
                                   0.25,
                                   Complex(1.0, 2.0),
                                   Complex(-0.5, 0.0),
                                   0.0,
                                   gft::Verdict::Consistent};
  const std::string header(gft::kConsistencyCsvHeader);
  const std::string row = gft::consistency_csv_row(rep);
  REQUIRE(comma_count(header) == 17);
  REQUIRE(comma_count(row) == 17);
  REQUIRE(row.find("realpart,4,1,normalized,false") == 0);
  REQUIRE(row.find("a2_realpart,0.5,,0.25,1+2i,-0.5+0i,0,consistent") != std::string::npos);

  SECTION("undefined formulas render as text") {
    gft::ConsistencyReport bad = rep;
    bad.formula_value = std::nan("");
    bad.undefined_reason = "k<3";
    bad.verdict = gft::Verdict::FormulaUndefined;
    const std::string brow = gft::consistency_csv_row(bad);
    REQUIRE(comma_count(brow) == 17);
    REQUIRE(brow.find(",undefined,k<3,") != std::string::npos);
    REQUIRE(brow.find("formula_undefined") != std::string::npos);
  }

  SECTION("json mirror carries the same data") {
    gft::JsonWriter w;
    gft::append_consistency_json(w, rep);
    const json j = json::parse(w.str());
    REQUIRE(j["class"] == "realpart");
    REQUIRE(j["k"] == 4);
    REQUIRE(j["op_alpha"] == 1.0);
    REQUIRE(j["flavor"] == "normalized");
    REQUIRE(j["unit_weights"] == false);
    REQUIRE(j["beta"] == 0.25);
    REQUIRE(j["lambda"] == 2.0);
    REQUIRE(j["formula"] == "a2_realpart");
    REQUIRE(j["formula_value"] == 0.5);
    REQUIRE(j["oracle_max"] == 0.25);
    REQUIRE(j["seed1"] == "1+2i");
    REQUIRE(j["verdict"] == "consistent");
  }

  SECTION("NaN formula values turn into json null") {
    gft::ConsistencyReport bad = rep;
    bad.formula_value = std::nan("");
    gft::JsonWriter w;
    gft::append_consistency_json(w, bad);
    const json j = json::parse(w.str());
    REQUIRE(j["formula_value"].is_null());
  }
}

TEST_CASE("verification reports serialize to parseable json", "[report_io]") {
  const gft::ClassSpec spec{gft::QParams{1.0, 1.0}, std::nullopt, false,
                            gft::CesaroFlavor::Normalized};
  const auto m = gft::make_q_member(
      gft::CaratheodoryPrefix(Complex(0.0), Complex(0.0)), spec);
  const auto rep = gft::verify_membership(m, 0.9, 32);
  const json j = json::parse(gft::verification_json(rep));
  REQUIRE(j["class"] == "strong");
  REQUIRE(j["params"]["alpha"] == 1.0);
  REQUIRE(j["params"]["k"].is_null());
  REQUIRE(j["params"]["unit_weights"] == true);
  REQUIRE(j["radius"] == 0.9);
  REQUIRE(j["samples"] == 32);
  REQUIRE(j["extremal_value"] == 0.0);
  REQUIRE(j["pass"] == true);
  REQUIRE(j["flags"].is_array());
  REQUIRE(j["flags"][0] == "advisory-truncation");
}

TEST_CASE("flavor names", "[report_io]") {
  REQUIRE(std::string(gft::to_string(gft::CesaroFlavor::Normalized)) == "normalized");
  REQUIRE(std::string(gft::to_string(gft::CesaroFlavor::Classical)) == "classical");
}
