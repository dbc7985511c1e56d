#include "dyadic/errors.hpp"
#include "dyadic/io.hpp"

#include <doctest.h>

#include <sstream>

using namespace dyadic;

TEST_CASE("expansion json round trip") {
  HaarExpansion f;
  f.set({-3, 2}, 0.125);
  f.set({4, 17}, -1.5);
  const auto j = to_json(f);
  CHECK(j["coeffs"].size() == 2);
  CHECK(expansion_from_json(j) == f);
  CHECK(expansion_from_json(Json::parse(j.dump())) == f);
}

TEST_CASE("expansion json errors") {
  CHECK_THROWS_AS(expansion_from_json(Json::parse(R"({"coeffs":[{"j":0,"k":0,"c":1},{"j":0,"k":0,"c":2}]})")),
                  ParseError);
  CHECK_THROWS_AS(expansion_from_json(Json::parse(R"({"coeffs":[{"j":0,"k":-1,"c":1}]})")), ParseError);
  CHECK_THROWS_AS(expansion_from_json(Json::parse(R"({"coeffs":[{"j":0,"c":1}]})")), ParseError);
  CHECK_THROWS_AS(expansion_from_json(Json::parse(R"([1,2])")), ParseError);
  CHECK_THROWS_AS(read_json_file("/nonexistent/file.json"), Error);
}

TEST_CASE("multiplier and gradient json") {
  const Multiplier m({{1, 0.5}, {4, -2.0}}, 0.25);
  CHECK(multiplier_from_json(to_json(m)) == m);
  CHECK(multiplier_from_json(Json::parse(R"({"base":[{"k":2,"v":1}]})")).default_value() == 0.0);

  GradientField g;
  g.components[3] = HaarExpansion::single(1, 3, 0.5);
  g.components[0] = HaarExpansion::single(-1, 0, 2.0);
  CHECK(gradient_from_json(to_json(g)) == g);
  CHECK(interval_from_json(to_json(DyadicInterval{-2, 9})) == DyadicInterval{-2, 9});
}

TEST_CASE("report json fields") {
  KernelVector k;
  k.entries[0] = Dyadic(2);
  k.entries[1] = Dyadic(-2);
  k.delta_xy = Dyadic::pow2(-1);
  const auto j = to_json(k);
  CHECK(j.dump().find("-2/2^0") != std::string::npos);

  EnergyReport e{0.5, 3.0, 1.0, 1.0, 3.0};
  const auto je = to_json(e);
  for (const char* key : {"s", "integral", "spectral", "gradient", "c"}) CHECK(je.contains(key));

  SweepReport r;
  r.s = 0.5;
  r.trials = 3;
  r.per_p.push_back({2.0, 1.0, 1.0, 1.0, 0});
  std::stringstream ss;
  write_csv(ss, r);
  CHECK(ss.str().rfind("s,p,trials", 0) == 0);
}
