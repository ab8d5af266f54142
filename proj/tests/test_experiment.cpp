#include <doctest.h>

#include "rmt/experiment.hpp"
#include "rmt/expr.hpp"

using namespace rmt;

TEST_CASE("config round trips through json") {
  ExperimentConfig cfg;
  cfg.target = "t_sym";
  cfg.model = "cumulants";
  cfg.entry = "bernoulli:3";
  cfg.y = "2/3";
  cfg.p = 100;
  cfg.n = 150;
  cfg.k_max = 5;
  cfg.samples = 123456;
  cfg.seed = 987;
  cfg.reps = 7;
  cfg.lambda = 2.5;
  cfg.cumulants = {{2, 1.0}, {4, 0.25}};
  cfg.profile = "band:0.3";
  cfg.tolerance = 0.05;
  cfg.out_dir = "/tmp/xyz";

  auto j = cfg.to_json();
  auto back = ExperimentConfig::from_json(j);
  CHECK(back.to_json() == j);
  CHECK(back.hash() == cfg.hash());
  CHECK(back.ratio() == Rational(100, 150));
}

TEST_CASE("expression profiles") {
  auto f = compile_sigma2("(0.5*x+y)^2/2");
  CHECK(f(1.0, 1.0) == doctest::Approx(1.125));
  auto g = compile_sigma1("x^2+4*x");
  CHECK(g(0.5) == doctest::Approx(2.25));
  auto ind = compile_sigma2("le(x,y)");
  CHECK(ind(0.2, 0.3) == 1.0);
  CHECK(ind(0.4, 0.3) == 0.0);
  CHECK_THROWS(compile_sigma1("x+"));
  CHECK_THROWS(compile_sigma1("q"));
  CHECK_THROWS(compile_sigma1("x+y"));  // y unbound in 1-d

  auto band = profile1_by_name("band:0.25");
  CHECK(band(0.2) == 1.0);
  CHECK(band(0.3) == 0.0);
  auto band2 = profile1_by_name("band2:0.25");
  CHECK(band2(0.8) == 1.0);
  CHECK(band2(0.5) == 0.0);
  auto ut = profile2_by_name("upper_triangular");
  CHECK(ut(0.1, 0.2) == 1.0);
  CHECK(ut(0.3, 0.2) == 0.0);
}

TEST_CASE("compare runs end to end on a small MP config") {
  ExperimentConfig cfg;
  cfg.target = "s";
  cfg.model = "mp";
  cfg.entry = "gaussian";
  cfg.p = 120;
  cfg.n = 240;
  cfg.k_max = 2;
  cfg.reps = 8;
  cfg.seed = 31;
  cfg.tolerance = 0.10;
  auto rep = run_compare(cfg);
  REQUIRE(rep.rows.size() == 2);
  CHECK(rep.rows[0].theory == doctest::Approx(1.0));
  CHECK(rep.rows[1].theory == doctest::Approx(1.5));
  CHECK(rep.pass);
}
