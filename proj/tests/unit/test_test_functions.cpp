#include <doctest.h>

#include <cmath>
#include <random>

#include "wenoshep/test_functions.hpp"

using namespace wenoshep;

namespace {

long double franke_ld(long double x, long double y) {
  return 0.75L * std::exp(-((9 * x - 2) * (9 * x - 2) + (9 * y - 2) * (9 * y - 2)) / 4) +
         0.75L * std::exp(-(9 * x + 1) * (9 * x + 1) / 49 - (9 * y + 1) / 10) +
         0.5L * std::exp(-((9 * x - 7) * (9 * x - 7) + (9 * y - 3) * (9 * y - 3)) / 4) -
         0.2L * std::exp(-(9 * x - 4) * (9 * x - 4) - (9 * y - 7) * (9 * y - 7));
}

// Distance to a densely sampled copy of the curve inside the unit square.
double sampled_distance(Geometry g, double x, double y) {
  const int n = 20000;
  double best = 1e300;
  auto consider = [&](double px, double py) {
    best = std::min(best, std::hypot(px - x, py - y));
  };
  for (int k = 0; k <= n; ++k) {
    const double t = static_cast<double>(k) / n;
    switch (g) {
      case Geometry::Line:
        consider(t, 1.0 - t);
        break;
      case Geometry::Circle:
        consider(0.25 * std::cos(t * M_PI / 2), 0.25 * std::sin(t * M_PI / 2));
        break;
      case Geometry::Square:
        consider(0.5, 0.5 + 0.5 * t);
        consider(0.5 + 0.5 * t, 0.5);
        break;
    }
  }
  return best;
}

}  // namespace

TEST_CASE("franke values") {
  CHECK(std::abs(franke(0.0, 0.0) - 0.76641) < 1e-4);
  CHECK(std::abs(franke(0.5, 0.5) - static_cast<double>(franke_ld(0.5L, 0.5L))) <= 1e-15);
  CHECK(franke(0.0, 0.0) != franke(1.0, 1.0));
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-0.5, 1.5);
  for (int trial = 0; trial < 1000; ++trial) {
    const double x = u(rng), y = u(rng);
    CHECK(std::abs(franke(x, y) - static_cast<double>(franke_ld(x, y))) <= 6e-16);
  }
}

TEST_CASE("gamma_value and regions") {
  CHECK(gamma_value(Geometry::Line, 0.5, 0.5) == 0.0);
  CHECK(in_positive_region(Geometry::Line, 0.5, 0.5));
  CHECK(gamma_value(Geometry::Circle, 0.0, 0.0) == 0.0625);
  CHECK(in_positive_region(Geometry::Circle, 0.0, 0.0));
  CHECK(in_positive_region(Geometry::Square, 0.75, 0.75));
  CHECK_FALSE(in_positive_region(Geometry::Square, 0.25, 0.75));
  CHECK(in_positive_region(Geometry::Square, 0.5, 0.5));
  CHECK(gamma_value(Geometry::Square, 0.25, 0.75) == -1.0);
}

TEST_CASE("piecewise_tilde_f") {
  CHECK(piecewise_tilde_f(Geometry::Line, 0.2, 0.2) == 1.0 + franke(0.2, 0.2));
  CHECK(piecewise_tilde_f(Geometry::Circle, 0.9, 0.9) == franke(0.9, 0.9));
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (Geometry g : {Geometry::Line, Geometry::Circle, Geometry::Square}) {
    for (int trial = 0; trial < 2000; ++trial) {
      const double x = u(rng), y = u(rng);
      // Exactly one of the two branches, bit for bit. The difference itself
      // is not always 1.0 after rounding of 1 + franke.
      const double v = piecewise_tilde_f(g, x, y);
      const bool plus = gamma_value(g, x, y) >= 0.0;
      CHECK(v == (plus ? 1.0 + franke(x, y) : franke(x, y)));
      CHECK(in_positive_region(g, x, y) == (gamma_value(g, x, y) >= 0.0));
    }
  }
}

TEST_CASE("distance_to_gamma") {
  CHECK(distance_to_gamma(Geometry::Line, 0.0, 0.0) == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(distance_to_gamma(Geometry::Line, 0.5, 0.5) == 0.0);
  CHECK(distance_to_gamma(Geometry::Circle, 0.0, 0.0) == 0.25);
  CHECK(distance_to_gamma(Geometry::Circle, 0.5, 0.0) == 0.25);
  CHECK(distance_to_gamma(Geometry::Square, 0.75, 0.75) == 0.25);
  CHECK(distance_to_gamma(Geometry::Square, 0.25, 0.75) == 0.25);
  CHECK(distance_to_gamma(Geometry::Square, 0.2, 0.1) == doctest::Approx(0.5));
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (Geometry g : {Geometry::Line, Geometry::Circle, Geometry::Square}) {
    for (int trial = 0; trial < 300; ++trial) {
      const double x = u(rng), y = u(rng);
      CHECK(std::abs(distance_to_gamma(g, x, y) - sampled_distance(g, x, y)) <= 1e-4);
    }
  }
}

TEST_CASE("TestField") {
  CHECK(TestField{}(0.3, 0.4) == franke(0.3, 0.4));
  CHECK((TestField{FieldKind::Piecewise, Geometry::Circle}(0.1, 0.1)) ==
        1.0 + franke(0.1, 0.1));
  CHECK((TestField{FieldKind::Constant, Geometry::Line, 7.0}(0.3, 0.9)) == 7.0);
  const Field f = TestField{FieldKind::Piecewise, Geometry::Square}.as_field();
  const double p[2] = {0.6, 0.6};
  CHECK(f(p) == 1.0 + franke(0.6, 0.6));
  CHECK(parse_geometry("circle") == Geometry::Circle);
  CHECK(to_string(Geometry::Square) == "square");
  CHECK(parse_field_kind("piecewise") == FieldKind::Piecewise);
  CHECK_THROWS_AS(parse_geometry("ellipse"), std::invalid_argument);
  CHECK_THROWS_AS(parse_field_kind("runge"), std::invalid_argument);
}
