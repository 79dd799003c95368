#include "doctest.h"

#include <cmath>
#include <numbers>

#include "qrws/optimize.hpp"
#include "qrws/walk.hpp"

using namespace qrws;

namespace {

constexpr double pi = std::numbers::pi;

// Concave quadratic with its maximum (value 0) at (1, 2).
double quadratic(const std::vector<double>& x) {
    return -((x[0] - 1.0) * (x[0] - 1.0) + (x[1] - 2.0) * (x[1] - 2.0));
}

}  // namespace

TEST_CASE("differential evolution solves the quadratic") {
    const Bounds bounds = Bounds::box(0.0, 2 * pi, 2);
    DeConfig config;
    config.seed = 4;
    const OptResult r = differential_evolution(quadratic, bounds, config);
    CHECK(std::abs(r.point[0] - 1.0) < 1e-4);
    CHECK(std::abs(r.point[1] - 2.0) < 1e-4);
    CHECK(std::abs(r.value) < 1e-8);
    CHECK(r.evaluations > 0);
    // reported value is a fresh evaluation at the argmax
    CHECK(std::abs(r.value - quadratic(r.point)) < 1e-12);
}

TEST_CASE("differential evolution is deterministic and monotone in budget") {
    const Bounds bounds = Bounds::box(0.0, 2 * pi, 2);
    DeConfig config;
    config.seed = 8;
    config.generations = 30;
    const OptResult a = differential_evolution(quadratic, bounds, config);
    const OptResult b = differential_evolution(quadratic, bounds, config);
    CHECK(a.point == b.point);
    CHECK(a.value == b.value);
    config.generations = 60;
    const OptResult c = differential_evolution(quadratic, bounds, config);
    CHECK(c.value >= a.value);
}

TEST_CASE("differential evolution rejects non-finite objectives gracefully") {
    const Bounds bounds = Bounds::box(0.0, 1.0, 2);
    DeConfig config;
    config.generations = 20;
    const auto holed = [](const std::vector<double>& x) {
        if (x[0] < 0.5) return std::nan("");
        return -x[1];
    };
    const OptResult r = differential_evolution(holed, bounds, config);
    CHECK(r.point[0] >= 0.5);
    CHECK(std::isfinite(r.value));
}

TEST_CASE("sobol sequence starts with the canonical points") {
    const Bounds unit = Bounds::box(0.0, 1.0, 2);
    const auto pts = sobol_points_2d(4, unit);
    REQUIRE(pts.size() == 4);
    CHECK(pts[0][0] == doctest::Approx(0.0));
    CHECK(pts[0][1] == doctest::Approx(0.0));
    CHECK(pts[1][0] == doctest::Approx(0.5));
    CHECK(pts[1][1] == doctest::Approx(0.5));
    CHECK(pts[2][0] == doctest::Approx(0.75));
    CHECK(pts[2][1] == doctest::Approx(0.25));
    CHECK(pts[3][0] == doctest::Approx(0.25));
    CHECK(pts[3][1] == doctest::Approx(0.75));
}

TEST_CASE("sobol points fill the box evenly") {
    const Bounds unit = Bounds::box(0.0, 1.0, 2);
    const auto pts = sobol_points_2d(1024, unit);
    // every quadrant gets an equal share
    int counts[2][2] = {};
    for (const auto& p : pts) ++counts[p[0] < 0.5 ? 0 : 1][p[1] < 0.5 ? 0 : 1];
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) CHECK(counts[i][j] == 256);
}

TEST_CASE("sobol multistart solves the quadratic") {
    const Bounds bounds = Bounds::box(0.0, 2 * pi, 2);
    SobolConfig config;
    const OptResult r = sobol_multistart(quadratic, bounds, config);
    CHECK(std::abs(r.point[0] - 1.0) < 1e-3);
    CHECK(std::abs(r.point[1] - 2.0) < 1e-3);
    CHECK(std::abs(r.value - quadratic(r.point)) < 1e-12);
}

TEST_CASE("sobol multistart degenerates to a single local search") {
    const Bounds bounds = Bounds::box(0.0, 2 * pi, 2);
    SobolConfig config;
    config.samples = 1;
    config.top_k = 1;
    const OptResult r = sobol_multistart(quadratic, bounds, config);
    CHECK(r.value > quadratic({0.0, 0.0}));
    CHECK_THROWS((void)sobol_multistart(quadratic, bounds, SobolConfig{1, 2, 0, 10}));
}

TEST_CASE("bounds validation") {
    Bounds bad;
    bad.lo = {0.0, 1.0};
    bad.hi = {1.0, 1.0};
    DeConfig config;
    CHECK_THROWS(differential_evolution(quadratic, bad, config));
}

TEST_CASE("simulator maximization beats the Grover value at n = 2") {
    MaximizeConfig config;
    config.de.seed = 1;
    const OptResult r = maximize_probability(nullptr, 2, OptMethod::DifferentialEvolution, config);
    CHECK(r.value > 0.3906);
    CHECK_FALSE(r.direct_probability.has_value());
    // published argmax check
    CHECK(run(2, 2.764, 3.986, {0}).probability == doctest::Approx(0.3915).epsilon(0.003));
}

TEST_CASE("simulator maximization reaches 0.499 at n = 1") {
    MaximizeConfig config;
    config.de.seed = 2;
    const OptResult r = maximize_probability(nullptr, 1, OptMethod::DifferentialEvolution, config);
    CHECK(r.value >= 0.499);
}

TEST_CASE("n = 3 optimum coincides with the Grover coin") {
    MaximizeConfig config;
    config.de.seed = 3;
    config.de.generations = 60;
    const OptResult de = maximize_probability(nullptr, 3, OptMethod::DifferentialEvolution, config);
    CHECK(std::abs(de.value - 0.4345) < 0.002);
    CHECK(de.value <= 0.437);
    config.sobol.samples = 128;
    config.sobol.top_k = 4;
    const OptResult so = maximize_probability(nullptr, 3, OptMethod::SobolMultistart, config);
    CHECK(std::abs(so.value - 0.4345) < 0.002);
    CHECK(so.value <= 0.437);
}

TEST_CASE("surrogate objective reports the model-vs-truth gap") {
    // tiny surrogate stands in; only the reporting contract is checked here
    MlpModel model = init_model(2, 2, 4, 5);
    MaximizeConfig config;
    config.de.generations = 10;
    const OptResult r = maximize_probability(&model, 2, OptMethod::DifferentialEvolution, config);
    REQUIRE(r.direct_probability.has_value());
    CHECK(*r.direct_probability >= 0.0);
    CHECK(*r.direct_probability <= 1.0);
    CHECK(std::abs(r.value - predict_p(model, r.point[0], r.point[1])) < 1e-12);
}
