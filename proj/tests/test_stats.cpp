#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"

#include "context_eval/rng.hpp"
#include "context_eval/stats.hpp"

using namespace context_eval;

namespace {

// Independent r oracle using the expanded-sums form.
double pearson_r_oracle(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        syy += y[i] * y[i];
        sxy += x[i] * y[i];
    }
    return (n * sxy - sx * sy) /
           (std::sqrt(n * sxx - sx * sx) * std::sqrt(n * syy - sy * sy));
}

double t_pdf(double s, double dof) {
    return std::exp(std::lgamma((dof + 1) / 2) - std::lgamma(dof / 2)) /
           std::sqrt(dof * M_PI) * std::pow(1 + s * s / dof, -(dof + 1) / 2);
}

// Two-sided p via Simpson quadrature of the t density over [-|t|, |t|].
double t_two_sided_p_oracle(double t, double dof) {
    const double a = 0.0, b = std::fabs(t);
    const int panels = 20000;
    const double h = (b - a) / panels;
    double acc = t_pdf(a, dof) + t_pdf(b, dof);
    for (int i = 1; i < panels; ++i) {
        acc += t_pdf(a + i * h, dof) * (i % 2 == 1 ? 4.0 : 2.0);
    }
    const double central = acc * h / 3.0;  // mass in (-|t|, |t|) is 2*central
    return 1.0 - 2.0 * central;
}

}  // namespace

TEST_CASE("pearson exact cases") {
    const std::vector<double> x = {1, 2, 3, 4, 5};
    std::vector<double> y = x;
    CHECK(pearson(x, y).r == doctest::Approx(1.0).epsilon(1e-12));
    for (auto& v : y) v = -v;
    CHECK(pearson(x, y).r == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(pearson(x, y).p <= 1e-12);
}

TEST_CASE("pearson on a hand fixture matches both oracles") {
    const std::vector<double> x = {1, 2, 3};
    const std::vector<double> y = {2, 4, 7};
    const PearsonResult res = pearson(x, y);
    CHECK(res.r == doctest::Approx(pearson_r_oracle(x, y)).epsilon(1e-12));
    const double t = res.r * std::sqrt(1.0 / (1.0 - res.r * res.r));
    CHECK(res.p == doctest::Approx(t_two_sided_p_oracle(t, 1.0)).epsilon(1e-6));
}

TEST_CASE("pearson error paths") {
    const std::vector<double> two = {1, 2};
    CHECK_THROWS_AS(pearson(two, two), std::invalid_argument);
    const std::vector<double> x = {1, 2, 3};
    const std::vector<double> constant = {4, 4, 4};
    CHECK_THROWS_AS(pearson(x, constant), std::invalid_argument);
    CHECK_THROWS_AS(pearson(constant, x), std::invalid_argument);
    const std::vector<double> longer = {1, 2, 3, 4};
    CHECK_THROWS_AS(pearson(x, longer), std::invalid_argument);
}

TEST_CASE("pearson linearity and symmetry properties") {
    SplitMix64 rng(31);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = 3 + rng.next_below(60);
        std::vector<double> x(n), y(n);
        for (auto& v : x) v = rng.next_double() * 20 - 10;
        x[0] += 1.0;  // avoid accidental constancy
        const double a = (rng.next_bernoulli(0.5) ? 1 : -1) * (0.1 + rng.next_double() * 5);
        const double b = rng.next_double() * 10 - 5;
        for (std::size_t i = 0; i < n; ++i) y[i] = a * x[i] + b;

        const PearsonResult res = pearson(x, y);
        CHECK(res.r == doctest::Approx(a > 0 ? 1.0 : -1.0).epsilon(1e-12));

        for (auto& v : y) v += rng.next_double();  // break exact linearity
        bool defined = true;
        PearsonResult xy{}, yx{};
        try {
            xy = pearson(x, y);
            yx = pearson(y, x);
        } catch (const std::invalid_argument&) {
            defined = false;
        }
        if (defined) {
            CHECK(xy.r == yx.r);
            CHECK(xy.p == yx.p);
            CHECK(std::fabs(xy.r) <= 1.0);
            CHECK(xy.p >= 0.0);
            CHECK(xy.p <= 1.0);
        }
    }
}

TEST_CASE("pearson p-values match the quadrature oracle") {
    SplitMix64 rng(37);
    for (int trial = 0; trial < 25; ++trial) {
        const std::size_t n = 3 + rng.next_below(200);
        std::vector<double> x(n), y(n);
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = rng.next_double();
            y[i] = 0.3 * x[i] + rng.next_double();
        }
        const PearsonResult res = pearson(x, y);
        const double dof = static_cast<double>(n - 2);
        const double denom = 1.0 - res.r * res.r;
        if (denom <= 0) continue;
        const double t = res.r * std::sqrt(dof / denom);
        CHECK(res.p == doctest::Approx(t_two_sided_p_oracle(t, dof)).epsilon(1e-6));
    }
    // r == 0 -> p == 1
    const std::vector<double> x = {-1, 0, 1, 0};
    const std::vector<double> y = {0, 1, 0, 1};
    CHECK(pearson(x, y).r == 0.0);
    CHECK(pearson(x, y).p == 1.0);
}

TEST_CASE("normal quantile inverts the CDF") {
    CHECK(normal_quantile(0.5) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(normal_quantile(0.975) == doctest::Approx(1.959963984540054).epsilon(1e-12));
    for (double p = 0.001; p < 1.0; p += 0.013) {
        CHECK(normal_cdf(normal_quantile(p)) == doctest::Approx(p).epsilon(1e-12));
    }
    CHECK_THROWS_AS(normal_quantile(-0.1), std::invalid_argument);
}

TEST_CASE("kde shape and normalization") {
    SUBCASE("peak near the data mass") {
        // a heavy atom at 0.8 plus background spread
        std::vector<double> values(150, 0.8);
        SplitMix64 rng(41);
        for (int i = 0; i < 50; ++i) values.push_back(0.7 + rng.next_double() * 0.2);
        const KdeCurve curve = kde(values, 301);
        double best_x = 0, best_density = -1;
        for (std::size_t i = 0; i < curve.grid.size(); ++i) {
            if (curve.density[i] > best_density) {
                best_density = curve.density[i];
                best_x = curve.grid[i];
            }
        }
        CHECK(std::fabs(best_x - 0.8) <= curve.bandwidth);
        CHECK(trapezoid_integral(curve) == doctest::Approx(1.0).epsilon(0.05));
    }
    SUBCASE("two-point sample is symmetric about the midpoint") {
        const KdeCurve curve = kde(std::vector<double>{0.0, 1.0}, 101);
        CHECK(trapezoid_integral(curve) == doctest::Approx(1.0).epsilon(0.05));
        const std::size_t n = curve.density.size();
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(curve.density[i] ==
                  doctest::Approx(curve.density[n - 1 - i]).epsilon(1e-9));
        }
        CHECK(curve.grid.front() + curve.grid.back() == doctest::Approx(1.0));
    }
    SUBCASE("bandwidth follows Scott's rule") {
        std::vector<double> values;
        SplitMix64 rng(43);
        for (int i = 0; i < 50; ++i) values.push_back(rng.next_double());
        double mean = 0;
        for (double v : values) mean += v;
        mean /= values.size();
        double ss = 0;
        for (double v : values) ss += (v - mean) * (v - mean);
        const double sd = std::sqrt(ss / (values.size() - 1));
        const KdeCurve curve = kde(values, 64);
        CHECK(curve.bandwidth ==
              doctest::Approx(sd * std::pow(50.0, -0.2)).epsilon(1e-12));
        CHECK(trapezoid_integral(curve) == doctest::Approx(1.0).epsilon(0.05));
    }
    SUBCASE("degenerate inputs throw") {
        CHECK_THROWS_AS(kde(std::vector<double>{0.5}, 64), std::invalid_argument);
        CHECK_THROWS_AS(kde(std::vector<double>{0.5, 0.5, 0.5}, 64),
                        std::invalid_argument);
    }
}
