#pragma once

#include <span>
#include <vector>

namespace context_eval {

double normal_pdf(double x);
double normal_cdf(double x);
// Inverse standard normal CDF, accurate to ~1e-15 (Acklam + Halley step).
double normal_quantile(double p);

// Regularized incomplete beta I_x(a, b) via Lentz's continued fraction.
double incomplete_beta(double a, double b, double x);

// Two-sided p-value for a t statistic with `dof` degrees of freedom.
double student_t_two_sided_p(double t, double dof);

struct PearsonResult {
    double r = 0.0;
    double p = 1.0;
    int n = 0;
};

// r = cov(x,y) / (sd_x sd_y); p is the exact two-sided t-test with n-2 dof.
// Throws when n < 3 or either input is constant.
PearsonResult pearson(std::span<const double> x, std::span<const double> y);

struct KdeCurve {
    std::vector<double> grid;
    std::vector<double> density;
    double bandwidth = 0.0;
};

// Gaussian kernel, Scott's bandwidth h = sd * n^(-1/5), grid spanning
// [min - 4h, max + 4h]. Throws on fewer than 2 points or zero variance.
KdeCurve kde(std::span<const double> values, int grid_size = 256);

// Trapezoid rule over the curve's grid; handy for the normalization check.
double trapezoid_integral(const KdeCurve& curve);

}  // namespace context_eval
