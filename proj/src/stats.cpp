#include "painrl/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace painrl::stats {

double mean(std::span<const double> xs) {
    if (xs.empty()) return 0.0;
    return std::accumulate(xs.begin(), xs.end(), 0.0) /
           static_cast<double>(xs.size());
}

double sample_sd(std::span<const double> xs) {
    if (xs.size() < 2) return 0.0;
    const double m = mean(xs);
    double ss = 0.0;
    for (double x : xs) ss += (x - m) * (x - m);
    return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

namespace {

// Continued fraction for I_x(a, b); converges quickly for x < (a+1)/(a+b+2).
double beta_continued_fraction(double a, double b, double x) {
    constexpr int kMaxIterations = 10000;
    constexpr double kEps = 1e-16;
    constexpr double kTiny = 1e-300;

    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIterations; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < kEps) return h;
    }
    throw std::runtime_error("incomplete beta continued fraction did not converge");
}

}  // namespace

double incomplete_beta(double a, double b, double x) {
    if (!(a > 0.0 && b > 0.0)) {
        throw std::invalid_argument("incomplete_beta: a and b must be positive");
    }
    if (!(x >= 0.0 && x <= 1.0)) {
        throw std::invalid_argument("incomplete_beta: x outside [0,1]");
    }
    if (x == 0.0) return 0.0;
    if (x == 1.0) return 1.0;
    const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                             a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(log_front);
    if (x < (a + 1.0) / (a + b + 2.0)) {
        return front * beta_continued_fraction(a, b, x) / a;
    }
    return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double student_t_upper_tail(double t, double dof) {
    if (!(dof > 0.0)) {
        throw std::invalid_argument("student_t_upper_tail: dof must be positive");
    }
    if (std::isnan(t)) return std::numeric_limits<double>::quiet_NaN();
    if (std::isinf(t)) return t > 0 ? 0.0 : 1.0;
    // Pr(|T| > |t|) = I_{dof/(dof+t^2)}(dof/2, 1/2)
    const double two_sided = incomplete_beta(0.5 * dof, 0.5, dof / (dof + t * t));
    return t >= 0.0 ? 0.5 * two_sided : 1.0 - 0.5 * two_sided;
}

TTestResult paired_t_test_one_sided(std::span<const double> x,
                                    std::span<const double> y) {
    if (x.size() != y.size()) {
        throw std::invalid_argument("paired t-test: samples differ in size");
    }
    if (x.size() < 2) {
        throw std::invalid_argument("paired t-test: need at least two pairs");
    }
    std::vector<double> diff(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) diff[i] = x[i] - y[i];

    const double n = static_cast<double>(diff.size());
    const double d_mean = mean(diff);
    const bool constant = std::all_of(diff.begin(), diff.end(),
                                      [&](double d) { return d == diff.front(); });

    TTestResult result;
    result.degrees_of_freedom = n - 1.0;
    if (constant) {
        if (diff.front() == 0.0) {
            throw std::domain_error("paired t-test: all differences are zero");
        }
        const double inf = std::numeric_limits<double>::infinity();
        result.t_statistic = diff.front() > 0.0 ? inf : -inf;
        result.p_value = diff.front() > 0.0 ? 0.0 : 1.0;
        return result;
    }
    result.t_statistic = d_mean / (sample_sd(diff) / std::sqrt(n));
    result.p_value = student_t_upper_tail(result.t_statistic, result.degrees_of_freedom);
    return result;
}

}  // namespace painrl::stats
