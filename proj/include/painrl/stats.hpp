#pragma once

#include <span>

namespace painrl::stats {

double mean(std::span<const double> xs);

/// Sample standard deviation (n - 1 denominator); 0 for fewer than two values.
double sample_sd(std::span<const double> xs);

/// Regularized incomplete beta I_x(a, b) for a, b > 0 and x in [0, 1].
/// Continued fraction evaluated with the modified Lentz method.
double incomplete_beta(double a, double b, double x);

/// Pr(T > t) for Student's t with `dof` degrees of freedom.
double student_t_upper_tail(double t, double dof);

struct TTestResult {
    double t_statistic = 0.0;
    double degrees_of_freedom = 0.0;
    double p_value = 1.0;
};

/// One-sided paired-samples t-test of "x is greater than y".
///
/// When every difference is identical the statistic is infinite and the
/// p-value is 0 (positive shift) or 1 (negative shift). Throws
/// std::invalid_argument on size mismatch or n < 2, and std::domain_error
/// when all differences are zero.
TTestResult paired_t_test_one_sided(std::span<const double> x,
                                    std::span<const double> y);

}  // namespace painrl::stats
