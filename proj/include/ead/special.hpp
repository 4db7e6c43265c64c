#pragma once

#include <cstdint>

namespace ead {

// Regularized incomplete beta function I_x(a, b), absolute accuracy better
// than 1e-10 for a, b in [0.5, 1000].
double incomplete_beta(double a, double b, double x);

// Regularized lower incomplete gamma P(a, x) and its complement Q(a, x).
double gamma_p(double a, double x);
double gamma_q(double a, double x);

// Two-sided Student-t p-value: P(|T_df| >= |t|) = I_{df/(df+t^2)}(df/2, 1/2).
double student_t_two_sided_p(double t, double df);

// Two-sided normal p-value P(|Z| >= |z|).
double normal_two_sided_p(double z);

// Upper tail of the chi-square law with df degrees of freedom.
double chi_square_sf(double x, double df);

}  // namespace ead
