#pragma once

namespace blowlab::specfun {

/// ln Γ(z) for z > 0. Lanczos (g = 607/128) below z = 10, Stirling series
/// above. Throws DomainError for z <= 0 or non-finite z.
double log_gamma(double z);

/// Area of the unit sphere S^{d-1} in R^d, 2π^{d/2}/Γ(d/2).
double sphere_area(int d);
double log_sphere_area(int d);

/// Γ(z+a)/Γ(z+b) through log-gamma differences; finite for very large z.
double gamma_ratio(double z, double a, double b);
double log_gamma_ratio(double z, double a, double b);

/// Γ(z+1) / (√(2πz) z^z e^{-z}).
double stirling_ratio(double z);

}  // namespace blowlab::specfun
