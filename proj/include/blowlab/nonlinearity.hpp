#pragma once

#include <memory>
#include <string>

namespace blowlab {

/// Convex nondecreasing source F on [0, ∞) with F(0) = 0.
///
/// Built-in families:
///   power         F(u) = c u^p,                 p > 1
///   power_sum     F(u) = a u^p + b u^q,         a, b >= 0, max exponent > 1
///   exponential   F(u) = e^u - 1
///   zero          F(u) = 0 (linear problem; no Osgood transform)
class Nonlinearity {
 public:
  enum class Kind { power, power_sum, exponential, zero };

  static Nonlinearity power(double c, double p);
  static Nonlinearity power_sum(double a, double p, double b, double q);
  static Nonlinearity exponential();
  static Nonlinearity zero();

  Kind kind() const { return kind_; }
  const std::string& description() const { return description_; }
  bool is_power() const { return kind_ == Kind::power; }
  /// Exponent governing F near 0 (power, power_sum); used by the power-law
  /// form of the blowup criterion.
  double small_u_exponent() const;
  double coefficient() const { return c1_; }
  double exponent() const { return p1_; }

  double operator()(double u) const;
  double derivative(double u) const;

  /// Sampled second differences of F on a log grid, min over the grid.
  double min_second_difference(double u_max = 1e3, int samples = 200) const;

 private:
  Nonlinearity(Kind kind, double c1, double p1, double c2, double p2, std::string description);

  Kind kind_;
  double c1_, p1_, c2_, p2_;
  std::string description_;
};

/// Evaluates F(u); throws DomainError for u < 0.
double eval_F(const Nonlinearity& n, double u);

/// h(w) = ∫_w^∞ du / F(u) and its inverse.
///
/// Power kind is evaluated in closed form. Other kinds use the compactifying
/// substitution u = w/s, s ∈ (0, 1], and tanh-sinh quadrature; the inverse
/// brackets in log w around the power-law seed and solves with TOMS 748.
/// Construction verifies the Osgood condition and throws
/// CriterionInapplicable when the tail ∫^∞ du/F diverges.
class OsgoodTransform {
 public:
  explicit OsgoodTransform(Nonlinearity source, double tolerance = 1e-13);

  const Nonlinearity& source() const { return source_; }
  double tolerance() const { return tolerance_; }

  double h(double w) const;
  double h_inverse(double T) const;

 private:
  Nonlinearity source_;
  double tolerance_;
};

double osgood_h(const OsgoodTransform& t, double w);
double osgood_h_inverse(const OsgoodTransform& t, double T);

/// p_F = 1 + α/d.
double fujita_exponent(double alpha, int d);

struct ThresholdConstant {
  double value = 0.0;
  bool specified = true;  // false: α < 2, value is a configurable default
};

/// c_{α,p} of the sufficient condition sup_t t^{1/(p-1)} e^{-t(-Δ)^{α/2}}u0(0) > c.
/// For α = 2 this is (1/(p-1))^{1/(p-1)}. For α < 2 no value is known; the
/// α = 2 value (or `override_value` when positive) is returned, flagged.
ThresholdConstant threshold_constant_c(double alpha, double p, double override_value = 0.0);

}  // namespace blowlab
