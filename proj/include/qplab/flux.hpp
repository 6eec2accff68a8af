#pragma once

#include <functional>
#include <string>

namespace qplab {

/// Convex flux phi(u) with its first two derivatives. phi''(0) > 0 is
/// required at construction; everything downstream divides by it.
///
/// The built-in fluxes:
///   burgers          u^2/2
///   quadratic(c)     c*u^2/2
///   cubic_perturbed  u^2/2 + u^3/6  (generic non-quadratic term; a purely
///                    quadratic flux makes the inner Cole-Hopf solution exact
///                    and the residual-order experiment vacuous)
class FluxModel {
 public:
  enum class Kind { burgers, quadratic, cubic_perturbed, custom };

  static FluxModel burgers();
  static FluxModel quadratic(double phi2);
  static FluxModel cubic_perturbed();
  static FluxModel custom(std::string id, std::function<double(double)> phi,
                          std::function<double(double)> dphi,
                          std::function<double(double)> d2phi);

  double phi(double u) const { return phi_(u); }
  double dphi(double u) const { return dphi_(u); }
  double d2phi(double u) const { return d2phi_(u); }

  /// phi''(0), strictly positive.
  double phi2_at_zero() const { return phi2_zero_; }

  Kind kind() const { return kind_; }
  const std::string& id() const { return id_; }

 private:
  FluxModel(Kind kind, std::string id, std::function<double(double)> phi,
            std::function<double(double)> dphi, std::function<double(double)> d2phi);

  Kind kind_;
  std::string id_;
  std::function<double(double)> phi_, dphi_, d2phi_;
  double phi2_zero_;
};

}  // namespace qplab
