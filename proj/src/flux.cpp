#include "qplab/flux.hpp"

#include <stdexcept>
#include <utility>

namespace qplab {

FluxModel::FluxModel(Kind kind, std::string id, std::function<double(double)> phi,
                     std::function<double(double)> dphi, std::function<double(double)> d2phi)
    : kind_(kind), id_(std::move(id)), phi_(std::move(phi)), dphi_(std::move(dphi)),
      d2phi_(std::move(d2phi)) {
  phi2_zero_ = d2phi_(0.0);
  if (!(phi2_zero_ > 0.0))
    throw std::invalid_argument("FluxModel: phi''(0) must be strictly positive");
}

FluxModel FluxModel::burgers() {
  return FluxModel(Kind::burgers, "burgers", [](double u) { return 0.5 * u * u; },
                   [](double u) { return u; }, [](double) { return 1.0; });
}

FluxModel FluxModel::quadratic(double phi2) {
  if (!(phi2 > 0.0)) throw std::invalid_argument("FluxModel::quadratic: phi2 must be > 0");
  return FluxModel(Kind::quadratic, "quadratic", [phi2](double u) { return 0.5 * phi2 * u * u; },
                   [phi2](double u) { return phi2 * u; }, [phi2](double) { return phi2; });
}

FluxModel FluxModel::cubic_perturbed() {
  return FluxModel(Kind::cubic_perturbed, "cubic",
                   [](double u) { return u * u * (0.5 + u / 6.0); },
                   [](double u) { return u + 0.5 * u * u; }, [](double u) { return 1.0 + u; });
}

FluxModel FluxModel::custom(std::string id, std::function<double(double)> phi,
                            std::function<double(double)> dphi,
                            std::function<double(double)> d2phi) {
  return FluxModel(Kind::custom, std::move(id), std::move(phi), std::move(dphi),
                   std::move(d2phi));
}

}  // namespace qplab
