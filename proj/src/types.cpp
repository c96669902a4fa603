#include "ratlas/types.hpp"

#include <cmath>

namespace ratlas {

ModelParams make_params(double kappa, double mu, double delta,
                        std::optional<double> energy_scale) {
    if (!std::isfinite(kappa) || !std::isfinite(mu) || !std::isfinite(delta))
        throw DomainError("make_params: parameters must be finite");
    if (mu <= 0.0) throw DomainError("make_params: mu must be > 0");
    if (kappa < 0.0) throw DomainError("make_params: kappa must be >= 0");
    if (delta <= -1.0) throw DomainError("make_params: delta must be > -1");
    if (energy_scale && *energy_scale <= 0.0)
        throw DomainError("make_params: energy_scale must be > 0");
    return ModelParams{kappa, mu, delta, energy_scale};
}

} // namespace ratlas
