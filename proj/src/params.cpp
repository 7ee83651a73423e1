#include "zernike/params.hpp"

#include <cmath>
#include <string>

#include "zernike/errors.hpp"

namespace zernike {

void Params::validate() const {
    if (!std::isfinite(alpha) || !std::isfinite(beta))
        throw ConfigError("alpha and beta must be finite");
    if (!(hbar > 0.0) || !std::isfinite(hbar)) throw ConfigError("hbar must be positive and finite");
}

double Params::r0() const {
    if (alpha == 0.0) throw DomainError("radius r0 is undefined in the flat limit alpha = 0");
    return 1.0 / std::sqrt(std::abs(alpha));
}

Params make_params(double alpha, double beta, double hbar) {
    Params p{alpha, beta, hbar};
    p.validate();
    return p;
}

}  // namespace zernike
