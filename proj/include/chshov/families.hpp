#pragma once

// Parameterized state factories: the maximally entangled state
// (1/sqrt d) sum_i |i...i>, its white-noise mixtures for two and three
// parties, and a few named fixtures.

#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>

#include "chshov/state.hpp"

namespace chshov {

/// (1/sqrt d) sum_i |i>^{x parties}
inline QState max_entangled(std::size_t d, std::size_t parties) {
    if (d < 2) throw std::invalid_argument("max_entangled: d must be >= 2");
    if (parties < 2) throw std::invalid_argument("max_entangled: need >= 2 parties");
    std::size_t total = 1;
    for (std::size_t k = 0; k < parties; ++k) total *= d;
    std::vector<cplx> amps(total, cplx{});
    // |ii...i| has linear index i * (d^{parties-1} + ... + d + 1)
    std::size_t step = 0, power = 1;
    for (std::size_t k = 0; k < parties; ++k) {
        step += power;
        power *= d;
    }
    const double w = 1.0 / std::sqrt(static_cast<double>(d));
    for (std::size_t i = 0; i < d; ++i) amps[i * step] = w;
    return QState::pure(std::vector<std::size_t>(parties, d), std::move(amps));
}

namespace detail {

inline QState noisy_max_entangled(std::size_t d, std::size_t parties, double x, const char* who) {
    if (x < 0.0 || x > 1.0) throw std::invalid_argument(std::string(who) + ": x must lie in [0, 1]");
    const QState psi = max_entangled(d, parties);
    CMatrix rho = psi.density();
    const std::size_t total = rho.rows();
    rho *= cplx{x, 0.0};
    const double noise = (1.0 - x) / static_cast<double>(total);
    for (std::size_t i = 0; i < total; ++i) rho(i, i) += noise;
    return QState::mixed(psi.dims(), std::move(rho));
}

}  // namespace detail

/// x |Phi_d><Phi_d| + (1-x) I / d^2, two parties.
inline QState isotropic(std::size_t d, double x) {
    return detail::noisy_max_entangled(d, 2, x, "isotropic");
}

/// x |GHZ_d><GHZ_d| + (1-x) I / d^3, three parties. The noise term is
/// normalized by the full d^3 so the trace is one.
inline QState ghz_noise(std::size_t d, double x) {
    return detail::noisy_max_entangled(d, 3, x, "ghz_noise");
}

/// Canonical fixtures: ghz, w, bell, product.
inline QState named_state(std::string_view name) {
    if (name == "ghz") return max_entangled(2, 3);
    if (name == "bell") return max_entangled(2, 2);
    if (name == "w") {
        std::vector<cplx> amps(8, cplx{});
        const double w = 1.0 / std::sqrt(3.0);
        amps[0b100] = w;
        amps[0b010] = w;
        amps[0b001] = w;
        return QState::pure({2, 2, 2}, std::move(amps));
    }
    if (name == "product") {
        std::vector<cplx> amps(8, cplx{});
        amps[0] = 1.0;
        return QState::pure({2, 2, 2}, std::move(amps));
    }
    throw std::invalid_argument("named_state: unknown name '" + std::string(name) + "'");
}

enum class FamilyName { max_entangled, isotropic, ghz_noise, ghz, w, bell, product };

struct FamilySpec {
    FamilyName name = FamilyName::bell;
    std::size_t d = 2;
    std::size_t parties = 2;
    double x = 1.0;  // mixing parameter where applicable
};

inline QState make_family(const FamilySpec& spec) {
    switch (spec.name) {
        case FamilyName::max_entangled: return max_entangled(spec.d, spec.parties);
        case FamilyName::isotropic: return isotropic(spec.d, spec.x);
        case FamilyName::ghz_noise: return ghz_noise(spec.d, spec.x);
        case FamilyName::ghz: return named_state("ghz");
        case FamilyName::w: return named_state("w");
        case FamilyName::bell: return named_state("bell");
        case FamilyName::product: return named_state("product");
    }
    throw std::logic_error("make_family: unreachable");
}

inline FamilyName family_from_string(std::string_view name) {
    if (name == "max_entangled") return FamilyName::max_entangled;
    if (name == "isotropic") return FamilyName::isotropic;
    if (name == "ghz_noise") return FamilyName::ghz_noise;
    if (name == "ghz") return FamilyName::ghz;
    if (name == "w") return FamilyName::w;
    if (name == "bell") return FamilyName::bell;
    if (name == "product") return FamilyName::product;
    throw std::invalid_argument("unknown family '" + std::string(name) + "'");
}

inline std::string to_string(FamilyName f) {
    switch (f) {
        case FamilyName::max_entangled: return "max_entangled";
        case FamilyName::isotropic: return "isotropic";
        case FamilyName::ghz_noise: return "ghz_noise";
        case FamilyName::ghz: return "ghz";
        case FamilyName::w: return "w";
        case FamilyName::bell: return "bell";
        case FamilyName::product: return "product";
    }
    return "?";
}

}  // namespace chshov
