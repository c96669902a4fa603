#include "ratlas/hydrogen.hpp"

#include <cmath>

#include "ratlas/family.hpp"
#include "ratlas/rootfind.hpp"

namespace ratlas::hydrogen {

namespace {

// ln K_n = (n + 1/2) ln(2/n) - ln((2n)!)/2
double log_K(int n) {
    return (n + 0.5) * std::log(2.0 / n) - 0.5 * std::lgamma(2.0 * n + 1.0);
}

} // namespace

HydrogenTransition transition(int n) {
    if (n < 2) throw DomainError("transition: n >= 2 required");
    if (n > 300) throw OverflowError("transition: n capped at 300");

    HydrogenTransition t;
    t.n = n;
    t.alpha_n = 2.0 * n * n - 3.0 * n + 2.0;
    t.beta_n = static_cast<double>(2 * n - 1) * (2 * n - 1) * (n - 2);
    t.mu_n = static_cast<double>(n) * (n - 1) * Constants::hbar_c /
             Constants::a0 / Constants::E_I;
    t.level_spacing_eV =
        Constants::E_I * (1.0 / ((n - 1.0) * (n - 1.0)) - 1.0 / (n * (double)n));
    t.profile = circular_profile(n);
    if (!t.profile.coefficients_finite())
        throw OverflowError("transition: profile coefficients overflow double");

    const double log_D = log_K(n) + log_K(n - 1) - std::log((double)n) -
                         0.5 * std::log((2.0 * n - 1) * (2.0 * n - 3));
    t.D_n = std::exp(log_D);

    const double log_kappa = 0.5 * std::log(3.0 / M_PI) +
                             0.5 * std::log(Constants::alpha_fs) +
                             (2.0 * n + 1.0) * std::log((double)n * (n - 1)) -
                             2.0 * n * std::log(2.0 * n - 1.0) + log_D +
                             t.profile.log_norm;
    t.kappa_n = std::exp(log_kappa);
    if (!std::isfinite(t.kappa_n))
        throw OverflowError("transition: kappa_n overflow");
    return t;
}

namespace {

// Local model of F near the pole of the continued squared profile at
// zeta = -i mu: the jump term behaves like 4 pi i kappa^2 A mu^m /
// ((zeta + i mu)^m zeta) with m = 4n-4, so the nearby zeros solve
// w^m = -4 pi i kappa^2 A mu^m / (zeta (zeta - 1)) at zeta = -i mu.
// The physically quoted zero is the root pushed toward the real axis.
ComplexEnergy nonstandard_seed(const HydrogenTransition& t) {
    const int m = 4 * t.n - 4;
    const double mu = t.mu_n;
    const RationalProfile& prof = t.profile;

    std::complex<double> pval{};  // numerator polynomial at u = -i, sans the u factor
    {
        const std::complex<double> u{0.0, -1.0};
        std::complex<double> acc{};
        for (std::size_t k = prof.numerator.size(); k-- > 1;)
            acc = acc * u + prof.numerator[k];
        pval = acc;
    }
    const std::complex<double> minus2i{0.0, -2.0};
    const std::complex<double> A =
        -(pval * pval) / (prof.norm * prof.norm * std::pow(minus2i, m));

    const std::complex<double> zeta{0.0, -mu};
    const std::complex<double> c = -4.0 * M_PI * std::complex<double>{0.0, 1.0} *
                                   t.kappa_n * t.kappa_n * A *
                                   std::pow(mu, m) / (zeta * (zeta - 1.0));

    const double r = std::pow(std::abs(c), 1.0 / m);
    const double base = std::arg(c) / m;
    ComplexEnergy best{0.0, -mu};
    double best_im = -1e300;
    for (int k = 0; k < m; ++k) {
        const double th = base + 2.0 * M_PI * k / m;
        const ComplexEnergy w{r * std::cos(th), r * std::sin(th)};
        if (w.imag() > best_im && w.real() > 0.0) {
            best_im = w.imag();
            best = w;
        }
    }
    return ComplexEnergy{0.0, -mu} + best;
}

} // namespace

std::pair<RootResult, RootResult> hydrogen_resonances(
    int n, const resolvent::EvalOptions& opts) {
    const HydrogenTransition t = transition(n);
    const CouplingFamily fam = CouplingFamily::hydrogen_circular(n);
    const ModelParams p{t.kappa_n, t.mu_n, 0.0, t.level_spacing_eV};

    if (t.kappa_n == 0.0) {
        RootResult bare{{1.0, 0.0}, 0.0, 0, Sheet::Physical, Label::Standard};
        return {bare, bare};
    }

    rootfind::SolveOptions so;
    so.tol = 1e-11;
    so.eval = opts;

    RootResult standard = rootfind::newton(
        resolvent::FnKind::SecondSheet, p, fam, {1.0, -1e-6}, so);
    standard.label = Label::Standard;

    RootResult nonstandard;
    bool found = false;
    // near the high-order pole |F'| is O(mu), so the same zeta accuracy
    // needs a proportionally looser residual target
    rootfind::SolveOptions so_ns = so;
    so_ns.tol = 1e-9 * std::max(1.0, t.mu_n / 500.0);
    const ComplexEnergy guess = nonstandard_seed(t);
    for (const double scale : {1.0, 0.9, 1.15, 0.75}) {
        const ComplexEnergy seed =
            ComplexEnergy{0.0, -t.mu_n} +
            scale * (guess - ComplexEnergy{0.0, -t.mu_n});
        try {
            nonstandard = rootfind::newton(resolvent::FnKind::SecondSheet, p,
                                           fam, seed, so_ns);
            found = true;
            break;
        } catch (const Error&) {
        }
    }
    if (!found)
        throw NoConvergence("hydrogen_resonances: nonstandard zero not found");
    nonstandard.label = Label::Nonstandard;
    return {standard, nonstandard};
}

double lifetime_seconds(ComplexEnergy zeta, const HydrogenTransition& t,
                        int polarization_channels) {
    if (zeta.imag() >= 0.0)
        throw DomainError("lifetime_seconds: Im zeta must be < 0");
    if (polarization_channels < 1)
        throw DomainError("lifetime_seconds: channels >= 1");
    const double width_per_channel = std::abs(zeta.imag()) * t.level_spacing_eV;
    return Constants::hbar / (polarization_channels * width_per_channel);
}

} // namespace ratlas::hydrogen
