#include "ratlas/resolvent.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <mutex>

#include "ratlas/quadrature.hpp"

namespace ratlas::resolvent {

namespace {

using Complex = ComplexEnergy;
constexpr Complex kI{0.0, 1.0};

quad::Options quad_opts(const EvalOptions& o) {
    return {o.quad_rel_tol, o.quad_abs_tol, 8000};
}

// Half-line spectral density and its continuation; the common abstraction
// behind the two-level-form and hydrogen-form integrals.
struct Density {
    std::function<double(double)> on_axis;         // g(y), y > 0
    std::function<Complex(Complex)> continued;     // g_c(z)
    std::function<Complex(Complex)> continued_deriv;
    std::vector<double> knots;
    double tail_scale{1.0};
    double im_scale{1.0};   // nearest pole depth; sets the near-axis switch
};

Density two_level_density(const ModelParams& p, const CouplingFamily& fam) {
    Density d;
    const double cw = fam.density_prefactor(p);
    d.on_axis = [&fam, p, cw](double y) {
        return cw * (fam.weight(p, y) + fam.weight(p, -y));
    };
    d.continued = [&fam, p, cw](Complex z) {
        return cw * (fam.weight_continuation(p, z) +
                     fam.weight_continuation(p, -z));
    };
    d.continued_deriv = [&fam, p, cw](Complex z) {
        return cw * (fam.weight_continuation_deriv(p, z) -
                     fam.weight_continuation_deriv(p, -z));
    };
    d.knots = fam.feature_knots(p);
    d.tail_scale = fam.tail_scale(p);
    d.im_scale = fam.imaginary_feature_scale(p);
    return d;
}

Density hydrogen_density(const CouplingFamily& fam, const ModelParams& p) {
    // g(y) = G(y/mu)^2 / y; continuation G(z/mu)^2 / z
    const hydrogen::RationalProfile* prof = &fam.profile();
    const double mu = p.mu;
    const double nrm = prof->norm;
    Density d;
    d.on_axis = [prof, mu, nrm](double y) {
        const double g = prof->eval(y / mu) / nrm;
        return g * g / y;
    };
    d.continued = [prof, mu, nrm](Complex z) {
        const Complex g = prof->eval(z / mu) / nrm;
        return g * g / z;
    };
    d.continued_deriv = [prof, mu, nrm](Complex z) {
        const Complex g = prof->eval(z / mu) / nrm;
        const Complex gp = prof->eval_deriv(z / mu) / nrm;
        return (2.0 * g * gp * z / mu - g * g) / (z * z);
    };
    for (double k : fam.feature_knots(p)) d.knots.push_back(mu * k);
    d.tail_scale = mu * fam.tail_scale(p);
    d.im_scale = mu;
    return d;
}

Complex kernel_pow(Complex inv, int order) {
    Complex k = inv;
    for (int i = 1; i < order; ++i) k *= inv;
    return k;
}

void require(const quad::Result& r, const char* what) {
    if (!r.converged) throw QuadratureError(what);
}

// int_0^inf g(y) / (z-y)^order dy, order in {1,2,3}. Near the axis (orders
// 1 and 2) the kernel singularity is subtracted analytically so the
// quadrature only ever sees a smooth integrand.
Complex cauchy_transform(const Density& d, Complex z, int order,
                         const EvalOptions& opts) {
    const auto qo = quad_opts(opts);
    const double x = z.real();
    const bool near_axis =
        order <= 2 && x > 0.0 && std::abs(z.imag()) < 0.2 * d.im_scale;

    if (!near_axis) {
        auto f = [&](double y) {
            return d.on_axis(y) * kernel_pow(1.0 / (z - y), order);
        };
        std::vector<double> knots = d.knots;
        if (x > 0.0) knots.push_back(x);
        auto r = quad::integrate_half_line(f, 0.0, d.tail_scale, qo, knots);
        require(r, "cauchy_transform: half-line quadrature failed");
        return r.value;
    }

    const double h = 0.35 * std::max(0.5, x);
    const double a = std::max(0.0, x - h);
    const double b = x + h;
    const Complex G = d.continued(z);
    const Complex L = std::log((z - a) / (z - b));

    std::vector<double> knots = d.knots;
    knots.push_back(x);

    Complex total{};
    if (a > 0.0) {
        auto fl = [&](double y) {
            return d.on_axis(y) * kernel_pow(1.0 / (z - y), order);
        };
        auto rl = quad::integrate(fl, 0.0, a, qo, knots);
        require(rl, "cauchy_transform: left panel failed");
        total += rl.value;
    }
    {
        auto fr = [&](double y) {
            return d.on_axis(y) * kernel_pow(1.0 / (z - y), order);
        };
        auto rr = quad::integrate_half_line(fr, b, d.tail_scale, qo, knots);
        require(rr, "cauchy_transform: right panel failed");
        total += rr.value;
    }
    if (order == 1) {
        auto fm = [&](double y) {
            return (d.on_axis(y) - G) / (z - y);
        };
        auto rm = quad::integrate(fm, a, b, qo, knots);
        require(rm, "cauchy_transform: subtracted panel failed");
        total += rm.value + G * L;
    } else {
        const Complex Gp = d.continued_deriv(z);
        auto fm = [&](double y) {
            const Complex dz = z - y;
            return (Complex(d.on_axis(y)) - G - Gp * (y - z)) / (dz * dz);
        };
        auto rm = quad::integrate(fm, a, b, qo, knots);
        require(rm, "cauchy_transform: subtracted panel failed");
        total += rm.value + G * (1.0 / (z - b) - 1.0 / (z - a)) - Gp * L;
    }
    return total;
}

void check_cut(Complex z, const EvalOptions& opts) {
    if (!is_finite(z)) throw DomainError("zeta must be finite");
    if (z.real() >= 0.0 && std::abs(z.imag()) < opts.cut_guard)
        throw CutError("evaluation too close to the spectral cut R+");
}

void check_poles_zeta(const ModelParams& p, const CouplingFamily& fam,
                      Complex z) {
    if (fam.kind() == FamilyKind::HydrogenCircular) {
        const double mu = p.mu;
        if (std::abs(z - Complex{0.0, -mu}) < 1e-6 * mu ||
            std::abs(z - Complex{0.0, mu}) < 1e-6 * mu)
            throw PoleError("zeta inside hydrogen pole exclusion disk");
        return;
    }
    const double excl = fam.pole_exclusion_radius(p);
    for (const auto& e : fam.lower_poles(p)) {
        if (std::abs(z - e.location) < excl ||
            std::abs(z - std::conj(e.location)) < excl)
            throw PoleError("zeta inside pole exclusion disk");
    }
}

bool is_hydrogen(const CouplingFamily& fam) {
    return fam.kind() == FamilyKind::HydrogenCircular;
}

Density make_density(const ModelParams& p, const CouplingFamily& fam) {
    return is_hydrogen(fam) ? hydrogen_density(fam, p) : two_level_density(p, fam);
}

double kappa_sq_prefactor(const CouplingFamily& fam, double kappa) {
    // the two-level form carries kappa^2, the hydrogen form 2 kappa^2
    return is_hydrogen(fam) ? 2.0 * kappa * kappa : kappa * kappa;
}

Complex bare_term(const ModelParams& p, const CouplingFamily& fam, Complex z) {
    return is_hydrogen(fam) ? z - 1.0 : z - (1.0 + p.delta);
}

const CouplingFamily& cached_hydrogen_family(int n) {
    static std::mutex m;
    static std::map<int, CouplingFamily> cache;
    std::lock_guard<std::mutex> lock(m);
    auto it = cache.find(n);
    if (it == cache.end())
        it = cache.emplace(n, CouplingFamily::hydrogen_circular(n)).first;
    return it->second;
}

} // namespace

ComplexEnergy family_jump(const ModelParams& p, const CouplingFamily& fam,
                          ComplexEnergy z) {
    if (is_hydrogen(fam)) {
        // 2 pi i * 2 kappa^2 G(z/mu)^2 / z
        const auto& prof = fam.profile();
        const Complex g = prof.eval(z / p.mu) / prof.norm;
        return 4.0 * M_PI * kI * p.kappa * p.kappa * g * g / z;
    }
    const double cw = fam.density_prefactor(p);
    return 2.0 * M_PI * kI * p.kappa * p.kappa * cw *
           (fam.weight_continuation(p, z) + fam.weight_continuation(p, -z));
}

ComplexEnergy lorentzian_jump(const ModelParams& p, ComplexEnergy z,
                              JumpForm form) {
    const double m2 = p.mu * p.mu;
    const Complex A = 1.0 / ((m2 + (z - 1.0) * (z - 1.0)) *
                             (m2 + (z - 1.0) * (z - 1.0)));
    const Complex B = 1.0 / ((m2 + (z + 1.0) * (z + 1.0)) *
                             (m2 + (z + 1.0) * (z + 1.0)));
    const Complex comb = (form == JumpForm::DensitySum) ? A + B : A - B;
    return 4.0 * kI * p.kappa * p.kappa * m2 * p.mu * comb;
}

ComplexEnergy eval_f(const ModelParams& p, const CouplingFamily& fam,
                     ComplexEnergy zeta, const EvalOptions& opts) {
    check_cut(zeta, opts);
    if (p.kappa == 0.0) return bare_term(p, fam, zeta);
    check_poles_zeta(p, fam, zeta);
    const Density d = make_density(p, fam);
    const Complex c1 = cauchy_transform(d, zeta, 1, opts);
    return bare_term(p, fam, zeta) - kappa_sq_prefactor(fam, p.kappa) * c1;
}

ComplexEnergy residue_closed_form(const ModelParams& p, ComplexEnergy zeta) {
    if (zeta.imag() <= 0.0)
        throw DomainError("residue_closed_form: requires Im zeta > 0");
    const double mu = p.mu;

    // J1(z,r) = int_0^inf dy/((z-y)(y-r)) = (Log(-z) - Log(-r)) / (z - r)
    auto J1 = [&](Complex z, Complex r) {
        return (std::log(-z) - std::log(-r)) / (z - r);
    };
    auto J2 = [&](Complex z, Complex r) {
        return (-1.0 / r) / (z - r) +
               (std::log(-z) - std::log(-r)) / ((z - r) * (z - r));
    };
    // partial fractions of 1/((y-a)^2 + mu^2)^2 about its double poles
    const Complex A = -kI / (4.0 * mu * mu * mu);
    const Complex B = Complex{-1.0 / (4.0 * mu * mu), 0.0};
    const Complex C = kI / (4.0 * mu * mu * mu);
    const Complex D = B;

    Complex total{};
    for (double a : {1.0, -1.0}) {
        const Complex pp = Complex{a, mu};
        const Complex qq = Complex{a, -mu};
        total += A * J1(zeta, pp) + B * J2(zeta, pp) + C * J1(zeta, qq) +
                 D * J2(zeta, qq);
    }
    const double m4 = mu * mu * mu * mu;
    const Complex integral = m4 * total;
    return zeta - (1.0 + p.delta) -
           (2.0 * p.kappa * p.kappa / (M_PI * mu)) * integral;
}

ComplexEnergy eval_f_plus(const ModelParams& p, const CouplingFamily& fam,
                          ComplexEnergy zeta, const EvalOptions& opts) {
    if (zeta.imag() >= 0.0) return eval_f(p, fam, zeta, opts);
    if (opts.continuation_method == ContinuationMethod::DeformedContour)
        return eval_f_plus_contour(p, fam, zeta, opts);

    const Complex v = eval_f(p, fam, zeta, opts) +
                      (p.kappa == 0.0 ? Complex{} : family_jump(p, fam, zeta));
    if (opts.continuation_method == ContinuationMethod::CrossChecked) {
        try {
            const Complex c = eval_f_plus_contour(p, fam, zeta, opts);
            if (std::abs(c - v) > 1e-8 * std::max(1.0, std::abs(v)))
                throw Error("continuation methods disagree beyond 1e-8");
        } catch (const StripError&) {
            // outside the overlap strip; jump value stands alone
        }
    }
    return v;
}

ComplexEnergy eval_f_plus_contour(const ModelParams& p,
                                  const CouplingFamily& fam,
                                  ComplexEnergy zeta,
                                  const EvalOptions& opts) {
    if (is_hydrogen(fam))
        throw DomainError("contour continuation applies to the two-level families");
    if (zeta.imag() >= 0.0) return eval_f(p, fam, zeta, opts);
    if (p.kappa == 0.0) return zeta - (1.0 + p.delta);

    const double depth_limit = fam.imaginary_feature_scale(p);
    if (zeta.real() <= 0.0 || -zeta.imag() >= 0.8 * depth_limit)
        throw StripError("zeta outside the contour validity strip");
    check_poles_zeta(p, fam, zeta);

    const double cw = fam.density_prefactor(p);
    auto dens = [&](Complex y) {
        return cw * (fam.weight_continuation(p, y) +
                     fam.weight_continuation(p, -y));
    };
    auto integrand = [&](Complex y) { return dens(y) / (zeta - y); };

    const double d = 0.5 * (-zeta.imag() + depth_limit);
    const double X = std::max({4.0 * fam.tail_scale(p), 2.0 * zeta.real(), 40.0});
    const auto qo = quad_opts(opts);

    std::vector<double> hknots;
    for (double k : fam.feature_knots(p))
        if (k > 0.0 && k < X) hknots.push_back(k / X);
    if (zeta.real() < X) hknots.push_back(zeta.real() / X);

    auto s1 = quad::integrate_segment(integrand, {0.0, 0.0}, {0.0, -d}, qo);
    auto s2 = quad::integrate_segment(integrand, {0.0, -d}, {X, -d}, qo, hknots);
    auto s3 = quad::integrate_segment(integrand, {X, -d}, {X, 0.0}, qo);
    auto tail = quad::integrate_half_line(
        [&](double y) { return dens(Complex{y, 0.0}) / (zeta - y); }, X,
        fam.tail_scale(p), qo);
    require(s1, "contour: vertical segment failed");
    require(s2, "contour: horizontal segment failed");
    require(s3, "contour: closing segment failed");
    require(tail, "contour: tail failed");

    const Complex total = s1.value + s2.value + s3.value + tail.value;
    return zeta - (1.0 + p.delta) - p.kappa * p.kappa * total;
}

ComplexEnergy eval_F_hydrogen(int n, double kappa_n, double mu_n,
                              ComplexEnergy zeta, const EvalOptions& opts) {
    if (n < 2) throw DomainError("eval_F_hydrogen: n >= 2");
    if (!(mu_n > 0.0) || kappa_n < 0.0)
        throw DomainError("eval_F_hydrogen: invalid kappa_n/mu_n");
    const auto& fam = cached_hydrogen_family(n);
    const ModelParams p{kappa_n, mu_n, 0.0, std::nullopt};
    return eval_f_plus(p, fam, zeta, opts);
}

std::pair<ComplexEnergy, ComplexEnergy> eval_pair(FnKind kind,
                                                  const ModelParams& p,
                                                  const CouplingFamily& fam,
                                                  ComplexEnergy zeta,
                                                  const EvalOptions& opts) {
    const bool second = (kind != FnKind::FirstSheet) && zeta.imag() < 0.0;
    if (p.kappa == 0.0)  // entire function; no cut, no poles
        return {bare_term(p, fam, zeta), Complex{1.0, 0.0}};
    if (kind == FnKind::FirstSheet) check_cut(zeta, opts);
    check_poles_zeta(p, fam, zeta);

    const Density d = make_density(p, fam);
    const double pref = kappa_sq_prefactor(fam, p.kappa);
    Complex value = bare_term(p, fam, zeta) -
                    pref * cauchy_transform(d, zeta, 1, opts);
    Complex deriv = 1.0 + pref * cauchy_transform(d, zeta, 2, opts);
    if (second) {
        const double twopi_k2 =
            2.0 * M_PI * (is_hydrogen(fam) ? 2.0 : 1.0) * p.kappa * p.kappa;
        value += family_jump(p, fam, zeta);
        deriv += twopi_k2 * kI * d.continued_deriv(zeta);
    }
    return {value, deriv};
}

ComplexEnergy deriv_zeta(FnKind kind, const ModelParams& p,
                         const CouplingFamily& fam, ComplexEnergy zeta,
                         const EvalOptions& opts) {
    return eval_pair(kind, p, fam, zeta, opts).second;
}

ComplexEnergy self_energy_splus(const ModelParams& p, const CouplingFamily& fam,
                                ComplexEnergy zeta, const EvalOptions& opts,
                                int deriv_order, SheetSelect sheet) {
    if (is_hydrogen(fam))
        throw DomainError("self_energy_splus: two-level families only");
    check_poles_zeta(p, fam, zeta);
    const Density d = make_density(p, fam);
    const bool below = sheet == SheetSelect::Auto ? zeta.imag() < 0.0
                                                  : sheet == SheetSelect::Second;
    // S = C1 - 2 pi i g_c  (below the axis), so that f+ = z-(1+d) - k^2 S
    switch (deriv_order) {
        case 0: {
            Complex s = cauchy_transform(d, zeta, 1, opts);
            if (below) s -= 2.0 * M_PI * kI * d.continued(zeta);
            return s;
        }
        case 1: {
            Complex s = -cauchy_transform(d, zeta, 2, opts);
            if (below) s -= 2.0 * M_PI * kI * d.continued_deriv(zeta);
            return s;
        }
        case 2: {
            Complex s = 2.0 * cauchy_transform(d, zeta, 3, opts);
            if (below) {
                // second derivative of the continued density by a central
                // complex step; the density is analytic here and the scale
                // is set by the pole depth
                const double h = 1e-5 * d.im_scale;
                const Complex d2 = (d.continued_deriv(zeta + h) -
                                    d.continued_deriv(zeta - h)) /
                                   (2.0 * h);
                s -= 2.0 * M_PI * kI * d2;
            }
            return s;
        }
        default:
            throw DomainError("self_energy_splus: deriv_order in {0,1,2}");
    }
}

} // namespace ratlas::resolvent
