#include "ratlas/continuation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ratlas::continuation {

namespace {

using Complex = ComplexEnergy;
using resolvent::FnKind;

double get_param(const ModelParams& p, VaryParam v) {
    switch (v) {
        case VaryParam::Kappa: return p.kappa;
        case VaryParam::Mu:    return p.mu;
        default:               return p.delta;
    }
}

ModelParams with_param(ModelParams p, VaryParam v, double value) {
    switch (v) {
        case VaryParam::Kappa: p.kappa = value; break;
        case VaryParam::Mu:    p.mu = value; break;
        default:               p.delta = value; break;
    }
    return p;
}

void validate_target(VaryParam v, double stop) {
    if (!std::isfinite(stop)) throw DomainError("track: stop must be finite");
    if (v == VaryParam::Kappa && stop < 0.0)
        throw DomainError("track: kappa must stay >= 0");
    if (v == VaryParam::Mu && stop <= 0.0)
        throw DomainError("track: mu must stay > 0");
    if (v == VaryParam::Delta && stop <= -1.0)
        throw DomainError("track: delta must stay > -1");
}

rootfind::SolveOptions corrector_options(const TrackOptions& o) {
    rootfind::SolveOptions s;
    s.tol = o.tol;
    s.eval = o.eval;
    return s;
}

RootResult verify_zero(const ModelParams& p, const CouplingFamily& fam,
                       Complex z0, const TrackOptions& opts) {
    return rootfind::newton(FnKind::SecondSheet, p, fam, z0,
                            corrector_options(opts));
}

double continuity_bound(const TrackOptions& o, double dparam, double slope,
                        bool have_slope) {
    if (!have_slope) return o.jump_cap;
    return std::min(o.jump_cap,
                    std::max(1e-9, o.slope_factor * std::abs(dparam) * slope));
}

} // namespace

Trajectory track(const ModelParams& p0, const CouplingFamily& fam,
                 VaryParam vary, double stop, int steps, ComplexEnergy zero0,
                 const TrackOptions& opts) {
    if (steps < 1) throw DomainError("track: steps must be >= 1");
    validate_target(vary, stop);

    Trajectory traj;
    traj.param_name = vary;

    const double start = get_param(p0, vary);
    RootResult cur = verify_zero(p0, fam, zero0, opts);
    traj.samples.push_back({start, cur});

    if (stop == start) return traj;
    const double dp = (stop - start) / steps;
    const rootfind::SolveOptions solve = corrector_options(opts);

    double param = start;
    while (param != stop) {
        double step = dp;
        for (;;) {
            double next = param + step;
            if ((dp > 0.0 && next > stop) || (dp < 0.0 && next < stop))
                next = stop;

            const auto& s = traj.samples;
            Complex pred = s.back().root.zeta;
            double slope = 0.0;
            bool have_slope = false;
            if (s.size() >= 2) {
                const auto& a = s[s.size() - 2];
                const auto& b = s.back();
                const double dpar = b.param - a.param;
                if (dpar != 0.0) {
                    const Complex v = (b.root.zeta - a.root.zeta) / dpar;
                    pred += v * (next - b.param);
                    slope = std::abs(v);
                    have_slope = true;
                }
            }

            bool accepted = false;
            try {
                const ModelParams pn = with_param(p0, vary, next);
                RootResult rn = rootfind::newton(FnKind::SecondSheet, pn, fam,
                                                 pred, solve);
                const double jump = std::abs(rn.zeta - s.back().root.zeta);
                if (jump <= continuity_bound(opts, next - param, slope,
                                             have_slope)) {
                    traj.samples.push_back({next, rn});
                    param = next;
                    accepted = true;
                }
            } catch (const Error&) {
                // corrector failed; halve below
            }
            if (accepted) break;
            step *= 0.5;
            if (std::abs(step) < std::abs(dp) * opts.min_step_fraction) {
                traj.continuity_ok = false;
                traj.lost_at = param;
                if (opts.partial_on_loss) return traj;
                throw TrackingLost(param,
                                   "track: step underflow (branch point or "
                                   "pole collision nearby)");
            }
        }
    }
    return traj;
}

Trajectory track_kappa_path(const ModelParams& p0, const CouplingFamily& fam,
                            const std::vector<ComplexEnergy>& kappa_path,
                            int steps_per_segment, ComplexEnergy zero0,
                            const TrackOptions& opts) {
    if (kappa_path.size() < 2)
        throw DomainError("track_kappa_path: need at least two path points");
    if (steps_per_segment < 1)
        throw DomainError("track_kappa_path: steps_per_segment >= 1");

    // Newton on f_n(z) = z - (1+delta) - ksq S1(z) + n ksq J(z), where S1 is
    // the first-sheet self-energy, J the continued-density jump per unit
    // kappa^2, and n the winding index of the germ: crossing the cut R+
    // downward increments n, upward decrements it (the origin is a
    // logarithmic branch point, so the cover is infinite cyclic).
    const double cw = fam.density_prefactor(p0);
    const Complex twopii{0.0, 2.0 * M_PI};
    auto jump_unit = [&](Complex z) {
        return twopii * cw *
               (fam.weight_continuation(p0, z) + fam.weight_continuation(p0, -z));
    };
    auto jump_unit_deriv = [&](Complex z) {
        return twopii * cw *
               (fam.weight_continuation_deriv(p0, z) -
                fam.weight_continuation_deriv(p0, -z));
    };
    auto solve_at = [&](Complex ksq, Complex seed, int n) {
        Complex z = seed;
        for (int it = 1; it <= 60; ++it) {
            const Complex S = resolvent::self_energy_splus(
                p0, fam, z, opts.eval, 0, resolvent::SheetSelect::First);
            const Complex f = z - (1.0 + p0.delta) - ksq * S +
                              static_cast<double>(n) * ksq * jump_unit(z);
            if (std::abs(f) <= opts.tol) return std::pair{z, std::abs(f)};
            const Complex S1 = resolvent::self_energy_splus(
                p0, fam, z, opts.eval, 1, resolvent::SheetSelect::First);
            const Complex df = 1.0 - ksq * S1 +
                               static_cast<double>(n) * ksq * jump_unit_deriv(z);
            if (std::abs(df) < 1e-300)
                throw NoConvergence("kappa path: vanishing derivative");
            z -= f / df;
            if (!is_finite(z)) throw NoConvergence("kappa path: diverged");
        }
        throw NoConvergence("kappa path: corrector failed");
    };
    // signed crossing of R+: +1 downward, -1 upward, 0 none
    auto cut_crossing = [](Complex a, Complex b) {
        if (a.imag() == b.imag()) return 0;
        if ((a.imag() >= 0.0) == (b.imag() >= 0.0)) return 0;
        const double t = -a.imag() / (b.imag() - a.imag());
        if (a.real() + t * (b.real() - a.real()) <= 0.0) return 0;
        return b.imag() < a.imag() ? 1 : -1;
    };

    Trajectory traj;
    traj.param_name = VaryParam::Kappa;

    int winding = zero0.imag() < 0.0 ? 1 : 0;
    auto [z0, r0] = solve_at(kappa_path[0] * kappa_path[0], zero0, winding);
    double arc = 0.0;
    auto sheet_of = [](int n) {
        return n == 0 ? Sheet::Physical : Sheet::Second;
    };
    traj.samples.push_back(
        {arc, RootResult{z0, r0, 0, sheet_of(winding), Label::Unclassified}});
    Complex zcur = z0;
    for (std::size_t seg = 0; seg + 1 < kappa_path.size(); ++seg) {
        const Complex a = kappa_path[seg], b = kappa_path[seg + 1];
        const double seg_len = std::abs(b - a);
        for (int i = 1; i <= steps_per_segment; ++i) {
            const double t = static_cast<double>(i) / steps_per_segment;
            const Complex kappa = a + t * (b - a);
            auto [zn, rn] = solve_at(kappa * kappa, zcur, winding);
            if (std::abs(zn - zcur) > opts.jump_cap)
                throw TrackingLost(arc, "kappa path: continuity violated");
            const int dn = cut_crossing(zcur, zn);
            if (dn != 0) {
                // the germ across the cut carries the updated winding;
                // re-polish the step on it
                winding += dn;
                auto [zn2, rn2] = solve_at(kappa * kappa, zn, winding);
                zn = zn2;
                rn = rn2;
            }
            zcur = zn;
            arc += seg_len / steps_per_segment;
            traj.samples.push_back({arc, RootResult{zn, rn, 0, sheet_of(winding),
                                                    Label::Unclassified}});
        }
    }
    return traj;
}

std::pair<Label, ComplexEnergy> classify_limit(const ModelParams& p,
                                               const CouplingFamily& fam,
                                               const RootResult& zero,
                                               int max_rungs,
                                               const TrackOptions& opts) {
    const double target = 1.0 + p.delta;
    if (p.kappa == 0.0)
        return {std::abs(zero.zeta - target) <= 1e-4 ? Label::Standard
                                                     : Label::Nonstandard,
                zero.zeta};
    TrackOptions o = opts;
    o.eval.cut_guard = std::min(o.eval.cut_guard, 1e-15);
    rootfind::SolveOptions solve = corrector_options(o);
    // Pole-ward rungs sit on a quadrature noise floor slightly above 1e-12
    // while |df/dzeta| grows like 1/dist^2; this tolerance still pins the
    // position far beyond what the 1e-4 limit comparison needs.
    solve.tol = std::max(solve.tol, 3e-11);

    Complex zcur = zero.zeta;
    bool started = false;
    try {
        double kap = p.kappa;
        zcur = verify_zero(p, fam, zero.zeta, o).zeta;
        started = true;
        Complex zprev = zcur;
        double kprev = kap;
        int rung = 0;
        while (kap >= 1e-5 && rung++ < max_rungs) {
            const double knext = 0.7 * kap;
            Complex pred = zcur;
            if (kprev != kap)
                pred += (zcur - zprev) / (kap - kprev) * (knext - kap);
            ModelParams pn = p;
            pn.kappa = knext;
            const RootResult rn =
                rootfind::newton(FnKind::SecondSheet, pn, fam, pred, solve);
            zprev = zcur;
            kprev = kap;
            zcur = rn.zeta;
            kap = knext;
        }
        return {std::abs(zcur - target) <= 1e-4 ? Label::Standard
                                                : Label::Nonstandard,
                zcur};
    } catch (const Error&) {
        // A ladder that collapses onto a pole of the continued weight is the
        // pole-anchored nonstandard limit (the zero converges to the pole as
        // kappa -> 0, eventually entering the exclusion disk).
        if (started) {
            const double to_zeta =
                fam.kind() == FamilyKind::HydrogenCircular ? p.mu : 1.0;
            for (const auto& e : fam.lower_poles(p)) {
                if (std::abs(zcur - to_zeta * e.location) < 1e-3)
                    return {Label::Nonstandard, zcur};
            }
        }
        return {Label::Unclassified, zcur};
    }
}

Label classify(const ModelParams& p, const CouplingFamily& fam,
               const RootResult& zero, int max_rungs,
               const TrackOptions& opts) {
    return classify_limit(p, fam, zero, max_rungs, opts).first;
}

ExceptionalPoint critical_coupling(double mu, const CouplingFamily& fam,
                                   std::optional<ComplexEnergy> init,
                                   const resolvent::EvalOptions& eval) {
    if (!(mu > 0.0)) throw DomainError("critical_coupling: mu must be > 0");
    const ModelParams base{1.0, mu, 0.0, std::nullopt};

    // The two residuals live at the quadrature noise floor, so integrate
    // tighter here than the default evaluation tolerances.
    resolvent::EvalOptions tight = eval;
    tight.quad_rel_tol = std::min(tight.quad_rel_tol, 5e-13);
    tight.quad_abs_tol = std::min(tight.quad_abs_tol, 1e-16);

    auto S = [&](Complex z, int order) {
        return resolvent::self_energy_splus(base, fam, z, tight, order);
    };

    std::vector<Complex> seeds;
    if (init) seeds.push_back(*init);
    for (double frac : {0.4, 0.2, 0.55, 0.7})
        seeds.push_back(Complex{1.0, -frac * mu});

    for (const Complex seed : seeds) {
        Complex z = seed;
        Complex best_z = seed;
        double best_res = std::numeric_limits<double>::infinity();
        int stall = 0;
        for (int it = 0; it < 60 && stall < 5; ++it) {
            Complex s0, s1, s2;
            try {
                s0 = S(z, 0);
                s1 = S(z, 1);
                s2 = S(z, 2);
            } catch (const Error&) {
                break;
            }
            if (std::abs(s1) < 1e-300) break;
            const Complex h1 = 1.0 / s1;
            const Complex h2 = z - s0 / s1;
            // residuals of: Im(1/S') = 0 (kappa real), Im(z - S/S') = 0
            // (delta real), each on its own natural scale
            const double F1 = h1.imag();
            const double F2 = h2.imag();
            const double res = std::abs(F1) / std::max(1e-30, std::abs(h1)) +
                               std::abs(F2) / std::max(1.0, std::abs(h2));
            if (res < best_res * 0.5) {
                best_res = res;
                best_z = z;
                stall = 0;
            } else {
                ++stall;
                if (res < best_res) { best_res = res; best_z = z; }
            }
            if (res < 1e-13) break;
            const Complex h1p = -s2 / (s1 * s1);          // d/dz (1/S')
            const Complex h2p = s0 * s2 / (s1 * s1);      // d/dz (z - S/S')
            const double j11 = h1p.imag(), j12 = h1p.real();
            const double j21 = h2p.imag(), j22 = h2p.real();
            const double det = j11 * j22 - j12 * j21;
            if (std::abs(det) < 1e-300) break;
            const double dx = (-F1 * j22 + F2 * j12) / det;
            const double dy = (-j11 * F2 + j21 * F1) / det;
            double damp = 1.0;
            // keep iterates inside the lower half-plane strip
            for (int j = 0; j < 8; ++j) {
                const Complex trial = z + damp * Complex{dx, dy};
                if (trial.imag() < -1e-8 * mu && trial.imag() > -0.95 * mu) {
                    z = trial;
                    break;
                }
                damp *= 0.5;
            }
        }
        z = best_z;
        if (!std::isfinite(best_res)) continue;

        const Complex s0 = S(z, 0), s1 = S(z, 1);
        const Complex ksq = 1.0 / s1;
        if (ksq.real() <= 0.0) continue;
        const double kappa_c = std::sqrt(ksq.real());
        const double delta_c = (z - s0 / s1).real() - 1.0;

        ExceptionalPoint ep;
        ep.kappa_c = kappa_c;
        ep.delta_c = delta_c;
        ep.zeta_c = z;
        ep.mu = mu;
        ModelParams pc{kappa_c, mu, delta_c, std::nullopt};
        const auto [fv, dv] =
            resolvent::eval_pair(FnKind::SecondSheet, pc, fam, z, tight);
        ep.condition_residuals = {std::abs(fv), std::abs(dv)};
        if (ep.condition_residuals.first <= 1e-10 &&
            ep.condition_residuals.second <= 1e-10)
            return ep;
    }
    throw NoConvergence("critical_coupling: no exceptional point found");
}

RegimeReport regime_diagnose(const ModelParams& p, const CouplingFamily& fam,
                             std::pair<double, double> delta_range, int steps,
                             const TrackOptions& opts) {
    const auto [d0, d1] = delta_range;
    if (!(d0 < d1)) throw DomainError("regime_diagnose: empty delta range");
    if (d0 <= -1.0) throw DomainError("regime_diagnose: delta must stay > -1");
    if (steps < 2) throw DomainError("regime_diagnose: steps >= 2");

    const rootfind::SolveOptions solve = corrector_options(opts);
    const ModelParams pstart = [&] {
        ModelParams q = p;
        q.delta = d0;
        return q;
    }();

    // starting zeros: of all second-sheet zeros at delta_0, take the two
    // closest to the dressed pair positions (the pole-anchored third zero
    // sits deeper and is not part of the anticrossing pair)
    const double s =
        std::sqrt(pstart.delta * pstart.delta + 4.0 * p.kappa * p.kappa);
    const Complex dressed_minus{1.0 + 0.5 * (pstart.delta - s), 0.0};
    const Complex dressed_plus{1.0 + 0.5 * (pstart.delta + s), 0.0};

    rootfind::SeedStrategy strat;
    strat.solve = solve;
    auto zeros = rootfind::find_all(pstart, fam, strat);
    std::erase_if(zeros, [](const RootResult& r) {
        return r.sheet != Sheet::Second;
    });
    if (zeros.size() < 2)
        throw DegenerateRegime("regime_diagnose: fewer than two zeros at the "
                               "sweep start");
    auto nearest = [&zeros](Complex ref, const RootResult* skip) {
        const RootResult* best = nullptr;
        double bd = 1e300;
        for (const auto& z : zeros) {
            if (&z == skip) continue;
            const double d = std::abs(z.zeta - ref);
            if (d < bd) { bd = d; best = &z; }
        }
        return best;
    };
    const RootResult* pa = nearest(dressed_minus, nullptr);
    const RootResult* pb = nearest(dressed_plus, pa);
    RootResult za = *pa;
    RootResult zb = *pb;
    if (std::abs(za.zeta - zb.zeta) < 1e-8)
        throw DegenerateRegime("regime_diagnose: starting zeros coincide");

    Trajectory ta, tb;
    ta.param_name = tb.param_name = VaryParam::Delta;
    ta.samples.push_back({d0, za});
    tb.samples.push_back({d0, zb});

    const double dp = (d1 - d0) / steps;
    double param = d0;
    while (param != d1) {
        double step = dp;
        for (;;) {
            double next = param + step;
            if (next > d1) next = d1;

            auto predict = [&](const Trajectory& t) {
                const auto& ss = t.samples;
                Complex pred = ss.back().root.zeta;
                if (ss.size() >= 2) {
                    const auto& u = ss[ss.size() - 2];
                    const auto& v = ss.back();
                    if (v.param != u.param)
                        pred += (v.root.zeta - u.root.zeta) /
                                (v.param - u.param) * (next - v.param);
                }
                return pred;
            };
            const Complex pa = predict(ta), pb = predict(tb);

            bool accepted = false;
            try {
                ModelParams pn = p;
                pn.delta = next;
                const RootResult na =
                    rootfind::newton(FnKind::SecondSheet, pn, fam, pa, solve);
                const RootResult nb =
                    rootfind::newton(FnKind::SecondSheet, pn, fam, pb, solve);
                const double keep = std::abs(na.zeta - ta.samples.back().root.zeta) +
                                    std::abs(nb.zeta - tb.samples.back().root.zeta);
                const double swap = std::abs(na.zeta - tb.samples.back().root.zeta) +
                                    std::abs(nb.zeta - ta.samples.back().root.zeta);
                const bool distinct = std::abs(na.zeta - nb.zeta) > 1e-8;
                const bool small_enough =
                    std::abs(na.zeta - ta.samples.back().root.zeta) <= opts.jump_cap &&
                    std::abs(nb.zeta - tb.samples.back().root.zeta) <= opts.jump_cap;
                if (distinct && keep <= swap && small_enough) {
                    ta.samples.push_back({next, na});
                    tb.samples.push_back({next, nb});
                    param = next;
                    accepted = true;
                }
            } catch (const Error&) {
            }
            if (accepted) break;
            step *= 0.5;
            if (step < dp * opts.min_step_fraction)
                throw DegenerateRegime(
                    "regime_diagnose: zeros merged mid-sweep (parameters at "
                    "or beyond the critical coupling)");
        }
    }

    int flips = 0;
    int prev_sign = 0;
    for (std::size_t i = 0; i < ta.samples.size(); ++i) {
        const double gap = ta.samples[i].root.zeta.real() -
                           tb.samples[i].root.zeta.real();
        const int sign = gap > 1e-14 ? 1 : (gap < -1e-14 ? -1 : 0);
        if (sign != 0) {
            if (prev_sign != 0 && sign != prev_sign) ++flips;
            prev_sign = sign;
        }
    }
    RegimeReport rep;
    rep.regime = flips > 0 ? Regime::WeakCoupling : Regime::StrongCoupling;
    rep.branch_a = std::move(ta);
    rep.branch_b = std::move(tb);
    return rep;
}

} // namespace ratlas::continuation
