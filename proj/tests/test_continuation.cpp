#include <doctest.h>

#include <cmath>

#include "ratlas/continuation.hpp"

using namespace ratlas;
using resolvent::FnKind;

namespace {
const CouplingFamily kLor = CouplingFamily::lorentzian_squared();

RootResult locate(const ModelParams& p, ComplexEnergy seed) {
    return rootfind::newton(FnKind::SecondSheet, p, kLor, seed, {});
}
} // namespace

TEST_CASE("mu sweep keeps the atomic branch shallow") {
    const auto p = make_params(0.1, 0.01, 0.25);
    const auto at = locate(p, {1.285, -1e-5});
    const auto traj =
        continuation::track(p, kLor, VaryParam::Mu, 1.0, 100, at.zeta);
    CHECK(traj.continuity_ok);
    double min_im = 0.0;
    for (const auto& s : traj.samples) min_im = std::min(min_im, s.root.zeta.imag());
    CHECK(min_im >= -0.03);
    // strictly monotone parameter values
    for (std::size_t i = 1; i < traj.samples.size(); ++i)
        CHECK(traj.samples[i].param > traj.samples[i - 1].param);
}

TEST_CASE("tracking is reversible") {
    const auto p = make_params(0.1, 0.01, 0.25);
    const auto ph = locate(p, {0.963, -1e-3});
    const auto fwd =
        continuation::track(p, kLor, VaryParam::Mu, 0.3, 40, ph.zeta);
    ModelParams p2 = p;
    p2.mu = 0.3;
    const auto back = continuation::track(
        p2, kLor, VaryParam::Mu, 0.01, 40, fwd.samples.back().root.zeta);
    CHECK(std::abs(back.samples.back().root.zeta - ph.zeta) <= 1e-8);
}

TEST_CASE("kappa tracking lands on the directly solved zero") {
    const auto p = make_params(0.1, 0.01, 0.25);
    const auto ph = locate(p, {0.963, -1e-3});
    const auto traj =
        continuation::track(p, kLor, VaryParam::Kappa, 0.3, 30, ph.zeta);
    ModelParams p2 = p;
    p2.kappa = 0.3;
    const auto direct = locate(p2, traj.samples.back().root.zeta);
    CHECK(std::abs(traj.samples.back().root.zeta - direct.zeta) < 1e-10);
}

TEST_CASE("tracking loss reports the parameter value") {
    const auto p = make_params(0.1, 0.01, 0.25);
    const auto ph = locate(p, {0.963, -1e-3});
    continuation::TrackOptions opts;
    opts.jump_cap = 1e-13;     // impossible continuity demand
    CHECK_THROWS_AS(continuation::track(p, kLor, VaryParam::Mu, 0.5, 10,
                                        ph.zeta, opts),
                    TrackingLost);
    opts.partial_on_loss = true;
    const auto partial = continuation::track(p, kLor, VaryParam::Mu, 0.5, 10,
                                             ph.zeta, opts);
    CHECK(partial.lost_at.has_value());
    CHECK_FALSE(partial.continuity_ok);
    CHECK(partial.samples.size() >= 1);
}

TEST_CASE("the third zero drifts toward 1 as the width closes") {
    const auto p2 = make_params(0.1, 2.0, 0.25);
    const auto zu = locate(p2, {1.005, -2.095});
    const auto traj =
        continuation::track(p2, kLor, VaryParam::Mu, 0.01, 200, zu.zeta);
    const ComplexEnergy end = traj.samples.back().root.zeta;
    // independently computed endpoint of the pole-anchored branch
    CHECK(std::abs(end - ComplexEnergy{1.001866836, -0.019016673}) < 1e-6);
    CHECK(std::abs(end - 1.0) < 0.05);
}

TEST_CASE("large positive detuning pins the photon branch at 1 - i mu") {
    const auto p = make_params(0.1, 0.01, 0.25);
    const auto ph = locate(p, {0.963, -1e-3});
    const auto traj =
        continuation::track(p, kLor, VaryParam::Delta, 3.0, 100, ph.zeta);
    const ComplexEnergy end = traj.samples.back().root.zeta;
    CHECK(std::abs(end - ComplexEnergy{1.0, -0.01}) < 0.01);
    // and the atomic branch flattens onto the bare level
    const auto at = locate(p, {1.285, -1e-5});
    const auto tr2 =
        continuation::track(p, kLor, VaryParam::Delta, 3.0, 100, at.zeta);
    const ComplexEnergy end2 = tr2.samples.back().root.zeta;
    CHECK(std::abs(end2.real() - 4.0) < 0.01);
    CHECK(std::abs(end2.imag()) < 1e-6);
}

TEST_CASE("classification of the three known zeros") {
    const auto p = make_params(0.1, 0.01, 0.25);
    const auto at = locate(p, {1.285, -1e-5});
    const auto ph = locate(p, {0.963, -1e-3});
    CHECK(continuation::classify(p, kLor, at) == Label::Standard);

    const auto [lbl, limit] = continuation::classify_limit(p, kLor, ph);
    CHECK(lbl == Label::Nonstandard);
    // the photon-branch limit is pinned to the weight pole 1 - i mu
    CHECK(std::abs(limit - ComplexEnergy{1.0, -0.01}) < 1e-3);

    const auto p2 = make_params(0.1, 2.0, 0.25);
    const auto zu = locate(p2, {1.005, -2.095});
    const auto [lu, lim_u] = continuation::classify_limit(p2, kLor, zu);
    CHECK(lu == Label::Nonstandard);
    CHECK(std::abs(lim_u - ComplexEnergy{1.0, -2.0}) < 1e-3);
}

TEST_CASE("standard limits hit 1 + delta to 1e-4") {
    const auto p = make_params(0.1, 0.01, 0.1);
    const auto at = locate(p, {1.18, -1e-4});
    const auto [lbl, limit] = continuation::classify_limit(p, kLor, at);
    CHECK(lbl == Label::Standard);
    CHECK(std::abs(limit - ComplexEnergy{1.1, 0.0}) < 1e-4);
}

TEST_CASE("critical coupling at mu = 0.01") {
    const auto ep = continuation::critical_coupling(0.01, kLor);
    CHECK(ep.kappa_c == doctest::Approx(0.00300283106).epsilon(1e-5));
    CHECK(std::abs(ep.delta_c) < 1e-6);
    CHECK(std::abs(ep.zeta_c - ComplexEnergy{1.0, -0.00381966}) < 1e-5);
    CHECK(ep.condition_residuals.first <= 1e-10);
    CHECK(ep.condition_residuals.second <= 1e-10);

    // at the exceptional point the two zeros have merged
    ModelParams pc = make_params(ep.kappa_c, 0.01, ep.delta_c);
    const auto z1 = locate(pc, ep.zeta_c + ComplexEnergy{5e-4, 0.0});
    const auto z2 = locate(pc, ep.zeta_c - ComplexEnergy{5e-4, 0.0});
    CHECK(std::abs(z1.zeta - z2.zeta) < 1e-6);
}

TEST_CASE("critical coupling validates mu and scales to other widths") {
    CHECK_THROWS_AS(continuation::critical_coupling(-1.0, kLor), DomainError);
    const auto ep = continuation::critical_coupling(0.02, kLor);
    CHECK(ep.kappa_c / 0.02 > 0.1);
    CHECK(ep.kappa_c / 0.02 < 0.6);
    CHECK(ep.condition_residuals.first <= 1e-10);
}

TEST_CASE("regime diagnosis validates its inputs") {
    const auto p = make_params(0.1, 0.01, 0.0);
    CHECK_THROWS_AS(continuation::regime_diagnose(p, kLor, {0.02, -0.02}, 40),
                    DomainError);
    CHECK_THROWS_AS(continuation::regime_diagnose(p, kLor, {-2.0, 0.02}, 40),
                    DomainError);
    CHECK_THROWS_AS(continuation::regime_diagnose(p, kLor, {-0.02, 0.02}, 1),
                    DomainError);
}

TEST_CASE("regime diagnosis at the figure parameters") {
    using continuation::Regime;
    const auto strong = make_params(0.1, 0.01, 0.0);
    const auto rep =
        continuation::regime_diagnose(strong, kLor, {-0.02, 0.02}, 80);
    CHECK(rep.regime == Regime::StrongCoupling);
    CHECK(rep.branch_a.samples.size() == rep.branch_b.samples.size());

    const auto weak = make_params(0.0029, 0.01, 0.0);
    CHECK(continuation::regime_diagnose(weak, kLor, {-0.02, 0.02}, 120).regime ==
          Regime::WeakCoupling);
}

TEST_CASE("complex-coupling detour reconnects the negative eigenvalue") {
    const auto p = make_params(1.2, 0.01, 0.25);
    const auto neg = rootfind::negative_real_eigenvalue(p, kLor);
    REQUIRE(neg.has_value());

    // The object that continues through the detour is the second-sheet germ.
    // Its zero at kappa = 1.2 is the eigenvalue's shadow, displaced by the
    // (tiny) continuation term; seeding just below the axis selects it.
    const std::vector<ComplexEnergy> path{
        {1.2, 0.0}, {1.15, 0.08}, {1.03, 0.08}, {1.0062, 0.0}};
    const auto traj = continuation::track_kappa_path(p, kLor, path, 60,
                                                     {*neg, -1e-6});
    const ComplexEnergy shadow = traj.samples.front().root.zeta;
    CHECK(std::abs(shadow - ComplexEnergy{*neg, 0.0}) < 1e-4);

    const ComplexEnergy end = traj.samples.back().root.zeta;
    CHECK(std::abs(end - ComplexEnergy{0.1110019107, -2.002987679e-6}) < 1e-6);

    // and the detour is reversible on the same germ
    std::vector<ComplexEnergy> back(path.rbegin(), path.rend());
    const auto ret = continuation::track_kappa_path(p, kLor, back, 60, end);
    CHECK(std::abs(ret.samples.back().root.zeta - shadow) <= 1e-8);
}
