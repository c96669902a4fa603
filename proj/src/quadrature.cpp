#include "ratlas/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ratlas::quad {

namespace {

// QUADPACK (G7,K15) nodes and weights on [-1,1].
constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
constexpr double kWg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469};

struct Panel {
    double a, b;
    Complex value;
    double err;
};

Panel eval_panel(const Integrand& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);

    Complex fc = f(c);
    Complex k15 = kWgk[7] * fc;
    Complex g7 = kWg[3] * fc;
    for (int i = 0; i < 7; ++i) {
        const double dx = h * kXgk[i];
        const Complex fs = f(c + dx) + f(c - dx);
        k15 += kWgk[i] * fs;
        if (i % 2 == 1) g7 += kWg[i / 2] * fs;
    }
    k15 *= h;
    g7 *= h;

    // |K15 - G7| is a conservative error estimate; it overshoots on smooth
    // panels but never hides cancellation inside a panel.
    return {a, b, k15, std::abs(k15 - g7)};
}

// Width below which further bisection cannot make progress in doubles.
bool at_resolution_floor(double a, double b) {
    const double w = b - a;
    const double pos = std::max({std::abs(a), std::abs(b), 1.0});
    return w <= 64.0 * std::numeric_limits<double>::epsilon() * pos;
}

Result adapt(const Integrand& f, double a, double b, const Options& opts,
             std::span<const double> knots) {
    std::vector<double> cuts;
    cuts.push_back(a);
    for (double k : knots)
        if (k > a && k < b) cuts.push_back(k);
    cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    std::vector<Panel> panels;
    panels.reserve(64);
    int evals = 0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        panels.push_back(eval_panel(f, cuts[i], cuts[i + 1]));
        evals += 15;
    }

    auto totals = [&panels]() {
        Complex v{};
        double e = 0.0;
        for (const auto& p : panels) {
            v += p.value;
            e += p.err;
        }
        return std::pair{v, e};
    };

    while (static_cast<int>(panels.size()) < opts.max_intervals) {
        auto [value, err] = totals();
        const double goal =
            std::max(opts.abs_tol, opts.rel_tol * std::abs(value));
        if (err <= goal) return {value, err, evals, true};

        // split the worst panel that is still splittable
        std::size_t worst = panels.size();
        double worst_err = 0.0;
        for (std::size_t i = 0; i < panels.size(); ++i) {
            if (panels[i].err > worst_err &&
                !at_resolution_floor(panels[i].a, panels[i].b)) {
                worst_err = panels[i].err;
                worst = i;
            }
        }
        if (worst == panels.size()) {
            // every remaining panel is at the floor; accept what we have
            return {value, err, evals, err <= 10.0 * goal};
        }
        const Panel p = panels[worst];
        const double mid = 0.5 * (p.a + p.b);
        panels[worst] = eval_panel(f, p.a, mid);
        panels.push_back(eval_panel(f, mid, p.b));
        evals += 30;
    }
    auto [value, err] = totals();
    const double goal = std::max(opts.abs_tol, opts.rel_tol * std::abs(value));
    return {value, err, evals, err <= goal};
}

} // namespace

Result integrate(const Integrand& f, double a, double b, const Options& opts,
                 std::span<const double> knots) {
    if (a == b) return {Complex{}, 0.0, 0, true};
    return adapt(f, a, b, opts, knots);
}

Result integrate_half_line(const Integrand& f, double a, double scale,
                           const Options& opts,
                           std::span<const double> knots) {
    // y = a + s t/(1-t), dy = s/(1-t)^2 dt; t in [0,1)
    const double s = scale;
    auto g = [&](double t) -> Complex {
        const double om = 1.0 - t;
        const double y = a + s * t / om;
        return f(y) * (s / (om * om));
    };
    std::vector<double> tknots;
    tknots.reserve(knots.size() + 4);
    for (double k : knots) {
        if (k <= a) continue;
        const double t = (k - a) / (k - a + s);
        if (t > 0.0 && t < 1.0) tknots.push_back(t);
    }
    // a couple of fixed interior nodes keep the first pass honest when no
    // feature knots are supplied
    tknots.push_back(0.5);
    tknots.push_back(0.9);
    std::sort(tknots.begin(), tknots.end());
    return adapt(g, 0.0, 1.0, opts, tknots);
}

Result integrate_segment(const std::function<Complex(Complex)>& f, Complex za,
                         Complex zb, const Options& opts,
                         std::span<const double> knots) {
    const Complex d = zb - za;
    auto g = [&](double t) -> Complex { return f(za + t * d) * d; };
    return adapt(g, 0.0, 1.0, opts, knots);
}

} // namespace ratlas::quad
