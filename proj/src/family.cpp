#include "ratlas/family.hpp"

#include <algorithm>
#include <cmath>

#include "ratlas/quadrature.hpp"

namespace ratlas {

namespace {

using Complex = ComplexEnergy;

double poly_eval(const std::vector<double>& c, double y) {
    double v = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * y + *it;
    return v;
}

Complex poly_eval(const std::vector<double>& c, Complex y) {
    Complex v{};
    for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * y + *it;
    return v;
}

std::vector<double> poly_deriv(const std::vector<double>& c) {
    std::vector<double> d(c.size() > 1 ? c.size() - 1 : 0);
    for (std::size_t j = 1; j < c.size(); ++j)
        d[j - 1] = static_cast<double>(j) * c[j];
    return d;
}

// Durand-Kerner iteration; adequate for the modest user-supplied degrees.
std::vector<Complex> poly_roots(const std::vector<double>& coeffs) {
    std::vector<double> c = coeffs;
    while (!c.empty() && c.back() == 0.0) c.pop_back();
    const int deg = static_cast<int>(c.size()) - 1;
    if (deg < 1) return {};
    std::vector<Complex> cc(c.begin(), c.end());
    for (auto& v : cc) v /= cc.back();

    std::vector<Complex> r(deg);
    Complex seed{0.4, 0.9};
    Complex acc{1.0, 0.0};
    for (int i = 0; i < deg; ++i) {
        acc *= seed;
        r[i] = acc;
    }
    for (int iter = 0; iter < 400; ++iter) {
        double shift = 0.0;
        for (int i = 0; i < deg; ++i) {
            Complex num{};
            for (int j = deg; j >= 0; --j) num = num * r[i] + cc[j];
            Complex den{1.0, 0.0};
            for (int j = 0; j < deg; ++j)
                if (j != i) den *= (r[i] - r[j]);
            const Complex step = num / den;
            r[i] -= step;
            shift = std::max(shift, std::abs(step));
        }
        if (shift < 1e-14) break;
    }
    return r;
}

std::vector<PoleEntry> cluster_lower_poles(const std::vector<Complex>& roots,
                                           int order_per_root) {
    std::vector<PoleEntry> out;
    for (const auto& r : roots) {
        if (r.imag() >= 0.0) continue;
        bool merged = false;
        for (auto& e : out) {
            if (std::abs(e.location - r) < 1e-7) {
                e.order += order_per_root;
                merged = true;
                break;
            }
        }
        if (!merged) out.push_back({r, order_per_root});
    }
    std::sort(out.begin(), out.end(), [](const PoleEntry& a, const PoleEntry& b) {
        return a.location.real() < b.location.real();
    });
    return out;
}

} // namespace

CouplingFamily CouplingFamily::lorentzian_squared() {
    CouplingFamily f;
    f.kind_ = FamilyKind::LorentzianSquared;
    f.norm_ = NormConvention::L2dk;
    return f;
}

CouplingFamily CouplingFamily::simple_pole() {
    CouplingFamily f;
    f.kind_ = FamilyKind::SimplePole;
    f.norm_ = NormConvention::L2dk;
    return f;
}

CouplingFamily CouplingFamily::hydrogen_circular(int n) {
    if (n < 2) throw DomainError("hydrogen_circular requires n >= 2");
    CouplingFamily f;
    f.kind_ = FamilyKind::HydrogenCircular;
    f.norm_ = NormConvention::WeightedDyOverY;
    f.n_ = n;
    f.profile_ = std::make_shared<hydrogen::RationalProfile>(
        hydrogen::circular_profile(n));
    return f;
}

CouplingFamily CouplingFamily::user_rational(std::vector<double> num,
                                             std::vector<double> den) {
    while (!num.empty() && num.back() == 0.0) num.pop_back();
    while (!den.empty() && den.back() == 0.0) den.pop_back();
    if (den.empty()) throw DomainError("user_rational: empty denominator");
    if (num.empty()) throw DomainError("user_rational: empty numerator");
    if (num.size() + 1 > den.size())
        throw DomainError("user_rational: need deg num <= deg den - 1");

    CouplingFamily f;
    f.kind_ = FamilyKind::UserRational;
    f.norm_ = NormConvention::L2dk;
    f.num_ = std::move(num);
    f.den_ = std::move(den);

    auto roots = poly_roots(f.den_);
    double scale = 1.0;
    for (const auto& r : roots) {
        if (std::abs(r.imag()) < 1e-9 * (1.0 + std::abs(r.real())))
            throw DomainError("user_rational: denominator has a real zero");
        scale = std::max(scale, std::abs(r));
    }
    f.rational_poles_ = cluster_lower_poles(roots, 2); // weight = profile^2
    f.rational_scale_ = scale;

    auto p2 = [&f](double y) {
        const double v = poly_eval(f.num_, y) / poly_eval(f.den_, y);
        return quad::Complex{v * v, 0.0};
    };
    quad::Options qo;
    auto pos = quad::integrate_half_line([&](double y) { return p2(y); }, 0.0,
                                         2.0 * scale, qo);
    auto neg = quad::integrate_half_line([&](double y) { return p2(-y); }, 0.0,
                                         2.0 * scale, qo);
    if (!pos.converged || !neg.converged)
        throw QuadratureError("user_rational: normalization integral failed");
    f.l2_norm_sq_ = pos.value.real() + neg.value.real();
    if (!(f.l2_norm_sq_ > 0.0))
        throw DomainError("user_rational: profile has zero norm");
    return f;
}

int CouplingFamily::hydrogen_n() const {
    if (kind_ != FamilyKind::HydrogenCircular)
        throw DomainError("hydrogen_n: not a hydrogen family");
    return n_;
}

const hydrogen::RationalProfile& CouplingFamily::profile() const {
    if (!profile_) throw DomainError("profile: not a hydrogen family");
    return *profile_;
}

double CouplingFamily::weight(const ModelParams& p, double y) const {
    switch (kind_) {
        case FamilyKind::LorentzianSquared: {
            const double u = (y - 1.0) / p.mu;
            const double d = 1.0 + u * u;
            return 1.0 / (d * d);
        }
        case FamilyKind::SimplePole: {
            const double d = 1.0 + y * y;
            return y * y / (d * d);
        }
        case FamilyKind::HydrogenCircular: {
            const double g = profile_->eval(y) / profile_->norm;
            return g * g;
        }
        case FamilyKind::UserRational: {
            const double v = poly_eval(num_, y) / poly_eval(den_, y);
            return v * v;
        }
    }
    return 0.0;
}

ComplexEnergy CouplingFamily::weight_continuation(const ModelParams& p,
                                                  ComplexEnergy z) const {
    const double excl = pole_exclusion_radius(p);
    for (const auto& pole : lower_poles(p)) {
        if (std::abs(z - pole.location) < excl ||
            std::abs(z - std::conj(pole.location)) < excl)
            throw PoleError("weight_continuation: inside pole exclusion disk");
    }
    switch (kind_) {
        case FamilyKind::LorentzianSquared: {
            const double m2 = p.mu * p.mu;
            const Complex d = m2 + (z - 1.0) * (z - 1.0);
            return m2 * m2 / (d * d);
        }
        case FamilyKind::SimplePole: {
            const Complex d = 1.0 + z * z;
            return z * z / (d * d);
        }
        case FamilyKind::HydrogenCircular: {
            const Complex g = profile_->eval(z) / profile_->norm;
            return g * g;
        }
        case FamilyKind::UserRational: {
            const Complex v = poly_eval(num_, z) / poly_eval(den_, z);
            return v * v;
        }
    }
    return {};
}

ComplexEnergy CouplingFamily::weight_continuation_deriv(const ModelParams& p,
                                                        ComplexEnergy z) const {
    switch (kind_) {
        case FamilyKind::LorentzianSquared: {
            const double m2 = p.mu * p.mu;
            const Complex d = m2 + (z - 1.0) * (z - 1.0);
            return -4.0 * m2 * m2 * (z - 1.0) / (d * d * d);
        }
        case FamilyKind::SimplePole: {
            const Complex d = 1.0 + z * z;
            return 2.0 * z * (1.0 - z * z) / (d * d * d);
        }
        case FamilyKind::HydrogenCircular: {
            const double nrm = profile_->norm;
            return 2.0 * (profile_->eval(z) / nrm) *
                   (profile_->eval_deriv(z) / nrm);
        }
        case FamilyKind::UserRational: {
            const Complex n = poly_eval(num_, z);
            const Complex d = poly_eval(den_, z);
            const Complex np = poly_eval(poly_deriv(num_), z);
            const Complex dp = poly_eval(poly_deriv(den_), z);
            const Complex v = n / d;
            return 2.0 * v * (np * d - n * dp) / (d * d);
        }
    }
    return {};
}

double CouplingFamily::density_prefactor(const ModelParams& p) const {
    switch (kind_) {
        case FamilyKind::LorentzianSquared:
            return 2.0 / (M_PI * p.mu);
        case FamilyKind::SimplePole:
            return 2.0 / M_PI;
        case FamilyKind::UserRational:
            return 1.0 / l2_norm_sq_;
        case FamilyKind::HydrogenCircular:
            throw DomainError(
                "density_prefactor: hydrogen families use the weighted-norm "
                "resolvent form");
    }
    return 0.0;
}

double CouplingFamily::coupling_amplitude(const ModelParams& p, double k) const {
    switch (kind_) {
        case FamilyKind::LorentzianSquared: {
            const double u = (k - 1.0) / p.mu;
            return std::sqrt(2.0 / M_PI) / std::sqrt(p.mu) / (1.0 + u * u);
        }
        case FamilyKind::SimplePole:
            return std::sqrt(2.0 / M_PI) * k / (1.0 + k * k);
        case FamilyKind::HydrogenCircular:
            return profile_->eval(k) / profile_->norm;
        case FamilyKind::UserRational:
            return poly_eval(num_, k) / poly_eval(den_, k) /
                   std::sqrt(l2_norm_sq_);
    }
    return 0.0;
}

std::vector<PoleEntry> CouplingFamily::lower_poles(const ModelParams& p) const {
    switch (kind_) {
        case FamilyKind::LorentzianSquared:
            return {{{-1.0, -p.mu}, 2}, {{1.0, -p.mu}, 2}};
        case FamilyKind::SimplePole:
            return {{{0.0, -1.0}, 2}};
        case FamilyKind::HydrogenCircular:
            // profile pole order; the squared weight's order is twice this
            return {{{0.0, -1.0}, 2 * n_ - 2}};
        case FamilyKind::UserRational:
            return rational_poles_;
    }
    return {};
}

double CouplingFamily::pole_exclusion_radius(const ModelParams& p) const {
    switch (kind_) {
        case FamilyKind::LorentzianSquared:
            return 1e-6 * p.mu;
        case FamilyKind::UserRational: {
            double depth = 1.0;
            for (const auto& e : rational_poles_)
                depth = std::min(depth, std::abs(e.location.imag()));
            return 1e-6 * depth;
        }
        default:
            return 1e-6;
    }
}

std::vector<double> CouplingFamily::feature_knots(const ModelParams& p) const {
    switch (kind_) {
        case FamilyKind::LorentzianSquared:
            return {1.0 - 3.0 * p.mu, 1.0 - p.mu, 1.0, 1.0 + p.mu,
                    1.0 + 3.0 * p.mu};
        case FamilyKind::SimplePole:
            return {0.5, 1.0, 2.0};
        case FamilyKind::HydrogenCircular:
            return {0.3, 0.6, 1.0, 2.0};
        case FamilyKind::UserRational: {
            std::vector<double> k{1.0};
            for (const auto& e : rational_poles_)
                if (std::abs(e.location.real()) > 1e-12)
                    k.push_back(std::abs(e.location.real()));
            return k;
        }
    }
    return {};
}

double CouplingFamily::tail_scale(const ModelParams& p) const {
    switch (kind_) {
        case FamilyKind::LorentzianSquared:
            return 1.0 + 4.0 * p.mu;
        case FamilyKind::SimplePole:
        case FamilyKind::HydrogenCircular:
            return 2.0;
        case FamilyKind::UserRational:
            return 2.0 * rational_scale_;
    }
    return 1.0;
}

double CouplingFamily::imaginary_feature_scale(const ModelParams& p) const {
    switch (kind_) {
        case FamilyKind::LorentzianSquared:
            return p.mu;
        case FamilyKind::UserRational: {
            double depth = 1.0;
            for (const auto& e : rational_poles_)
                depth = std::min(depth, std::abs(e.location.imag()));
            return depth;
        }
        default:
            return 1.0;
    }
}

} // namespace ratlas
