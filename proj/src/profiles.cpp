#include "ratlas/profiles.hpp"

#include <gmpxx.h>

#include <cmath>

namespace ratlas::hydrogen {

namespace {

using Poly = std::vector<mpz_class>; // ascending coefficients

void trim(Poly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

// N_2 = -2;  N_(q+1) = (1+x^2) N_q' - 2q x N_q
// so that d^q/dx^q (x arctan(1/x)) = N_q(x)/(1+x^2)^q for q >= 2.
Poly numerator_recursion(int p) {
    Poly n{-2};
    for (int q = 2; q < p; ++q) {
        Poly deriv(n.size() > 1 ? n.size() - 1 : 0);
        for (std::size_t j = 1; j < n.size(); ++j)
            deriv[j - 1] = static_cast<long>(j) * n[j];
        Poly next(std::max(deriv.size() + 2, n.size() + 1), mpz_class(0));
        for (std::size_t j = 0; j < deriv.size(); ++j) {
            next[j] += deriv[j];
            next[j + 2] += deriv[j];
        }
        for (std::size_t j = 0; j < n.size(); ++j)
            next[j + 1] -= 2 * q * n[j];
        trim(next);
        n = std::move(next);
    }
    return n;
}

// Q_(p-2)(y): reversed coefficients of N_p.
Poly q_poly(int p) {
    Poly n = numerator_recursion(p);
    Poly q(p - 1, mpz_class(0));
    for (std::size_t j = 0; j < n.size(); ++j)
        q[p - 2 - j] = n[j];
    return q;
}

double ln_mpz(const mpz_class& z) {
    signed long exp = 0;
    const double d = mpz_get_d_2exp(&exp, z.get_mpz_t());
    return std::log(std::abs(d)) + static_cast<double>(exp) * M_LN2;
}

mpz_class factorial(unsigned long n) {
    mpz_class r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

// Exact ln of the squared weighted norm of N(y)/(1+y^2)^q, N odd with N(0)=0:
//   ||.||^2 = sum over even k of [N^2]_k (k/2-1)! (2q-k/2-1)! / (2q-1)!
double log_norm2_exact(const Poly& numer, int q) {
    Poly sq(2 * numer.size() - 1, mpz_class(0));
    for (std::size_t i = 0; i < numer.size(); ++i) {
        if (numer[i] == 0) continue;
        for (std::size_t j = 0; j < numer.size(); ++j)
            sq[i + j] += numer[i] * numer[j];
    }
    const int M = 2 * q;
    mpz_class acc(0);
    for (std::size_t k = 2; k < sq.size(); k += 2) {
        if (sq[k] == 0) continue;
        const unsigned long m = static_cast<unsigned long>(k / 2);
        acc += sq[k] * factorial(m - 1) * factorial(M - m - 1);
    }
    if (acc <= 0) throw OverflowError("profile norm accumulation failed");
    return ln_mpz(acc) - ln_mpz(factorial(M - 1));
}

RationalProfile pack(const Poly& numer_with_y, int q) {
    RationalProfile out;
    out.denom_power = q;
    out.numerator.resize(numer_with_y.size());
    for (std::size_t i = 0; i < numer_with_y.size(); ++i)
        out.numerator[i] = numer_with_y[i].get_d();
    const double ln2 = log_norm2_exact(numer_with_y, q);
    out.log_norm = 0.5 * ln2;
    out.norm = std::exp(out.log_norm);
    return out;
}

} // namespace

namespace {

// For |y| > 1 the direct Horner overflows once coefficients are large
// (high-n profiles), so the value is computed in the inverse variable:
//   N(y)/(1+y^2)^p = y^(deg-2p) * Nrev(1/y) / (1+1/y^2)^p
// with Nrev the reversed-coefficient polynomial; every intermediate stays
// bounded by the coefficient magnitudes.
template <class T>
T eval_rational(const std::vector<double>& c, int p, T y) {
    const int deg = static_cast<int>(c.size()) - 1;
    if (std::abs(y) <= 2.0) {
        T num{};
        for (auto it = c.rbegin(); it != c.rend(); ++it) num = num * y + *it;
        return num / std::pow(T(1.0) + y * y, p);
    }
    const T u = T(1.0) / y;
    T rev{};
    for (std::size_t k = 0; k < c.size(); ++k) rev = rev * u + c[k];
    return std::pow(y, deg - 2 * p) * rev / std::pow(T(1.0) + u * u, p);
}

} // namespace

double RationalProfile::eval(double y) const {
    return eval_rational(numerator, denom_power, y);
}

std::complex<double> RationalProfile::eval(std::complex<double> y) const {
    return eval_rational(numerator, denom_power, y);
}

std::complex<double> RationalProfile::eval_deriv(std::complex<double> y) const {
    using C = std::complex<double>;
    const int deg = static_cast<int>(numerator.size()) - 1;
    const int p = denom_power;
    if (std::abs(y) <= 2.0) {
        C num{}, dnum{};
        for (auto it = numerator.rbegin(); it != numerator.rend(); ++it) {
            dnum = dnum * y + num;
            num = num * y + *it;
        }
        const C d = 1.0 + y * y;
        const auto dp = std::pow(d, p);
        return dnum / dp - num * (2.0 * p * y) / (dp * d);
    }
    // inverse-variable form: with u = 1/y,
    //   d/dy = y^(deg-2p-1) [ Drev(u)/(1+u^2)^p - 2p Nrev(u)/(1+u^2)^(p+1) ]
    // where Nrev(u) = sum c_(deg-j) u^j and Drev(u) = sum (deg-j) c_(deg-j) u^j
    const C u = 1.0 / y;
    C nrev{}, drev{};
    for (std::size_t k = 0; k < numerator.size(); ++k) {
        nrev = nrev * u + numerator[k];
        drev = drev * u + static_cast<double>(k) * numerator[k];
    }
    const C opu = 1.0 + u * u;
    return std::pow(y, deg - 2 * p - 1) *
           (drev / std::pow(opu, p) - 2.0 * p * nrev / std::pow(opu, p + 1));
}

bool RationalProfile::coefficients_finite() const {
    for (double c : numerator)
        if (!std::isfinite(c)) return false;
    return true;
}

RationalProfile ap_profile(int p) {
    if (p < 2) throw DomainError("ap_profile requires p >= 2");
    Poly q = q_poly(p);
    const int sign = (p % 2 == 0) ? -1 : 1; // (-1)^(p+1)
    Poly numer(q.size() + 1, mpz_class(0));
    for (std::size_t m = 0; m < q.size(); ++m)
        numer[m + 1] = sign * q[m];
    return pack(numer, p);
}

RationalProfile circular_profile(int n) {
    if (n < 2) throw DomainError("circular_profile requires n >= 2");
    const long alpha = 2L * n * n - 3L * n + 2L;
    const long beta = static_cast<long>(2L * n - 1) * (2L * n - 1) * (n - 2);
    Poly p;
    {
        Poly qa = q_poly(2 * n - 2); // Q_(2n-4)
        p.assign(qa.size(), mpz_class(0));
        for (std::size_t m = 0; m < qa.size(); ++m) p[m] = alpha * qa[m];
    }
    if (n > 2 && beta != 0) {
        Poly qb = q_poly(2 * n - 3); // Q_(2n-5)
        Poly t(qb.size() + 2, mpz_class(0));
        for (std::size_t m = 0; m < qb.size(); ++m) {
            t[m] += beta * qb[m];
            t[m + 2] += beta * qb[m];
        }
        if (t.size() > p.size()) p.resize(t.size(), mpz_class(0));
        for (std::size_t m = 0; m < t.size(); ++m) p[m] += t[m];
    }
    trim(p);
    Poly numer(p.size() + 1, mpz_class(0));
    for (std::size_t m = 0; m < p.size(); ++m) numer[m + 1] = p[m];
    return pack(numer, 2 * n - 2);
}

double g2_profile(double y) {
    const double d = 1.0 + y * y;
    return -std::sqrt(3.0) * y / (d * d);
}

} // namespace ratlas::hydrogen
