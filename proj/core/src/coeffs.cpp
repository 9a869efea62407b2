#include "gcnm/coeffs.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "gcnm/errors.hpp"
#include "gcnm/specfun.hpp"

namespace gcnm::coeffs {

// Local cubic through k-1..k+2 per interval, O(h^4) like composite Simpson
// but yielding a value at every node.
std::vector<double> cumulative_integral(const std::vector<double>& f, double h) {
    const std::size_t n = f.size();
    std::vector<double> out(n, 0.0);
    if (n < 4) {  // trapezoid fallback for degenerate grids
        for (std::size_t k = 1; k < n; ++k) out[k] = out[k - 1] + 0.5 * h * (f[k - 1] + f[k]);
        return out;
    }
    double acc = 0.0;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        double inc;
        if (k == 0)
            inc = h * (9.0 * f[0] + 19.0 * f[1] - 5.0 * f[2] + f[3]) / 24.0;
        else if (k + 2 == n)
            inc = h * (f[n - 4] - 5.0 * f[n - 3] + 19.0 * f[n - 2] + 9.0 * f[n - 1]) / 24.0;
        else
            inc = h * (-f[k - 1] + 13.0 * f[k] + 13.0 * f[k + 1] - f[k + 2]) / 24.0;
        acc += inc;
        out[k + 1] = acc;
    }
    return out;
}

namespace {

int auto_grid(const ChannelParams& p) {
    // ~400 points per oscillation period 2*pi*x, and never coarser than the
    // kernel decay scale; keeps the O(h^4) cumulative error below ~1e-7
    // over tau_max = O(100) in the tested regimes.
    const double h = std::min(p.x, 1.0) / 64.0;
    return static_cast<int>(std::ceil(p.tau_max / h)) + 1;
}

}  // namespace

std::vector<std::string> validate(const ChannelParams& p) {
    if (!(p.x >= 0.05))
        throw std::invalid_argument("ChannelParams: x must be >= 0.05 (high-T closed forms)");
    if (!(p.theta > 0.0)) throw std::invalid_argument("ChannelParams: theta must be > 0");
    if (!(p.alpha > 0.0)) throw std::invalid_argument("ChannelParams: alpha must be > 0");
    if (!(p.sd.s > 0.0)) throw std::invalid_argument("ChannelParams: spectral exponent s must be > 0");
    if (!(p.tau_max > 0.0)) throw std::invalid_argument("ChannelParams: tau_max must be > 0");
    if (p.n_grid != 0) {
        if (p.n_grid < 2) throw std::invalid_argument("ChannelParams: n_grid must be >= 2");
        const double h = p.tau_max / (p.n_grid - 1);
        if (h > 2.0 * M_PI * p.x / 20.0)
            throw std::invalid_argument(
                "ChannelParams: grid too coarse, fewer than 20 points per oscillation period "
                "2*pi*x");
    }
    std::vector<std::string> warnings;
    if (p.x < 0.1)
        warnings.push_back("x < 0.1: below the stated validity of the high-temperature regime");
    return warnings;
}

CoefficientTable build_table(const ChannelParams& p) {
    CoefficientTable t;
    t.warnings = validate(p);
    t.params = p;

    const int n = p.n_grid != 0 ? p.n_grid : auto_grid(p);
    const double h = p.tau_max / (n - 1);
    const double w0 = 1.0 / p.x;
    const double a2 = p.alpha * p.alpha;

    t.tau.resize(n);
    std::vector<double> fg(n), fd(n), fp(n);
    for (int k = 0; k < n; ++k) {
        const double u = k * h;
        t.tau[k] = u;
        const double ks = bath::kernel_sin(p.sd, u).value;
        const double kc = bath::kernel_cos_thermal(p.sd, u, p.theta).value;
        const double sn = std::sin(w0 * u);
        const double cs = std::cos(w0 * u);
        fg[k] = a2 * ks * sn;
        fd[k] = a2 * kc * cs;
        fp[k] = a2 * kc * sn;
    }
    t.gamma = cumulative_integral(fg, h);
    t.delta = cumulative_integral(fd, h);
    t.pi = cumulative_integral(fp, h);
    t.gamma_cum = cumulative_integral(t.gamma, h);
    for (double& g : t.gamma_cum) g *= 2.0;
    return t;
}

AsymptoticCoefficients asymptotic_coeffs(const ChannelParams& p) {
    validate(p);
    if (p.sd.s != 1.0)
        throw std::invalid_argument("asymptotic_coeffs: closed forms only available for s = 1");
    const double z = 1.0 / p.x;
    const double a2 = p.alpha * p.alpha;
    AsymptoticCoefficients as;
    as.gamma_as = 0.5 * M_PI * a2 * z * std::exp(-z);
    as.delta_as = M_PI * a2 * p.theta * std::exp(-z);
    // pi_as = 2 a^2 theta [Shi(z) cosh(z) - Chi(z) sinh(z)].  The bracket
    // equals (e^{-z} Ei(z) - e^{z} Ei(-z))/2; the Shi/Chi difference cancels
    // catastrophically for large z, so switch route there.
    double bracket;
    if (z <= 5.0) {
        bracket = specfun::shi(z).value * std::cosh(z) - specfun::chi(z).value * std::sinh(z);
    } else {
        bracket = 0.5 * (std::exp(-z) * specfun::expint_ei(z).value + specfun::expint_e1_scaled(z));
    }
    as.pi_as = 2.0 * a2 * p.theta * bracket;
    return as;
}

double interp_cubic(const std::vector<double>& y, double h, double t) {
    const std::size_t n = y.size();
    if (n < 4) {  // linear fallback
        const double s = t / h;
        const std::size_t k = std::min(static_cast<std::size_t>(s), n - 2);
        const double u = s - k;
        return y[k] * (1.0 - u) + y[k + 1] * u;
    }
    double s = t / h;
    std::size_t k = static_cast<std::size_t>(s);
    if (k >= n - 1) k = n - 2;
    // 4-point stencil centered on [k, k+1], shifted at the boundaries
    std::size_t i0 = (k == 0) ? 0 : (k + 2 >= n ? n - 4 : k - 1);
    const double u = s - i0;
    const double c0 = -(u - 1.0) * (u - 2.0) * (u - 3.0) / 6.0;
    const double c1 = u * (u - 2.0) * (u - 3.0) / 2.0;
    const double c2 = -u * (u - 1.0) * (u - 3.0) / 2.0;
    const double c3 = u * (u - 1.0) * (u - 2.0) / 6.0;
    return c0 * y[i0] + c1 * y[i0 + 1] + c2 * y[i0 + 2] + c3 * y[i0 + 3];
}

namespace {

double table_lookup(const CoefficientTable& t, const std::vector<double>& y, double tau,
                    const char* what) {
    if (!(tau >= 0.0) || tau > t.tau_max() * (1.0 + 1e-12))
        throw std::out_of_range(std::string(what) + ": tau outside table range [0, " +
                                std::to_string(t.tau_max()) + "]");
    return interp_cubic(y, t.step(), std::min(tau, t.tau_max()));
}

}  // namespace

double CoefficientTable::gamma_at(double t) const { return table_lookup(*this, gamma, t, "gamma_at"); }
double CoefficientTable::delta_at(double t) const { return table_lookup(*this, delta, t, "delta_at"); }
double CoefficientTable::pi_at(double t) const { return table_lookup(*this, pi, t, "pi_at"); }
double CoefficientTable::gamma_cum_at(double t) const {
    return table_lookup(*this, gamma_cum, t, "gamma_cum_at");
}

double gamma_increment(const CoefficientTable& table, double tau, double eps) {
    if (eps < 0.0) throw std::invalid_argument("gamma_increment: eps must be >= 0");
    if (eps == 0.0) {
        table.gamma_cum_at(tau);  // still range-check tau
        return 0.0;
    }
    return table.gamma_cum_at(tau + eps) - table.gamma_cum_at(tau);
}

void dump_table_csv(const CoefficientTable& table, std::ostream& os) {
    os << "tau,gamma,Delta,Pi,Gamma\n";
    char buf[192];
    for (std::size_t k = 0; k < table.size(); ++k) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g\n", table.tau[k],
                      table.gamma[k], table.delta[k], table.pi[k], table.gamma_cum[k]);
        os << buf;
    }
}

}  // namespace gcnm::coeffs
