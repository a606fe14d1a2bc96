#include "dmom/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "dmom/errors.hpp"
#include "dmom/special.hpp"

namespace dmom {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr cplx kI{0.0, 1.0};
// Beyond |log x| > kLogCap the kernels equal their leading terms to double precision.
constexpr double kLogCap = 80.0;

double saddle_line(double log_abs_x) {
    double c = 0.25 + 0.5 * std::round((log_abs_x / 2.0 - 0.25) / 0.5);
    if (c == 0.25) c = 0.75;
    if (c == -0.25) c = -0.75;
    return std::clamp(c, -19.75, 19.75);
}

int half_nodes(const QuadratureOptions& opt) {
    if (!(opt.step > 0.0) || !(opt.half_width > 0.0)) throw DomainError("quadrature: step and half_width must be positive");
    return static_cast<int>(std::lround(opt.half_width / opt.step));
}

// (1/2 pi i) * integral over Re s = c of f(s) e^{-s lx} ds, with f tabulated per line.
class MellinLine {
  public:
    MellinLine(std::function<cplx(cplx)> f, const QuadratureOptions& opt) : f_(std::move(f)), opt_(opt), n_(half_nodes(opt)) {}

    cplx integrate(double c, cplx lx) {
        if (c == 0.0) throw DomainError("quadrature: the integration line passes through the pole at 0");
        auto it = grids_.find(c);
        if (it == grids_.end()) {
            std::vector<cplx> g(2 * n_ + 1);
            for (int j = -n_; j <= n_; ++j) g[j + n_] = f_(cplx(c, j * opt_.step)) * (opt_.step / (2.0 * kPi));
            it = grids_.emplace(c, std::move(g)).first;
        }
        const auto& g = it->second;
        const cplx rot = std::exp(-kI * opt_.step * lx);
        cplx w = std::exp(kI * (n_ * opt_.step) * lx);
        cplx sum = 0;
        for (const cplx& gj : g) {
            sum += gj * w;
            w *= rot;
        }
        return std::exp(-c * lx) * sum;
    }

    double line_for(cplx lx) const { return opt_.line ? *opt_.line : saddle_line(lx.real()); }

  private:
    std::function<cplx(cplx)> f_;
    QuadratureOptions opt_;
    int n_;
    std::map<double, std::vector<cplx>> grids_;
};

cplx checked_log(cplx x) {
    if (x == 0.0) throw DomainError("kernel: x must be nonzero");
    if (x.real() < -1e-12 * std::abs(x)) throw DomainError("kernel: x must lie in the closed right half-plane");
    if (x.imag() == 0.0 && x.real() < 0) throw DomainError("kernel: x must be positive");
    return std::log(x);
}

cplx kernel_K_with(MellinLine& line, cplx lx, cplx beta) {
    const cplx lead = std::exp((beta - 0.5) * lx);
    if (lx.real() < -kLogCap) return lead * residue_r(beta);
    if (lx.real() > kLogCap) return 0.0;
    const double c = line.line_for(lx);
    cplx v = line.integrate(c, lx);
    if (c < 0) v += residue_r(beta);
    return lead * v;
}

cplx hb_kernel_with(MellinLine& line, cplx x, cplx lx) {
    const cplx phase = std::exp(kI * x - kI * (kPi / 4.0));
    if (lx.real() < -kLogCap) return phase * std::sqrt(kPi);
    if (lx.real() > kLogCap) return 0.0;
    const double c = line.line_for(lx);
    cplx v = line.integrate(c, lx);
    if (c < 0) v += std::sqrt(kPi);
    return phase * v;
}

}  // namespace

bool ShiftPair::within_guard() const {
    const double g = 5.0 / std::log(static_cast<double>(std::max<u64>(modulus_hint, 3)));
    return std::abs(alpha) <= g && std::abs(beta) <= g;
}

void ShiftPair::validate() const {
    if (std::abs(alpha + beta - 1.0) < 1e-12 || std::abs(alpha + beta + 1.0) < 1e-12)
        throw DomainError("shift pair: alpha + beta must differ from +-1");
}

cplx f_factor(cplx s, cplx alpha, cplx beta) {
    if (s == 0.0) throw PoleError("f_factor: pole at s = 0");
    const cplx ca = std::cos(kPi * alpha), cb = std::cos(kPi * beta);
    if (std::abs(ca) < 1e-300 || std::abs(cb) < 1e-300) throw DomainError("f_factor: cos(pi alpha) or cos(pi beta) vanishes");
    return std::exp(s * s) / s * (std::cos(kPi * (s + alpha)) / ca) * (std::cos(kPi * (s - beta)) / cb);
}

cplx khat(cplx s, cplx alpha, cplx beta) {
    const cplx w = s + 0.5 - beta;
    const double rw = std::round(w.real());
    if (std::abs(w - rw) < 1e-12 && rw <= 0.0)
        throw DomainError("khat: evaluation exactly at a cancelled Gamma pole is not supported");
    return f_factor(s, alpha, beta) * gamma_fn(w) * std::cos(kPi / 2.0 * w);
}

cplx residue_r(cplx beta) { return gamma_fn(0.5 - beta) * std::cos(kPi / 2.0 * (0.5 - beta)); }

cplx kernel_K(cplx x, cplx alpha, cplx beta, const QuadratureOptions& opt) {
    const cplx lx = checked_log(x);
    MellinLine line([&](cplx s) { return khat(s, alpha, beta); }, opt);
    return kernel_K_with(line, lx, beta);
}

cplx script_k_combined(cplx delta, [[maybe_unused]] cplx alpha, cplx beta) {
    return 2.0 * gamma_fn(0.5 - beta) * std::cos(kPi / 2.0 * (0.5 - beta)) * gamma_fn(0.5 + beta + delta) *
           std::sin(kPi / 2.0 * (0.5 - beta - delta));
}

cplx tanh_sinh(const std::function<cplx(double)>& f, double a, double b, double tol) {
    const double half = (b - a) / 2.0;
    auto node = [&](double t, cplx& acc) {
        const double v = kPi / 2.0 * std::sinh(t);
        const double ch = std::cosh(v);
        const double w = half * (kPi / 2.0) * std::cosh(t) / (ch * ch);
        if (!(w > 1e-300)) return;
        const double d = (b - a) / (1.0 + std::exp(2.0 * std::abs(v)));
        if (!(d > 0.0)) return;
        const double x = t < 0 ? a + d : b - d;
        acc += w * f(x);
    };
    constexpr double t_max = 4.0;
    double h = 0.5;
    cplx sum = 0;
    for (double t = -t_max; t <= t_max + 1e-12; t += h) node(t, sum);
    cplx prev = sum * h;
    for (int level = 1; level <= 9; ++level) {
        h /= 2.0;
        cplx extra = 0;
        for (double t = -t_max + h; t < t_max; t += 2.0 * h) node(t, extra);
        sum += extra;
        const cplx cur = sum * h;
        if (level >= 3 && std::abs(cur - prev) <= tol * std::max(1.0, std::abs(cur))) return cur;
        prev = cur;
    }
    return prev;
}

cplx script_k_quadrature(cplx delta, cplx alpha, cplx beta) {
    // Rotate x onto the rays x = +-iy, where e^{+-ix} = e^{-y}.
    QuadratureOptions opt;
    MellinLine line([&](cplx s) { return khat(s, alpha, beta); }, opt);
    cplx total = 0;
    for (int sign : {+1, -1}) {
        const cplx dir = static_cast<double>(sign) * kI;
        const cplx larg = cplx(0.0, sign * kPi / 2.0);
        auto integrand_y = [&](double y) {
            const cplx lx = std::log(y) + larg;
            return std::exp(-y) * kernel_K_with(line, lx, beta) * std::exp(delta * lx);
        };
        const cplx near = tanh_sinh([&](double u) { return 2.0 * u * integrand_y(u * u); }, 0.0, 1.0, 1e-11);
        const cplx far = tanh_sinh(integrand_y, 1.0, 40.0, 1e-11);
        total += dir * (near + far);
    }
    return total;
}

cplx x_plus(u64 q, cplx alpha, cplx beta) {
    const double qd = static_cast<double>(q);
    return 4.0 / qd * std::exp((1.0 - alpha - beta) * std::log(qd / (2.0 * kPi))) * gamma_fn(0.5 - alpha) *
           gamma_fn(0.5 - beta) * std::cos(kPi / 2.0 * (0.5 - alpha)) * std::cos(kPi / 2.0 * (0.5 - beta));
}

cplx x_minus(u64 q, cplx alpha, cplx beta) {
    const double qd = static_cast<double>(q);
    return 4.0 / qd * std::exp((1.0 - alpha - beta) * std::log(qd / (2.0 * kPi))) * gamma_fn(0.5 - alpha) *
           gamma_fn(0.5 - beta) * std::sin(kPi / 2.0 * (0.5 - alpha)) * std::sin(kPi / 2.0 * (0.5 - beta));
}

cplx hb_ghat(cplx s) {
    if (s == 0.0) throw PoleError("hb_ghat: pole at s = 0");
    const cplx w = s + 0.5;
    const double rw = std::round(w.real());
    if (std::abs(w - rw) < 1e-12 && rw <= 0.0) throw DomainError("hb_ghat: evaluation exactly at a cancelled Gamma pole");
    return gamma_fn(w) * std::exp(-kI * (kPi / 2.0) * s) * std::exp(s * s) * std::cos(kPi * s) / s;
}

cplx hb_kernel_K(cplx x, const QuadratureOptions& opt) {
    const cplx lx = checked_log(x);
    MellinLine line(hb_ghat, opt);
    return hb_kernel_with(line, x, lx);
}

cplx hb_khat(cplx s) {
    // Mellin transform of e^{ix} G(x) where G has Mellin transform hb_ghat:
    // integral over Re w = cw of hb_ghat(w) Gamma(s-w) e^{i pi (s-w)/2}, with 0 < Re(s-w) < 1.
    // Re(s - w) must stay in (0, 1); keep the line off the pole at 0 and the cancelled
    // Gamma poles at -1/2 - n.
    double cw = s.real() - 0.5;
    for (double off : {0.5, 0.35, 0.65, 0.25, 0.75}) {
        cw = s.real() - off;
        const double to_half = std::abs(cw + 0.5 - std::round(cw + 0.5));
        if (std::abs(cw) >= 0.25 && (cw > -0.4 || to_half >= 0.1)) break;
    }
    constexpr double h = 0.02;
    constexpr int n = 600;
    cplx sum = 0;
    for (int j = -n; j <= n; ++j) {
        const cplx w(cw, j * h);
        sum += hb_ghat(w) * gamma_fn(s - w) * std::exp(kI * (kPi / 2.0) * (s - w));
    }
    cplx v = sum * (h / (2.0 * kPi));
    if (cw < 0) v += std::sqrt(kPi) * gamma_fn(s) * std::exp(kI * (kPi / 2.0) * s);
    return std::exp(-kI * (kPi / 4.0)) * v;
}

double hb_kernel_bound(double c) {
    constexpr double h = 0.01;
    constexpr int n = 1400;
    double sum = 0;
    for (int j = -n; j <= n; ++j) sum += std::abs(hb_ghat(cplx(c, j * h)));
    // 2% margin over the trapezoid value of a smooth positive integrand
    return 1.02 * sum * h / (2.0 * kPi);
}

HbKernelTable::HbKernelTable(const QuadratureOptions& opt) : opt_(opt) {
    const int n = half_nodes(opt);
    for (double c = -19.75; c <= 19.75 + 1e-9; c += 0.5) {
        if (c == 0.25 || c == -0.25) {
            bands_.push_back({c, {}, {}});
            continue;
        }
        Band b{c, std::vector<double>(2 * n + 1), std::vector<double>(2 * n + 1)};
        for (int j = -n; j <= n; ++j) {
            const cplx g = hb_ghat(cplx(c, j * opt.step)) * (opt.step / (2.0 * kPi));
            b.re[j + n] = g.real();
            b.im[j + n] = g.imag();
        }
        bands_.push_back(std::move(b));
    }
}

const HbKernelTable::Band& HbKernelTable::band_for(double log_x) const {
    const double c = opt_.line ? *opt_.line : saddle_line(log_x);
    const auto idx = static_cast<std::size_t>(std::lround((c + 19.75) / 0.5));
    if (idx >= bands_.size() || bands_[idx].re.empty() || bands_[idx].c != c)
        throw DomainError("hb kernel table: requested line is not tabulated");
    return bands_[idx];
}

cplx HbKernelTable::operator()(double x) const {
    if (!(x > 0.0)) throw DomainError("hb kernel: x must be positive");
    const double lx = std::log(x);
    const cplx phase = std::exp(kI * x - kI * (kPi / 4.0));
    if (lx < -kLogCap) return phase * std::sqrt(kPi);
    if (lx > kLogCap) return 0.0;
    const Band& b = band_for(lx);
    const int n = static_cast<int>(b.re.size() / 2);
    const double th = opt_.step * lx;
    const double rc = std::cos(th), rs = -std::sin(th);
    double wr = std::cos(n * th), wi = std::sin(n * th);
    double sr = 0, si = 0;
    const std::size_t m = b.re.size();
    for (std::size_t j = 0; j < m; ++j) {
        sr += b.re[j] * wr - b.im[j] * wi;
        si += b.re[j] * wi + b.im[j] * wr;
        const double nr = wr * rc - wi * rs;
        wi = wr * rs + wi * rc;
        wr = nr;
    }
    cplx v = std::exp(-b.c * lx) * cplx(sr, si);
    if (b.c < 0) v += std::sqrt(kPi);
    return phase * v;
}

cplx contour_residue(const std::function<cplx(cplx)>& f, cplx center, double radius, int nodes) {
    cplx sum = 0;
    for (int k = 0; k < nodes; ++k) {
        const cplx z = radius * std::exp(kI * (2.0 * kPi * k / nodes));
        sum += f(center + z) * z;
    }
    return sum / static_cast<double>(nodes);
}

}  // namespace dmom
