#include "claw/sobolev.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "claw/errors.hpp"
#include "claw/parallel.hpp"

namespace claw {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kDivergence = 1e12;

// ||u(. + s) - u||_1
double shift_difference(const PLFunction& u, double s) {
    return l1_norm(subtract(translate(u, -s), u));
}

// Breakpoints in s of the shift difference: node gaps, capped for big inputs.
std::vector<double> shift_breaks(const PLFunction& u) {
    const auto& nd = u.nodes();
    const double w = u.width();
    std::vector<double> b{0.0, w};
    if (nd.size() <= 256) {
        for (std::size_t i = 0; i < nd.size(); ++i)
            for (std::size_t j = i + 1; j < nd.size(); ++j) b.push_back(nd[j].x - nd[i].x);
    } else {
        // geometric near zero, uniform beyond
        double gap = w;
        for (std::size_t i = 1; i < nd.size(); ++i) gap = std::min(gap, nd[i].x - nd[i - 1].x);
        for (double s = gap; s < w / 1024.0; s *= 2.0) b.push_back(s);
        for (int i = 1; i < 1024; ++i) b.push_back(w * i / 1024.0);
    }
    std::sort(b.begin(), b.end());
    std::vector<double> out;
    for (double s : b)
        if (s >= 0.0 && s <= w && (out.empty() || s - out.back() > 1e-14 * w)) out.push_back(s);
    if (out.back() < w) out.push_back(w);
    return out;
}

}  // namespace

double Mollifier::shape(double s) {
    return std::abs(s) >= 1.0 ? 0.0 : 0.5 * (1.0 + std::cos(kPi * s));
}

double Mollifier::shape_derivative(double s) {
    return std::abs(s) >= 1.0 ? 0.0 : -0.5 * kPi * std::sin(kPi * s);
}

double w_alpha1_seminorm(const PLFunction& u, double alpha, double tol) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("w_alpha1_seminorm: alpha in (0, 1)");
    if (!(tol > 0.0)) throw std::domain_error("w_alpha1_seminorm: tol must be positive");
    if (u.is_zero()) return 0.0;
    const double w = u.width();
    const double tv = total_variation(u);
    const double beta = 1.0 - alpha;
    // Below half the smallest node gap every local pattern of the shift
    // difference scales with s, so D(s)/s is affine there; interpolating
    // avoids shifts lost to rounding.
    const auto& nd = u.nodes();
    double s_lin = w;
    for (std::size_t i = 1; i < nd.size(); ++i) s_lin = std::min(s_lin, nd[i].x - nd[i - 1].x);
    s_lin *= 0.5;
    const double q_lin = shift_difference(u, s_lin) / s_lin;
    // s^{-alpha} ds = dr / beta with r = s^beta
    auto integrand = [&](double r) {
        const double s = std::pow(r, 1.0 / beta);
        if (s < s_lin) return (tv + (q_lin - tv) * s / s_lin) / beta;
        return shift_difference(u, s) / s / beta;
    };
    std::vector<double> br = shift_breaks(u);
    br.insert(std::upper_bound(br.begin(), br.end(), s_lin), s_lin);
    using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
    const std::vector<double> parts = parallel_map(br.size() - 1, [&](std::size_t i) {
        const double a = std::pow(br[i], beta), b = std::pow(br[i + 1], beta);
        return GK::integrate(integrand, a, b, 12, 0.1 * tol);
    });
    double near = 0.0;
    for (double p : parts) near += p;
    // for s >= width the shifts are disjoint: difference = 2 ||u||_1
    const double far = 2.0 * l1_norm(u) * std::pow(w, -alpha) / alpha;
    const double value = 2.0 * (near + far);
    return value > kDivergence ? INFINITY : value;
}

double w_alpha1_norm(const PLFunction& u, double alpha, double tol) {
    return l1_norm(u) + w_alpha1_seminorm(u, alpha, tol);
}

double mollify_at(const PLFunction& u, double h, double x) {
    if (!(h > 0.0)) throw std::domain_error("mollify: h must be positive");
    const auto& nd = u.nodes();
    if (nd.size() < 2) return 0.0;
    // antiderivative of (c0 + c1 s) (1 + cos(pi s)) / 2
    auto F = [](double c0, double c1, double s) {
        const double sn = std::sin(kPi * s) / kPi, cs = std::cos(kPi * s) / (kPi * kPi);
        return 0.5 * c0 * (s + sn) + 0.5 * c1 * (0.5 * s * s + s * sn + cs);
    };
    auto first = std::upper_bound(nd.begin(), nd.end(), x - h,
                                  [](double v, const Node& n) { return v < n.x; });
    std::size_t i = first == nd.begin() ? 0 : static_cast<std::size_t>(first - nd.begin()) - 1;
    double acc = 0.0;
    for (; i + 1 < nd.size() && nd[i].x < x + h; ++i) {
        const double p = nd[i].x, q = nd[i + 1].x;
        if (q <= p) continue;
        const double b = (nd[i + 1].left - nd[i].right) / (q - p);
        const double a = nd[i].right - b * p;
        const double lo = std::max((p - x) / h, -1.0), hi = std::min((q - x) / h, 1.0);
        if (hi <= lo) continue;
        const double c0 = a + b * x, c1 = b * h;
        acc += F(c0, c1, hi) - F(c0, c1, lo);
    }
    return acc;
}

PLFunction mollify(const PLFunction& u, double h) {
    if (!(h > 0.0)) throw std::domain_error("mollify: h must be positive");
    if (u.is_zero()) return {};
    const Interval hull = u.support_hull();
    const double lo = hull.lo - h, hi = hull.hi + h;
    const double step = h / 64.0;
    const double count = std::ceil((hi - lo) / step);
    if (count > 2e7) throw ResourceError("mollify: grid of " + std::to_string(count) + " points");
    const std::size_t n = static_cast<std::size_t>(count);
    const std::vector<double> vals = parallel_map(n + 1, [&](std::size_t i) {
        if (i == 0 || i == n) return 0.0;
        return mollify_at(u, h, lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n));
    });
    std::vector<Node> nodes(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        const double x = i == n ? hi : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n);
        nodes[i] = {x, vals[i], vals[i]};
    }
    return PLFunction(std::move(nodes));
}

double holder_seminorm_estimate(const PLFunction& u, double sigma) {
    if (!(sigma > 0.0 && sigma < 1.0)) throw std::domain_error("holder_seminorm_estimate: sigma in (0, 1)");
    const auto& nd = u.nodes();
    if (nd.empty()) return 0.0;
    for (const Node& n : nd)
        if (n.left != n.right) return INFINITY;
    double best = 0.0;
    for (std::size_t i = 0; i + 1 < nd.size(); ++i) {
        const double len = nd[i + 1].x - nd[i].x;
        if (len > 0.0) best = std::max(best, std::abs(nd[i + 1].left - nd[i].right) * std::pow(len, -sigma));
    }
    const std::size_t reach = nd.size() <= 4096 ? nd.size() : 256;
    const std::vector<double> rows = parallel_map(nd.size(), [&](std::size_t i) {
        double r = 0.0;
        for (std::size_t j = i + 1; j < nd.size() && j <= i + reach; ++j) {
            const double d = nd[j].x - nd[i].x;
            if (d > 0.0) r = std::max(r, std::abs(nd[j].right - nd[i].right) * std::pow(d, -sigma));
        }
        return r;
    });
    for (double r : rows) best = std::max(best, r);
    return best;
}

}  // namespace claw
