#include "claw/envelopes.hpp"

#include <algorithm>
#include <stdexcept>

namespace claw {

EnvelopeResult upper_rate_envelope(const PLFunction& f, double p) {
    if (!(p > 0.0)) throw std::domain_error("upper_rate_envelope: p must be > 0");
    EnvelopeResult res;
    if (f.empty()) return res;

    const auto& n = f.nodes();
    std::vector<Node> out;
    out.reserve(2 * n.size() + 1);

    // Either E = f ("following"), or E is the ray xa -> ea + p (x - xa).
    bool following = true;
    double xa = 0.0, ea = 0.0;
    double ray_start = 0.0;
    double contact = 0.0;
    auto ray = [&](double x) { return ea + p * (x - xa); };
    auto leave = [&](double x, double e) {
        following = false;
        xa = x;
        ea = e;
        ray_start = x;
    };
    auto rejoin = [&](double x) {
        contact += x - ray_start;
        following = true;
    };

    for (std::size_t i = 0; i < n.size(); ++i) {
        const double x = n[i].x;
        double el = n[i].left;
        if (!following) {
            const double r = ray(x);
            if (n[i].left <= r)
                rejoin(x);
            else
                el = r;
        }
        double er = el;
        if (n[i].right < el) {
            er = n[i].right;
            if (!following) rejoin(x);
        } else if (n[i].right > el) {
            if (following) leave(x, el);
        } else if (following) {
            er = n[i].right;
        }
        out.push_back({x, el, er});
        if (i + 1 == n.size()) break;

        const double x1 = n[i + 1].x;
        if (following) {
            if (f.slope(i) > p) leave(x, er);
            continue;
        }
        const double d0 = n[i].right - ray(x);
        const double d1 = n[i + 1].left - ray(x1);
        if (d1 < 0.0 && d0 > 0.0) {
            const double xc = x + (x1 - x) * d0 / (d0 - d1);
            if (xc > x && xc < x1) {
                const double fc = f.eval(xc);
                out.push_back({xc, fc, fc});
                rejoin(xc);
            }
        } else if (d0 <= 0.0 && f.slope(i) <= p) {
            rejoin(x);
        }
    }

    if (!following) {
        // past the support f = 0 while the ray is still below it
        const double xe = n.back().x;
        const double e = out.back().right;
        const double xz = xe - e / p;
        if (xz > xe) {
            out.push_back({xz, 0.0, 0.0});
            contact += xz - ray_start;
        } else {
            contact += xe - ray_start;
        }
    }
    out.back().right = 0.0;
    res.envelope = normalize(PLFunction(std::move(out)), 0.0);
    res.residual = subtract(f, res.envelope);
    res.contact_set_measure = contact;
    return res;
}

EnvelopeResult lower_rate_envelope(const PLFunction& f, double p) {
    if (!(p > 0.0)) throw std::domain_error("lower_rate_envelope: p must be > 0");
    EnvelopeResult r = upper_rate_envelope(reflect(f), p);
    r.envelope = reflect(r.envelope);
    r.residual = reflect(r.residual);
    return r;
}

}  // namespace claw
