#include "qrws/ridge.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qrws/walk.hpp"

namespace qrws {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;

double wrap_angle(double x) {
    double r = std::fmod(x, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    return r;
}

double central_branch(double phi) { return -2.0 * phi + 3.0 * kPi; }

// Golden-section maximization of f over [lo, hi] to the given tolerance.
double golden_section(const std::function<double(double)>& f, double lo, double hi,
                      double tol) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

}  // namespace

double curve_zeta(const CurveSpec& spec, double phi) {
    double zeta = 0.0;
    switch (spec.kind) {
        case CurveKind::Line32: zeta = -2.0 * phi + kPi + 2.0 * spec.k * kPi; break;
        case CurveKind::Line33: zeta = 0.5 * phi + 0.5 * kPi; break;
        case CurveKind::Line34: zeta = kPi; break;
        case CurveKind::Sine:
            zeta = central_branch(phi) + spec.alpha * std::sin(2.0 * phi);
            break;
    }
    return wrap_angle(zeta);
}

PEvaluator simulator_evaluator(int n, int max_coin_qubits) {
    RunOptions opt;
    opt.max_coin_qubits = max_coin_qubits;
    return [n, opt](double phi, double zeta) {
        return run(n, phi, zeta, {0}, opt).probability;
    };
}

PEvaluator model_evaluator(const MlpModel& model, int n) {
    const std::optional<int> qubits =
        (model.input_dim == 3) ? std::optional<int>(n) : std::nullopt;
    return [&model, qubits](double phi, double zeta) {
        return predict_p(model, phi, zeta, qubits);
    };
}

std::vector<RidgePoint> extract_ridge(const PEvaluator& evaluator, int grid_size) {
    if (grid_size < 8) throw std::invalid_argument("ridge grid must have >= 8 points");
    constexpr int kCoarse = 256;
    std::vector<RidgePoint> ridge;
    ridge.reserve(grid_size);
    for (int j = 0; j < grid_size; ++j) {
        const double phi = kTwoPi * j / (grid_size - 1);
        const double center = central_branch(phi);
        const double lo = center - kPi / 2.0;
        const double hi = center + kPi / 2.0;

        auto p_at = [&](double zeta_unwrapped) {
            return evaluator(phi, wrap_angle(zeta_unwrapped));
        };

        double best_zeta = lo;
        double best_p = -1.0;
        for (int s = 0; s < kCoarse; ++s) {
            const double z = lo + (hi - lo) * s / (kCoarse - 1);
            const double p = p_at(z);
            if (p > best_p) {
                best_p = p;
                best_zeta = z;
            }
        }
        const double half = (hi - lo) / (kCoarse - 1);
        const double refined = golden_section(p_at, std::max(lo, best_zeta - half),
                                              std::min(hi, best_zeta + half), 1e-4);
        ridge.push_back({phi, refined, p_at(refined)});
    }
    return ridge;
}

AlphaFit fit_alpha(const std::vector<RidgePoint>& ridge) {
    if (ridge.size() < 3) throw std::invalid_argument("alpha fit needs >= 3 ridge points");
    // Only the high-probability portion of the ridge is fitted. Where the
    // success probability collapses (e.g. near phi = 0, where the coin is
    // the identity and p is flat in zeta) the per-phi argmax is noise and
    // would drag the coefficient far off.
    double p_max = 0.0;
    for (const RidgePoint& pt : ridge) p_max = std::max(p_max, pt.p);
    const double p_cut = 0.9 * p_max;

    double num = 0.0, den = 0.0;
    std::size_t used = 0;
    for (const RidgePoint& pt : ridge) {
        if (pt.p < p_cut) continue;
        const double s = std::sin(2.0 * pt.phi);
        if (std::abs(s) < 1e-6) continue;
        const double r = pt.zeta_unwrapped - central_branch(pt.phi);
        num += r * s;
        den += s * s;
        ++used;
    }
    if (den < 1e-12)
        throw std::invalid_argument("every usable ridge point is at a degenerate phi");
    AlphaFit fit;
    fit.alpha = num / den;
    double acc = 0.0;
    std::size_t counted = 0;
    for (const RidgePoint& pt : ridge) {
        if (pt.p < p_cut) continue;
        const double r = pt.zeta_unwrapped - central_branch(pt.phi);
        const double e = r - fit.alpha * std::sin(2.0 * pt.phi);
        acc += e * e;
        ++counted;
    }
    fit.rms_residual = std::sqrt(acc / double(counted));
    return fit;
}

Profile profile(const PEvaluator& evaluator, const CurveSpec& spec, int grid_size) {
    if (grid_size < 2) throw std::invalid_argument("profile grid must have >= 2 points");
    Profile prof;
    prof.reserve(grid_size);
    for (int j = 0; j < grid_size; ++j) {
        const double phi = kTwoPi * j / (grid_size - 1);
        const double zeta = curve_zeta(spec, phi);
        prof.push_back({phi, zeta, evaluator(phi, zeta)});
    }
    return prof;
}

double stability_width(const Profile& prof, double fraction) {
    if (prof.size() < 2) throw std::invalid_argument("profile too short");
    if (!(fraction > 0.0 && fraction < 1.0))
        throw std::invalid_argument("fraction must lie in (0, 1)");

    std::size_t peak = 0;
    for (std::size_t j = 1; j < prof.size(); ++j)
        if (prof[j].p > prof[peak].p) peak = j;
    const double threshold = fraction * prof[peak].p;

    auto crossing = [&](std::size_t inside, std::size_t outside) {
        // linear interpolation of the phi where p crosses the threshold
        const double p_in = prof[inside].p, p_out = prof[outside].p;
        if (p_in == p_out) return prof[outside].phi;
        const double t = (p_in - threshold) / (p_in - p_out);
        return prof[inside].phi + t * (prof[outside].phi - prof[inside].phi);
    };

    double left = prof.front().phi;
    for (std::size_t j = peak; j > 0; --j) {
        if (prof[j - 1].p < threshold) {
            left = crossing(j, j - 1);
            break;
        }
    }
    double right = prof.back().phi;
    for (std::size_t j = peak; j + 1 < prof.size(); ++j) {
        if (prof[j + 1].p < threshold) {
            right = crossing(j, j + 1);
            break;
        }
    }
    return right - left;
}

}  // namespace qrws
