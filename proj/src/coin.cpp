#include "qrws/coin.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qrws {

namespace {

void check_dimension(int m, bool require_power_of_two = true) {
    if (m < 2) throw std::invalid_argument("coin dimension must be >= 2");
    if (require_power_of_two && !is_power_of_two(m))
        throw std::invalid_argument("coin dimension must be a power of two");
}

CoinMatrix circulant(int m, cplx diag, cplx off) {
    CoinMatrix c;
    c.m = m;
    c.entries.assign(static_cast<size_t>(m) * m, off);
    for (int j = 0; j < m; ++j) c.at(j, j) = diag;
    return c;
}

}  // namespace

bool is_power_of_two(int m) { return m > 0 && (m & (m - 1)) == 0; }

bool CoinMatrix::is_circulant_symmetric(double tol) const {
    const cplx diag = at(0, 0);
    const cplx off = m > 1 ? at(0, 1) : cplx{};
    for (int j = 0; j < m; ++j)
        for (int k = 0; k < m; ++k) {
            const cplx want = (j == k) ? diag : off;
            if (std::abs(at(j, k) - want) > tol) return false;
        }
    return true;
}

CoinMatrix build_householder_coin(const CoinSpec& spec) {
    check_dimension(spec.m);
    const cplx phase = std::polar(1.0, spec.zeta);
    const cplx reach = (cplx{-1.0, 0.0} + std::polar(1.0, spec.phi)) / double(spec.m);
    return circulant(spec.m, phase * (1.0 + reach), phase * reach);
}

CoinMatrix grover_coin(int m) {
    check_dimension(m);
    return circulant(m, cplx{-1.0 + 2.0 / m, 0.0}, cplx{2.0 / m, 0.0});
}

CoinMatrix marking_coin(int m) {
    check_dimension(m, /*require_power_of_two=*/false);
    return circulant(m, cplx{-1.0, 0.0}, cplx{0.0, 0.0});
}

CoinElements coin_elements_analytic(const CoinSpec& spec) {
    check_dimension(spec.m);
    const double m = spec.m;
    const double phi = spec.phi;
    const double zeta = spec.zeta;

    CoinElements e;
    e.a_mod = std::sqrt(2.0 + (m - 2.0) * m + 2.0 * (m - 1.0) * std::cos(phi)) / m;
    e.b_mod = std::sqrt(2.0 * (1.0 - std::cos(phi))) / m;

    // Phases from the trigonometric expansion of the entries; two-argument
    // arctangent resolves the branch. Convention a = |a| exp(-i phase_a).
    const double re_a = (m - 1.0) * std::cos(zeta) + std::cos(phi + zeta);
    const double im_a = (m - 1.0) * std::sin(zeta) + std::sin(phi + zeta);
    e.a_phase = -std::atan2(im_a, re_a);

    if (e.b_mod < 1e-12) {
        e.degenerate = true;
        e.b_phase = 0.0;
    } else {
        const double re_b = -std::cos(zeta) + std::cos(phi + zeta);
        const double im_b = -std::sin(zeta) + std::sin(phi + zeta);
        e.b_phase = -std::atan2(im_b, re_b);
    }
    e.delta = e.a_phase - e.b_phase;
    return e;
}

Moduli moduli_from_delta(int m, double delta) {
    if (m <= 2) throw std::invalid_argument("moduli_from_delta requires m > 2");
    double c = std::cos(delta);
    if (c > 0.0 && c < 1e-12) c = 0.0;  // delta = pi/2 up to rounding
    if (c > 0.0) throw std::invalid_argument("cos(delta) must be <= 0");
    const double md = m;
    Moduli r;
    r.a_mod = (md - 2.0) /
              std::sqrt(2.0 + (md - 2.0) * md + 2.0 * (md - 1.0) * std::cos(2.0 * delta));
    r.b_mod = -2.0 * c / std::sqrt((md - 2.0) * (md - 2.0) + 4.0 * (md - 1.0) * c * c);
    return r;
}

double delta_from_moduli(int m, double a_mod, double b_mod) {
    if (m < 2) throw std::invalid_argument("coin dimension must be >= 2");
    if (a_mod <= 0.0 || b_mod <= 0.0)
        throw std::invalid_argument("moduli must be positive");
    const double arg = -(double(m) - 2.0) * b_mod / (2.0 * a_mod);
    if (arg < -1.0 || arg > 1.0)
        throw std::invalid_argument("moduli outside arccos domain");
    return std::acos(arg);  // in [pi/2, pi] since arg <= 0
}

double verify_unitary(const CoinMatrix& matrix) {
    const int m = matrix.m;
    double worst = 0.0;
    for (int j = 0; j < m; ++j)
        for (int k = 0; k < m; ++k) {
            cplx acc{0.0, 0.0};
            for (int l = 0; l < m; ++l)
                acc += matrix.at(j, l) * std::conj(matrix.at(k, l));
            if (j == k) acc -= 1.0;
            worst = std::max(worst, std::abs(acc));
        }
    return worst;
}

}  // namespace qrws
