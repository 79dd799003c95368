#pragma once

#include <complex>
#include <vector>

// Walk-coin construction for quantum random walk search.
//
// The traversing coin is circulant-symmetric: one value a on the main
// diagonal, one value b everywhere else. Such a coin is realized by a
// single generalized Householder reflection about the equal-weight
// superposition, times a global phase:
//
//   C(phi, zeta) = e^{i zeta} (I - (1 - e^{i phi}) |chi><chi|)
//
// which gives a = e^{i zeta}(1 + (-1 + e^{i phi})/m) and
// b = e^{i zeta}(-1 + e^{i phi})/m.

namespace qrws {

using cplx = std::complex<double>;

struct CoinSpec {
    double phi = 0.0;
    double zeta = 0.0;
    int m = 2;  // coin dimension, power of two
};

// Dense m x m coin matrix, row-major.
struct CoinMatrix {
    int m = 0;
    std::vector<cplx> entries;

    cplx at(int row, int col) const { return entries[static_cast<size_t>(row) * m + col]; }
    cplx& at(int row, int col) { return entries[static_cast<size_t>(row) * m + col]; }

    // True if every diagonal entry equals `diag` and every off-diagonal
    // entry equals `off` within tol.
    bool is_circulant_symmetric(double tol = 1e-12) const;
    cplx diagonal_value() const { return at(0, 0); }
    cplx offdiagonal_value() const { return m > 1 ? at(0, 1) : cplx{}; }
};

// Polar decomposition of the circulant coin entries, using the convention
// a = |a| exp(-i phase_a), b = |b| exp(-i phase_b).
struct CoinElements {
    double a_mod = 0.0;
    double a_phase = 0.0;
    double b_mod = 0.0;
    double b_phase = 0.0;
    double delta = 0.0;      // phase_a - phase_b
    bool degenerate = false; // b == 0, b_phase meaningless (set to 0)
};

bool is_power_of_two(int m);

// e^{i zeta} Householder coin; throws std::invalid_argument on bad m.
CoinMatrix build_householder_coin(const CoinSpec& spec);

// Grover coin: diagonal -1 + 2/m, off-diagonal 2/m.
CoinMatrix grover_coin(int m);

// Marking coin -I.
CoinMatrix marking_coin(int m);

// Closed-form moduli and phases of the Householder coin entries.
CoinElements coin_elements_analytic(const CoinSpec& spec);

// Moduli |a|, |b| of a unitary circulant coin from the phase difference
// delta = phase_a - phase_b. Requires m > 2 and cos(delta) <= 0.
struct Moduli {
    double a_mod;
    double b_mod;
};
Moduli moduli_from_delta(int m, double delta);

// Inverse of the above: delta in [pi/2, pi] from the moduli.
double delta_from_moduli(int m, double a_mod, double b_mod);

// max entrywise |C C^dagger - I|.
double verify_unitary(const CoinMatrix& matrix);

}  // namespace qrws
