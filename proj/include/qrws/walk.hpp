#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "qrws/coin.hpp"

// State-vector simulation of quantum random walk search on the hypercube.
//
// The state lives on (coin direction, node) pairs: amplitude index
// i * 2^m + x for direction i in [0, m) and node x in [0, 2^m), with
// m = 2^n directions for an n-qubit coin register. One iteration applies
// the conditional coin (marking coin on marked nodes, walk coin elsewhere)
// followed by the shift |i, x> -> |i, x ^ (1 << i)>.

namespace qrws {

struct WalkState {
    int n = 0;                 // coin qubits
    int m = 0;                 // coin dimension 2^n
    std::uint64_t node_count = 0;  // 2^m
    std::vector<cplx> amplitudes;  // length m * node_count
    std::set<std::uint64_t> marked;

    double norm_squared() const;
};

struct RunResult {
    double probability = 0.0;
    int steps = 0;
    double final_norm = 1.0;      // squared norm of the final state
    std::vector<double> history;  // per-iteration probabilities when requested
};

// Largest n the simulator accepts by default (state of 2^20 amplitudes).
inline constexpr int kDefaultMaxCoinQubits = 4;

WalkState init_uniform(int n, const std::set<std::uint64_t>& marked,
                       int max_coin_qubits = kDefaultMaxCoinQubits);

// ceil((pi/2) sqrt(2^{m-1})) with m = 2^n, guarded against spurious
// round-up when the radicand sits within 1e-9 of an integer.
int k_iterations(int n);

bool is_marked(const WalkState& state, std::uint64_t x);

// Multiplies each node's direction vector by c0 (unmarked) or c1 (marked).
void apply_conditional_coin(WalkState& state, const CoinMatrix& c0, const CoinMatrix& c1);

// Hypercube shift; an involution.
void apply_shift(WalkState& state);

// One iteration: conditional coin, then shift.
void step(WalkState& state, const CoinMatrix& c0, const CoinMatrix& c1);

double success_probability(const WalkState& state);

struct RunOptions {
    std::optional<int> steps;      // default k_iterations(n)
    bool record_history = false;
    int max_coin_qubits = kDefaultMaxCoinQubits;
};

// Full algorithm: uniform init, Householder walk coin, -I marking coin.
RunResult run(int n, double phi, double zeta, const std::set<std::uint64_t>& marked,
              const RunOptions& options = {});

// Probability after 0, 1, ..., k_max iterations (length k_max + 1).
std::vector<double> scan_iterations(int n, double phi, double zeta,
                                    const std::set<std::uint64_t>& marked, int k_max);

// Dense matrix of one iteration, built entrywise (no reuse of the stepper);
// brute-force oracle for tests. Only n <= 2 (dimension <= 64).
std::vector<cplx> build_full_operator(int n, double phi, double zeta,
                                      const std::set<std::uint64_t>& marked);

}  // namespace qrws
