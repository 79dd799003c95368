#include "qrws/walk.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qrws {

namespace {

void check_coins(const WalkState& state, const CoinMatrix& c0, const CoinMatrix& c1) {
    if (c0.m != state.m || c1.m != state.m)
        throw std::invalid_argument("coin dimension does not match walk state");
}

}  // namespace

double WalkState::norm_squared() const {
    double acc = 0.0;
    for (const cplx& a : amplitudes) acc += std::norm(a);
    return acc;
}

WalkState init_uniform(int n, const std::set<std::uint64_t>& marked, int max_coin_qubits) {
    if (n < 1) throw std::invalid_argument("coin qubit count must be >= 1");
    if (n > max_coin_qubits)
        throw std::invalid_argument("state size exceeds the configured memory cap");
    WalkState s;
    s.n = n;
    s.m = 1 << n;
    s.node_count = std::uint64_t{1} << s.m;
    if (marked.empty()) throw std::invalid_argument("marked set must be nonempty");
    for (std::uint64_t x : marked)
        if (x >= s.node_count) throw std::invalid_argument("marked node out of range");
    s.marked = marked;
    const std::uint64_t dim = std::uint64_t(s.m) * s.node_count;
    s.amplitudes.assign(dim, cplx{1.0 / std::sqrt(double(dim)), 0.0});
    return s;
}

int k_iterations(int n) {
    if (n < 1) throw std::invalid_argument("coin qubit count must be >= 1");
    const int m = 1 << n;
    const long double raw =
        (std::numbers::pi_v<long double> / 2.0L) * std::sqrt(std::exp2((long double)(m - 1)));
    return int(std::ceil(raw - 1e-9L));
}

bool is_marked(const WalkState& state, std::uint64_t x) {
    if (x >= state.node_count) throw std::invalid_argument("node index out of range");
    return state.marked.count(x) != 0;
}

void apply_conditional_coin(WalkState& state, const CoinMatrix& c0, const CoinMatrix& c1) {
    check_coins(state, c0, c1);
    const int m = state.m;
    const std::uint64_t nodes = state.node_count;
    std::vector<cplx> old(state.amplitudes);

    // c0 everywhere, streamed over nodes per (i, j) entry.
    for (int i = 0; i < m; ++i) {
        cplx* dst = state.amplitudes.data() + std::uint64_t(i) * nodes;
        for (std::uint64_t x = 0; x < nodes; ++x) dst[x] = cplx{0.0, 0.0};
        for (int j = 0; j < m; ++j) {
            const cplx w = c0.at(i, j);
            const cplx* src = old.data() + std::uint64_t(j) * nodes;
            for (std::uint64_t x = 0; x < nodes; ++x) dst[x] += w * src[x];
        }
    }
    // Overwrite marked nodes with the c1 result.
    for (std::uint64_t x : state.marked) {
        for (int i = 0; i < m; ++i) {
            cplx acc{0.0, 0.0};
            for (int j = 0; j < m; ++j) acc += c1.at(i, j) * old[std::uint64_t(j) * nodes + x];
            state.amplitudes[std::uint64_t(i) * nodes + x] = acc;
        }
    }
}

void apply_shift(WalkState& state) {
    const std::uint64_t nodes = state.node_count;
    for (int i = 0; i < state.m; ++i) {
        const std::uint64_t bit = std::uint64_t{1} << i;
        cplx* row = state.amplitudes.data() + std::uint64_t(i) * nodes;
        for (std::uint64_t x = 0; x < nodes; ++x)
            if ((x & bit) == 0) std::swap(row[x], row[x | bit]);
    }
}

void step(WalkState& state, const CoinMatrix& c0, const CoinMatrix& c1) {
    apply_conditional_coin(state, c0, c1);
    apply_shift(state);
}

double success_probability(const WalkState& state) {
    const std::uint64_t nodes = state.node_count;
    double p = 0.0;
    for (std::uint64_t x : state.marked)
        for (int i = 0; i < state.m; ++i)
            p += std::norm(state.amplitudes[std::uint64_t(i) * nodes + x]);
    return p;
}

RunResult run(int n, double phi, double zeta, const std::set<std::uint64_t>& marked,
              const RunOptions& options) {
    WalkState state = init_uniform(n, marked, options.max_coin_qubits);
    const int steps = options.steps.value_or(k_iterations(n));
    if (steps < 0) throw std::invalid_argument("step count must be >= 0");

    const cplx phase = std::polar(1.0, zeta);
    const cplx reach = (cplx{-1.0, 0.0} + std::polar(1.0, phi)) / double(state.m);
    const cplx d0 = phase * (1.0 + reach);
    const cplx o0 = phase * reach;
    const cplx scale0 = d0 - o0;  // = e^{i zeta}

    const int m = state.m;
    const std::uint64_t nodes = state.node_count;

    RunResult result;
    result.steps = steps;
    if (options.record_history) result.history.push_back(success_probability(state));

    std::vector<cplx> colsum(nodes);
    for (int k = 0; k < steps; ++k) {
        // conditional coin: circulant c0 on unmarked, -I on marked
        std::fill(colsum.begin(), colsum.end(), cplx{0.0, 0.0});
        for (int i = 0; i < m; ++i) {
            const cplx* row = state.amplitudes.data() + std::uint64_t(i) * nodes;
            for (std::uint64_t x = 0; x < nodes; ++x) colsum[x] += row[x];
        }
        for (int i = 0; i < m; ++i) {
            cplx* row = state.amplitudes.data() + std::uint64_t(i) * nodes;
            for (std::uint64_t x = 0; x < nodes; ++x)
                row[x] = scale0 * row[x] + o0 * colsum[x];
        }
        for (std::uint64_t x : state.marked) {
            const cplx sum = colsum[x];
            for (int i = 0; i < m; ++i) {
                cplx* a = &state.amplitudes[std::uint64_t(i) * nodes + x];
                // revert the c0 write (original value recoverable from sum),
                // then negate: c1 = -I.
                const cplx original = (*a - o0 * sum) / scale0;
                *a = -original;
            }
        }
        apply_shift(state);
        if (options.record_history) result.history.push_back(success_probability(state));
    }
    result.probability = success_probability(state);
    result.final_norm = state.norm_squared();
    return result;
}

std::vector<double> scan_iterations(int n, double phi, double zeta,
                                    const std::set<std::uint64_t>& marked, int k_max) {
    if (k_max < 1) throw std::invalid_argument("k_max must be >= 1");
    RunOptions opt;
    opt.steps = k_max;
    opt.record_history = true;
    return run(n, phi, zeta, marked, opt).history;
}

std::vector<cplx> build_full_operator(int n, double phi, double zeta,
                                      const std::set<std::uint64_t>& marked) {
    if (n < 1 || n > 2)
        throw std::invalid_argument("full operator supported only for n <= 2");
    const int m = 1 << n;
    const std::uint64_t nodes = std::uint64_t{1} << m;
    for (std::uint64_t x : marked)
        if (x >= nodes) throw std::invalid_argument("marked node out of range");
    if (marked.empty()) throw std::invalid_argument("marked set must be nonempty");

    const CoinMatrix c0 = build_householder_coin({phi, zeta, m});
    const CoinMatrix c1 = marking_coin(m);

    // W = S * C_cond, assembled entrywise:
    //   W[(i, x), (j, y)] = delta(x ^ 2^i, y) * coin(y)[i][j]
    const std::uint64_t dim = std::uint64_t(m) * nodes;
    std::vector<cplx> w(dim * dim, cplx{0.0, 0.0});
    for (int i = 0; i < m; ++i) {
        const std::uint64_t bit = std::uint64_t{1} << i;
        for (std::uint64_t x = 0; x < nodes; ++x) {
            const std::uint64_t y = x ^ bit;
            const CoinMatrix& coin = marked.count(y) ? c1 : c0;
            const std::uint64_t row = std::uint64_t(i) * nodes + x;
            for (int j = 0; j < m; ++j)
                w[row * dim + std::uint64_t(j) * nodes + y] = coin.at(i, j);
        }
    }
    return w;
}

}  // namespace qrws
