#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

// Monte Carlo and regular-grid generation of (phi, zeta, n, p) datasets.
// Sampling uses a counter-based stream keyed by (seed, sample index), so
// the output is byte-identical regardless of the worker count.

namespace qrws {

struct SweepRecord {
    double phi = 0.0;   // [0, 2pi)
    double zeta = 0.0;  // [0, 2pi)
    int n = 0;
    double p = 0.0;               // probability at k_eq1 steps
    int k_eq1 = 0;                // the standard iteration count
    std::optional<int> k_best;    // argmax step within one period, if computed
};

struct DatasetMeta {
    int n = 0;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    int generator_version = 1;
};

struct Dataset {
    std::vector<SweepRecord> records;
    DatasetMeta meta;
};

struct GenerateOptions {
    int workers = 1;
    bool with_k_best = false;
    int max_coin_qubits = 4;
};

// `samples` random (phi, zeta) pairs uniform on [0, 2pi)^2, marked node {0}.
Dataset generate(int n, std::uint64_t samples, std::uint64_t seed,
                 const GenerateOptions& options = {});

// resolution x resolution regular grid over [0, 2pi]^2, zeta outer loop.
Dataset grid(int n, int resolution, const GenerateOptions& options = {});

// CSV with header phi,zeta,n,p,k_eq1,k_best (k_best empty when absent);
// values round-trip at 17 significant digits.
void save_csv(const Dataset& dataset, const std::string& path);
Dataset load_csv(const std::string& path);

}  // namespace qrws
