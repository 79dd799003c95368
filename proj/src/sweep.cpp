#include "qrws/sweep.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "qrws/walk.hpp"

namespace qrws {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// splitmix64 finalizer; the stream for sample j is keyed by (seed, j, draw).
std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double uniform_angle(std::uint64_t seed, std::uint64_t index, std::uint64_t draw) {
    const std::uint64_t x = mix64(mix64(seed) ^ mix64(index * 2 + draw + 1));
    return kTwoPi * double(x >> 11) * 0x1.0p-53;
}

int k_best_window(int n) {
    const int m = 1 << n;
    const long double period =
        std::numbers::pi_v<long double> * std::sqrt(std::exp2((long double)(m - 1)));
    return int(std::ceil(period - 1e-9L));
}

SweepRecord evaluate(int n, double phi, double zeta, const GenerateOptions& options) {
    SweepRecord rec;
    rec.phi = phi;
    rec.zeta = zeta;
    rec.n = n;
    rec.k_eq1 = k_iterations(n);
    RunOptions run_opt;
    run_opt.max_coin_qubits = options.max_coin_qubits;
    if (options.with_k_best) {
        const int window = k_best_window(n);
        run_opt.steps = window;
        run_opt.record_history = true;
        const RunResult r = run(n, phi, zeta, {0}, run_opt);
        const auto best = std::max_element(r.history.begin(), r.history.end());
        rec.k_best = int(best - r.history.begin());
        rec.p = r.history[static_cast<size_t>(rec.k_eq1)];
    } else {
        rec.p = run(n, phi, zeta, {0}, run_opt).probability;
    }
    return rec;
}

void parallel_fill(std::vector<SweepRecord>& records, int workers,
                   const std::function<SweepRecord(std::uint64_t)>& make) {
    const std::uint64_t count = records.size();
    if (workers <= 1 || count < 2) {
        for (std::uint64_t j = 0; j < count; ++j) records[j] = make(j);
        return;
    }
    std::vector<std::thread> pool;
    const int used = std::min<std::uint64_t>(workers, count);
    for (int w = 0; w < used; ++w) {
        pool.emplace_back([&, w] {
            for (std::uint64_t j = w; j < count; j += used) records[j] = make(j);
        });
    }
    for (auto& t : pool) t.join();
}

void validate_record(const SweepRecord& rec, const std::string& context) {
    if (!(rec.p >= 0.0 && rec.p <= 1.0))
        throw std::runtime_error(context + ": probability outside [0, 1]");
    if (rec.n < 1) throw std::runtime_error(context + ": invalid qubit count");
    if (rec.k_eq1 != k_iterations(rec.n))
        throw std::runtime_error(context + ": k_eq1 does not match the iteration count");
    if (rec.k_best && (*rec.k_best < 0 || *rec.k_best > k_best_window(rec.n)))
        throw std::runtime_error(context + ": k_best outside the search window");
}

}  // namespace

Dataset generate(int n, std::uint64_t samples, std::uint64_t seed,
                 const GenerateOptions& options) {
    if (samples < 1) throw std::invalid_argument("sample count must be >= 1");
    if (options.workers < 1) throw std::invalid_argument("worker count must be >= 1");
    Dataset ds;
    ds.meta = {n, samples, seed, 1};
    ds.records.resize(samples);
    parallel_fill(ds.records, options.workers, [&](std::uint64_t j) {
        const double phi = uniform_angle(seed, j, 0);
        const double zeta = uniform_angle(seed, j, 1);
        return evaluate(n, phi, zeta, options);
    });
    return ds;
}

Dataset grid(int n, int resolution, const GenerateOptions& options) {
    if (resolution < 2) throw std::invalid_argument("grid resolution must be >= 2");
    Dataset ds;
    const std::uint64_t count = std::uint64_t(resolution) * resolution;
    ds.meta = {n, count, 0, 1};
    ds.records.resize(count);
    parallel_fill(ds.records, options.workers, [&](std::uint64_t j) {
        const int zi = int(j) / resolution;  // zeta outer, phi inner
        const int pi_ = int(j) % resolution;
        const double phi = kTwoPi * pi_ / (resolution - 1);
        const double zeta = kTwoPi * zi / (resolution - 1);
        return evaluate(n, phi, zeta, options);
    });
    return ds;
}

void save_csv(const Dataset& dataset, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << "phi,zeta,n,p,k_eq1,k_best\n";
    char buf[128];
    for (const SweepRecord& r : dataset.records) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%d,%.17g,%d,", r.phi, r.zeta, r.n, r.p,
                      r.k_eq1);
        out << buf;
        if (r.k_best) out << *r.k_best;
        out << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

Dataset load_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error(path + ": empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "phi,zeta,n,p,k_eq1,k_best")
        throw std::runtime_error(path + ": missing or malformed header");

    Dataset ds;
    std::uint64_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        if (line.back() == ',') fields.push_back("");
        const std::string context = path + ":" + std::to_string(lineno);
        if (fields.size() != 6) throw std::runtime_error(context + ": expected 6 fields");

        auto parse_double = [&](const std::string& s) {
            double v = 0.0;
            auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
            if (ec != std::errc{} || ptr != s.data() + s.size())
                throw std::runtime_error(context + ": bad number '" + s + "'");
            return v;
        };
        auto parse_int = [&](const std::string& s) {
            int v = 0;
            auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
            if (ec != std::errc{} || ptr != s.data() + s.size())
                throw std::runtime_error(context + ": bad integer '" + s + "'");
            return v;
        };

        SweepRecord rec;
        rec.phi = parse_double(fields[0]);
        rec.zeta = parse_double(fields[1]);
        rec.n = parse_int(fields[2]);
        rec.p = parse_double(fields[3]);
        rec.k_eq1 = parse_int(fields[4]);
        if (!fields[5].empty()) rec.k_best = parse_int(fields[5]);
        validate_record(rec, context);
        if (!ds.records.empty() && rec.n != ds.records.front().n)
            throw std::runtime_error(context + ": mixed qubit counts in one dataset");
        ds.records.push_back(rec);
    }
    if (ds.records.empty()) throw std::runtime_error(path + ": no data rows");
    ds.meta.n = ds.records.front().n;
    ds.meta.samples = ds.records.size();
    return ds;
}

}  // namespace qrws
