#pragma once

#include <functional>
#include <vector>

#include "qrws/mlp.hpp"

// High-probability ridge analysis in the (phi, zeta) plane: the candidate
// zeta(phi) curves, ridge extraction by per-phi maximization, the
// least-squares fit of the sine correction coefficient, probability
// profiles along a curve, and the stability width of a profile.

namespace qrws {

enum class CurveKind {
    Line32,  // zeta = -2 phi + pi + 2 k pi
    Line33,  // zeta = phi / 2 + pi / 2
    Line34,  // zeta = pi
    Sine,    // zeta = -2 phi + 3 pi + alpha sin(2 phi)
};

struct CurveSpec {
    CurveKind kind = CurveKind::Line32;
    int k = 1;           // Line32 branch offset
    double alpha = 0.0;  // Sine coefficient

    static CurveSpec line32(int k) { return {CurveKind::Line32, k, 0.0}; }
    static CurveSpec line33() { return {CurveKind::Line33, 0, 0.0}; }
    static CurveSpec line34() { return {CurveKind::Line34, 0, 0.0}; }
    static CurveSpec sine(double alpha) { return {CurveKind::Sine, 0, alpha}; }
};

// Curve value wrapped into [0, 2pi).
double curve_zeta(const CurveSpec& spec, double phi);

struct RidgePoint {
    double phi = 0.0;
    double zeta_unwrapped = 0.0;  // on the continuous branch through (pi, pi)
    double p = 0.0;
};

struct AlphaFit {
    double alpha = 0.0;
    double rms_residual = 0.0;
};

struct ProfilePoint {
    double phi = 0.0;
    double zeta = 0.0;
    double p = 0.0;
};
using Profile = std::vector<ProfilePoint>;

// p(phi, zeta) for a fixed coin size; either the simulator or a model.
using PEvaluator = std::function<double(double phi, double zeta)>;

PEvaluator simulator_evaluator(int n, int max_coin_qubits = 4);
PEvaluator model_evaluator(const MlpModel& model, int n);

// For each phi on a uniform grid over [0, 2pi]: maximize p over zeta by a
// 256-point coarse scan within pi/2 of the central branch, refined by
// golden-section search to 1e-4 rad.
std::vector<RidgePoint> extract_ridge(const PEvaluator& evaluator, int grid_size);

// Closed-form least squares of zeta_unwrapped - (-2 phi + 3 pi) against
// alpha * sin(2 phi), restricted to ridge points with p >= 0.9 of the
// ridge maximum (the argmax is meaningless where the probability is flat).
AlphaFit fit_alpha(const std::vector<RidgePoint>& ridge);

Profile profile(const PEvaluator& evaluator, const CurveSpec& spec, int grid_size = 201);

// Length of the maximal contiguous phi interval around the profile maximum
// where p >= fraction * p_max (linear interpolation at the boundary).
double stability_width(const Profile& profile, double fraction);

}  // namespace qrws
