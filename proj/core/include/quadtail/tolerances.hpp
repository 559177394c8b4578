#pragma once

namespace quadtail {

// Every knob in one place so the CLI can override them uniformly.
struct Tolerances {
    double root_tol     = 1e-12; // bracketing root finder
    double minimize_tol = 1e-10; // golden-section argument tolerance
    double series_tol   = 1e-15; // per-step convergence for series / continued fractions
};

inline const Tolerances& default_tolerances() {
    static const Tolerances t{};
    return t;
}

} // namespace quadtail
