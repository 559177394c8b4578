#pragma once

#include <cstddef>
#include <vector>

#include "quadtail/symmetric_matrix.hpp"

namespace quadtail {

// Eigenvalues of m, sorted non-increasing. Cyclic Jacobi; each eigenpair is
// validated against ||A v - lambda v|| <= 1e-9 ||A|| before the vectors are
// discarded. Throws numerical_error if 100 sweeps do not converge.
std::vector<double> eigendecompose(const SymmetricMatrix& m);

// Eigenvalues plus every norm the tail bounds consume.
struct SpectralSummary {
    std::size_t n = 0;
    std::vector<double> eigenvalues; // descending
    double alpha = 0;                // operator norm, max |lambda_i|
    double beta = 0;                 // squared Hilbert-Schmidt norm, sum lambda_i^2
    double gamma = 0;                // sum |lambda_i|^3
    double trace = 0;
    double lambda_max = 0;           // largest signed eigenvalue
    bool is_psd = false;             // all lambda_i >= -1e-10*alpha

    // (sum |lambda_i|^p)^(1/p), p >= 1. Factored through max|lambda| so
    // large p cannot overflow.
    double schatten(int p) const;

    static SpectralSummary from_eigenvalues(std::vector<double> eigs);
};

SpectralSummary spectral_summary(const SymmetricMatrix& m);

} // namespace quadtail
