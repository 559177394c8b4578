#pragma once

#include <vector>

#include "quadtail/spectral.hpp"
#include "quadtail/symmetric_matrix.hpp"

namespace testmat {

// 3x3 positive-semidefinite reference matrix used throughout the suites.
inline quadtail::SymmetricMatrix psd3() {
    return quadtail::SymmetricMatrix(3, {3.2504, -2.0401, 1.9337,
                                         -2.0401, 2.0554, 0.3603,
                                         1.9337, 0.3603, 4.5310});
}

// 3x3 indefinite reference matrix (two negative eigenvalues, one positive).
inline quadtail::SymmetricMatrix indef3() {
    return quadtail::SymmetricMatrix(3, {-0.5352, 0.1436, -0.2132,
                                         0.1436, -2.1746, -0.3521,
                                         -0.2132, -0.3521, -0.0571});
}

inline quadtail::SpectralSummary psd3_summary() {
    return quadtail::spectral_summary(psd3());
}

inline quadtail::SpectralSummary indef3_summary() {
    return quadtail::spectral_summary(indef3());
}

} // namespace testmat
