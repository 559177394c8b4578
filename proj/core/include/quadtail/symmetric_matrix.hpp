#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace quadtail {

// Dense symmetric matrix, row-major. Construction symmetrizes, so
// entries[i][j] == entries[j][i] holds exactly afterwards.
class SymmetricMatrix {
public:
    // raw is a flat row-major n*n array; stored as (raw + raw^T)/2.
    SymmetricMatrix(std::size_t n, std::vector<double> raw);

    static SymmetricMatrix identity(std::size_t n);
    static SymmetricMatrix diagonal(const std::vector<double>& diag);

    std::size_t n() const { return n_; }
    double operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
    const std::vector<double>& data() const { return a_; }

    double trace() const;
    double frobenius() const;

private:
    std::size_t n_;
    std::vector<double> a_;
};

SymmetricMatrix symmetrize(std::size_t n, const std::vector<double>& raw);

// Plain CSV: n rows of n comma-separated reals. Asymmetric input is accepted
// and symmetrized; a warning goes to `warn` (pass nullptr to silence).
SymmetricMatrix load_matrix_csv(const std::string& path, std::ostream* warn);

} // namespace quadtail
