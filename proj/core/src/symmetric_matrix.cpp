#include "quadtail/symmetric_matrix.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "quadtail/errors.hpp"

namespace quadtail {

SymmetricMatrix::SymmetricMatrix(std::size_t n, std::vector<double> raw) : n_(n) {
    if (n == 0) throw domain_error("matrix dimension must be >= 1");
    if (raw.size() != n * n)
        throw domain_error("matrix entries must form a square n*n array");
    for (double v : raw)
        if (!std::isfinite(v)) throw domain_error("matrix entries must be finite");
    a_.resize(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            a_[i * n + j] = 0.5 * (raw[i * n + j] + raw[j * n + i]);
}

SymmetricMatrix SymmetricMatrix::identity(std::size_t n) {
    std::vector<double> raw(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) raw[i * n + i] = 1.0;
    return SymmetricMatrix(n, std::move(raw));
}

SymmetricMatrix SymmetricMatrix::diagonal(const std::vector<double>& diag) {
    const std::size_t n = diag.size();
    std::vector<double> raw(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) raw[i * n + i] = diag[i];
    return SymmetricMatrix(n, std::move(raw));
}

double SymmetricMatrix::trace() const {
    double s = 0;
    for (std::size_t i = 0; i < n_; ++i) s += a_[i * n_ + i];
    return s;
}

double SymmetricMatrix::frobenius() const {
    double s = 0;
    for (double v : a_) s += v * v;
    return std::sqrt(s);
}

SymmetricMatrix symmetrize(std::size_t n, const std::vector<double>& raw) {
    return SymmetricMatrix(n, raw);
}

SymmetricMatrix load_matrix_csv(const std::string& path, std::ostream* warn) {
    std::ifstream in(path);
    if (!in) throw domain_error("cannot open matrix file: " + path);

    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            std::size_t pos = 0;
            double v;
            try {
                v = std::stod(cell, &pos);
            } catch (const std::exception&) {
                throw domain_error("bad matrix entry '" + cell + "' in " + path);
            }
            while (pos < cell.size() && std::isspace(static_cast<unsigned char>(cell[pos]))) ++pos;
            if (pos != cell.size())
                throw domain_error("bad matrix entry '" + cell + "' in " + path);
            row.push_back(v);
        }
        if (!row.empty()) rows.push_back(std::move(row));
    }
    if (rows.empty()) throw domain_error("matrix file is empty: " + path);
    const std::size_t n = rows.size();
    std::vector<double> raw;
    raw.reserve(n * n);
    for (const auto& row : rows) {
        if (row.size() != n)
            throw domain_error("matrix file is not square: " + path);
        raw.insert(raw.end(), row.begin(), row.end());
    }

    bool asym = false;
    double scale = 0;
    for (double v : raw) scale = std::max(scale, std::abs(v));
    for (std::size_t i = 0; i < n && !asym; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (std::abs(raw[i * n + j] - raw[j * n + i]) > 1e-12 * scale) {
                asym = true;
                break;
            }
    if (asym && warn)
        *warn << "warning: matrix in " << path
              << " is not symmetric; using (A + A^T)/2\n";
    return SymmetricMatrix(n, std::move(raw));
}

} // namespace quadtail
