#include "kvassoc/linalg.hpp"

#include <stdexcept>

namespace kvassoc {

Matrix Matrix::from_columns(const std::vector<Vec>& cols, int rows) {
    Matrix m(rows, static_cast<int>(cols.size()));
    for (int c = 0; c < m.cols(); ++c) {
        const Vec& v = cols[static_cast<std::size_t>(c)];
        if (static_cast<int>(v.size()) > rows) throw std::invalid_argument("Matrix::from_columns: column too long");
        for (int r = 0; r < static_cast<int>(v.size()); ++r) m(r, c) = v[static_cast<std::size_t>(r)];
    }
    return m;
}

Vec Matrix::operator*(const Vec& x) const {
    if (static_cast<int>(x.size()) != cols_) throw std::invalid_argument("Matrix: dimension mismatch");
    Vec y(static_cast<std::size_t>(rows_));
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c)
            if (!(*this)(r, c).is_zero()) y[static_cast<std::size_t>(r)].add_product((*this)(r, c), x[static_cast<std::size_t>(c)]);
    return y;
}

Echelon rref(Matrix m) {
    Echelon e;
    int row = 0;
    for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
        int piv = -1;
        for (int r = row; r < m.rows(); ++r)
            if (!m(r, col).is_zero()) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        if (piv != row)
            for (int c = 0; c < m.cols(); ++c) std::swap(m(piv, c), m(row, c));
        Rational inv = m(row, col).inverse();
        for (int c = col; c < m.cols(); ++c) m(row, c) *= inv;
        for (int r = 0; r < m.rows(); ++r) {
            if (r == row || m(r, col).is_zero()) continue;
            Rational f = -m(r, col);
            for (int c = col; c < m.cols(); ++c)
                if (!m(row, c).is_zero()) m(r, c).add_product(f, m(row, c));
        }
        e.pivots.push_back(col);
        ++row;
    }
    e.reduced = std::move(m);
    return e;
}

int rank(const Matrix& m) { return static_cast<int>(rref(m).pivots.size()); }

std::vector<Vec> nullspace(const Matrix& m) {
    Echelon e = rref(m);
    std::vector<bool> is_pivot(static_cast<std::size_t>(m.cols()), false);
    for (int p : e.pivots) is_pivot[static_cast<std::size_t>(p)] = true;
    std::vector<Vec> out;
    for (int f = 0; f < m.cols(); ++f) {
        if (is_pivot[static_cast<std::size_t>(f)]) continue;
        Vec v(static_cast<std::size_t>(m.cols()));
        v[static_cast<std::size_t>(f)] = Rational(1);
        for (std::size_t r = 0; r < e.pivots.size(); ++r)
            v[static_cast<std::size_t>(e.pivots[r])] = -e.reduced(static_cast<int>(r), f);
        out.push_back(std::move(v));
    }
    return out;
}

std::optional<Vec> solve(const Matrix& m, const Vec& b, const Rational& free_value) {
    if (static_cast<int>(b.size()) != m.rows()) throw std::invalid_argument("solve: right-hand side size");
    Matrix aug(m.rows(), m.cols() + 1);
    for (int r = 0; r < m.rows(); ++r) {
        for (int c = 0; c < m.cols(); ++c) aug(r, c) = m(r, c);
        aug(r, m.cols()) = b[static_cast<std::size_t>(r)];
    }
    Echelon e = rref(std::move(aug));
    if (!e.pivots.empty() && e.pivots.back() == m.cols()) return std::nullopt;
    std::vector<bool> is_pivot(static_cast<std::size_t>(m.cols()), false);
    for (int p : e.pivots) is_pivot[static_cast<std::size_t>(p)] = true;
    Vec x(static_cast<std::size_t>(m.cols()));
    for (int c = 0; c < m.cols(); ++c)
        if (!is_pivot[static_cast<std::size_t>(c)]) x[static_cast<std::size_t>(c)] = free_value;
    for (std::size_t r = 0; r < e.pivots.size(); ++r) {
        Rational v = e.reduced(static_cast<int>(r), m.cols());
        for (int c = 0; c < m.cols(); ++c)
            if (!is_pivot[static_cast<std::size_t>(c)] && !e.reduced(static_cast<int>(r), c).is_zero())
                v -= e.reduced(static_cast<int>(r), c) * free_value;
        x[static_cast<std::size_t>(e.pivots[r])] = v;
    }
    return x;
}

}  // namespace kvassoc
