#pragma once

#include "kvassoc/rational.hpp"

#include <map>
#include <optional>
#include <vector>

namespace kvassoc {

using Vec = std::vector<Rational>;

// Dense exact matrix, row-major.
class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols) {}
    static Matrix from_columns(const std::vector<Vec>& cols, int rows);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Rational& operator()(int r, int c) { return a_[static_cast<std::size_t>(r) * cols_ + c]; }
    const Rational& operator()(int r, int c) const { return a_[static_cast<std::size_t>(r) * cols_ + c]; }

    Vec operator*(const Vec& x) const;

private:
    int rows_ = 0, cols_ = 0;
    std::vector<Rational> a_;
};

struct Echelon {
    Matrix reduced;
    std::vector<int> pivots;  // pivot column of each nonzero row
};

Echelon rref(Matrix m);
int rank(const Matrix& m);
// basis of {x : m x = 0}, one vector per free column (free entry 1, others 0)
std::vector<Vec> nullspace(const Matrix& m);

// A solution of m x = b with every free coordinate set to free_value,
// or nullopt if the system is inconsistent.
std::optional<Vec> solve(const Matrix& m, const Vec& b, const Rational& free_value = Rational(0));

// Assigns consecutive indices to keys in first-seen order; used to turn
// sparse coefficient maps into matrix rows.
template <class K>
class Indexer {
public:
    int operator()(const K& k) {
        auto [it, inserted] = idx_.try_emplace(k, static_cast<int>(idx_.size()));
        return it->second;
    }
    int size() const { return static_cast<int>(idx_.size()); }
    const std::map<K, int>& map() const { return idx_; }

private:
    std::map<K, int> idx_;
};

}  // namespace kvassoc
