#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "burnside/permutation.hpp"
#include "burnside/rng.hpp"

namespace burnside::tables {

/// Ordered sequence of positive integers summing to n.
class Composition {
public:
    Composition() = default;
    /// Throws std::invalid_argument on a zero part.
    explicit Composition(std::vector<std::uint64_t> parts);

    std::span<const std::uint64_t> parts() const noexcept { return parts_; }
    std::size_t size() const noexcept { return parts_.size(); }
    std::uint64_t operator[](std::size_t i) const { return parts_[i]; }
    std::uint64_t total() const noexcept { return total_; }

    /// Block index of each point 0..n-1 (point p lies in block i when
    /// parts[0] + ... + parts[i-1] <= p < parts[0] + ... + parts[i]).
    std::vector<std::uint32_t> block_of_points() const;

    friend bool operator==(const Composition&, const Composition&) = default;

private:
    std::vector<std::uint64_t> parts_;
    std::uint64_t total_ = 0;
};

/// Dense row-major matrix of non-negative counts.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}
    /// Throws std::invalid_argument if the rows are ragged.
    static Matrix from_rows(const std::vector<std::vector<std::uint64_t>>& rows);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::uint64_t operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    std::uint64_t& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    std::span<const std::uint64_t> data() const noexcept { return data_; }

    std::vector<std::uint64_t> row_sums() const;
    std::vector<std::uint64_t> col_sums() const;
    std::uint64_t total() const;
    std::string to_string() const;

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<std::uint64_t> data_;
};

/// Contingency table whose row and column sums are all positive.
class ContingencyTable {
public:
    ContingencyTable() = default;
    /// Derives the margins. Throws std::invalid_argument on an empty matrix or a zero margin.
    explicit ContingencyTable(Matrix entries);

    const Matrix& entries() const noexcept { return entries_; }
    const Composition& row_margins() const noexcept { return rows_; }
    const Composition& col_margins() const noexcept { return cols_; }
    std::size_t rows() const noexcept { return entries_.rows(); }
    std::size_t cols() const noexcept { return entries_.cols(); }
    std::uint64_t operator()(std::size_t i, std::size_t j) const { return entries_(i, j); }
    std::uint64_t total() const noexcept { return rows_.total(); }
    std::string to_string() const { return entries_.to_string(); }

    friend bool operator==(const ContingencyTable& a, const ContingencyTable& b) { return a.entries_ == b.entries_; }

private:
    Matrix entries_;
    Composition rows_;
    Composition cols_;
};

/// Row and column cycle counts for one cycle length l.
struct CycleClass {
    std::uint64_t length = 0;
    std::vector<std::uint64_t> rows;  ///< r^(l)_i
    std::vector<std::uint64_t> cols;  ///< c^(l)_j
};

/// Cycle-type summary of a stabiliser element, stored only for lengths that occur,
/// in increasing order of length.
struct CycleTypeTable {
    std::size_t num_rows = 0;
    std::size_t num_cols = 0;
    std::vector<CycleClass> classes;

    bool empty() const noexcept { return classes.empty(); }
};

/// The cycle lengths chosen inside cell (row, col).
struct CellSplit {
    std::size_t row = 0;
    std::size_t col = 0;
    std::vector<std::uint64_t> parts;
};

/// Aggregates per-cell cycle lengths: every part of length l in cell (i, j) adds one to
/// r^(l)_i and c^(l)_j.
CycleTypeTable cycle_type_table(std::size_t num_rows, std::size_t num_cols, std::span<const CellSplit> splits);

/// Fisher-Yates (multiple hypergeometric) table with margins (r, c): P(T) is proportional
/// to 1 / prod T_ij!. Shuffles the multiset of column labels and cuts it into row blocks,
/// so it costs O(sum r). Throws std::invalid_argument when the margins disagree.
Matrix fisher_yates_sample(std::span<const std::uint64_t> r, std::span<const std::uint64_t> c, RngStream& rng);

/// Stick-breaks every non-zero cell independently into uniform-permutation cycle lengths.
CycleTypeTable cycle_split(const ContingencyTable& table, RngStream& rng);

/// sum_l l * X^(l). `class_tables[k]` must have the margins of `split.classes[k]`.
Matrix assemble_table(const CycleTypeTable& split, std::span<const Matrix> class_tables);

/// One step of the lumped Burnside chain on tables with the margins of `table`.
/// Stationary law: uniform over all tables with those margins.
ContingencyTable lumped_step(const ContingencyTable& table, RngStream& rng);

/// f(sigma)_ij = |L_i intersect sigma(M_j)| for the consecutive blocks L of lambda and M of mu.
ContingencyTable table_of_permutation(const Composition& lambda, const Composition& mu, const Permutation& sigma);

/// A permutation sigma with f(sigma) == table, for margins (row_margins, col_margins).
Permutation representative_permutation(const ContingencyTable& table);

/// One step of the Burnside chain for S_lambda x S_mu acting on S_n by s -> h^{-1} s k:
/// h uniform in S_lambda cap sigma S_mu sigma^{-1}, g uniform in C(h), returns g * sigma.
Permutation unlumped_step(const Permutation& sigma, const Composition& lambda, const Composition& mu,
                          RngStream& rng);

/// Pearson chi-square statistic against the independence fit r_i c_j / n.
double chi_square(const ContingencyTable& table);

/// Every entry multiplied by `factor` (factor >= 1).
ContingencyTable scaled(const ContingencyTable& table, std::uint64_t factor);

/// Parses {"table": [[...], ...]}. Throws InputError on malformed input.
ContingencyTable parse_table_json(std::string_view text);
ContingencyTable load_table_json(const std::filesystem::path& path);
std::string to_table_json(const ContingencyTable& table);

/// 4x4 eye colour by hair colour counts, n = 592.
ContingencyTable hair_eye_table();
/// 5x4 number of children by yearly income counts, n = 25263.
ContingencyTable children_income_table();

/// Every table with the given margins (brute force; small inputs only).
std::vector<Matrix> enumerate_tables(std::span<const std::uint64_t> r, std::span<const std::uint64_t> c);

}  // namespace burnside::tables
