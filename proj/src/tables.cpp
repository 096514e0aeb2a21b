#include "burnside/tables.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "burnside/errors.hpp"
#include "burnside/partitions.hpp"

namespace burnside::tables {

Composition::Composition(std::vector<std::uint64_t> parts) : parts_(std::move(parts)) {
    for (std::uint64_t p : parts_) {
        if (p == 0) throw std::invalid_argument("Composition: parts must be positive");
        total_ += p;
    }
}

std::vector<std::uint32_t> Composition::block_of_points() const {
    std::vector<std::uint32_t> out;
    out.reserve(total_);
    for (std::size_t i = 0; i < parts_.size(); ++i) out.insert(out.end(), parts_[i], static_cast<std::uint32_t>(i));
    return out;
}

Matrix Matrix::from_rows(const std::vector<std::vector<std::uint64_t>>& rows) {
    const std::size_t cols = rows.empty() ? 0 : rows.front().size();
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw std::invalid_argument("Matrix: ragged rows");
        std::copy(rows[i].begin(), rows[i].end(), m.data_.begin() + static_cast<std::ptrdiff_t>(i * cols));
    }
    return m;
}

std::vector<std::uint64_t> Matrix::row_sums() const {
    std::vector<std::uint64_t> out(rows_, 0);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j);
    return out;
}

std::vector<std::uint64_t> Matrix::col_sums() const {
    std::vector<std::uint64_t> out(cols_, 0);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out[j] += (*this)(i, j);
    return out;
}

std::uint64_t Matrix::total() const { return std::accumulate(data_.begin(), data_.end(), std::uint64_t{0}); }

std::string Matrix::to_string() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < rows_; ++i) {
        os << (i ? ",[" : "[");
        for (std::size_t j = 0; j < cols_; ++j) os << (j ? "," : "") << (*this)(i, j);
        os << ']';
    }
    os << ']';
    return os.str();
}

ContingencyTable::ContingencyTable(Matrix entries) : entries_(std::move(entries)) {
    if (entries_.rows() == 0 || entries_.cols() == 0) throw std::invalid_argument("ContingencyTable: empty table");
    try {
        rows_ = Composition(entries_.row_sums());
        cols_ = Composition(entries_.col_sums());
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("ContingencyTable: every row and column sum must be positive");
    }
}

CycleTypeTable cycle_type_table(std::size_t num_rows, std::size_t num_cols, std::span<const CellSplit> splits) {
    struct Hit {
        std::uint64_t length;
        std::size_t row;
        std::size_t col;
    };
    std::vector<Hit> hits;
    for (const CellSplit& cell : splits) {
        if (cell.row >= num_rows || cell.col >= num_cols) throw std::out_of_range("cycle_type_table: cell index");
        for (std::uint64_t l : cell.parts) hits.push_back({l, cell.row, cell.col});
    }
    std::sort(hits.begin(), hits.end(), [](const Hit& a, const Hit& b) { return a.length < b.length; });

    CycleTypeTable out{num_rows, num_cols, {}};
    for (const Hit& h : hits) {
        if (out.classes.empty() || out.classes.back().length != h.length)
            out.classes.push_back({h.length, std::vector<std::uint64_t>(num_rows, 0), std::vector<std::uint64_t>(num_cols, 0)});
        ++out.classes.back().rows[h.row];
        ++out.classes.back().cols[h.col];
    }
    return out;
}

namespace {

// Adds weight * X to `out`, X Fisher-Yates distributed with margins (r, c).
void fisher_yates_accumulate(std::span<const std::uint64_t> r, std::span<const std::uint64_t> c,
                             std::uint64_t weight, Matrix& out, RngStream& rng) {
    const std::uint64_t total = std::accumulate(r.begin(), r.end(), std::uint64_t{0});
    if (total != std::accumulate(c.begin(), c.end(), std::uint64_t{0}))
        throw std::invalid_argument("fisher_yates_sample: row and column margins have different totals");
    thread_local std::vector<std::uint32_t> labels;
    labels.clear();
    labels.reserve(total);
    for (std::size_t j = 0; j < c.size(); ++j) labels.insert(labels.end(), c[j], static_cast<std::uint32_t>(j));
    shuffle_in_place(std::span<std::uint32_t>(labels), rng);
    std::size_t pos = 0;
    for (std::size_t i = 0; i < r.size(); ++i)
        for (std::uint64_t k = 0; k < r[i]; ++k) out(i, labels[pos++]) += weight;
}

}  // namespace

Matrix fisher_yates_sample(std::span<const std::uint64_t> r, std::span<const std::uint64_t> c, RngStream& rng) {
    Matrix out(r.size(), c.size());
    fisher_yates_accumulate(r, c, 1, out, rng);
    return out;
}

CycleTypeTable cycle_split(const ContingencyTable& table, RngStream& rng) {
    thread_local std::vector<CellSplit> splits;
    splits.clear();
    for (std::size_t i = 0; i < table.rows(); ++i) {
        for (std::size_t j = 0; j < table.cols(); ++j) {
            if (table(i, j) == 0) continue;
            CellSplit& cell = splits.emplace_back(CellSplit{i, j, {}});
            for_each_stick_part(table(i, j), rng, [&](std::uint64_t l) { cell.parts.push_back(l); });
        }
    }
    return cycle_type_table(table.rows(), table.cols(), splits);
}

Matrix assemble_table(const CycleTypeTable& split, std::span<const Matrix> class_tables) {
    if (class_tables.size() != split.classes.size())
        throw std::invalid_argument("assemble_table: one table per cycle length is required");
    Matrix out(split.num_rows, split.num_cols);
    for (std::size_t k = 0; k < class_tables.size(); ++k) {
        const Matrix& x = class_tables[k];
        const CycleClass& cls = split.classes[k];
        if (x.rows() != split.num_rows || x.cols() != split.num_cols || x.row_sums() != cls.rows ||
            x.col_sums() != cls.cols)
            throw std::invalid_argument("assemble_table: class table margins do not match the cycle counts");
        for (std::size_t i = 0; i < out.rows(); ++i)
            for (std::size_t j = 0; j < out.cols(); ++j) out(i, j) += cls.length * x(i, j);
    }
    return out;
}

ContingencyTable lumped_step(const ContingencyTable& table, RngStream& rng) {
    const CycleTypeTable split = cycle_split(table, rng);
    Matrix next(table.rows(), table.cols());
    for (const CycleClass& cls : split.classes) fisher_yates_accumulate(cls.rows, cls.cols, cls.length, next, rng);
    return ContingencyTable(std::move(next));
}

ContingencyTable table_of_permutation(const Composition& lambda, const Composition& mu, const Permutation& sigma) {
    if (lambda.total() != mu.total() || lambda.total() != sigma.size())
        throw std::invalid_argument("table_of_permutation: compositions and permutation disagree on n");
    const auto row_block = lambda.block_of_points();
    const auto col_block = mu.block_of_points();
    Matrix m(lambda.size(), mu.size());
    for (std::size_t p = 0; p < sigma.size(); ++p) ++m(row_block[sigma[p]], col_block[p]);
    return ContingencyTable(std::move(m));
}

Permutation representative_permutation(const ContingencyTable& table) {
    const std::size_t n = table.total();
    std::vector<Permutation::value_type> images(n);
    std::vector<std::uint64_t> next_row_point(table.rows());
    for (std::size_t i = 1; i < table.rows(); ++i)
        next_row_point[i] = next_row_point[i - 1] + table.row_margins()[i - 1];
    std::uint64_t p = 0;
    for (std::size_t j = 0; j < table.cols(); ++j)
        for (std::size_t i = 0; i < table.rows(); ++i)
            for (std::uint64_t t = 0; t < table(i, j); ++t)
                images[p++] = static_cast<Permutation::value_type>(next_row_point[i]++);
    return Permutation::from_images_unchecked(std::move(images));
}

Permutation unlumped_step(const Permutation& sigma, const Composition& lambda, const Composition& mu,
                          RngStream& rng) {
    using value_type = Permutation::value_type;
    const std::size_t n = sigma.size();
    if (lambda.total() != n || mu.total() != n)
        throw std::invalid_argument("tables::unlumped_step: compositions and permutation disagree on n");
    const auto row_block = lambda.block_of_points();
    const auto col_block = mu.block_of_points();
    const std::size_t num_blocks = lambda.size() * mu.size();

    // Group the points of each meet block L_i cap sigma(M_j).
    std::vector<std::size_t> offset(num_blocks + 1, 0);
    for (std::size_t p = 0; p < n; ++p) ++offset[row_block[sigma[p]] * mu.size() + col_block[p] + 1];
    std::partial_sum(offset.begin(), offset.end(), offset.begin());
    std::vector<value_type> members(n);
    {
        std::vector<std::size_t> fill(offset.begin(), offset.end() - 1);
        for (std::size_t p = 0; p < n; ++p) members[fill[row_block[sigma[p]] * mu.size() + col_block[p]]++] = sigma[p];
    }

    // h: an independent uniform permutation inside every meet block.
    std::vector<value_type> h(n);
    std::vector<value_type> shuffled;
    for (std::size_t b = 0; b < num_blocks; ++b) {
        const std::span<const value_type> block(members.data() + offset[b], offset[b + 1] - offset[b]);
        shuffled.assign(block.begin(), block.end());
        shuffle_in_place(std::span<value_type>(shuffled), rng);
        for (std::size_t k = 0; k < block.size(); ++k) h[block[k]] = shuffled[k];
    }
    const Permutation g = partitions::sample_centralizer(Permutation::from_images_unchecked(std::move(h)), rng);
    return g * sigma;
}

double chi_square(const ContingencyTable& table) {
    const auto r = table.row_margins().parts();
    const auto c = table.col_margins().parts();
    const double n = static_cast<double>(table.total());
    double stat = 0.0;
    for (std::size_t i = 0; i < table.rows(); ++i) {
        for (std::size_t j = 0; j < table.cols(); ++j) {
            const double expected = static_cast<double>(r[i]) * static_cast<double>(c[j]) / n;
            const double diff = static_cast<double>(table(i, j)) - expected;
            stat += diff * diff / expected;
        }
    }
    return stat;
}

ContingencyTable scaled(const ContingencyTable& table, std::uint64_t factor) {
    if (factor == 0) throw std::invalid_argument("scaled: factor must be positive");
    Matrix m = table.entries();
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) *= factor;
    return ContingencyTable(std::move(m));
}

ContingencyTable parse_table_json(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(std::string("table JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("table") || !doc["table"].is_array())
        throw InputError("table JSON: expected an object with a \"table\" array");
    std::vector<std::vector<std::uint64_t>> rows;
    for (const auto& row : doc["table"]) {
        if (!row.is_array()) throw InputError("table JSON: every row must be an array");
        auto& out = rows.emplace_back();
        for (const auto& cell : row) {
            if (!cell.is_number_integer() || (!cell.is_number_unsigned() && cell.get<std::int64_t>() < 0))
                throw InputError("table JSON: entries must be non-negative integers");
            out.push_back(cell.get<std::uint64_t>());
        }
    }
    try {
        return ContingencyTable(Matrix::from_rows(rows));
    } catch (const std::invalid_argument& e) {
        throw InputError(std::string("table JSON: ") + e.what());
    }
}

ContingencyTable load_table_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot read table file " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_table_json(buffer.str());
}

std::string to_table_json(const ContingencyTable& table) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < table.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t j = 0; j < table.cols(); ++j) row.push_back(table(i, j));
        rows.push_back(std::move(row));
    }
    return nlohmann::json{{"table", rows}}.dump();
}

ContingencyTable hair_eye_table() {
    return ContingencyTable(Matrix::from_rows({
        {68, 119, 26, 7},
        {20, 84, 17, 94},
        {15, 54, 14, 10},
        {5, 29, 14, 16},
    }));
}

ContingencyTable children_income_table() {
    return ContingencyTable(Matrix::from_rows({
        {2161, 3577, 2184, 1636},
        {2755, 5081, 2222, 1052},
        {936, 1753, 640, 306},
        {225, 419, 96, 38},
        {39, 98, 31, 14},
    }));
}

std::vector<Matrix> enumerate_tables(std::span<const std::uint64_t> r, std::span<const std::uint64_t> c) {
    if (std::accumulate(r.begin(), r.end(), std::uint64_t{0}) != std::accumulate(c.begin(), c.end(), std::uint64_t{0}))
        throw std::invalid_argument("enumerate_tables: margins have different totals");
    constexpr std::size_t cap = 1'000'000;
    std::vector<Matrix> out;
    Matrix current(r.size(), c.size());
    std::vector<std::uint64_t> col_left(c.begin(), c.end());
    auto fill = [&](auto&& self, std::size_t i, std::size_t j, std::uint64_t row_left) -> void {
        if (i == r.size()) {
            if (out.size() >= cap) throw ResourceLimitError("enumerate_tables: more than 10^6 tables");
            out.push_back(current);
            return;
        }
        if (j + 1 == c.size()) {
            if (row_left > col_left[j]) return;
            current(i, j) = row_left;
            col_left[j] -= row_left;
            self(self, i + 1, 0, i + 1 < r.size() ? r[i + 1] : 0);
            col_left[j] += row_left;
            return;
        }
        for (std::uint64_t v = 0; v <= std::min(row_left, col_left[j]); ++v) {
            current(i, j) = v;
            col_left[j] -= v;
            self(self, i, j + 1, row_left - v);
            col_left[j] += v;
        }
    };
    if (r.empty() || c.empty()) return out;
    fill(fill, 0, 0, r[0]);
    return out;
}

}  // namespace burnside::tables
