#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace lsm {

// Row-major dense matrix. Small sizes only (liquids are ~100 neurons).
template <typename T>
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(size_t rows, size_t cols, T fill = T{})
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    bool empty() const { return data_.empty(); }

    T& operator()(size_t r, size_t c) { return data_[r * cols_ + c]; }
    const T& operator()(size_t r, size_t c) const { return data_[r * cols_ + c]; }

    std::span<T> row(size_t r) { return {data_.data() + r * cols_, cols_}; }
    std::span<const T> row(size_t r) const {
        return {data_.data() + r * cols_, cols_};
    }

    std::vector<T>& data() { return data_; }
    const std::vector<T>& data() const { return data_; }

    bool operator==(const DenseMatrix&) const = default;

private:
    size_t rows_ = 0;
    size_t cols_ = 0;
    std::vector<T> data_;
};

using Matrix = DenseMatrix<double>;

// Binary firing record: rows are neurons, columns are simulation ticks.
using SpikeStateMatrix = DenseMatrix<uint8_t>;

// Column-wise concatenation; all parts must share the row count.
inline SpikeStateMatrix hconcat(const std::vector<SpikeStateMatrix>& parts) {
    if (parts.empty()) return {};
    size_t rows = parts.front().rows();
    size_t cols = 0;
    for (const auto& p : parts) {
        if (p.rows() != rows) throw std::invalid_argument("hconcat: row mismatch");
        cols += p.cols();
    }
    SpikeStateMatrix out(rows, cols);
    size_t offset = 0;
    for (const auto& p : parts) {
        for (size_t r = 0; r < rows; ++r)
            for (size_t c = 0; c < p.cols(); ++c) out(r, offset + c) = p(r, c);
        offset += p.cols();
    }
    return out;
}

}  // namespace lsm
