#include "lsm/rank.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace lsm {
namespace {

using boost::multiprecision::cpp_int;

// Duplicate and zero rows/columns never change the rank; spike matrices are
// full of both, so shrinking first keeps the exact elimination cheap.
std::vector<std::vector<int64_t>> compact(const SpikeStateMatrix& s) {
    std::vector<std::vector<int64_t>> rows;
    rows.reserve(s.rows());
    for (size_t r = 0; r < s.rows(); ++r) {
        std::vector<int64_t> row(s.cols());
        bool nonzero = false;
        for (size_t c = 0; c < s.cols(); ++c) {
            row[c] = s(r, c);
            nonzero |= row[c] != 0;
        }
        if (nonzero) rows.push_back(std::move(row));
    }
    std::sort(rows.begin(), rows.end());
    rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
    if (rows.empty()) return rows;

    // Same pass on columns, via transpose.
    size_t nr = rows.size(), nc = rows.front().size();
    std::vector<std::vector<int64_t>> cols;
    cols.reserve(nc);
    for (size_t c = 0; c < nc; ++c) {
        std::vector<int64_t> col(nr);
        bool nonzero = false;
        for (size_t r = 0; r < nr; ++r) {
            col[r] = rows[r][c];
            nonzero |= col[r] != 0;
        }
        if (nonzero) cols.push_back(std::move(col));
    }
    std::sort(cols.begin(), cols.end());
    cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
    return cols;
}

// One-step Bareiss elimination. The division is exact over the integers;
// every intermediate entry is a minor of the original matrix.
// Returns the rank, or -1 if an entry left the int64 range.
template <typename Int>
int bareiss_rank(std::vector<std::vector<Int>> a) {
    constexpr bool guarded = std::is_same_v<Int, int64_t>;
    if (a.empty()) return 0;
    const size_t nr = a.size(), nc = a.front().size();
    Int prev_pivot = 1;
    size_t row = 0;
    for (size_t col = 0; col < nc && row < nr; ++col) {
        size_t pivot = row;
        while (pivot < nr && a[pivot][col] == 0) ++pivot;
        if (pivot == nr) continue;
        std::swap(a[row], a[pivot]);
        for (size_t i = row + 1; i < nr; ++i) {
            for (size_t j = col + 1; j < nc; ++j) {
                if constexpr (guarded) {
                    __int128 num = static_cast<__int128>(a[row][col]) * a[i][j] -
                                   static_cast<__int128>(a[i][col]) * a[row][j];
                    __int128 q = num / prev_pivot;
                    if (q > std::numeric_limits<int64_t>::max() ||
                        q < std::numeric_limits<int64_t>::min())
                        return -1;
                    a[i][j] = static_cast<int64_t>(q);
                } else {
                    a[i][j] = (a[row][col] * a[i][j] - a[i][col] * a[row][j]) /
                              prev_pivot;
                }
            }
            a[i][col] = 0;
        }
        prev_pivot = a[row][col];
        ++row;
    }
    return static_cast<int>(row);
}

}  // namespace

int binary_matrix_rank(const SpikeStateMatrix& s) {
    auto core = compact(s);
    int r = bareiss_rank(core);
    if (r >= 0) return r;
    // Entries outgrew int64; redo with arbitrary precision.
    std::vector<std::vector<cpp_int>> wide(core.size());
    for (size_t i = 0; i < core.size(); ++i)
        wide[i].assign(core[i].begin(), core[i].end());
    return bareiss_rank(std::move(wide));
}

}  // namespace lsm
