#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "lsm/matrix.hpp"

namespace lsm {

// Plain-text matrix format: a "rows cols" header line, then one row per line.
// Weights round-trip bit-exactly; chromosomes are written as 0/1.
void save_weights_text(const Matrix& w, const std::filesystem::path& path);
Matrix load_weights_text(const std::filesystem::path& path);

void save_bits_text(const SpikeStateMatrix& bits, const std::filesystem::path& path);
SpikeStateMatrix load_bits_text(const std::filesystem::path& path);

std::string format_double(double x);  // shortest round-trip decimal

// Line-oriented CSV writer with deterministic formatting.
class CsvWriter {
public:
    CsvWriter(const std::filesystem::path& path, const std::string& header);

    void row(const std::vector<std::string>& cells);

    static std::string cell(double x) { return format_double(x); }
    static std::string cell(long long x) { return std::to_string(x); }
    static std::string cell(int x) { return std::to_string(x); }
    static std::string cell(size_t x) { return std::to_string(x); }
    static std::string cell(const std::string& s) { return s; }

private:
    std::ofstream out_;
};

}  // namespace lsm
