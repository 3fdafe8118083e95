#include "lsm/io.hpp"

#include <charconv>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace lsm {

std::string format_double(double x) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    if (ec != std::errc{}) throw std::runtime_error("format_double failed");
    return std::string(buf, end);
}

void save_weights_text(const Matrix& w, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << w.rows() << ' ' << w.cols() << '\n';
    for (size_t r = 0; r < w.rows(); ++r) {
        for (size_t c = 0; c < w.cols(); ++c) {
            if (c) out << ' ';
            out << format_double(w(r, c));
        }
        out << '\n';
    }
}

Matrix load_weights_text(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    size_t rows, cols;
    if (!(in >> rows >> cols)) throw std::runtime_error("bad header in " + path.string());
    Matrix w(rows, cols);
    for (size_t r = 0; r < rows; ++r)
        for (size_t c = 0; c < cols; ++c)
            if (!(in >> w(r, c)))
                throw std::runtime_error("truncated matrix in " + path.string());
    return w;
}

void save_bits_text(const SpikeStateMatrix& bits, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << bits.rows() << ' ' << bits.cols() << '\n';
    for (size_t r = 0; r < bits.rows(); ++r) {
        for (size_t c = 0; c < bits.cols(); ++c) {
            if (c) out << ' ';
            out << static_cast<int>(bits(r, c));
        }
        out << '\n';
    }
}

SpikeStateMatrix load_bits_text(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    size_t rows, cols;
    if (!(in >> rows >> cols)) throw std::runtime_error("bad header in " + path.string());
    SpikeStateMatrix bits(rows, cols);
    for (size_t r = 0; r < rows; ++r) {
        for (size_t c = 0; c < cols; ++c) {
            int v;
            if (!(in >> v) || (v != 0 && v != 1))
                throw std::runtime_error("bad bit in " + path.string());
            bits(r, c) = static_cast<uint8_t>(v);
        }
    }
    return bits;
}

CsvWriter::CsvWriter(const std::filesystem::path& path, const std::string& header) {
    std::filesystem::create_directories(path.parent_path().empty()
                                            ? std::filesystem::path(".")
                                            : path.parent_path());
    out_.open(path);
    if (!out_) throw std::runtime_error("cannot write " + path.string());
    out_ << header << '\n';
}

void CsvWriter::row(const std::vector<std::string>& cells) {
    for (size_t i = 0; i < cells.size(); ++i) {
        if (i) out_ << ',';
        out_ << cells[i];
    }
    out_ << '\n';
}

}  // namespace lsm
