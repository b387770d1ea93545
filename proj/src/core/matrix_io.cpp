#include "core/matrix_io.hpp"

#include "core/errors.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

namespace cdeim {
namespace {

bool has_csv_extension(const std::string& path) {
    return path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0;
}

void put_u16_le(std::string& out, std::uint16_t v) {
    out.push_back(static_cast<char>(v & 0xFF));
    out.push_back(static_cast<char>((v >> 8) & 0xFF));
}

void put_u32_le(std::string& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) {
        out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
    }
}

void put_f64_le(std::string& out, double v) {
    const std::uint64_t bits = std::bit_cast<std::uint64_t>(v);
    for (int i = 0; i < 8; ++i) {
        out.push_back(static_cast<char>((bits >> (8 * i)) & 0xFF));
    }
}

std::uint64_t get_le(const unsigned char* p, int n_bytes) {
    std::uint64_t v = 0;
    for (int i = n_bytes - 1; i >= 0; --i) {
        v = (v << 8) | p[i];
    }
    return v;
}

void check_finite(const Matrix& m, const std::string& path) {
    for (Index j = 0; j < m.cols(); ++j) {
        for (Index i = 0; i < m.rows(); ++i) {
            if (!std::isfinite(m(i, j))) {
                throw io_error(path + ": non-finite entry at (" + std::to_string(i) + ", " +
                               std::to_string(j) + ")");
            }
        }
    }
}

Matrix read_matrix_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw io_error(path + ": cannot open for reading");
    }
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            try {
                size_t used = 0;
                row.push_back(std::stod(cell, &used));
            } catch (const std::exception&) {
                throw io_error(path + ": cannot parse '" + cell + "' as a number");
            }
        }
        if (!rows.empty() && row.size() != rows.front().size()) {
            throw io_error(path + ": ragged rows (" + std::to_string(row.size()) + " vs " +
                           std::to_string(rows.front().size()) + " columns)");
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) {
        throw io_error(path + ": empty matrix file");
    }
    Matrix m(static_cast<Index>(rows.size()), static_cast<Index>(rows.front().size()));
    for (Index i = 0; i < m.rows(); ++i) {
        for (Index j = 0; j < m.cols(); ++j) {
            m(i, j) = rows[static_cast<size_t>(i)][static_cast<size_t>(j)];
        }
    }
    check_finite(m, path);
    return m;
}

void write_matrix_csv(const Matrix& matrix, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw io_error(path + ": cannot open for writing");
    }
    for (Index i = 0; i < matrix.rows(); ++i) {
        for (Index j = 0; j < matrix.cols(); ++j) {
            if (j > 0) {
                out << ',';
            }
            out << format_double(matrix(i, j));
        }
        out << '\n';
    }
    if (!out) {
        throw io_error(path + ": write failed");
    }
}

Matrix read_matrix_binary(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw io_error(path + ": cannot open for reading");
    }
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (bytes.size() < kMatrixHeaderBytes) {
        throw io_error(path + ": truncated header, expected at least " +
                       std::to_string(kMatrixHeaderBytes) + " bytes, got " +
                       std::to_string(bytes.size()));
    }
    const auto* p = reinterpret_cast<const unsigned char*>(bytes.data());
    if (std::memcmp(p, kMatrixMagic, 4) != 0) {
        throw io_error(path + ": bad magic, not a CDMX matrix file");
    }
    const auto version = static_cast<std::uint16_t>(get_le(p + 4, 2));
    if (version != kMatrixFormatVersion) {
        throw io_error(path + ": unsupported format version " + std::to_string(version));
    }
    const auto rows = static_cast<std::uint32_t>(get_le(p + 6, 4));
    const auto cols = static_cast<std::uint32_t>(get_le(p + 10, 4));
    const std::size_t expected =
        kMatrixHeaderBytes + 8ull * static_cast<std::size_t>(rows) * cols;
    if (bytes.size() != expected) {
        throw io_error(path + ": expected " + std::to_string(expected) + " bytes for " +
                       std::to_string(rows) + "x" + std::to_string(cols) + ", got " +
                       std::to_string(bytes.size()));
    }
    Matrix m(static_cast<Index>(rows), static_cast<Index>(cols));
    const unsigned char* q = p + kMatrixHeaderBytes;
    for (Index j = 0; j < m.cols(); ++j) {
        for (Index i = 0; i < m.rows(); ++i) {
            m(i, j) = std::bit_cast<double>(get_le(q, 8));
            q += 8;
        }
    }
    check_finite(m, path);
    return m;
}

void write_matrix_binary(const Matrix& matrix, const std::string& path) {
    std::string bytes;
    bytes.reserve(kMatrixHeaderBytes +
                  8ull * static_cast<std::size_t>(matrix.rows()) * matrix.cols());
    bytes.append(kMatrixMagic, 4);
    put_u16_le(bytes, kMatrixFormatVersion);
    put_u32_le(bytes, static_cast<std::uint32_t>(matrix.rows()));
    put_u32_le(bytes, static_cast<std::uint32_t>(matrix.cols()));
    for (Index j = 0; j < matrix.cols(); ++j) {
        for (Index i = 0; i < matrix.rows(); ++i) {
            put_f64_le(bytes, matrix(i, j));
        }
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw io_error(path + ": cannot open for writing");
    }
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) {
        throw io_error(path + ": write failed");
    }
}

}  // namespace

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

Matrix read_matrix(const std::string& path) {
    return has_csv_extension(path) ? read_matrix_csv(path) : read_matrix_binary(path);
}

void write_matrix(const Matrix& matrix, const std::string& path) {
    if (matrix.rows() < 1 || matrix.cols() < 1) {
        throw validation_error("write_matrix: refusing to write an empty matrix");
    }
    check_finite(matrix, path);
    if (has_csv_extension(path)) {
        write_matrix_csv(matrix, path);
    } else {
        write_matrix_binary(matrix, path);
    }
}

IndexList read_index_list(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw io_error(path + ": cannot open for reading");
    }
    IndexList indices;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        try {
            indices.push_back(static_cast<Index>(std::stoll(line)));
        } catch (const std::exception&) {
            throw io_error(path + ": cannot parse '" + line + "' as an index");
        }
    }
    if (indices.empty()) {
        throw io_error(path + ": empty index list");
    }
    return indices;
}

void write_index_list(const IndexList& indices, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw io_error(path + ": cannot open for writing");
    }
    for (Index idx : indices) {
        out << idx << '\n';
    }
    if (!out) {
        throw io_error(path + ": write failed");
    }
}

void write_manifest(const std::string& path,
                    const std::vector<std::pair<std::string, std::string>>& entries) {
    std::ofstream out(path);
    if (!out) {
        throw io_error(path + ": cannot open for writing");
    }
    for (const auto& [key, value] : entries) {
        out << key << " = " << value << '\n';
    }
    if (!out) {
        throw io_error(path + ": write failed");
    }
}

}  // namespace cdeim
