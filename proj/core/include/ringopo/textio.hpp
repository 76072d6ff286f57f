#pragma once

#include <complex>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace ringopo {

// Formats a double with 17 significant digits (round-trip safe),
// locale-independent. All emitted numeric text goes through this.
std::string format_g17(double v);

// One CSV output stream: fixed header, rows of g17-formatted cells.
class CsvWriter {
public:
    explicit CsvWriter(std::vector<std::string> header);
    void add_row(const std::vector<double>& cells);
    void add_row_raw(const std::vector<std::string>& cells);
    std::string str() const;
    void write(const std::filesystem::path& file) const;

private:
    std::vector<std::string> header_;
    std::vector<std::string> rows_;
};

std::string read_file(const std::filesystem::path& file);
void write_file(const std::filesystem::path& file, const std::string& content);

// n >= 2 evenly spaced points including both ends.
std::vector<double> linspace(double a, double b, int n);

// SHA-256 of a byte string, lowercase hex. Used for input hashes in manifests.
std::string sha256_hex(const std::string& bytes);

}  // namespace ringopo
