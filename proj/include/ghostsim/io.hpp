#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ghostsim {

/// 8-bit binary graymap (P5), rows in lattice order.
struct PgmImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;
};

void write_pgm(const std::string& path, const PgmImage& img, const std::string& comment = "");

/// Accepts maxval 1..255 and rescales to 8 bits. Throws on malformed
/// headers, truncated payloads and absurd dimensions.
PgmImage read_pgm(const std::string& path);

/// Comma-separated table with a header row; numeric cells carry 9
/// significant digits.
class CsvWriter {
public:
    CsvWriter(const std::string& path, const std::vector<std::string>& columns);
    void row(const std::vector<double>& values);
    void close();
    ~CsvWriter();

private:
    struct Impl;
    Impl* impl_;
};

std::string format_sig9(double v);

}  // namespace ghostsim
