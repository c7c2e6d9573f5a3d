#include "ghostsim/io.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace ghostsim {

void write_pgm(const std::string& path, const PgmImage& img, const std::string& comment) {
    if (img.width <= 0 || img.height <= 0 ||
        img.pixels.size() != std::size_t(img.width) * std::size_t(img.height))
        throw std::invalid_argument("write_pgm: inconsistent image dimensions");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_pgm: cannot open " + path);
    out << "P5\n";
    if (!comment.empty()) out << "# " << comment << "\n";
    out << img.width << " " << img.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(img.pixels.data()),
              std::streamsize(img.pixels.size()));
    if (!out) throw std::runtime_error("write_pgm: short write to " + path);
}

namespace {

// Reads one whitespace-delimited header token, skipping '#' comments.
std::string pgm_token(std::istream& in) {
    std::string tok;
    int c;
    while ((c = in.get()) != EOF) {
        if (c == '#') {
            while ((c = in.get()) != EOF && c != '\n') {}
        } else if (!std::isspace(c)) {
            tok.push_back(char(c));
            while ((c = in.get()) != EOF && !std::isspace(c) && c != '#') tok.push_back(char(c));
            if (c == '#') in.unget();
            return tok;
        }
    }
    return tok;
}

long parse_pgm_int(const std::string& tok, const char* what) {
    if (tok.empty()) throw std::runtime_error(std::string("read_pgm: missing ") + what);
    for (char c : tok)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            throw std::runtime_error(std::string("read_pgm: malformed ") + what + " '" + tok + "'");
    if (tok.size() > 9) throw std::runtime_error(std::string("read_pgm: ") + what + " overflows");
    return std::stol(tok);
}

}  // namespace

PgmImage read_pgm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("read_pgm: cannot open " + path);
    if (pgm_token(in) != "P5") throw std::runtime_error("read_pgm: " + path + " is not a P5 graymap");
    const long w = parse_pgm_int(pgm_token(in), "width");
    const long h = parse_pgm_int(pgm_token(in), "height");
    const long maxval = parse_pgm_int(pgm_token(in), "maxval");
    if (w <= 0 || h <= 0 || w * h > (1L << 26))
        throw std::runtime_error("read_pgm: unreasonable dimensions " + std::to_string(w) + " x " +
                                 std::to_string(h));
    if (maxval < 1 || maxval > 255)
        throw std::runtime_error("read_pgm: unsupported maxval " + std::to_string(maxval));
    PgmImage img;
    img.width = int(w);
    img.height = int(h);
    img.pixels.resize(std::size_t(w) * std::size_t(h));
    in.read(reinterpret_cast<char*>(img.pixels.data()), std::streamsize(img.pixels.size()));
    if (std::size_t(in.gcount()) != img.pixels.size())
        throw std::runtime_error("read_pgm: truncated pixel payload in " + path);
    if (maxval != 255)
        for (auto& p : img.pixels)
            p = std::uint8_t((int(p) * 255 + maxval / 2) / maxval);
    return img;
}

struct CsvWriter::Impl {
    std::ofstream out;
    std::size_t columns = 0;
};

std::string format_sig9(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& columns) {
    if (columns.empty()) throw std::invalid_argument("CsvWriter: no columns");
    impl_ = new Impl;
    impl_->out.open(path, std::ios::binary);
    if (!impl_->out) {
        delete impl_;
        throw std::runtime_error("CsvWriter: cannot open " + path);
    }
    impl_->columns = columns.size();
    for (std::size_t i = 0; i < columns.size(); ++i)
        impl_->out << columns[i] << (i + 1 < columns.size() ? "," : "\n");
}

void CsvWriter::row(const std::vector<double>& values) {
    if (values.size() != impl_->columns)
        throw std::invalid_argument("CsvWriter: row width does not match the header");
    for (std::size_t i = 0; i < values.size(); ++i)
        impl_->out << format_sig9(values[i]) << (i + 1 < values.size() ? "," : "\n");
}

void CsvWriter::close() {
    if (impl_->out.is_open()) {
        impl_->out.flush();
        if (!impl_->out) throw std::runtime_error("CsvWriter: write failure on close");
        impl_->out.close();
    }
}

CsvWriter::~CsvWriter() {
    if (impl_) {
        if (impl_->out.is_open()) impl_->out.close();
        delete impl_;
    }
}

}  // namespace ghostsim
