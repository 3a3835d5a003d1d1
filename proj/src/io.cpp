#include "coag/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>

#include "coag/errors.hpp"

namespace coag::io {

std::string format_double(double v) {
    char buf[40];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc()) throw Error("format_double: conversion failed");
    return std::string(buf, ptr);
}

void write_csv(const std::filesystem::path& path, const std::string& header,
               const std::vector<std::vector<double>>& rows) {
    std::ofstream out(path);
    if (!out) throw Error("write_csv: cannot open " + path.string());
    out << header << '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out << ',';
            out << format_double(row[i]);
        }
        out << '\n';
    }
    if (!out) throw Error("write_csv: write failed for " + path.string());
}

std::vector<std::vector<double>> read_csv(const std::filesystem::path& path,
                                          std::string* header) {
    std::ifstream in(path);
    if (!in) throw Error("read_csv: cannot open " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw Error("read_csv: empty file " + path.string());
    if (header) *header = line;
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        const char* p = line.data();
        const char* end = p + line.size();
        while (p < end) {
            double v = 0.0;
            auto [next, ec] = std::from_chars(p, end, v);
            if (ec != std::errc()) throw Error("read_csv: bad number in " + path.string());
            row.push_back(v);
            p = next;
            if (p < end && *p == ',') ++p;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace coag::io
