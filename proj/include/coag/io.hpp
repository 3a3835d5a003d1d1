#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace coag::io {

// Shortest decimal string that round-trips to the same double.
std::string format_double(double v);

// CSV with a fixed header line; every cell formatted by format_double.
void write_csv(const std::filesystem::path& path, const std::string& header,
               const std::vector<std::vector<double>>& rows);

std::vector<std::vector<double>> read_csv(const std::filesystem::path& path,
                                          std::string* header = nullptr);

} // namespace coag::io
