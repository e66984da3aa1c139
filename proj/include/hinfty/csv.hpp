#pragma once

#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace hinfty {

using CsvCell = std::variant<double, long long, std::string>;

/// Writes a header row, then rows of cells. Doubles use 17 significant digits.
class CsvWriter {
public:
    CsvWriter(std::ostream& out, const std::vector<std::string>& header);
    void row(const std::vector<CsvCell>& cells);

private:
    std::ostream& out_;
    std::size_t columns_;
};

std::string format_double(double x);

} // namespace hinfty
