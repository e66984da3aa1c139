#include "hinfty/csv.hpp"

#include <cstdio>

#include "hinfty/error.hpp"

namespace hinfty {

std::string format_double(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

CsvWriter::CsvWriter(std::ostream& out, const std::vector<std::string>& header)
    : out_(out), columns_(header.size())
{
    for (std::size_t i = 0; i < header.size(); ++i)
        out_ << (i ? "," : "") << header[i];
    out_ << '\n';
}

void CsvWriter::row(const std::vector<CsvCell>& cells)
{
    if (cells.size() != columns_)
        throw ConfigError("CsvWriter: row width does not match header");
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i)
            out_ << ',';
        if (const auto* d = std::get_if<double>(&cells[i]))
            out_ << format_double(*d);
        else if (const auto* k = std::get_if<long long>(&cells[i]))
            out_ << *k;
        else
            out_ << std::get<std::string>(cells[i]);
    }
    out_ << '\n';
}

} // namespace hinfty
