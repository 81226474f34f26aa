#include "qsdlab/csv.hpp"

#include <charconv>

namespace qsdlab {

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

void CsvWriter::comment(const std::string& line) { out_ << "# " << line << "\n"; }

void CsvWriter::header(const std::vector<std::string>& columns) {
    for (std::size_t i = 0; i < columns.size(); ++i)
        out_ << (i ? "," : "") << columns[i];
    out_ << "\n";
}

void CsvWriter::row(const std::vector<double>& values) {
    for (std::size_t i = 0; i < values.size(); ++i)
        out_ << (i ? "," : "") << format_double(values[i]);
    out_ << "\n";
}

}  // namespace qsdlab
