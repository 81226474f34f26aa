#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qsdlab {

/// Shortest round-trip decimal form of a double (to_chars), "%.17g"-class.
std::string format_double(double v);

/// CSV emitter: UTF-8, LF line endings, `#`-prefixed comment lines, one
/// header row, numeric cells in shortest round-trip form.
class CsvWriter {
public:
    explicit CsvWriter(std::ostream& out) : out_(out) {}

    void comment(const std::string& line);
    void header(const std::vector<std::string>& columns);
    void row(const std::vector<double>& values);

private:
    std::ostream& out_;
};

}  // namespace qsdlab
