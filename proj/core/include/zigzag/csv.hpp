#pragma once

#include <fstream>
#include <string>
#include <vector>

namespace zigzag {

// CSV writer matching the project's file conventions: UTF-8, '\n' line
// endings, '.' decimal separator, 17 significant digits for doubles.
class CsvWriter {
public:
    CsvWriter(const std::string& path, const std::vector<std::string>& header);

    void row(const std::vector<double>& values);
    void row_mixed(const std::vector<std::string>& values);

    static std::string format(double v);

private:
    std::ofstream out_;
};

} // namespace zigzag
