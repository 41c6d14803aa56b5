// csvio.hpp — CSV emission with a pinned numeric format

#pragma once

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "pblock/errors.hpp"

namespace pblock {

// Scientific notation, 9 significant digits, '.' decimal. The format is part
// of the output contract: reruns must produce byte-identical CSV bodies.
inline std::string sci(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.8e", v);
    return buf;
}

class CsvWriter {
public:
    CsvWriter(const std::string& path, const std::vector<std::string>& header)
        : out_(path, std::ios::binary) {
        if (!out_) throw Error("csv: cannot open " + path);
        row(header);
    }

    void row(const std::vector<std::string>& cells) {
        for (size_t i = 0; i < cells.size(); ++i) {
            if (i) out_ << ',';
            out_ << cells[i];
        }
        out_ << '\n';  // LF endings on every platform
    }

private:
    std::ofstream out_;
};

} // namespace pblock
