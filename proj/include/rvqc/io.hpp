// Copyright 2026 The rvqc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// CSV and text output helpers. Every floating-point value is printed with 17
// significant digits, and every file is written to a temporary sibling first
// and renamed into place.

#pragma once

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>
#include <string>
#include <system_error>

#include "rvqc/error.hpp"
#include "rvqc/types.hpp"

namespace rvqc::io {

/// Shortest-safe round-trip representation: 17 significant digits.
inline std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

struct IoError : Error {
    using Error::Error;
};

/// Writes `path` atomically: the content goes to "<path>.tmp" and is renamed over `path`.
inline void write_atomic(const std::filesystem::path& path, const std::function<void(std::ostream&)>& body) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
        body(out);
        out.flush();
        if (!out) throw IoError("failed writing " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw IoError("cannot rename " + tmp.string() + " to " + path.string() + ": " + ec.message());
}

inline void write_atomic(const std::filesystem::path& path, const std::string& content) {
    write_atomic(path, [&](std::ostream& os) { os << content; });
}

/// Square matrix with a header row of column (qubit) indices and the row
/// index in the first column.
inline void write_matrix_csv(std::ostream& os, const RealMatrix& m) {
    os << "qubit";
    for (Eigen::Index c = 0; c < m.cols(); ++c) os << ',' << c;
    os << '\n';
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        os << r;
        for (Eigen::Index c = 0; c < m.cols(); ++c) os << ',' << format_double(m(r, c));
        os << '\n';
    }
}

/// Complex matrix as rows of interleaved re,im pairs.
inline void write_complex_matrix_csv(std::ostream& os, const ComplexMatrix& m) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            if (c) os << ',';
            os << format_double(m(r, c).real()) << ',' << format_double(m(r, c).imag());
        }
        os << '\n';
    }
}

/// Reads what write_matrix_csv wrote.
inline RealMatrix read_matrix_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw IoError("matrix csv: missing header");
    std::vector<std::vector<double>> rows;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string cell;
        std::getline(ls, cell, ',');
        std::vector<double> row;
        while (std::getline(ls, cell, ',')) row.push_back(std::stod(cell));
        rows.push_back(std::move(row));
    }
    RealMatrix m(static_cast<Eigen::Index>(rows.size()), rows.empty() ? 0 : static_cast<Eigen::Index>(rows[0].size()));
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (static_cast<Eigen::Index>(rows[r].size()) != m.cols()) throw IoError("matrix csv: ragged rows");
        for (std::size_t c = 0; c < rows[r].size(); ++c) {
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
        }
    }
    return m;
}

}  // namespace rvqc::io
