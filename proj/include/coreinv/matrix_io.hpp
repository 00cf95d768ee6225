#pragma once

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "coreinv/matrix.hpp"

namespace coreinv {

// Text format: first line "m n", then m lines of n complex literals.
// Literals: `a`, `ai`, `a+bi`, `a-bi` with decimal reals (exponents allowed).

/// Parses one complex literal. Bare `i`, `+i`, `-i`, `3+i`, `3-i` are accepted.
inline cplx parse_complex(const std::string& token) {
    const char* p = token.c_str();
    const char* end = p + token.size();
    auto read_coeff = [&](double& out) -> bool {
        // Reads a signed coefficient; an 'i' with no digits means coefficient 1.
        char* stop = nullptr;
        double v = std::strtod(p, &stop);
        if (stop == p) {
            double sign = 1.0;
            if (*p == '+') ++p;
            else if (*p == '-') { sign = -1.0; ++p; }
            if (*p != 'i') return false;
            out = sign;
            return true;
        }
        p = stop;
        out = v;
        return true;
    };

    double first = 0.0;
    if (!read_coeff(first)) throw ParseError("bad complex literal: '" + token + "'");
    if (p == end) return cplx(first, 0.0);
    if (*p == 'i') {
        ++p;
        if (p != end) throw ParseError("bad complex literal: '" + token + "'");
        return cplx(0.0, first);
    }
    if (*p != '+' && *p != '-') throw ParseError("bad complex literal: '" + token + "'");
    double second = 0.0;
    if (!read_coeff(second)) throw ParseError("bad complex literal: '" + token + "'");
    if (p == end || *p != 'i') throw ParseError("bad complex literal: '" + token + "'");
    ++p;
    if (p != end) throw ParseError("bad complex literal: '" + token + "'");
    return cplx(first, second);
}

/// Shortest text form that round-trips through parse_complex.
inline std::string format_complex(const cplx& z) {
    char buf[64];
    const double re = z.real();
    const double im = z.imag();
    if (im == 0.0) {
        std::snprintf(buf, sizeof(buf), "%.17g", re);
        return buf;
    }
    if (re == 0.0) {
        std::snprintf(buf, sizeof(buf), "%.17gi", im);
        return buf;
    }
    std::snprintf(buf, sizeof(buf), "%.17g%+.17gi", re, im);
    return buf;
}

inline ComplexMatrix read_matrix_text(std::istream& in) {
    int m = 0, n = 0;
    if (!(in >> m >> n)) throw ParseError("expected header 'rows cols'");
    if (m <= 0 || n <= 0) throw ParseError("matrix dimensions must be positive");
    std::vector<cplx> entries;
    entries.reserve(static_cast<std::size_t>(m) * n);
    std::string token;
    for (int k = 0; k < m * n; ++k) {
        if (!(in >> token)) throw ParseError("unexpected end of matrix data");
        entries.push_back(parse_complex(token));
    }
    return ComplexMatrix(m, n, std::move(entries));
}

inline void write_matrix_text(std::ostream& out, const ComplexMatrix& a) {
    out << a.rows() << " " << a.cols() << "\n";
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j) {
            if (j) out << " ";
            out << format_complex(a(i, j));
        }
        out << "\n";
    }
}

inline nlohmann::ordered_json matrix_to_json(const ComplexMatrix& a) {
    nlohmann::ordered_json j;
    j["rows"] = a.rows();
    j["cols"] = a.cols();
    auto data = nlohmann::ordered_json::array();
    for (const cplx& z : a.data()) data.push_back({z.real(), z.imag()});
    j["data"] = std::move(data);
    return j;
}

inline ComplexMatrix matrix_from_json(const nlohmann::json& j) {
    if (!j.contains("rows") || !j.contains("cols") || !j.contains("data"))
        throw ParseError("matrix JSON requires rows, cols, data");
    const int m = j.at("rows").get<int>();
    const int n = j.at("cols").get<int>();
    if (m <= 0 || n <= 0) throw ParseError("matrix dimensions must be positive");
    const auto& data = j.at("data");
    if (!data.is_array() || static_cast<int>(data.size()) != m * n)
        throw ParseError("matrix JSON data has wrong length");
    std::vector<cplx> entries;
    entries.reserve(data.size());
    for (const auto& e : data) {
        if (!e.is_array() || e.size() != 2) throw ParseError("matrix JSON entries are [re, im]");
        entries.emplace_back(e[0].get<double>(), e[1].get<double>());
    }
    return ComplexMatrix(m, n, std::move(entries));
}

enum class MatrixFormat { Text, Json };

/// Sniffs the format: a leading '{' means JSON, anything else the text format.
inline ComplexMatrix read_matrix(std::istream& in, MatrixFormat* format_out = nullptr) {
    int c = in.peek();
    while (c == ' ' || c == '\n' || c == '\t' || c == '\r') {
        in.get();
        c = in.peek();
    }
    if (c == '{') {
        nlohmann::json j;
        try {
            in >> j;
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(std::string("bad matrix JSON: ") + e.what());
        }
        if (format_out) *format_out = MatrixFormat::Json;
        return matrix_from_json(j);
    }
    if (format_out) *format_out = MatrixFormat::Text;
    return read_matrix_text(in);
}

inline ComplexMatrix read_matrix_file(const std::string& path, MatrixFormat* format_out = nullptr) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open matrix file: " + path);
    return read_matrix(in, format_out);
}

inline void write_matrix(std::ostream& out, const ComplexMatrix& a, MatrixFormat format) {
    if (format == MatrixFormat::Json)
        out << matrix_to_json(a).dump(2) << "\n";
    else
        write_matrix_text(out, a);
}

inline void write_matrix_file(const std::string& path, const ComplexMatrix& a,
                              MatrixFormat format) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open output file: " + path);
    write_matrix(out, a, format);
}

}  // namespace coreinv
