// SPDX-License-Identifier: Apache-2.0
#include "isacaf/grid_io.hpp"

#include "isacaf/error.hpp"
#include "text_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <regex>

namespace isacaf {

const char* to_string(Provenance p) noexcept {
    switch (p) {
        case Provenance::ClosedFormGeneral: return "closed_form_general";
        case Provenance::ClosedFormFast: return "closed_form_fast";
        case Provenance::MonteCarlo: return "monte_carlo";
        case Provenance::ExactEnumeration: return "exact_enumeration";
    }
    return "?";
}

Provenance provenance_from_string(const std::string& s) {
    for (auto p : {Provenance::ClosedFormGeneral, Provenance::ClosedFormFast, Provenance::MonteCarlo,
                   Provenance::ExactEnumeration})
        if (s == to_string(p)) return p;
    throw Error(ErrorCode::Parse, "unknown provenance '" + s + "'");
}

GridFormat grid_format_from_string(const std::string& s) {
    if (s == "long") return GridFormat::Long;
    if (s == "dense") return GridFormat::Dense;
    throw Error(ErrorCode::InvalidArgument, "grid format must be 'long' or 'dense', got '" + s + "'");
}

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

void write_dense_block(std::ostream& out, std::size_t n, const std::vector<double>& v) {
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t q = 0; q < n; ++q) {
            if (q) out << ',';
            out << format_number(v[k * n + q]);
        }
        out << '\n';
    }
}

template <typename Writer>
void save_to(const std::filesystem::path& path, Writer&& w) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
    w(out);
    out.flush();
    if (!out) throw Error(ErrorCode::Io, "write failed for " + path.string());
}

}  // namespace

void write_dpaf_csv(std::ostream& out, const DpafGrid& g, GridFormat fmt) {
    const std::size_t n = g.size();
    out << "# isacaf dpaf N=" << n << " rows=k(delay) cols=q(doppler)\n";
    if (fmt == GridFormat::Dense) {
        write_dense_block(out, n, g.squared());
        return;
    }
    out << "k,q,re,im,sq\n";
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t q = 0; q < n; ++q) {
            const cplx v = g.at(k, q);
            out << k << ',' << q << ',' << format_number(v.real()) << ',' << format_number(v.imag()) << ','
                << format_number(std::norm(v)) << '\n';
        }
}

void write_expectation_csv(std::ostream& out, const ExpectationGrid& g, GridFormat fmt) {
    const std::size_t n = g.n;
    out << "# isacaf expectation N=" << n << " rows=k(delay) cols=q(doppler) provenance=" << to_string(g.provenance);
    if (g.trials) out << " trials=" << g.trials;
    out << '\n';
    if (fmt == GridFormat::Dense) {
        write_dense_block(out, n, g.values);
        if (g.has_std_errors()) {
            out << "# std_errors\n";
            write_dense_block(out, n, g.std_errors);
        }
        return;
    }
    out << (g.has_std_errors() ? "k,q,value,stderr\n" : "k,q,value\n");
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t q = 0; q < n; ++q) {
            out << k << ',' << q << ',' << format_number(g.at(k, q));
            if (g.has_std_errors()) out << ',' << format_number(g.se(k, q));
            out << '\n';
        }
}

void save_expectation_csv(const std::filesystem::path& path, const ExpectationGrid& g, GridFormat fmt) {
    save_to(path, [&](std::ostream& out) { write_expectation_csv(out, g, fmt); });
}

void save_dpaf_csv(const std::filesystem::path& path, const DpafGrid& g, GridFormat fmt) {
    save_to(path, [&](std::ostream& out) { write_dpaf_csv(out, g, fmt); });
}

ExpectationGrid read_expectation_csv(std::istream& in) {
    std::string line;
    std::size_t n = 0;
    Provenance prov = Provenance::ClosedFormGeneral;
    std::size_t trials = 0;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::vector<std::string>> se_rows;
    std::vector<std::string> header;
    bool in_se_block = false;

    static const std::regex n_re("N=(\\d+)");
    static const std::regex prov_re("provenance=([a-z_]+)");
    static const std::regex trials_re("trials=(\\d+)");
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty() && line.front() == '#') {
            std::smatch m;
            if (std::regex_search(line, m, n_re)) n = std::stoul(m[1]);
            if (std::regex_search(line, m, prov_re)) prov = provenance_from_string(m[1]);
            if (std::regex_search(line, m, trials_re)) trials = std::stoul(m[1]);
            if (line.find("std_errors") != std::string::npos) in_se_block = true;
            continue;
        }
        auto tokens = detail::split_tokens(line);
        if (tokens.empty()) continue;
        if (tokens[0] == "k") {
            header = std::move(tokens);
            continue;
        }
        (in_se_block ? se_rows : rows).push_back(std::move(tokens));
    }

    if (header.empty()) {
        // Dense layout.
        if (n == 0) n = rows.size();
        if (rows.size() != n) throw Error(ErrorCode::Parse, "dense grid: expected " + std::to_string(n) + " rows");
        ExpectationGrid g(n, prov);
        g.trials = trials;
        for (std::size_t k = 0; k < n; ++k) {
            if (rows[k].size() != n) throw Error(ErrorCode::Parse, "dense grid: ragged row " + std::to_string(k));
            for (std::size_t q = 0; q < n; ++q) g.at(k, q) = detail::parse_real(rows[k][q]);
        }
        if (!se_rows.empty()) {
            if (se_rows.size() != n) throw Error(ErrorCode::Parse, "dense grid: std_errors block has wrong height");
            g.std_errors.resize(n * n);
            for (std::size_t k = 0; k < n; ++k) {
                if (se_rows[k].size() != n) throw Error(ErrorCode::Parse, "dense grid: ragged std_errors row");
                for (std::size_t q = 0; q < n; ++q) g.std_errors[k * n + q] = detail::parse_real(se_rows[k][q]);
            }
        }
        return g;
    }

    std::size_t value_col = 2;
    std::size_t se_col = 0;
    if (header.size() == 5 && header[4] == "sq") {
        value_col = 4;
    } else if (header.size() == 4 && header[3] == "stderr") {
        se_col = 3;
    } else if (header.size() != 3) {
        throw Error(ErrorCode::Parse, "unrecognized grid header");
    }
    if (n == 0) {
        const auto root = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(rows.size()))));
        n = root;
    }
    if (rows.size() != n * n)
        throw Error(ErrorCode::Parse, "long grid: expected " + std::to_string(n * n) + " data rows, got " +
                                          std::to_string(rows.size()));
    ExpectationGrid g(n, prov);
    g.trials = trials;
    if (se_col) g.std_errors.assign(n * n, 0.0);
    std::vector<bool> seen(n * n, false);
    for (const auto& r : rows) {
        if (r.size() != header.size()) throw Error(ErrorCode::Parse, "long grid: wrong field count");
        const auto k = static_cast<std::size_t>(detail::parse_real(r[0]));
        const auto q = static_cast<std::size_t>(detail::parse_real(r[1]));
        if (k >= n || q >= n) throw Error(ErrorCode::Parse, "long grid: index out of range");
        g.at(k, q) = detail::parse_real(r[value_col]);
        if (se_col) g.std_errors[k * n + q] = detail::parse_real(r[se_col]);
        seen[k * n + q] = true;
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end())
        throw Error(ErrorCode::Parse, "long grid: missing cells");
    return g;
}

ExpectationGrid load_expectation_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::Io, "cannot open grid file " + path.string());
    return read_expectation_csv(in);
}

}  // namespace isacaf
