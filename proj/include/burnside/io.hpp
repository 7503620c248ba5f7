#pragma once

#include "burnside/config.hpp"
#include "burnside/family.hpp"
#include "burnside/gfp.hpp"
#include "burnside/intlat.hpp"
#include "burnside/ring.hpp"

#include <json.hpp>

#include <cstddef>
#include <string>
#include <vector>

// Serialization: RFC-4180 CSV, JSON with integers as decimal strings, and
// DOT graphs of the subgroup lattice. Everything here is deterministic:
// identical inputs produce byte-identical text.

namespace burnside::io {

using intlat::IntMatrix;

inline std::string csv_field(const std::string& s) {
    bool needs_quotes = s.find_first_of(",\"\r\n") != std::string::npos;
    if (!needs_quotes) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

inline std::string csv_line(const std::vector<std::string>& fields) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out += ',';
        out += csv_field(fields[i]);
    }
    out += '\n';
    return out;
}

// Full quoted-field parser; accepts LF and CRLF line ends.
inline std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string field;
    bool in_quotes = false;
    bool field_started = false;
    std::size_t i = 0;
    auto end_field = [&] {
        row.push_back(std::move(field));
        field.clear();
        field_started = false;
    };
    auto end_row = [&] {
        end_field();
        rows.push_back(std::move(row));
        row.clear();
    };
    while (i < text.size()) {
        char c = text[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    i += 2;
                    continue;
                }
                in_quotes = false;
                ++i;
                continue;
            }
            field += c;
            ++i;
            continue;
        }
        if (c == '"' && !field_started && field.empty()) {
            in_quotes = true;
            field_started = true;
            ++i;
            continue;
        }
        if (c == ',') {
            end_field();
            ++i;
            continue;
        }
        if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') {
            end_row();
            i += 2;
            continue;
        }
        if (c == '\n') {
            end_row();
            ++i;
            continue;
        }
        field += c;
        field_started = true;
        ++i;
    }
    if (in_quotes) throw domain_error("csv: unterminated quoted field");
    if (field_started || !field.empty() || !row.empty()) end_row();
    return rows;
}

inline std::string write_matrix_csv(const IntMatrix& m) {
    std::string out;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        std::vector<std::string> fields;
        fields.reserve(m.cols());
        for (std::size_t j = 0; j < m.cols(); ++j) fields.push_back(m.at(i, j).str());
        out += csv_line(fields);
    }
    return out;
}

inline Int parse_int(const std::string& s) {
    if (s.empty()) throw domain_error("matrix: empty entry");
    std::size_t start = s[0] == '-' ? 1 : 0;
    if (start == s.size()) throw domain_error("matrix: bare sign");
    for (std::size_t i = start; i < s.size(); ++i)
        if (s[i] < '0' || s[i] > '9')
            throw domain_error("matrix: entry is not a decimal integer");
    return Int(s);
}

inline IntMatrix read_matrix_csv(const std::string& text) {
    auto rows = parse_csv(text);
    if (rows.empty()) return IntMatrix(0, 0);
    IntMatrix m(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != rows[0].size())
            throw domain_error("matrix: ragged csv rows");
        for (std::size_t j = 0; j < rows[i].size(); ++j)
            m.at(i, j) = parse_int(rows[i][j]);
    }
    return m;
}

inline std::string write_matrix_json(const IntMatrix& m) {
    nlohmann::ordered_json j;
    j["rows"] = m.rows();
    j["cols"] = m.cols();
    j["entries"] = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        auto row = nlohmann::ordered_json::array();
        for (std::size_t jx = 0; jx < m.cols(); ++jx) row.push_back(m.at(i, jx).str());
        j["entries"].push_back(std::move(row));
    }
    return j.dump(2) + "\n";
}

inline IntMatrix read_matrix_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    IntMatrix m(j.at("rows").get<std::size_t>(), j.at("cols").get<std::size_t>());
    const auto& entries = j.at("entries");
    if (entries.size() != m.rows()) throw domain_error("matrix: row count mismatch");
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (entries[i].size() != m.cols())
            throw domain_error("matrix: column count mismatch");
        for (std::size_t jx = 0; jx < m.cols(); ++jx)
            m.at(i, jx) = parse_int(entries[i][jx].get<std::string>());
    }
    return m;
}

inline std::string generators_field(const gfp::Subspace& s) {
    std::string out;
    for (std::size_t r = 0; r < s.basis().size(); ++r) {
        if (r) out += ';';
        const auto& v = s.basis()[r];
        for (std::size_t j = 0; j < v.size(); ++j) {
            if (j) out += ',';
            out += std::to_string(v[j]);
        }
    }
    return out;
}

// Highlight selector: "E_4" marks the support of the boundary image of the
// fourth canonical label, "E_4-E_3" the support of the difference image.
inline std::vector<std::size_t> highlight_support(const GroupFamily& fam,
                                                  const std::string& selector) {
    if (fam.kind() != FamilyKind::elementary_abelian)
        throw domain_error("highlight: only defined for the elementary family");
    const auto& full = ring::full_subspace_basis(fam);
    auto parse_index = [&](const std::string& token) -> std::size_t {
        if (token.size() < 3 || token[0] != 'E' || token[1] != '_')
            throw domain_error("highlight: expected E_<index> or E_<i>-E_<j>");
        std::size_t idx = 0;
        for (std::size_t i = 2; i < token.size(); ++i) {
            if (token[i] < '0' || token[i] > '9')
                throw domain_error("highlight: malformed index");
            idx = idx * 10 + static_cast<std::size_t>(token[i] - '0');
        }
        if (idx < 1 || idx > full.size())
            throw domain_error("highlight: index out of range");
        return idx - 1;
    };

    auto dash = selector.find('-');
    ring::Element img = [&] {
        if (dash == std::string::npos)
            return ring::t_map(fam, ring::unit_element(fam, full[parse_index(selector)]));
        auto plus = full[parse_index(selector.substr(0, dash))];
        auto minus = full[parse_index(selector.substr(dash + 1))];
        return ring::t_prime_image_full(fam, std::make_pair(plus, minus));
    }();

    std::vector<std::size_t> support;
    for (std::size_t i = 0; i < img.coeffs.size(); ++i)
        if (img.coeffs[i] != 0) support.push_back(i);
    return support;
}

// Subgroup lattice as a directed graph: one vertex per canonical basis label,
// one edge per index-p covering containment, pointing at the supergroup.
inline std::string write_lattice_dot(const GroupFamily& fam,
                                     const std::vector<std::size_t>& highlight) {
    std::string out = "digraph subgroup_lattice {\n  rankdir=BT;\n  node [shape=ellipse];\n";
    auto highlighted = [&](std::size_t i) {
        for (std::size_t h : highlight)
            if (h == i) return true;
        return false;
    };
    if (fam.kind() == FamilyKind::elementary_abelian) {
        const auto& full = ring::full_subspace_basis(fam);
        for (std::size_t i = 0; i < full.size(); ++i) {
            out += "  e" + std::to_string(i + 1) + " [label=\"e_" + std::to_string(i + 1) +
                   "\"";
            if (highlighted(i)) out += ",style=filled,fillcolor=gold";
            out += "];\n";
        }
        for (std::size_t i = 0; i < full.size(); ++i)
            for (std::size_t j = 0; j < full.size(); ++j) {
                if (full[j].dim() != full[i].dim() + 1) continue;
                if (!gfp::contains_subspace(full[j], full[i])) continue;
                out += "  e" + std::to_string(i + 1) + " -> e" + std::to_string(j + 1) +
                       ";\n";
            }
        out += "}\n";
        return out;
    }

    auto pairs = ring::twist_pairs(fam);
    auto inside = [&](const ring::TwistPair& small, const ring::TwistPair& big) {
        if (small.nu >= big.nu) return false;
        // test the generator (p^(k-nu), rho) of the smaller subgroup
        if (small.nu == 0) return true;
        int x = 1;
        for (int i = 0; i < fam.k() - small.nu; ++i) x *= fam.p();
        int step = 1;
        for (int i = 0; i < fam.k() - big.nu; ++i) step *= fam.p();
        if (x % step != 0) return false;
        return (x / step) % fam.p() * big.rho % fam.p() == small.rho % fam.p();
    };
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        out += "  t" + std::to_string(i + 1) + " [label=\"(" + std::to_string(pairs[i].nu) +
               "," + std::to_string(pairs[i].rho) + ")\"";
        if (highlighted(i)) out += ",style=filled,fillcolor=gold";
        out += "];\n";
    }
    for (std::size_t i = 0; i < pairs.size(); ++i)
        for (std::size_t j = 0; j < pairs.size(); ++j) {
            if (pairs[j].nu != pairs[i].nu + 1) continue;
            if (!inside(pairs[i], pairs[j])) continue;
            out += "  t" + std::to_string(i + 1) + " -> t" + std::to_string(j + 1) + ";\n";
        }
    out += "}\n";
    return out;
}

}  // namespace burnside::io
