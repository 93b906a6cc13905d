#include "nlipm/io.hpp"

#include "nlipm/errors.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace nlipm::io {

namespace {

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

bool parse_double(std::string_view s, double& out) {
    s = trim(s);
    if (s.empty()) return false;
    if (s.front() == '+') s.remove_prefix(1);
    const auto r = std::from_chars(s.data(), s.data() + s.size(), out);
    return r.ec == std::errc() && r.ptr == s.data() + s.size();
}

bool parse_index(std::string_view s, std::size_t& out) {
    s = trim(s);
    if (s.empty()) return false;
    const auto r = std::from_chars(s.data(), s.data() + s.size(), out);
    return r.ec == std::errc() && r.ptr == s.data() + s.size();
}

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const auto pos = line.find(sep, start);
        out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

std::vector<std::string_view> split_blank(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        const std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
        if (i > start) out.push_back(line.substr(start, i - start));
    }
    return out;
}

Matrix to_matrix(const std::vector<std::vector<double>>& rows) {
    if (rows.empty()) return {};
    Matrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.front().size()));
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < rows[r].size(); ++c)
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
    return m;
}

}  // namespace

std::string format_double(double x) {
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, r.ptr);
}

graph::SparseGraph read_edge_list(std::istream& in) {
    std::vector<graph::Edge> edges;
    std::size_t declared = 0;
    bool hasDeclared = false;
    std::size_t maxId = 0;
    std::string line;
    std::size_t lineNo = 0;
    while (std::getline(in, line)) {
        ++lineNo;
        const auto t = trim(line);
        if (t.empty()) continue;
        if (t.front() == '#') {
            const auto fields = split_blank(t.substr(1));
            if (fields.size() == 2 && fields[0] == "vertices") {
                if (!parse_index(fields[1], declared)) throw ParseError("bad vertex count", lineNo);
                hasDeclared = true;
            }
            continue;
        }
        const auto fields = split_blank(t);
        if (fields.size() != 3) throw ParseError("expected three fields i j w", lineNo);
        graph::Edge e{};
        if (!parse_index(fields[0], e.i) || !parse_index(fields[1], e.j))
            throw ParseError("vertex ids must be nonnegative integers", lineNo);
        if (!parse_double(fields[2], e.w) || !(e.w > 0.0)) throw ParseError("weight must be a positive number", lineNo);
        if (e.i == e.j) throw ParseError("self-loop", lineNo);
        maxId = std::max({maxId, e.i, e.j});
        edges.push_back(e);
    }
    std::size_t n = edges.empty() ? 0 : maxId + 1;
    if (hasDeclared) {
        if (!edges.empty() && declared <= maxId) throw ParseError("vertex id exceeds declared vertex count", 0);
        n = declared;
    }
    try {
        return graph::SparseGraph(n, std::move(edges));
    } catch (const std::exception& e) {
        throw ParseError(e.what(), 0);
    }
}

graph::SparseGraph read_edge_list_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path, 0);
    return read_edge_list(in);
}

void write_edge_list(std::ostream& out, const graph::SparseGraph& g) {
    out << "# vertices " << g.vertex_count() << '\n';
    for (const auto& e : g.edges()) out << e.i << '\t' << e.j << '\t' << format_double(e.w) << '\n';
}

Matrix read_points_csv(std::istream& in) {
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t lineNo = 0;
    while (std::getline(in, line)) {
        ++lineNo;
        if (trim(line).empty()) continue;
        std::vector<double> row;
        for (auto field : split(line, ',')) {
            double x = 0.0;
            if (!parse_double(field, x)) throw ParseError("non-numeric field", lineNo);
            row.push_back(x);
        }
        if (!rows.empty() && row.size() != rows.front().size()) throw ParseError("inconsistent column count", lineNo);
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ParseError("no rows", 0);
    return to_matrix(rows);
}

void write_points_csv(std::ostream& out, const Matrix& points) {
    for (Eigen::Index r = 0; r < points.rows(); ++r) {
        for (Eigen::Index c = 0; c < points.cols(); ++c) {
            if (c) out << ',';
            out << format_double(points(r, c));
        }
        out << '\n';
    }
}

void write_partition_csv(std::ostream& out, const graph::Partition& p) {
    out << "vertex,label\n";
    for (std::size_t v = 0; v < p.vertex_count(); ++v) out << v << ',' << p.labels()[v] << '\n';
}

graph::Partition read_partition_csv(std::istream& in) {
    std::vector<int> labels;
    std::string line;
    std::size_t lineNo = 0;
    while (std::getline(in, line)) {
        ++lineNo;
        const auto t = trim(line);
        if (t.empty() || (lineNo == 1 && t == "vertex,label")) continue;
        const auto fields = split(t, ',');
        std::size_t v = 0;
        std::size_t label = 0;
        if (fields.size() != 2 || !parse_index(fields[0], v) || !parse_index(fields[1], label))
            throw ParseError("expected vertex,label", lineNo);
        if (v != labels.size()) throw ParseError("vertices must be listed in order", lineNo);
        labels.push_back(static_cast<int>(label));
    }
    try {
        return graph::Partition(std::move(labels));
    } catch (const std::exception& e) {
        throw ParseError(e.what(), 0);
    }
}

Matrix read_matrix_csv(std::istream& in, std::vector<std::string>* header) {
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t lineNo = 0;
    bool first = true;
    while (std::getline(in, line)) {
        ++lineNo;
        if (trim(line).empty()) continue;
        const auto fields = split(line, ',');
        std::vector<double> row;
        row.reserve(fields.size());
        bool numeric = true;
        for (auto field : fields) {
            double x = 0.0;
            if (!parse_double(field, x)) {
                numeric = false;
                break;
            }
            row.push_back(x);
        }
        if (!numeric) {
            if (!first) throw ParseError("non-numeric field", lineNo);
            if (header) {
                header->clear();
                for (auto field : fields) header->emplace_back(trim(field));
            }
            first = false;
            continue;
        }
        first = false;
        if (!rows.empty() && row.size() != rows.front().size()) throw ParseError("inconsistent column count", lineNo);
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ParseError("no data rows", 0);
    return to_matrix(rows);
}

void write_tradeoff_csv(std::ostream& out, const std::vector<spca::SparsePcaResult>& rows) {
    out << "alpha,cardinality,relative_variance,lambda\n";
    for (const auto& r : rows)
        out << format_double(r.alpha) << ',' << r.cardinality << ',' << format_double(r.relativeVariance) << ','
            << format_double(r.objective) << '\n';
}

void write_component_csv(std::ostream& out, const spca::DataMatrix& X, const spca::SparsePcaResult& r) {
    out << "feature_index,value\n";
    for (Eigen::Index k = 0; k < r.component.size(); ++k)
        if (r.component[k] != 0.0)
            out << X.original_index(static_cast<std::size_t>(k)) << ',' << format_double(r.component[k]) << '\n';
}

}  // namespace nlipm::io
