#include "slicetour/dataio.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include "slicetour/error.hpp"

namespace slicetour {

namespace {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

std::string unquote(std::string s) {
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"') return s.substr(1, s.size() - 2);
    return s;
}

std::vector<std::string> split_row(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    bool quoted = false;
    for (char ch : line) {
        if (ch == '"') {
            quoted = !quoted;
            cell += ch;
        } else if (ch == ',' && !quoted) {
            cells.push_back(trim(cell));
            cell.clear();
        } else {
            cell += ch;
        }
    }
    cells.push_back(trim(cell));
    return cells;
}

std::optional<double> parse_number(const std::string& cell) {
    double value = 0.0;
    const char* begin = cell.data();
    const char* end = begin + cell.size();
    if (begin != end && *begin == '+') ++begin;
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end || !std::isfinite(value)) return std::nullopt;
    return value;
}

} // namespace

Dataset read_csv(const std::filesystem::path& path, const CsvOptions& options) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());

    std::string line;
    if (!std::getline(in, line) || trim(line).empty()) {
        throw ParseError(path.string() + ": file is empty");
    }
    if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
    std::vector<std::string> header = split_row(line);
    for (auto& h : header) h = unquote(h);

    int label_index = -1;
    if (options.label_column) {
        for (std::size_t j = 0; j < header.size(); ++j) {
            if (header[j] == *options.label_column) label_index = static_cast<int>(j);
        }
        if (label_index < 0) {
            throw ParseError(path.string() + ": label column '" + *options.label_column +
                             "' not found in header");
        }
    }
    std::vector<std::string> names;
    for (std::size_t j = 0; j < header.size(); ++j) {
        if (static_cast<int>(j) != label_index) names.push_back(header[j]);
    }
    const int p = static_cast<int>(names.size());
    if (p < options.min_numeric_columns) {
        throw ParseError(path.string() + ": need at least " +
                         std::to_string(options.min_numeric_columns) + " numeric columns, found " +
                         std::to_string(p));
    }

    std::vector<double> flat;
    std::vector<std::string> labels;
    std::size_t row_number = 1;
    while (std::getline(in, line)) {
        ++row_number;
        if (trim(line).empty()) continue;
        const auto cells = split_row(line);
        if (cells.size() != header.size()) {
            throw ParseError(path.string() + ": row " + std::to_string(row_number) + " has " +
                             std::to_string(cells.size()) + " cells, header has " +
                             std::to_string(header.size()));
        }
        for (std::size_t j = 0; j < cells.size(); ++j) {
            if (static_cast<int>(j) == label_index) {
                labels.push_back(unquote(cells[j]));
                continue;
            }
            const auto value = parse_number(cells[j]);
            if (!value) {
                throw ParseError(path.string() + ": row " + std::to_string(row_number) +
                                 ", column '" + header[j] + "': cannot parse '" + cells[j] +
                                 "' as a finite number");
            }
            flat.push_back(*value);
        }
    }
    const auto n = static_cast<Eigen::Index>(flat.size() / static_cast<std::size_t>(p));
    if (n == 0) throw ParseError(path.string() + ": no data rows");

    Matrix values = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                                   Eigen::RowMajor>>(flat.data(), n, p);
    Dataset data = make_dataset(std::move(values), std::move(names));
    data.labels = std::move(labels);
    if (options.label_column) data.label_column = *options.label_column;
    return data;
}

void write_csv(const std::filesystem::path& path, const Dataset& data) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path.string());
    const bool with_labels = !data.labels.empty();
    if (with_labels) out << (data.label_column.empty() ? "label" : data.label_column) << ',';
    for (int j = 0; j < data.p(); ++j) out << (j ? "," : "") << data.column_names[j];
    out << '\n';
    char buffer[32];
    for (int i = 0; i < data.n(); ++i) {
        if (with_labels) out << data.labels[static_cast<std::size_t>(i)] << ',';
        for (int j = 0; j < data.p(); ++j) {
            const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, data.values(i, j),
                                                 std::chars_format::general, 17);
            if (j) out << ',';
            out.write(buffer, ptr - buffer);
        }
        out << '\n';
    }
    if (!out) throw IoError("write failed for " + path.string());
}

Dataset center(Dataset data) {
    const Vector mean = data.values.colwise().mean();
    data.values.rowwise() -= mean.transpose();
    data.shift += mean.cwiseProduct(data.scale);
    data.centered = true;
    return data;
}

Dataset standardize(Dataset data) {
    if (data.n() < 2) throw DomainError("standardize needs at least 2 rows");
    data = center(std::move(data));
    for (int j = 0; j < data.p(); ++j) {
        const double sd = std::sqrt(data.values.col(j).squaredNorm() / (data.n() - 1));
        if (!(sd > 0.0)) {
            throw DomainError("column '" + data.column_names[j] + "' is constant");
        }
        data.values.col(j) /= sd;
        data.scale(j) *= sd;
    }
    data.scale_note += data.scale_note.empty() ? "standardized" : "; standardized";
    return data;
}

double max_row_norm(const Matrix& values) {
    return values.rows() == 0 ? 0.0 : values.rowwise().norm().maxCoeff();
}

Dataset rescale_unit_radius(Dataset data) {
    const double r = max_row_norm(data.values);
    if (!(r > 0.0)) throw DomainError("cannot rescale data with zero radius");
    data.values /= r;
    data.scale *= r;
    std::ostringstream note;
    note.precision(17);
    note << "rescaled by 1/" << r;
    data.scale_note += data.scale_note.empty() ? note.str() : "; " + note.str();
    return data;
}

} // namespace slicetour
