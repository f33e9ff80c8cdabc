#include "dtsne/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>

namespace dtsne::io {

namespace {

std::string slurp(const std::filesystem::path& path) {
    std::error_code ec;
    if (!std::filesystem::is_regular_file(path, ec)) {
        throw Error(ErrorCode::FileNotFound, "no such file: " + path.string());
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::IoError, "cannot open " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) {
            lines.push_back(text.substr(start));
            break;
        }
        lines.push_back(text.substr(start, end - start));
        start = end + 1;
    }
    while (!lines.empty() && lines.back().empty()) {
        lines.pop_back();
    }
    return lines;
}

[[noreturn]] void parse_fail(const std::filesystem::path& path, std::size_t line, std::size_t col,
                             const std::string& what) {
    throw Error(ErrorCode::ParseError,
                path.string() + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + what);
}

void append_number(std::string& out, double v) {
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    out.append(buf, end);
}

void write_text(const std::string& text, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error(ErrorCode::IoError, "cannot open " + path.string() + " for writing");
    }
    out << text;
    out.close();
    if (!out) {
        throw Error(ErrorCode::IoError, "failed writing " + path.string());
    }
}

}  // namespace

Matrix TsvTable::to_matrix() const {
    Matrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(n_cols));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < n_cols; ++j) {
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
        }
    }
    return m;
}

TsvTable TsvTable::from_matrix(const Matrix& m) {
    TsvTable t;
    t.n_cols = static_cast<std::size_t>(m.cols());
    t.rows.reserve(static_cast<std::size_t>(m.rows()));
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        t.rows.emplace_back(m.row(i).begin(), m.row(i).end());
    }
    return t;
}

TsvTable read_tsv(const std::filesystem::path& path) {
    const std::string text = slurp(path);
    const auto lines = split_lines(text);
    if (lines.empty()) {
        parse_fail(path, 1, 1, "no rows");
    }

    TsvTable table;
    table.rows.reserve(lines.size());
    for (std::size_t li = 0; li < lines.size(); ++li) {
        std::string_view line = lines[li];
        std::vector<double> row;
        std::size_t pos = 0;
        std::size_t col = 1;
        while (true) {
            auto tab = line.find('\t', pos);
            std::string_view field = line.substr(pos, tab == std::string_view::npos ? std::string_view::npos : tab - pos);
            if (field.empty()) {
                parse_fail(path, li + 1, col, "empty field");
            }
            double v = 0;
            auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
            if (ec != std::errc() || ptr != field.data() + field.size()) {
                parse_fail(path, li + 1, col, "not a number: '" + std::string(field) + "'");
            }
            if (!std::isfinite(v)) {
                parse_fail(path, li + 1, col, "non-finite value");
            }
            row.push_back(v);
            if (tab == std::string_view::npos) {
                break;
            }
            pos = tab + 1;
            ++col;
        }

        if (li == 0) {
            table.n_cols = row.size();
        } else if (row.size() != table.n_cols) {
            throw Error(ErrorCode::RaggedRows, path.string() + ": line " + std::to_string(li + 1) + " has " +
                                                   std::to_string(row.size()) + " fields, expected " +
                                                   std::to_string(table.n_cols));
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

void write_tsv(const TsvTable& table, const std::filesystem::path& path) {
    std::string out;
    out.reserve(table.rows.size() * table.n_cols * 20);
    for (const auto& row : table.rows) {
        if (row.size() != table.n_cols) {
            throw Error(ErrorCode::RaggedRows, "row width differs from table width");
        }
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (j) {
                out.push_back('\t');
            }
            append_number(out, row[j]);
        }
        out.push_back('\n');
    }
    write_text(out, path);
}

std::vector<int> read_labels(const std::filesystem::path& path) {
    const auto table = read_tsv(path);
    if (table.n_cols != 1) {
        throw Error(ErrorCode::ParseError, path.string() + ": label file must have exactly one column");
    }
    std::vector<int> labels;
    labels.reserve(table.rows.size());
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        double v = table.rows[i][0];
        if (v != std::floor(v) || std::abs(v) > 1e9) {
            parse_fail(path, i + 1, 1, "label is not an integer");
        }
        labels.push_back(static_cast<int>(v));
    }
    return labels;
}

void write_labels(const std::vector<int>& labels, const std::filesystem::path& path) {
    std::string out;
    for (int l : labels) {
        out += std::to_string(l);
        out.push_back('\n');
    }
    write_text(out, path);
}

Dataset dataset_from_tsv(const std::filesystem::path& path, const std::optional<std::filesystem::path>& label_path) {
    Dataset data;
    data.points = read_tsv(path).to_matrix();
    data.name = path.stem().string();
    if (label_path) {
        data.labels = read_labels(*label_path);
    }
    validate_dataset(data);
    return data;
}

void dataset_to_tsv(const Dataset& data, const std::filesystem::path& path) {
    write_tsv(TsvTable::from_matrix(data.points), path);
}

Embedding embedding_from_tsv(const std::filesystem::path& path) {
    auto table = read_tsv(path);
    if (table.n_cols != 2 && table.n_cols != 3) {
        throw Error(ErrorCode::ParseError, path.string() + ": embedding must have 2 or 3 columns, found " +
                                               std::to_string(table.n_cols));
    }
    Embedding e;
    e.coords = table.to_matrix();
    e.dim = static_cast<int>(table.n_cols);
    return e;
}

void embedding_to_tsv(const Embedding& embedding, const std::filesystem::path& path) {
    write_tsv(TsvTable::from_matrix(embedding.coords), path);
}

}  // namespace dtsne::io
