#ifndef DTSNE_IO_HPP
#define DTSNE_IO_HPP

#include <filesystem>
#include <optional>
#include <vector>

#include "dtsne/core.hpp"

namespace dtsne::io {

/**
 * @brief Headerless table of finite reals, one row per line, tab separated.
 */
struct TsvTable {
    std::vector<std::vector<double>> rows;
    std::size_t n_cols = 0;

    Matrix to_matrix() const;
    static TsvTable from_matrix(const Matrix& m);
};

/**
 * Parses a tab-separated file. A single trailing newline (or blank last line)
 * is accepted; anything else that is not a finite number raises ParseError
 * with the 1-based line and column.
 */
TsvTable read_tsv(const std::filesystem::path& path);

/// Writes the shortest representation of each value that parses back exactly.
void write_tsv(const TsvTable& table, const std::filesystem::path& path);

std::vector<int> read_labels(const std::filesystem::path& path);
void write_labels(const std::vector<int>& labels, const std::filesystem::path& path);

Dataset dataset_from_tsv(const std::filesystem::path& path,
                         const std::optional<std::filesystem::path>& label_path = std::nullopt);

void dataset_to_tsv(const Dataset& data, const std::filesystem::path& path);

/// Reads an embedding table; throws ParseError unless it has 2 or 3 columns.
Embedding embedding_from_tsv(const std::filesystem::path& path);

void embedding_to_tsv(const Embedding& embedding, const std::filesystem::path& path);

}  // namespace dtsne::io

#endif
