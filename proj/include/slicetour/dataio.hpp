#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "slicetour/linalg.hpp"

namespace slicetour {

struct CsvOptions {
    // Non-numeric column carried as group labels and excluded from p.
    std::optional<std::string> label_column;
    // Slicing needs p >= 3; set lower only for generic ingestion.
    int min_numeric_columns = 3;
};

// Comma-separated, mandatory header row, '.' decimal separator. Every cell of
// a numeric column must parse completely as a finite double; failures name
// the 1-based row (counting the header as row 1) and the column.
Dataset read_csv(const std::filesystem::path& path, const CsvOptions& options = {});

// Writes with 17 significant digits, so read_csv(write_csv(d)) is exact.
// The label column, if any, is written first.
void write_csv(const std::filesystem::path& path, const Dataset& data);

// Subtract column means.
Dataset center(Dataset data);

// Center, then divide each column by its sample standard deviation (n - 1).
// Throws DomainError for n < 2 or a constant column.
Dataset standardize(Dataset data);

// Divide every value by the largest row norm so that it becomes 1.
Dataset rescale_unit_radius(Dataset data);

double max_row_norm(const Matrix& values);

} // namespace slicetour
