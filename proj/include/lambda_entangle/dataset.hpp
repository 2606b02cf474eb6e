// dataset.hpp — time-indexed tables of computed scalars with deterministic
// CSV/JSON export. Identical config and precision give byte-identical files.
#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace lambda_entangle::dataset {

struct Column {
    std::string name;  // unit-annotated, e.g. "t_ns", "s_fo_nats"
    std::vector<double> values;
};

struct CurveDataset {
    std::vector<std::pair<std::string, std::string>> meta;  // resolved config
    std::vector<Column> columns;

    std::size_t rows() const { return columns.empty() ? 0 : columns.front().values.size(); }
    void add_column(std::string name, std::vector<double> values);
    void add_meta(std::string key, std::string value);
};

// %.{digits}g rendering; digits must lie in [6, 17].
std::string format_significant(double value, int digits);

// Comma-separated with a header row; LF newlines; no trailing separator.
void write_csv(std::ostream& os, const CurveDataset& ds, int digits);

// One object {"meta": {...}, "columns": {...}} with insertion order preserved;
// values are rounded to the requested significant digits before serialization.
void write_json(std::ostream& os, const CurveDataset& ds, int digits);

}  // namespace lambda_entangle::dataset
