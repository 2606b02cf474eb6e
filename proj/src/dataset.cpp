#include "lambda_entangle/dataset.hpp"

#include <cstdio>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

namespace lambda_entangle::dataset {

void CurveDataset::add_column(std::string name, std::vector<double> values) {
    if (!columns.empty() && values.size() != columns.front().values.size()) {
        throw std::invalid_argument("CurveDataset::add_column: ragged column '" + name + "'");
    }
    columns.push_back(Column{std::move(name), std::move(values)});
}

void CurveDataset::add_meta(std::string key, std::string value) {
    meta.emplace_back(std::move(key), std::move(value));
}

std::string format_significant(double value, int digits) {
    if (digits < 6 || digits > 17) {
        throw std::invalid_argument("format_significant: digits must be in [6, 17]");
    }
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.*g", digits, value);
    return buf;
}

void write_csv(std::ostream& os, const CurveDataset& ds, int digits) {
    for (std::size_t c = 0; c < ds.columns.size(); ++c) {
        if (c > 0) os << ',';
        os << ds.columns[c].name;
    }
    os << '\n';
    for (std::size_t r = 0; r < ds.rows(); ++r) {
        for (std::size_t c = 0; c < ds.columns.size(); ++c) {
            if (c > 0) os << ',';
            os << format_significant(ds.columns[c].values[r], digits);
        }
        os << '\n';
    }
}

void write_json(std::ostream& os, const CurveDataset& ds, int digits) {
    nlohmann::ordered_json root;
    nlohmann::ordered_json meta = nlohmann::ordered_json::object();
    for (const auto& [key, value] : ds.meta) meta[key] = value;
    root["meta"] = std::move(meta);
    nlohmann::ordered_json columns = nlohmann::ordered_json::object();
    for (const Column& col : ds.columns) {
        nlohmann::ordered_json values = nlohmann::ordered_json::array();
        for (double v : col.values) {
            values.push_back(std::stod(format_significant(v, digits)));
        }
        columns[col.name] = std::move(values);
    }
    root["columns"] = std::move(columns);
    os << root.dump(2) << '\n';
}

}  // namespace lambda_entangle::dataset
