#include "burnside/io.hpp"

#include <cstdio>
#include <istream>
#include <ostream>

#include "json.hpp"

namespace burnside {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json metadata_json(const OutputMetadata& meta) {
    ordered_json m;
    m["command"] = meta.command;
    ordered_json config = ordered_json::object();
    for (const auto& [key, value] : meta.config) config[key] = value;
    m["config"] = config;
    if (meta.has_seed) m["seed"] = meta.seed;
    m["version"] = meta.version;
    return m;
}

}  // namespace

void write_metadata_csv(std::ostream& out, const OutputMetadata& meta) {
    out << "# command: " << meta.command << "\n";
    for (const auto& [key, value] : meta.config) out << "# " << key << ": " << value << "\n";
    if (meta.has_seed) out << "# seed: " << meta.seed << "\n";
    out << "# version: " << meta.version << "\n";
}

std::string fmt17(double x) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.17g", x);
    return buffer;
}

void write_matrix_csv(std::ostream& out, const RowStochasticMatrix& matrix,
                      const OutputMetadata& meta) {
    write_metadata_csv(out, meta);
    for (int i = 0; i < matrix.order(); ++i) {
        for (int j = 0; j < matrix.order(); ++j) {
            if (j) out << ",";
            out << fmt17(to_double(matrix.at(i, j)));
        }
        out << "\n";
    }
}

void write_matrix_json(std::ostream& out, const RowStochasticMatrix& matrix,
                       const OutputMetadata& meta) {
    ordered_json doc;
    doc["metadata"] = metadata_json(meta);
    doc["order"] = matrix.order();
    ordered_json rows = ordered_json::array();
    for (int i = 0; i < matrix.order(); ++i) {
        ordered_json row = ordered_json::array();
        for (int j = 0; j < matrix.order(); ++j) row.push_back(format_rational(matrix.at(i, j)));
        rows.push_back(std::move(row));
    }
    doc["rows"] = rows;
    out << doc.dump(2) << "\n";
}

RowStochasticMatrix read_matrix_json(std::istream& in) {
    const auto doc = ordered_json::parse(in);
    const int order = doc.at("order").get<int>();
    RowStochasticMatrix matrix(order);
    const auto& rows = doc.at("rows");
    if (static_cast<int>(rows.size()) != order)
        throw std::invalid_argument("read_matrix_json: row count mismatch");
    for (int i = 0; i < order; ++i) {
        const auto& row = rows.at(i);
        if (static_cast<int>(row.size()) != order)
            throw std::invalid_argument("read_matrix_json: column count mismatch");
        for (int j = 0; j < order; ++j)
            matrix.at(i, j) = parse_rational(row.at(j).get<std::string>());
    }
    matrix.validate();
    return matrix;
}

void write_trajectory_csv(std::ostream& out, const std::vector<int>& states,
                          const OutputMetadata& meta) {
    write_metadata_csv(out, meta);
    out << "step,state\n";
    for (std::size_t i = 0; i < states.size(); ++i) out << i << "," << states[i] << "\n";
}

void write_histogram_csv(std::ostream& out, const std::vector<long>& counts,
                         const OutputMetadata& meta) {
    write_metadata_csv(out, meta);
    out << "state,count\n";
    for (std::size_t i = 0; i < counts.size(); ++i) out << i << "," << counts[i] << "\n";
}

void write_continuous_trajectory_csv(std::ostream& out, const std::vector<double>& states,
                                     const OutputMetadata& meta) {
    write_metadata_csv(out, meta);
    out << "step,state\n";
    for (std::size_t i = 0; i < states.size(); ++i) out << i << "," << fmt17(states[i]) << "\n";
}

}  // namespace burnside
