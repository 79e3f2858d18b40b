#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "burnside/chains.hpp"

namespace burnside {

inline constexpr const char* kLibraryVersion = "0.1.0";

/// Provenance block embedded in every output file.
struct OutputMetadata {
    std::string command;
    std::vector<std::pair<std::string, std::string>> config;  // insertion order kept
    std::uint64_t seed = 0;
    bool has_seed = false;
    std::string version = kLibraryVersion;
};

/// Shortest-round-trip decimal form of a double (17 significant digits).
std::string fmt17(double x);

/// The '#'-comment metadata preamble used by every CSV writer.
void write_metadata_csv(std::ostream& out, const OutputMetadata& meta);

void write_matrix_csv(std::ostream& out, const RowStochasticMatrix& matrix,
                      const OutputMetadata& meta);
void write_matrix_json(std::ostream& out, const RowStochasticMatrix& matrix,
                       const OutputMetadata& meta);

/// Parses a matrix written by write_matrix_json; exact rationals survive
/// the round trip byte-for-byte.
RowStochasticMatrix read_matrix_json(std::istream& in);

void write_trajectory_csv(std::ostream& out, const std::vector<int>& states,
                          const OutputMetadata& meta);
void write_histogram_csv(std::ostream& out, const std::vector<long>& counts,
                         const OutputMetadata& meta);
void write_continuous_trajectory_csv(std::ostream& out, const std::vector<double>& states,
                                     const OutputMetadata& meta);

}  // namespace burnside
