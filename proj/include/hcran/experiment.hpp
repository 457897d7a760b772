#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hcran/config.hpp"

namespace hcran {

/// Version string written into every CSV.
std::string_view toolkit_version() noexcept;

/// Header, rows of text cells, and `# key = value` metadata lines.
struct ResultTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::pair<std::string, std::string>> metadata;

    /// Throws std::invalid_argument when the row width differs from the header.
    void add_row(std::vector<std::string> row);

    /// Column index by name; throws std::out_of_range when absent.
    std::size_t column(std::string_view name) const;
    double number(std::size_t row, std::string_view name) const;
    const std::string& cell(std::size_t row, std::string_view name) const;

    std::string to_csv() const;
    static ResultTable from_csv(std::string_view text);

    friend bool operator==(const ResultTable&, const ResultTable&) = default;
};

/// Rebuilds the config recorded in a table's metadata.
ExperimentConfig config_from_metadata(const ResultTable& table);

/// Writes through a temporary file in the same directory, then renames.
void write_file_atomic(const std::string& path, std::string_view contents);

std::string read_file(const std::string& path);

/// Runs the configured experiment. Writes the CSV to config.output_path when
/// set (and the delay trace to its trace path). Infeasible points become
/// rows with feasible = false.
ResultTable run_experiment(const ExperimentConfig& config);

/// Per-slot trace of one delay episode: slot, active_count, power, gamma,
/// then queue_i, arrival_i, served_i for every user.
ResultTable trace_table(const EpisodeResult& result);

}  // namespace hcran
