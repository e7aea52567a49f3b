#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qgames/equilibrium.hpp"
#include "qgames/protocol.hpp"

namespace qgames {

inline constexpr const char* kVersion = "0.1.0";

/// Bad invocation (unknown experiment, unknown format); maps to exit code 1.
class UsageError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Machine-readable table produced by a named experiment.
struct ExperimentResult {
    struct Row {
        std::string label;            // empty when label_column is empty
        std::vector<double> values;
    };

    std::string experiment;
    std::vector<std::pair<std::string, std::string>> params;
    std::string label_column;         // name of the leading text column, if any
    std::vector<std::string> columns; // numeric column names
    std::vector<Row> rows;
    std::vector<std::pair<std::string, std::string>> metadata;
};

enum class OutputFormat { kCsv, kJson };

OutputFormat parse_format(const std::string& name);

/// CSV with a header row, or a JSON object with keys
/// experiment/params/columns/rows/metadata. Numbers use 12 significant
/// digits in both formats.
std::string emit(const ExperimentResult& result, OutputFormat format);

/// Everything a named experiment can consume; unused fields are ignored.
struct ExperimentOptions {
    double gamma = 1.5707963267948966;     // pi/2
    std::optional<Su2Params> alice;
    std::optional<Su2Params> bob;
    int points = 21;
    unsigned seed = 1;
    int players = 4;
    bool quantum = false;
    std::optional<GameSpec> game;          // overrides the built-in PD
    SearchConfig search;
};

/// Names accepted by run_experiment, in display order.
std::vector<std::string> experiment_names();

/// Deterministic for fixed options; throws UsageError for unknown names.
ExperimentResult run_experiment(const std::string& name,
                                const ExperimentOptions& opts);

}  // namespace qgames
