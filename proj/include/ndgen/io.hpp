#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "ndgen/core_model.hpp"
#include "ndgen/moments.hpp"

namespace ndgen {

// Text codecs. All files use 1-based node indices, LF line endings (CRLF accepted on read) and
// reals in shortest round-trip decimal form. Readers throw ParseError with a line number.

enum class FormatId { Std, Lp, Mps, Graph, Moments, Corr, Probs, HkwMat, Stoch };

/// Instance format selected by a one-letter code ('S' = STD).
std::optional<FormatId> instance_format_from_code(char code);

/// Shortest decimal string that reads back to exactly `x`.
std::string format_real(double x);

// STD layout:
//   |N| |A| |K| useB
//   |A| lines   tail head f u
//   |K| lines   origin destination demand
//   |A| lines   of |K| variable costs
//   |A| lines   of |K| commodity capacities (only when useB = 1)
std::string write_std(const DetInstance& instance);
DetInstance read_std(std::string_view text);

// GRAPH layout: "|N| |A|", then one "tail head" line per arc.
std::string write_graph(const Graph& graph);
Graph read_graph(std::string_view text);

// MOMENTS layout: "n 4", then n lines "mean std skew kurt".
std::string write_moments(const MomentTargets& targets);
MomentTargets read_moments(std::string_view text);

// CORR layout: "n n", then n lines of n reals.
std::string write_corr(const CorrelationMatrix& corr);
CorrelationMatrix read_corr(std::string_view text);

// PROBS layout: "s", then s reals, one per line. Read values are rescaled to sum to exactly 1.
std::string write_probs(const Eigen::VectorXd& probs);
Eigen::VectorXd read_probs(std::string_view text);

// HKWMAT layout: "n s", then n lines of s reals.
std::string write_hkwmat(const Eigen::MatrixXd& values);
Eigen::MatrixXd read_hkwmat(std::string_view text);

/// One "SCENARIO t p" header plus full STD body per retained scenario, t counted from 1.
std::string write_stochastic(const DetInstance& base, const RandomizationSelection& selection,
                             const ScenarioMatrix& retained);

struct StochasticBlock {
    std::size_t number = 0;
    double probability = 0.0;
    DetInstance instance;
};
std::vector<StochasticBlock> read_stochastic(std::string_view text);

/// CPLEX-style LP text of the mixed-integer model.
std::string write_lp(const DetInstance& instance);

/// MPS text of the mixed-integer model; design variables are MARKER-delimited binaries.
std::string write_mps(const DetInstance& instance, std::string_view name = "MCFNDP");

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

} // namespace ndgen
