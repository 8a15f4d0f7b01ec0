#pragma once

// Parsed command-line configuration. Every field is plain data so a config
// serializes to canonical JSON and parses back to the same bytes.

#include "plw/numeric_policy.hpp"
#include "plw/real.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace plw {

enum class Suite { Difference, DiffDiff, Compat, Ladder, Asym, Pearson };
enum class OutputFormat { Csv, Json };
enum class Spacing { Linear, Log };

const char* to_string(Suite suite);
const char* to_string(OutputFormat format);
const char* to_string(Spacing spacing);
/// Throw ConfigError on unknown names.
Suite parse_suite(const std::string& name);
OutputFormat parse_format(const std::string& name);
Spacing parse_spacing(const std::string& name);

/// All suites in canonical order.
const std::vector<Suite>& all_suites();
/// Every suite except asym (which needs N >= 64 and a long run).
std::vector<Suite> default_suites();

struct TGridSpec {
    std::string start;
    std::string stop;
    int count = 1;
    Spacing spacing = Spacing::Linear;

    /// "start:stop:count[:spacing]". Throws ConfigError.
    static TGridSpec parse(const std::string& text);
};

struct RunConfig {
    std::string lambda = "1";
    std::string t = "1";
    /// Overrides `t` when present.
    std::optional<TGridSpec> t_grid;
    int n_max = 50;
    int target_digits = 30;
    /// Canonical order, no duplicates; empty means default_suites().
    std::vector<Suite> suites;
    OutputFormat format = OutputFormat::Csv;
    std::string out_dir = ".";
    /// Finite-difference step; default 10^-(target_digits/3).
    std::optional<std::string> h;
    /// One Richardson step (extra pipelines at t +- h/2).
    bool richardson = false;
    /// Test hook: perturb beta at this index before verification.
    std::optional<int> corrupt_beta;

    /// Sorts and deduplicates suites; checks ranges and decimal strings.
    /// Throws ConfigError.
    void validate();

    std::vector<Suite> effective_suites() const;
    bool has_suite(Suite suite) const;

    /// Policy for polynomials up to degree n_max + 1.
    NumericPolicy policy() const;
    Real lambda_value(Bits prec) const;
    /// The grid points, or the single t.
    std::vector<Real> t_values(Bits prec) const;

    nlohmann::ordered_json to_json() const;
    /// Inverse of to_json. Throws ConfigError.
    static RunConfig from_json(const nlohmann::ordered_json& doc);
    std::string serialize() const;
};

/// Real::from_string with ConfigError instead of std::invalid_argument.
Real parse_decimal(const std::string& text, Bits prec, const char* what);

}  // namespace plw
