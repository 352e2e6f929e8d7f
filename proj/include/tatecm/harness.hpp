#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "tatecm/tate.hpp"

namespace tatecm {

struct ProblemInstance {
    std::uint32_t field_char = PrimeField::kDefaultPrime;
    std::vector<std::string> variables;
    std::vector<std::string> f;
    std::vector<std::string> g;
    std::optional<std::vector<std::vector<std::string>>> A;  // n rows, c columns
    int window_lo = -6;
    int window_hi = 8;
    std::optional<int> max_internal_degree;

    nlohmann::json to_json() const;
};

/// Reads the instance fields; unknown or mistyped fields are a FormatError.
ProblemInstance parse_instance(const nlohmann::json& j);
ProblemInstance load_instance(const std::string& path);

nlohmann::json load_json(const std::string& path);
void save_json(const std::string& path, const nlohmann::json& j);

/// Whole pipeline: resolution, splice, minimization, MCM presentation and certificates.
nlohmann::json run_build(const ProblemInstance& inst);

struct CheckLine {
    std::string name;
    bool ok = false;
    std::string detail;
};

struct VerifyReport {
    std::vector<CheckLine> lines;
    bool ok() const;
    std::string text() const;
};

/// Rechecks grading, d^2 = 0, acyclicity on the interior and minimality of a serialized
/// complex (either a bare complex or the "complex" field of a build output).
VerifyReport run_verify(const nlohmann::json& doc, std::optional<int> dmax = std::nullopt);

/// Betti table laid out with positions across and internal degree minus position down.
std::string format_betti(const BettiTable& betti);
BettiTable betti_from_json(const nlohmann::json& triples);

/// Process exit code for an error: 2 validation, 3 certificate, 4 input/output or format.
int exit_code_for(ErrorKind kind);

}  // namespace tatecm
