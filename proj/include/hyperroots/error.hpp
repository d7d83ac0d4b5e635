#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hyperroots
{

// Error codes surfaced by the library and the command-line front end.
enum class errc {
    div_by_non_unit,
    var_mismatch,
    non_square_constant,
    negative_constant,
    var_out_of_range,
    not_divisible,
    both_constant,
    non_polynomial_factor,
    not_hyperbolic_numeric,
    not_symmetric,
    not_antisymmetric,
    not_coprime,
    no_factorization,
    single_cluster,
    irrational_cluster,
    hyperbolicity_violation,
    max_depth,
    max_steps,
    rank_mismatch,
    not_well_ordered,
    degenerate_gram,
    non_rational_branch,
    not_analytic_in_chart,
    unsupported_family,
    invalid_argument,
    parse_error,
    schema_error,
    unknown_command,
};

inline std::string_view errc_name(errc c)
{
    switch (c) {
        case errc::div_by_non_unit: return "DIV_BY_NON_UNIT";
        case errc::var_mismatch: return "VAR_MISMATCH";
        case errc::non_square_constant: return "NON_SQUARE_CONSTANT";
        case errc::negative_constant: return "NEGATIVE_CONSTANT";
        case errc::var_out_of_range: return "VAR_OUT_OF_RANGE";
        case errc::not_divisible: return "NOT_DIVISIBLE";
        case errc::both_constant: return "BOTH_CONSTANT";
        case errc::non_polynomial_factor: return "NON_POLYNOMIAL_FACTOR";
        case errc::not_hyperbolic_numeric: return "NOT_HYPERBOLIC_NUMERIC";
        case errc::not_symmetric: return "NOT_SYMMETRIC";
        case errc::not_antisymmetric: return "NOT_ANTISYMMETRIC";
        case errc::not_coprime: return "NOT_COPRIME";
        case errc::no_factorization: return "NO_FACTORIZATION";
        case errc::single_cluster: return "SINGLE_CLUSTER";
        case errc::irrational_cluster: return "IRRATIONAL_CLUSTER";
        case errc::hyperbolicity_violation: return "HYPERBOLICITY_VIOLATION";
        case errc::max_depth: return "MAX_DEPTH";
        case errc::max_steps: return "MAX_STEPS";
        case errc::rank_mismatch: return "RANK_MISMATCH";
        case errc::not_well_ordered: return "NOT_WELL_ORDERED";
        case errc::degenerate_gram: return "DEGENERATE_GRAM";
        case errc::non_rational_branch: return "NON_RATIONAL_BRANCH";
        case errc::not_analytic_in_chart: return "NOT_ANALYTIC_IN_CHART";
        case errc::unsupported_family: return "UNSUPPORTED_FAMILY";
        case errc::invalid_argument: return "INVALID_ARGUMENT";
        case errc::parse_error: return "PARSE_ERROR";
        case errc::schema_error: return "SCHEMA_ERROR";
        case errc::unknown_command: return "UNKNOWN_COMMAND";
    }
    return "UNKNOWN";
}

// Input errors map to exit code 2 in the CLI; everything else is a
// documented mathematical outcome (exit code 1).
inline bool is_input_error(errc c)
{
    return c == errc::parse_error || c == errc::schema_error || c == errc::unknown_command
           || c == errc::invalid_argument;
}

class error : public std::runtime_error
{
public:
    error(errc code, const std::string &what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), m_code(code), m_detail(what)
    {
    }

    errc code() const noexcept
    {
        return m_code;
    }
    const std::string &detail() const noexcept
    {
        return m_detail;
    }

private:
    errc m_code;
    std::string m_detail;
};

[[noreturn]] inline void raise(errc code, const std::string &what)
{
    throw error(code, what);
}

} // namespace hyperroots
