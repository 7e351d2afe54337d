// Error taxonomy shared by the library and the CLI.  Every failure mode that
// callers are expected to branch on gets a stable machine-readable code and a
// process exit code (2 = input/validation, 3 = undecided, 4 = broken invariant).
#pragma once

#include <stdexcept>
#include <string>

namespace om {

enum class errc {
    // validation / schema problems (exit 2)
    schema_violation,
    dimension_mismatch,
    empty_input,
    invalid_pitch,
    invalid_option,
    unit_mismatch,
    non_positive_class,
    sum_mismatch,
    stage_out_of_range,
    presentation_required,
    not_normal,
    not_hermitian,
    missing_label,
    resolution_too_coarse,
    cluster_ambiguity,
    // a finite-stage scan ran out of budget without a certificate (exit 3)
    undecided,
    // invariants that must hold by theory failed at runtime (exit 4)
    marginal_mismatch,
    inconsistent_interval,
    invariant_violation,
};

// Stable kebab-case identifier, e.g. "unit-mismatch".
const char* errc_name(errc code) noexcept;

// Process exit code the CLI maps this error to.
int errc_exit_code(errc code) noexcept;

class error : public std::runtime_error {
public:
    error(errc code, std::string message, std::string where = {});

    errc code() const noexcept { return code_; }
    // Optional location hint (JSON pointer or argument name).
    const std::string& where() const noexcept { return where_; }

private:
    errc code_;
    std::string where_;
};

[[noreturn]] void fail(errc code, std::string message, std::string where = {});

} // namespace om
