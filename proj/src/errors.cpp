#include "om/errors.hpp"

namespace om {

const char* errc_name(errc code) noexcept {
    switch (code) {
        case errc::schema_violation:       return "schema-violation";
        case errc::dimension_mismatch:     return "dimension-mismatch";
        case errc::empty_input:            return "empty-input";
        case errc::invalid_pitch:          return "invalid-pitch";
        case errc::invalid_option:         return "invalid-option";
        case errc::unit_mismatch:          return "unit-mismatch";
        case errc::non_positive_class:     return "non-positive-class";
        case errc::sum_mismatch:           return "sum-mismatch";
        case errc::stage_out_of_range:     return "stage-out-of-range";
        case errc::presentation_required:  return "presentation-required";
        case errc::not_normal:             return "not-normal";
        case errc::not_hermitian:          return "not-hermitian";
        case errc::missing_label:          return "missing-label";
        case errc::resolution_too_coarse:  return "resolution-too-coarse";
        case errc::cluster_ambiguity:      return "cluster-ambiguity";
        case errc::undecided:              return "undecided";
        case errc::marginal_mismatch:      return "marginal-mismatch";
        case errc::inconsistent_interval:  return "inconsistent-interval";
        case errc::invariant_violation:    return "invariant-violation";
    }
    return "unknown";
}

int errc_exit_code(errc code) noexcept {
    switch (code) {
        case errc::undecided:
            return 3;
        case errc::marginal_mismatch:
        case errc::inconsistent_interval:
        case errc::invariant_violation:
            return 4;
        default:
            return 2;
    }
}

error::error(errc code, std::string message, std::string where)
    : std::runtime_error(std::move(message)), code_(code), where_(std::move(where)) {}

void fail(errc code, std::string message, std::string where) {
    throw error(code, std::move(message), std::move(where));
}

} // namespace om
