#pragma once

#include <stdexcept>
#include <string>

namespace ndg {

/// Error categories surfaced by the library. The CLI maps ParseError /
/// BadArguments / UnknownSuite to exit code 2 and everything else to 1.
enum class errc {
    not_a_field,
    no_primitive_root,
    bad_root,
    out_of_range,
    field_mismatch,
    shape_error,
    not_contained,
    not_n_differential,
    not_chain_map,
    not_acyclic,
    not_a_triangle,
    leibniz_violation,
    assoc_violation,
    unit_violation,
    unknown_object,
    base_mismatch,
    parse_error,
    validation_error,
    unknown_name,
    bad_arguments,
    unknown_suite,
    internal,
};

inline const char* errc_name(errc c) {
    switch (c) {
        case errc::not_a_field: return "NotAField";
        case errc::no_primitive_root: return "NoPrimitiveRoot";
        case errc::bad_root: return "BadRoot";
        case errc::out_of_range: return "OutOfRange";
        case errc::field_mismatch: return "FieldMismatch";
        case errc::shape_error: return "ShapeError";
        case errc::not_contained: return "NotContained";
        case errc::not_n_differential: return "NotNDifferential";
        case errc::not_chain_map: return "NotChainMap";
        case errc::not_acyclic: return "NotAcyclic";
        case errc::not_a_triangle: return "NotATriangle";
        case errc::leibniz_violation: return "LeibnizViolation";
        case errc::assoc_violation: return "AssocViolation";
        case errc::unit_violation: return "UnitViolation";
        case errc::unknown_object: return "UnknownObject";
        case errc::base_mismatch: return "BaseMismatch";
        case errc::parse_error: return "ParseError";
        case errc::validation_error: return "ValidationError";
        case errc::unknown_name: return "UnknownName";
        case errc::bad_arguments: return "BadArguments";
        case errc::unknown_suite: return "UnknownSuite";
        case errc::internal: return "InternalError";
    }
    return "Error";
}

class Error : public std::runtime_error {
public:
    Error(errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    errc code() const { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, errc code, const std::string& what) {
    if (!cond) fail(code, what);
}

} // namespace ndg
