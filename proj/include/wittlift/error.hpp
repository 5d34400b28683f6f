#pragma once

#include <stdexcept>
#include <string>

namespace wittlift {

// Error kinds carried by every engine exception. The CLI maps these to
// exit codes: input problems -> 2, exhausted budgets -> 3. Negative
// mathematical verdicts (obstructed, not smooth, not linked) are regular
// results, never exceptions.
enum class errc {
    mixed_rings,
    not_a_unit,
    unsupported_field,
    bad_length,
    internal_integrality_failure,
    budget_exceeded,
    not_a_permutation,
    not_a_group,
    not_a_homomorphism,
    not_invertible,
    non_free_dual,
    not_a_subgroup,
    no_embedding,
    index_divisible_by_p,
    not_exact,
    not_free,
    not_a_cocycle,
    not_equivariant,
    shape_mismatch,
    not_cyclic,
    not_surjective,
    certificate_required,
    class_nonzero,
    not_a_lift,
    bad_shrink,
    not_found,
    oracle_disagreement,
    parse_error,
    bad_request,
};

const char* errc_name(errc c);

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

} // namespace wittlift
