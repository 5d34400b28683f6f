#include "wittlift/error.hpp"

namespace wittlift {

const char* errc_name(errc c) {
    switch (c) {
        case errc::mixed_rings: return "MixedRings";
        case errc::not_a_unit: return "NotAUnit";
        case errc::unsupported_field: return "UnsupportedField";
        case errc::bad_length: return "BadLength";
        case errc::internal_integrality_failure: return "InternalIntegralityFailure";
        case errc::budget_exceeded: return "BudgetExceeded";
        case errc::not_a_permutation: return "NotAPermutation";
        case errc::not_a_group: return "NotAGroup";
        case errc::not_a_homomorphism: return "NotAHomomorphism";
        case errc::not_invertible: return "NotInvertible";
        case errc::non_free_dual: return "NonFreeDual";
        case errc::not_a_subgroup: return "NotASubgroup";
        case errc::no_embedding: return "NoEmbedding";
        case errc::index_divisible_by_p: return "IndexDivisibleByP";
        case errc::not_exact: return "NotExact";
        case errc::not_free: return "NotFree";
        case errc::not_a_cocycle: return "NotACocycle";
        case errc::not_equivariant: return "NotEquivariant";
        case errc::shape_mismatch: return "ShapeMismatch";
        case errc::not_cyclic: return "NotCyclic";
        case errc::not_surjective: return "NotSurjective";
        case errc::certificate_required: return "CertificateRequired";
        case errc::class_nonzero: return "ClassNonzero";
        case errc::not_a_lift: return "NotALift";
        case errc::bad_shrink: return "BadShrink";
        case errc::not_found: return "NotFound";
        case errc::oracle_disagreement: return "OracleDisagreement";
        case errc::parse_error: return "ParseError";
        case errc::bad_request: return "BadRequest";
    }
    return "UnknownError";
}

} // namespace wittlift
