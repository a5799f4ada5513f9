#include "posetlab/errors.hpp"

namespace posetlab {

const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::cycle: return "CycleError";
        case ErrorKind::index: return "IndexError";
        case ErrorKind::bad_param: return "BadParam";
        case ErrorKind::not_monotone_tree: return "NotMonotoneTree";
        case ErrorKind::disconnected_poset: return "DisconnectedPoset";
        case ErrorKind::too_large: return "TooLarge";
        case ErrorKind::ground_too_large: return "GroundTooLarge";
        case ErrorKind::empty_family: return "EmptyFamily";
        case ErrorKind::not_vee_free: return "NotVeeFree";
        case ErrorKind::condition_failed: return "ConditionFailed";
        case ErrorKind::invariant_violation: return "InvariantViolation";
        case ErrorKind::bad_tree: return "BadTree";
        case ErrorKind::parse: return "ParseError";
    }
    return "Error";
}

void fail(ErrorKind kind, const std::string& what) {
    throw Error(kind, std::string(to_string(kind)) + ": " + what);
}

}  // namespace posetlab
