#pragma once

#include <stdexcept>
#include <string>

namespace posetlab {

/// Error categories surfaced by the library. The CLI maps `too_large` and
/// `ground_too_large` to the guard exit code and everything else to the
/// validation exit code.
enum class ErrorKind {
    cycle,
    index,
    bad_param,
    not_monotone_tree,
    disconnected_poset,
    too_large,
    ground_too_large,
    empty_family,
    not_vee_free,
    condition_failed,
    invariant_violation,
    bad_tree,
    parse,
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

    /// True for size-cap refusals (as opposed to malformed input).
    bool is_guard() const noexcept {
        return kind_ == ErrorKind::too_large || kind_ == ErrorKind::ground_too_large;
    }

private:
    ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& what);

inline void require(bool cond, ErrorKind kind, const std::string& what) {
    if (!cond) fail(kind, what);
}

}  // namespace posetlab
