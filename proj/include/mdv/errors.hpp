#ifndef MDV_ERRORS_HPP
#define MDV_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace mdv {

// Precondition violations (bad arguments, out-of-contract inputs). CLI exit 2.
struct usage_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A theorem-backed invariant failed on real data. Either the implementation
// is wrong or the input is a counterexample; both must stop the run. CLI exit 1.
struct refutation_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Internal consistency check failed (a bug, never a math statement). CLI exit 3.
struct internal_error : std::logic_error {
    using std::logic_error::logic_error;
};

namespace detail {
[[noreturn]] inline void check_failed(const char* expr, const char* file, int line,
                                      const std::string& msg) {
    throw internal_error(std::string(file) + ":" + std::to_string(line) +
                         ": check failed: " + expr + (msg.empty() ? "" : " (" + msg + ")"));
}
} // namespace detail

} // namespace mdv

#define MDV_CHECK(expr)                                                            \
    do {                                                                           \
        if (!(expr)) ::mdv::detail::check_failed(#expr, __FILE__, __LINE__, "");   \
    } while (0)

#define MDV_CHECK_MSG(expr, msg)                                                   \
    do {                                                                           \
        if (!(expr)) ::mdv::detail::check_failed(#expr, __FILE__, __LINE__, (msg)); \
    } while (0)

#endif
