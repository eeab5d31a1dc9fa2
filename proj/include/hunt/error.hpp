#ifndef HUNT_ERROR_HPP
#define HUNT_ERROR_HPP

#include <stdexcept>
#include <string>

namespace hunt {

// Domain error carrying the module and operation that raised it.
// CLI maps these to exit status 1; usage/parse problems use UsageError (status 2).
class Error : public std::runtime_error {
public:
    Error(std::string module, std::string op, const std::string& what)
        : std::runtime_error(module + "." + op + ": " + what),
          module_(std::move(module)), op_(std::move(op)) {}
    const std::string& module_name() const { return module_; }
    const std::string& op_name() const { return op_; }

private:
    std::string module_;
    std::string op_;
};

class UsageError : public std::runtime_error {
public:
    explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

// Internal invariant violation; always indicates a bug, never bad input.
class InternalError : public std::logic_error {
public:
    explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

} // namespace hunt

#endif
