#ifndef ORBIT_INTEGRA_ERRORS_HPP
#define ORBIT_INTEGRA_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace orbit_integra {

enum class ErrorKind {
    Domain,         // mathematically undefined (valuation of 0, log of 0)
    Input,          // malformed or out-of-range argument
    Resource,       // size ceiling exceeded
    Precondition,   // a hypothesis of the computation is violated
    Degenerate,     // a level point coincides with the base point
    Certification,  // numeric certificate failed even after precision retry
    Pole,           // local height evaluated at its pole
    Unsupported,    // input class outside the supported scope
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what);

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] void raise(ErrorKind kind, const std::string& what);

}  // namespace orbit_integra

#endif
