#include "orbit_integra/errors.hpp"

namespace orbit_integra {

std::string_view to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::Domain: return "domain error";
    case ErrorKind::Input: return "input error";
    case ErrorKind::Resource: return "resource error";
    case ErrorKind::Precondition: return "precondition error";
    case ErrorKind::Degenerate: return "degenerate input";
    case ErrorKind::Certification: return "certification failure";
    case ErrorKind::Pole: return "pole";
    case ErrorKind::Unsupported: return "unsupported input";
    }
    return "error";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind)
{
}

void raise(ErrorKind kind, const std::string& what)
{
    throw Error(kind, what);
}

}  // namespace orbit_integra
