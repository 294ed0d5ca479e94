#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace willmore {

// Every domain failure carries a stable kind tag; the CLI serializes it.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(what), kind_(std::move(kind)) {}

    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

#define WILLMORE_DEFINE_ERROR(Name)                                          \
    class Name : public Error {                                              \
    public:                                                                  \
        explicit Name(const std::string& what) : Error(#Name, what) {}       \
    };

WILLMORE_DEFINE_ERROR(DegenerateJet)
WILLMORE_DEFINE_ERROR(ConformalityViolation)
WILLMORE_DEFINE_ERROR(DivisionByZeroExpr)
WILLMORE_DEFINE_ERROR(PoleOnPath)
WILLMORE_DEFINE_ERROR(OutOfDomain)
WILLMORE_DEFINE_ERROR(SingularPoint)
WILLMORE_DEFINE_ERROR(GridTooSmall)
WILLMORE_DEFINE_ERROR(BadResolution)
WILLMORE_DEFINE_ERROR(EmptyField)
WILLMORE_DEFINE_ERROR(NoRealSphere)
WILLMORE_DEFINE_ERROR(NoAdmissibleCenter)
WILLMORE_DEFINE_ERROR(UnsupportedClosedSurface)
WILLMORE_DEFINE_ERROR(InvalidArgument)

#undef WILLMORE_DEFINE_ERROR

/// Parse failure in any of the text grammars (rational expressions, surface
/// specs, Moebius stages). `position` is a 0-based byte offset into the input.
class SyntaxError : public Error {
public:
    SyntaxError(const std::string& what, std::size_t position)
        : Error("SyntaxError", what + " at position " + std::to_string(position)),
          position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

} // namespace willmore
