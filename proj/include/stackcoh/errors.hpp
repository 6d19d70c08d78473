#pragma once

#include <stdexcept>
#include <string>

namespace stackcoh {

enum class ErrorKind {
    Parse,
    Precondition,
    Unsupported,
    Resource,
    AbutmentUnreachable,
    Internal,
};

/// Every failure surfaced by the library carries a kind so that front ends can
/// map it onto a stable exit code.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what)
{
    throw Error(kind, what);
}

inline void require(bool cond, const std::string& what)
{
    if (!cond)
        throw Error(ErrorKind::Precondition, what);
}

int exit_code(ErrorKind kind);
const char* to_string(ErrorKind kind);

}  // namespace stackcoh
