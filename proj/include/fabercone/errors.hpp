#pragma once

#include <stdexcept>
#include <string>

namespace fabercone {

struct InvalidSignature : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct NonexistentClass : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct InvalidN : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct InvalidPartition : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct DimensionMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct GroupTooLarge : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ResourceLimit : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Internal consistency failure: a certificate that does not re-verify.
struct CertificateError : std::logic_error {
    using std::logic_error::logic_error;
};

}  // namespace fabercone
