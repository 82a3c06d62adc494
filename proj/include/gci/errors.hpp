#pragma once

#include <stdexcept>
#include <string>

namespace gci {

// Every failure raised by the library derives from gci::error. The
// subclasses let callers (and the CLI exit-code mapping) tell bad input
// apart from a failed mathematical check.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Caller passed arguments outside the operation's domain.
struct usage_error : error {
    using error::error;
};

// An identity that must hold for well-formed input did not.
struct structural_error : error {
    using error::error;
};

// A point configuration with a vanishing interval where none is allowed.
struct degenerate_error : error {
    using error::error;
};

// Division by a series or function that vanishes at the expansion point,
// or evaluation on a pole.
struct pole_error : error {
    using error::error;
};

// A numeric evaluation could not reach the requested accuracy.
struct precision_error : error {
    using error::error;
};

// Lower-order remainder terms that should cancel did not.
struct inconsistency_error : error {
    using error::error;
};

struct inadmissible_error : error {
    using error::error;
};

struct not_symmetrizable_error : error {
    using error::error;
};

struct unsupported_error : error {
    using error::error;
};

} // namespace gci
