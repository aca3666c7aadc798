#pragma once

#include <stdexcept>
#include <string>

namespace adjq {

/// Base of every error raised by the library. Each subclass names one
/// failure mode so callers can dispatch on type.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// exact-kernel
class FieldMismatch : public Error { public: using Error::Error; };
class ShapeError : public Error { public: using Error::Error; };
class NotContained : public Error { public: using Error::Error; };

// input handling
class ParseError : public Error { public: using Error::Error; };
class DimensionCap : public Error { public: using Error::Error; };

// coalgebra-core
class NotPointed : public Error { public: using Error::Error; };
class NotGroupLike : public Error { public: using Error::Error; };
class BaseMismatch : public Error { public: using Error::Error; };
class NotCoalgebraMap : public Error { public: using Error::Error; };

// path-adjunction
class NotCosemisimple : public Error { public: using Error::Error; };
class NotVanishingOnCoradical : public Error { public: using Error::Error; };
class TruncationTooSmall : public Error { public: using Error::Error; };
class SplittingObstruction : public Error { public: using Error::Error; };
class NotCongruentToIdentity : public Error { public: using Error::Error; };
class NotInjective : public Error { public: using Error::Error; };

// pseudocompact
class RadicalUndecided : public Error { public: using Error::Error; };
class NotHomogeneous : public Error { public: using Error::Error; };
class NotRelationIdeal : public Error { public: using Error::Error; };
class NotAdmissible : public Error { public: using Error::Error; };
class NormalizationRequired : public Error { public: using Error::Error; };
class NoLift : public Error { public: using Error::Error; };
class NotAlgebraMap : public Error { public: using Error::Error; };

}  // namespace adjq

namespace adjq {

/// Outcome of an axiom check. Verification never throws; it names the first
/// violated identity and a witness.
struct Report {
    bool ok = true;
    std::string failure;
    std::string witness;

    static Report pass() { return {}; }
    static Report fail(std::string what, std::string where) { return {false, std::move(what), std::move(where)}; }
    explicit operator bool() const { return ok; }
};

}  // namespace adjq
