#pragma once
// Failure vocabulary for the whole library. Every throw site uses one of
// these named types so callers (and the CLI) can react without string
// matching. All of them carry a human-readable message.

#include <stdexcept>
#include <string>

namespace vfl {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ordered groups
struct NonPositiveElement : Error { using Error::Error; };
struct InadmissibleEntry : Error { using Error::Error; };
struct RankLimit : Error { using Error::Error; };
struct GroupMismatch : Error { using Error::Error; };

// p-adic / local-field arithmetic
struct PrecisionExhausted : Error { using Error::Error; };
struct NotIntegral : Error { using Error::Error; };
struct HenselConditionFailed : Error { using Error::Error; };
struct DivisionByZero : Error { using Error::Error; };
struct FieldMismatch : Error { using Error::Error; };

// unit filtrations
struct SizeLimit : Error { using Error::Error; };
struct ZetaPMissing : Error { using Error::Error; };

// cyclic extensions
struct QEqualsP : Error { using Error::Error; };
struct PreconditionFailed : Error { using Error::Error; };
struct Reducible : Error { using Error::Error; };

// series fields and place chains
struct WindowExhausted : Error { using Error::Error; };
struct NotInMaximalIdeal : Error { using Error::Error; };

// tilting
struct NoCompatibleRoot : Error { using Error::Error; };
struct DepthExhausted : Error { using Error::Error; };
struct TooShallowDepth : Error { using Error::Error; };

// CLI plumbing
struct UnknownSuite : Error { using Error::Error; };

// Descriptor parsing; position is a byte offset into the input string.
struct ParseError : Error {
  std::size_t position;
  ParseError(const std::string& what, std::size_t pos)
      : Error(what + " (at position " + std::to_string(pos) + ")"), position(pos) {}
};

}  // namespace vfl
