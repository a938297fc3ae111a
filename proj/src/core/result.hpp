#ifndef TOPOTWIN_CORE_RESULT_HPP
#define TOPOTWIN_CORE_RESULT_HPP

#include <cassert>
#include <cstddef>
#include <string>
#include <utility>
#include <variant>

namespace topotwin {

enum class Errc {
  ParseSyntax,       // malformed WKT / SQL / config text
  ParseSemantic,     // well-formed text violating an arity/closure rule
  InvalidGeometry,   // oracle refuses a semantically invalid shape
  Unprintable,       // rational with a denominator not of the form 2^a*5^b
  Unsupported,       // predicate or feature outside the dialect
  Config,            // bad configuration value
  Transport,         // adapter connection / subprocess failure
  Engine,            // engine-side statement error (classified, skippable)
  BadBundle,         // incomplete or corrupt reproduction bundle
  NotReproducing,    // reducer input does not reproduce
  Internal,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::ParseSyntax: return "parse-syntax";
    case Errc::ParseSemantic: return "parse-semantic";
    case Errc::InvalidGeometry: return "invalid-geometry";
    case Errc::Unprintable: return "unprintable-rational";
    case Errc::Unsupported: return "unsupported";
    case Errc::Config: return "config";
    case Errc::Transport: return "transport";
    case Errc::Engine: return "engine";
    case Errc::BadBundle: return "bad-bundle";
    case Errc::NotReproducing: return "not-reproducing";
    case Errc::Internal: return "internal";
  }
  return "unknown";
}

struct Error {
  Errc code = Errc::Internal;
  std::string message;
  // Byte offset into the offending text, or npos when not applicable.
  std::size_t offset = static_cast<std::size_t>(-1);
};

inline Error make_error(Errc code, std::string message,
                        std::size_t offset = static_cast<std::size_t>(-1)) {
  return Error{code, std::move(message), offset};
}

template <typename T>
class Result {
 public:
  Result(T value) : state_(std::move(value)) {}  // NOLINT: implicit by design
  Result(Error error) : state_(std::move(error)) {}

  bool ok() const { return std::holds_alternative<T>(state_); }
  explicit operator bool() const { return ok(); }

  const T& value() const {
    assert(ok());
    return std::get<T>(state_);
  }
  T& value() {
    assert(ok());
    return std::get<T>(state_);
  }
  T take() {
    assert(ok());
    return std::move(std::get<T>(state_));
  }

  const Error& error() const {
    assert(!ok());
    return std::get<Error>(state_);
  }

 private:
  std::variant<T, Error> state_;
};

// Result for operations with no payload.
class Status {
 public:
  Status() = default;
  Status(Error error) : error_(std::move(error)), failed_(true) {}

  bool ok() const { return !failed_; }
  explicit operator bool() const { return ok(); }
  const Error& error() const {
    assert(failed_);
    return error_;
  }

 private:
  Error error_;
  bool failed_ = false;
};

}  // namespace topotwin

#endif
