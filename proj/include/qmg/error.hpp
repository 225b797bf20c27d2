#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qmg {

enum class Errc {
  OutOfRange,
  InvalidArgument,
  Disconnected,
  NotGated,
  NotIsomorphic,
  InfiniteGroup,
  SymbolicInfinite,
  CapExceeded,
  VertexCapExceeded,
  SingleVertex,
  NotMedian,
  MalformedInput,
};

constexpr std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::OutOfRange: return "OutOfRange";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::Disconnected: return "Disconnected";
    case Errc::NotGated: return "NotGated";
    case Errc::NotIsomorphic: return "NotIsomorphic";
    case Errc::InfiniteGroup: return "InfiniteGroup";
    case Errc::SymbolicInfinite: return "SymbolicInfinite";
    case Errc::CapExceeded: return "CapExceeded";
    case Errc::VertexCapExceeded: return "VertexCapExceeded";
    case Errc::SingleVertex: return "SingleVertex";
    case Errc::NotMedian: return "NotMedian";
    case Errc::MalformedInput: return "MalformedInput";
  }
  return "Unknown";
}

/// Every failure raised by the library. `code()` names the contract that was
/// violated; MalformedInput is reserved for unparseable or schema-invalid
/// input and everything else is a domain error.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace qmg
