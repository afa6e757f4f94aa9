// state_spec.hpp: compact textual state descriptions used by the CLI and
// config files:
//
//   thermal(NBAR)        coherent(RE) | coherent(RE,IM)
//   fock(N)              squeezed(R)
//
// Whitespace around tokens is ignored; names are case-insensitive.

#pragma once

#include "onecount/fock.hpp"

#include <string>
#include <string_view>

namespace onecount {

StateKind parse_state_kind(std::string_view text);

// Inverse of parse_state_kind; numbers use the shortest round-trip form.
std::string describe(const StateKind& kind);

// "thermal", "coherent", "fock" or "squeezed_vacuum".
std::string kind_name(const StateKind& kind);

// Shortest decimal string that reads back to the same double.
std::string format_number(double value);

// Strict double parse of the whole string; throws ParseError.
double parse_number(std::string_view text);

}  // namespace onecount
