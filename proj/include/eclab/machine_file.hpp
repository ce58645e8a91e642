#pragma once

#include <iosfwd>
#include <string>

#include "eclab/rtm.hpp"

namespace eclab {

/// Text format for machine definitions, one directive per line:
///
///   alphabet b 0 1          # symbols; first column order fixes the ids
///   blank b
///   states q0 s0 s1 qa qr
///   initial q0
///   accept qa
///   reject qr
///   tape 4
///   rule std q0 0 s0 b +    # standard form: state, read, state', write, move
///   rule rev s0 - b q0 0    # reverse form:  state, move, read, state', write
///
/// '#' starts a comment. Moves are written +, -, 0.
TuringMachine parse_machine(std::istream& in);
TuringMachine parse_machine_string(const std::string& text);
TuringMachine load_machine(const std::string& path);

std::string write_machine(const TuringMachine& tm);

}  // namespace eclab
