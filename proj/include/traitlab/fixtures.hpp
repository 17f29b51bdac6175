#ifndef TRAITLAB_FIXTURES_HPP
#define TRAITLAB_FIXTURES_HPP

// The shared fixture corpus. Mirrors data/fixtures/*.tm byte for byte.

#include "traitlab/machine.hpp"

#include <string_view>
#include <utility>
#include <vector>

namespace traitlab::fixtures {

inline constexpr std::string_view kEchoText = R"tm(# ECHO: halts at once and returns its input.
states: 3
start: 0   accept: 1   reject: 2
input_alphabet: ab
tape_alphabet: ab_
delta: 0 a -> 1 a R
delta: 0 b -> 1 b R
delta: 0 _ -> 1 _ R
)tm";

inline constexpr std::string_view kLooperText = R"tm(# LOOPER: walks right forever.
states: 3
start: 0   accept: 1   reject: 2
input_alphabet: ab
tape_alphabet: ab_
delta: 0 a -> 0 a R
delta: 0 b -> 0 b R
delta: 0 _ -> 0 _ R
)tm";

inline constexpr std::string_view kEraserText = R"tm(# ERASER: walks right erasing the input, halts on the first blank.
states: 4
start: 0   accept: 2   reject: 3
input_alphabet: ab
tape_alphabet: ab_
delta: 0 a -> 1 a R
delta: 0 b -> 1 b R
delta: 0 _ -> 1 _ R
delta: 1 a -> 1 _ R
delta: 1 b -> 1 _ R
delta: 1 _ -> 2 _ R
)tm";

inline constexpr std::string_view kMarkerText = R"tm(# MARKER: writes 'a' on the start cell and halts; computes σ ↦ aσ.
states: 3
start: 0   accept: 1   reject: 2
input_alphabet: ab
tape_alphabet: ab_
delta: 0 a -> 1 a R
delta: 0 b -> 1 a R
delta: 0 _ -> 1 a R
)tm";

inline MachineDescription echo() { return parse_machine(kEchoText); }
inline MachineDescription looper() { return parse_machine(kLooperText); }
inline MachineDescription eraser() { return parse_machine(kEraserText); }
inline MachineDescription marker() { return parse_machine(kMarkerText); }

/// Name and machine for every fixture, in a fixed order.
inline std::vector<std::pair<std::string, MachineDescription>> all()
{
    return {{"echo", echo()}, {"looper", looper()}, {"eraser", eraser()}, {"marker", marker()}};
}

} // namespace traitlab::fixtures

#endif
