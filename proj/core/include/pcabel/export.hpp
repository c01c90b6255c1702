#pragma once

#include <string>
#include <string_view>

#include "pcabel/automaton.hpp"
#include "pcabel/dfao.hpp"

namespace pcabel {

std::string to_dot(const Automaton& a, std::string_view name = "A");
std::string to_dot(const Dfao& d, std::string_view name = "D");

// Walnut text format: a header line with one `msd_k` per track, then for each
// state a `state output` line followed by `digits -> target` lines.
std::string to_walnut(const Automaton& a);
std::string to_walnut(const Dfao& d);

// JSON dumps. Transitions are listed per state as {"digits": [...], "to": t},
// digits in track order.
std::string to_json(const Automaton& a);
std::string to_json(const Dfao& d);
Automaton automaton_from_json(std::string_view text);
Dfao dfao_from_json(std::string_view text);

}  // namespace pcabel
