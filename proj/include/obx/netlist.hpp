#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "obx/dae.hpp"

namespace obx {

enum class ElementKind { Resistor, Capacitor, Inductor, VoltageSource, CurrentSource };

struct Element {
    ElementKind kind;
    std::string name;
    int n1 = 0;
    int n2 = 0;
    double value = 0.0;  // ohms / farads / henries
    double amp_c = 0.0;  // sources: cosine amplitude
    double amp_s = 0.0;  // sources: sine amplitude
    double freq = 0.0;   // sources: Hz

    friend bool operator==(const Element&, const Element&) = default;
};

struct Netlist {
    std::vector<Element> elements;
    int node_count = 0;  // node 0 is ground
};

/// Line-oriented format, one element per line, `#` starts a comment:
///   R<name> n1 n2 <ohms>
///   C<name> n1 n2 <farads>
///   L<name> n1 n2 <henries>
///   V<name> n1 n2 SIN <amp_c> <amp_s> <freq_hz>
///   I<name> n1 n2 SIN <amp_c> <amp_s> <freq_hz>
/// Element letter and SIN keyword are case-insensitive; node ids must be
/// contiguous integers starting at 0. Errors carry the offending line.
Netlist parse_netlist(std::string_view text);

/// Inverse of parse_netlist up to whitespace; numbers are printed with
/// round-trip precision so reparsing yields an identical element list.
std::string unparse_netlist(const Netlist& netlist);

/// Modified nodal analysis. Unknown ordering: node voltages 1..node_count-1,
/// then voltage-source branch currents in file order, then inductor branch
/// currents in file order. All sources must share one frequency.
LinearDae stamp(const Netlist& netlist);

}  // namespace obx
