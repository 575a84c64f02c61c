#include "obx/netlist.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <set>
#include <sstream>
#include <unordered_set>

#include "obx/errors.hpp"
#include "obx/format.hpp"

namespace obx {

namespace {

std::vector<std::string> tokenize(std::string_view line) {
    std::vector<std::string> tokens;
    std::string cur;
    for (char ch : line) {
        if (ch == '#') break;
        if (std::isspace(static_cast<unsigned char>(ch))) {
            if (!cur.empty()) tokens.push_back(std::move(cur)), cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    if (!cur.empty()) tokens.push_back(std::move(cur));
    return tokens;
}

double parse_number(const std::string& tok, int line) {
    double v = 0.0;
    const char* first = tok.data();
    const char* last = tok.data() + tok.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last)
        throw ParseError(line, "malformed number '" + tok + "'");
    return v;
}

int parse_node(const std::string& tok, int line) {
    int v = 0;
    const char* first = tok.data();
    const char* last = tok.data() + tok.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || v < 0)
        throw ParseError(line, "bad node id '" + tok + "'");
    return v;
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return s;
}

}  // namespace

Netlist parse_netlist(std::string_view text) {
    Netlist out;
    std::unordered_set<std::string> names;
    std::set<int> nodes_used;

    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = text.find('\n', pos);
        const std::string_view line =
            text.substr(pos, eol == std::string_view::npos ? std::string_view::npos
                                                           : eol - pos);
        pos = (eol == std::string_view::npos) ? text.size() + 1 : eol + 1;
        ++line_no;

        const std::vector<std::string> tok = tokenize(line);
        if (tok.empty()) continue;

        Element e;
        const char letter = std::toupper(static_cast<unsigned char>(tok[0][0]));
        switch (letter) {
            case 'R': e.kind = ElementKind::Resistor; break;
            case 'C': e.kind = ElementKind::Capacitor; break;
            case 'L': e.kind = ElementKind::Inductor; break;
            case 'V': e.kind = ElementKind::VoltageSource; break;
            case 'I': e.kind = ElementKind::CurrentSource; break;
            default:
                throw ParseError(line_no, std::string("unknown element '") + tok[0][0] + "'");
        }
        e.name = tok[0];
        if (!names.insert(lower(e.name)).second)
            throw ParseError(line_no, "duplicate name '" + e.name + "'");

        const bool is_source = e.kind == ElementKind::VoltageSource ||
                               e.kind == ElementKind::CurrentSource;
        const std::size_t expected = is_source ? 7 : 4;
        if (tok.size() != expected)
            throw ParseError(line_no, "expected " + std::to_string(expected) +
                                          " fields, got " + std::to_string(tok.size()));

        e.n1 = parse_node(tok[1], line_no);
        e.n2 = parse_node(tok[2], line_no);

        if (is_source) {
            if (lower(tok[3]) != "sin")
                throw ParseError(line_no, "expected SIN, got '" + tok[3] + "'");
            if (e.n1 == e.n2) throw ParseError(line_no, "shorted source '" + e.name + "'");
            e.amp_c = parse_number(tok[4], line_no);
            e.amp_s = parse_number(tok[5], line_no);
            e.freq = parse_number(tok[6], line_no);
            if (e.freq < 0.0) throw ParseError(line_no, "negative frequency");
        } else {
            e.value = parse_number(tok[3], line_no);
            if (!(e.value > 0.0))
                throw ParseError(line_no, "value of '" + e.name + "' must be > 0");
        }

        nodes_used.insert(e.n1);
        nodes_used.insert(e.n2);
        out.elements.push_back(std::move(e));
    }

    if (out.elements.empty()) throw ParseError(line_no, "netlist has no elements");

    const int max_node = *nodes_used.rbegin();
    for (int n = 0; n <= max_node; ++n)
        if (!nodes_used.count(n))
            throw ParseError(line_no, "node ids not contiguous: node " +
                                          std::to_string(n) + " unused");
    out.node_count = max_node + 1;
    return out;
}

std::string unparse_netlist(const Netlist& netlist) {
    std::ostringstream os;
    for (const Element& e : netlist.elements) {
        os << e.name << ' ' << e.n1 << ' ' << e.n2;
        if (e.kind == ElementKind::VoltageSource || e.kind == ElementKind::CurrentSource)
            os << " SIN " << format_double(e.amp_c) << ' ' << format_double(e.amp_s)
               << ' ' << format_double(e.freq);
        else
            os << ' ' << format_double(e.value);
        os << '\n';
    }
    return os.str();
}

LinearDae stamp(const Netlist& netlist) {
    std::size_t n_vsrc = 0, n_ind = 0;
    for (const Element& e : netlist.elements) {
        if (e.kind == ElementKind::VoltageSource) ++n_vsrc;
        if (e.kind == ElementKind::Inductor) ++n_ind;
    }
    const std::size_t n_nodes = netlist.node_count > 0 ? netlist.node_count - 1 : 0;
    const std::size_t dim = n_nodes + n_vsrc + n_ind;
    if (dim == 0) throw StampError("netlist has no unknowns");

    Matrix c(dim, dim), g(dim, dim);
    Vector b_c(dim, 0.0), b_s(dim, 0.0);

    double freq = -1.0;
    auto check_freq = [&](double f) {
        if (freq < 0.0)
            freq = f;
        else if (freq != f)
            throw StampError("mixed source frequencies");
    };

    // MNA row index of a node, or -1 for ground.
    auto row = [](int node) { return node - 1; };

    std::size_t next_vsrc = n_nodes;
    std::size_t next_ind = n_nodes + n_vsrc;
    for (const Element& e : netlist.elements) {
        const int a = row(e.n1), b = row(e.n2);
        switch (e.kind) {
            case ElementKind::Resistor: {
                const double y = 1.0 / e.value;
                if (a >= 0) g(a, a) += y;
                if (b >= 0) g(b, b) += y;
                if (a >= 0 && b >= 0) {
                    g(a, b) -= y;
                    g(b, a) -= y;
                }
                break;
            }
            case ElementKind::Capacitor: {
                if (a >= 0) c(a, a) += e.value;
                if (b >= 0) c(b, b) += e.value;
                if (a >= 0 && b >= 0) {
                    c(a, b) -= e.value;
                    c(b, a) -= e.value;
                }
                break;
            }
            case ElementKind::Inductor: {
                // Branch current from n1 to n2; v_{n1} - v_{n2} = L di/dt.
                const std::size_t k = next_ind++;
                if (a >= 0) { g(a, k) += 1.0; g(k, a) += 1.0; }
                if (b >= 0) { g(b, k) -= 1.0; g(k, b) -= 1.0; }
                c(k, k) -= e.value;
                break;
            }
            case ElementKind::VoltageSource: {
                const std::size_t k = next_vsrc++;
                if (a >= 0) { g(a, k) += 1.0; g(k, a) += 1.0; }
                if (b >= 0) { g(b, k) -= 1.0; g(k, b) -= 1.0; }
                b_c[k] = e.amp_c;
                b_s[k] = e.amp_s;
                check_freq(e.freq);
                break;
            }
            case ElementKind::CurrentSource: {
                // Positive current flows from n1 through the source to n2.
                if (a >= 0) { b_c[a] -= e.amp_c; b_s[a] -= e.amp_s; }
                if (b >= 0) { b_c[b] += e.amp_c; b_s[b] += e.amp_s; }
                check_freq(e.freq);
                break;
            }
        }
    }

    for (std::size_t i = 0; i < dim; ++i) {
        bool all_zero = true;
        for (std::size_t j = 0; j < dim && all_zero; ++j)
            if (c(i, j) != 0.0 || g(i, j) != 0.0) all_zero = false;
        if (all_zero)
            throw StampError("floating unknown: row " + std::to_string(i) +
                             " is zero in both C and G");
    }

    SinusoidalSource src;
    src.b_c = std::move(b_c);
    src.b_s = std::move(b_s);
    src.omega = freq > 0.0 ? 2.0 * std::acos(-1.0) * freq : 0.0;
    return LinearDae(std::move(c), std::move(g), std::move(src));
}

}  // namespace obx
