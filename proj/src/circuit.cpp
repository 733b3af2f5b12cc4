#include "sgc/circuit.hpp"

#include <sstream>
#include <unordered_map>

#include "sgc/sha256.hpp"

namespace sgc {

AndFamilyConstants and_family_constants(GateKind k) {
    switch (k) {
        case GateKind::And: return {false, false, false};
        case GateKind::Nand: return {false, false, true};
        case GateKind::Or: return {true, true, true};
        case GateKind::Nor: return {true, true, false};
        default: throw std::logic_error("not an AND-family kind");
    }
}

bool eval_gate(GateKind k, bool a, bool b) {
    switch (k) {
        case GateKind::And: return a && b;
        case GateKind::Nand: return !(a && b);
        case GateKind::Or: return a || b;
        case GateKind::Nor: return !(a || b);
        case GateKind::Xor: return a != b;
        case GateKind::Xnor: return a == b;
        case GateKind::Not: return !a;
    }
    return false;
}

const char* gate_kind_name(GateKind k) {
    switch (k) {
        case GateKind::And: return "AND";
        case GateKind::Nand: return "NAND";
        case GateKind::Or: return "OR";
        case GateKind::Nor: return "NOR";
        case GateKind::Xor: return "XOR";
        case GateKind::Xnor: return "XNOR";
        case GateKind::Not: return "NOT";
    }
    return "?";
}

bool parse_gate_kind(const std::string& s, GateKind& out) {
    static const std::unordered_map<std::string, GateKind> table = {
        {"AND", GateKind::And},   {"NAND", GateKind::Nand},
        {"OR", GateKind::Or},     {"NOR", GateKind::Nor},
        {"XOR", GateKind::Xor},   {"XNOR", GateKind::Xnor},
        {"NOT", GateKind::Not}};
    auto it = table.find(s);
    if (it == table.end()) return false;
    out = it->second;
    return true;
}

namespace {

struct LineLexer {
    std::istringstream in;
    size_t line_no;

    LineLexer(const std::string& s, size_t n) : in(s), line_no(n) {}

    std::string word(const char* what) {
        std::string w;
        if (!(in >> w)) throw ParseError(line_no, std::string("expected ") + what);
        return w;
    }
    uint32_t number(const char* what) {
        std::string w = word(what);
        try {
            size_t pos = 0;
            unsigned long v = std::stoul(w, &pos, 10);
            if (pos != w.size() || v > 0xfffffffful) throw std::invalid_argument("");
            return uint32_t(v);
        } catch (...) {
            throw ParseError(line_no, std::string("expected ") + what +
                                          ", got '" + w + "'");
        }
    }
    bool done() {
        std::string w;
        return !(in >> w);
    }
    void end_of_line() {
        std::string w;
        if (in >> w)
            throw ParseError(line_no, "trailing token '" + w + "'");
    }
};

InputClass parse_input_class(LineLexer& lx) {
    std::string w = lx.word("input class g|e|p");
    if (w == "g") return InputClass::Garbler;
    if (w == "e") return InputClass::Evaluator;
    if (w == "p") return InputClass::Public;
    throw ParseError(lx.line_no, "unknown input class '" + w + "'");
}

}  // namespace

Circuit parse_netlist(const std::string& text) {
    Circuit c;
    bool saw_circuit = false, saw_wires = false, saw_end = false;
    bool body_started = false;
    // per-wire driver bookkeeping for early duplicate-driver errors
    std::vector<uint8_t> driven;

    auto check_wire = [&](LineLexer& lx, uint32_t w) {
        if (!saw_wires) throw ParseError(lx.line_no, "wire used before 'wires' declaration");
        if (w >= c.wire_count)
            throw ParseError(lx.line_no, "undefined wire " + std::to_string(w));
        return w;
    };
    auto claim_driver = [&](LineLexer& lx, uint32_t w) {
        if (driven[w])
            throw ParseError(lx.line_no,
                             "duplicate driver for wire " + std::to_string(w));
        driven[w] = 1;
    };

    std::istringstream stream(text);
    std::string raw;
    size_t line_no = 0;
    while (std::getline(stream, raw)) {
        line_no++;
        if (auto pos = raw.find('#'); pos != std::string::npos) raw.erase(pos);
        LineLexer lx(raw, line_no);
        if (lx.done()) continue;
        lx = LineLexer(raw, line_no);
        std::string kw = lx.word("keyword");

        if (saw_end) throw ParseError(line_no, "content after 'end'");
        if (!saw_circuit) {
            if (kw != "circuit")
                throw ParseError(line_no, "file must start with 'circuit <name>'");
            c.name = lx.word("circuit name");
            lx.end_of_line();
            saw_circuit = true;
            continue;
        }

        if (kw == "wires") {
            if (saw_wires) throw ParseError(line_no, "duplicate 'wires' line");
            if (body_started) throw ParseError(line_no, "'wires' must precede netlist body");
            c.wire_count = lx.number("wire count");
            driven.assign(c.wire_count, 0);
            saw_wires = true;
        } else if (kw == "inputs") {
            if (body_started) throw ParseError(line_no, "'inputs' must precede netlist body");
            InputClass cls = parse_input_class(lx);
            uint32_t n = lx.number("input count");
            switch (cls) {
                case InputClass::Garbler: c.garbler_input_count = n; break;
                case InputClass::Evaluator: c.evaluator_input_count = n; break;
                case InputClass::Public: c.public_input_count = n; break;
            }
        } else if (kw == "in") {
            body_started = true;
            InputBinding b;
            b.wire = check_wire(lx, lx.number("wire id"));
            b.cls = parse_input_class(lx);
            b.index = lx.number("input index");
            claim_driver(lx, b.wire);
            c.bindings.push_back(b);
        } else if (kw == "dff") {
            body_started = true;
            FlipFlop ff;
            ff.out = check_wire(lx, lx.number("dff output wire"));
            ff.in = check_wire(lx, lx.number("dff input wire"));
            std::string init = lx.word("dff init");
            if (init == "0") {
                ff.init.kind = FlipFlopInit::Kind::Const0;
            } else if (init == "1") {
                ff.init.kind = FlipFlopInit::Kind::Const1;
            } else if (init.size() > 2 && init[1] == ':') {
                switch (init[0]) {
                    case 'g': ff.init.kind = FlipFlopInit::Kind::Garbler; break;
                    case 'e': ff.init.kind = FlipFlopInit::Kind::Evaluator; break;
                    case 'p': ff.init.kind = FlipFlopInit::Kind::Public; break;
                    default: throw ParseError(line_no, "unknown dff init '" + init + "'");
                }
                try {
                    size_t pos = 0;
                    ff.init.index = uint32_t(std::stoul(init.substr(2), &pos, 10));
                    if (pos != init.size() - 2) throw std::invalid_argument("");
                } catch (...) {
                    throw ParseError(line_no, "bad dff init index in '" + init + "'");
                }
            } else {
                throw ParseError(line_no, "unknown dff init '" + init + "'");
            }
            claim_driver(lx, ff.out);
            c.dffs.push_back(ff);
        } else if (kw == "gate") {
            body_started = true;
            Gate g;
            g.id = lx.number("gate id");
            if (g.id != c.gates.size())
                throw ParseError(line_no, "non-contiguous gate id " +
                                              std::to_string(g.id) + ", expected " +
                                              std::to_string(c.gates.size()));
            std::string kind = lx.word("gate kind");
            if (!parse_gate_kind(kind, g.kind))
                throw ParseError(line_no, "unknown gate kind '" + kind + "'");
            g.in0 = check_wire(lx, lx.number("input wire"));
            if (g.kind == GateKind::Not) {
                g.in1 = kNoWire;
            } else {
                g.in1 = check_wire(lx, lx.number("input wire"));
            }
            g.out = check_wire(lx, lx.number("output wire"));
            claim_driver(lx, g.out);
            c.gates.push_back(g);
        } else if (kw == "out") {
            body_started = true;
            c.outputs.push_back(check_wire(lx, lx.number("output wire")));
        } else if (kw == "end") {
            saw_end = true;
        } else {
            throw ParseError(line_no, "unknown keyword '" + kw + "'");
        }
        lx.end_of_line();
    }
    if (!saw_circuit) throw ParseError(line_no, "empty file, expected 'circuit <name>'");
    if (!saw_end) throw ParseError(line_no, "missing 'end'");
    if (!saw_wires) throw ParseError(line_no, "missing 'wires' declaration");
    return c;
}

std::string emit_netlist(const Circuit& c) {
    std::ostringstream out;
    out << "circuit " << c.name << "\n";
    out << "wires " << c.wire_count << "\n";
    out << "inputs g " << c.garbler_input_count << "\n";
    out << "inputs e " << c.evaluator_input_count << "\n";
    out << "inputs p " << c.public_input_count << "\n";
    for (const auto& b : c.bindings) {
        char cls = b.cls == InputClass::Garbler ? 'g'
                   : b.cls == InputClass::Evaluator ? 'e' : 'p';
        out << "in " << b.wire << " " << cls << " " << b.index << "\n";
    }
    for (const auto& ff : c.dffs) {
        out << "dff " << ff.out << " " << ff.in << " ";
        switch (ff.init.kind) {
            case FlipFlopInit::Kind::Const0: out << "0"; break;
            case FlipFlopInit::Kind::Const1: out << "1"; break;
            case FlipFlopInit::Kind::Garbler: out << "g:" << ff.init.index; break;
            case FlipFlopInit::Kind::Evaluator: out << "e:" << ff.init.index; break;
            case FlipFlopInit::Kind::Public: out << "p:" << ff.init.index; break;
        }
        out << "\n";
    }
    for (const auto& g : c.gates) {
        out << "gate " << g.id << " " << gate_kind_name(g.kind) << " " << g.in0;
        if (!g.is_unary()) out << " " << g.in1;
        out << " " << g.out << "\n";
    }
    for (WireId w : c.outputs) out << "out " << w << "\n";
    out << "end\n";
    return out.str();
}

WireDrivers WireDrivers::build(const Circuit& c) {
    WireDrivers d;
    d.kind.assign(c.wire_count, Kind::None);
    d.index.assign(c.wire_count, 0);
    auto set = [&](WireId w, Kind k, uint32_t idx) {
        if (w >= c.wire_count) return;  // validator reports the range error
        d.kind[w] = k;
        d.index[w] = idx;
    };
    for (size_t i = 0; i < c.bindings.size(); i++)
        set(c.bindings[i].wire, Kind::Binding, uint32_t(i));
    for (size_t i = 0; i < c.dffs.size(); i++)
        set(c.dffs[i].out, Kind::FlipFlop, uint32_t(i));
    for (const auto& g : c.gates) set(g.out, Kind::Gate, g.id);
    return d;
}

std::string ValidationReport::to_string() const {
    std::ostringstream out;
    for (const auto& v : violations) out << v.rule << ": " << v.message << "\n";
    return out.str();
}

ValidationReport validate(const Circuit& c) {
    ValidationReport rep;
    auto add = [&](const std::string& rule, const std::string& msg) {
        rep.violations.push_back({rule, msg});
    };

    auto wire_ok = [&](WireId w) { return w < c.wire_count; };
    auto check_range = [&](WireId w, const std::string& where) {
        if (!wire_ok(w)) add("wire range", where + " references wire " +
                                                std::to_string(w) + " >= " +
                                                std::to_string(c.wire_count));
        return wire_ok(w);
    };

    // driver map with duplicate detection
    std::vector<int> driver_count(c.wire_count, 0);
    auto claim = [&](WireId w, const std::string& who) {
        if (!wire_ok(w)) return;
        driver_count[w]++;
        if (driver_count[w] == 2)
            add("single driver", "wire " + std::to_string(w) +
                                     " has multiple drivers (latest: " + who + ")");
    };

    for (size_t i = 0; i < c.bindings.size(); i++) {
        const auto& b = c.bindings[i];
        if (check_range(b.wire, "input binding " + std::to_string(i)))
            claim(b.wire, "input binding " + std::to_string(i));
        uint32_t limit = b.cls == InputClass::Garbler ? c.garbler_input_count
                         : b.cls == InputClass::Evaluator ? c.evaluator_input_count
                                                          : c.public_input_count;
        if (b.index >= limit)
            add("input index", "binding " + std::to_string(i) + " index " +
                                   std::to_string(b.index) + " >= declared count " +
                                   std::to_string(limit));
    }
    for (size_t i = 0; i < c.dffs.size(); i++) {
        const auto& ff = c.dffs[i];
        if (check_range(ff.out, "dff " + std::to_string(i)))
            claim(ff.out, "dff " + std::to_string(i));
        check_range(ff.in, "dff " + std::to_string(i) + " input");
        uint32_t limit = 0;
        bool indexed = true;
        switch (ff.init.kind) {
            case FlipFlopInit::Kind::Garbler: limit = c.garbler_input_count; break;
            case FlipFlopInit::Kind::Evaluator: limit = c.evaluator_input_count; break;
            case FlipFlopInit::Kind::Public: limit = c.public_input_count; break;
            default: indexed = false;
        }
        if (indexed && ff.init.index >= limit)
            add("input index", "dff " + std::to_string(i) + " init index " +
                                   std::to_string(ff.init.index) +
                                   " >= declared count " + std::to_string(limit));
    }

    // topological order: a gate may read circuit inputs, dff outputs, or
    // outputs of gates with smaller ids
    std::vector<int64_t> wire_ready(c.wire_count, -1);  // gate id making it ready
    for (const auto& b : c.bindings)
        if (wire_ok(b.wire)) wire_ready[b.wire] = 0;
    for (const auto& ff : c.dffs)
        if (wire_ok(ff.out)) wire_ready[ff.out] = 0;

    for (size_t i = 0; i < c.gates.size(); i++) {
        const auto& g = c.gates[i];
        if (g.id != i)
            add("gate ids", "gate at position " + std::to_string(i) +
                                " has id " + std::to_string(g.id));
        std::vector<WireId> ins = {g.in0};
        if (!g.is_unary()) ins.push_back(g.in1);
        for (WireId w : ins) {
            if (!check_range(w, "gate " + std::to_string(g.id))) continue;
            if (wire_ready[w] < 0)
                add("topological order",
                    "gate " + std::to_string(g.id) + " reads wire " +
                        std::to_string(w) + " with no earlier driver");
        }
        if (g.is_unary() && g.in1 != kNoWire)
            add("gate arity", "NOT gate " + std::to_string(g.id) + " has two inputs");
        if (check_range(g.out, "gate " + std::to_string(g.id))) {
            claim(g.out, "gate " + std::to_string(g.id));
            wire_ready[g.out] = int64_t(g.id) + 1;
        }
    }

    for (WireId w : c.outputs) {
        if (!check_range(w, "output list")) continue;
        if (driver_count[w] == 0)
            add("undriven output", "output wire " + std::to_string(w) + " has no driver");
    }
    for (const auto& ff : c.dffs) {
        if (wire_ok(ff.in) && driver_count[ff.in] == 0 && wire_ready[ff.in] < 0)
            add("undriven wire", "dff input wire " + std::to_string(ff.in) + " has no driver");
    }
    return rep;
}

StaticFanout static_fanout(const Circuit& c) {
    auto drivers = WireDrivers::build(c);
    StaticFanout fan(c.gates.size(), 0);
    auto bump = [&](WireId w) {
        if (w < c.wire_count && drivers.kind[w] == WireDrivers::Kind::Gate)
            fan[drivers.index[w]]++;
    };
    for (const auto& g : c.gates) {
        bump(g.in0);
        if (!g.is_unary()) bump(g.in1);
    }
    for (const auto& ff : c.dffs) bump(ff.in);
    for (WireId w : c.outputs) bump(w);
    return fan;
}

FanoutBoundTerms fanout_bound_terms(const Circuit& c) {
    auto drivers = WireDrivers::build(c);
    FanoutBoundTerms t;
    t.n = c.gates.size();
    for (const auto& g : c.gates) {
        std::vector<WireId> ins = {g.in0};
        if (!g.is_unary()) ins.push_back(g.in1);
        for (WireId w : ins)
            if (w < c.wire_count && drivers.kind[w] != WireDrivers::Kind::Gate)
                t.m++;
    }
    t.q = c.outputs.size() + c.dffs.size();
    return t;
}

std::vector<uint8_t> live_gate_mask(const Circuit& c) {
    auto drivers = WireDrivers::build(c);
    std::vector<uint8_t> live(c.gates.size(), 0);
    std::vector<WireId> stack;
    auto push = [&](WireId w) {
        if (w < c.wire_count && drivers.kind[w] == WireDrivers::Kind::Gate &&
            !live[drivers.index[w]]) {
            live[drivers.index[w]] = 1;
            stack.push_back(w);
        }
    };
    for (WireId w : c.outputs) push(w);
    for (const auto& ff : c.dffs) push(ff.in);
    while (!stack.empty()) {
        const Gate& g = c.gates[drivers.index[stack.back()]];
        stack.pop_back();
        push(g.in0);
        if (!g.is_unary()) push(g.in1);
    }
    return live;
}

std::array<uint8_t, 32> circuit_digest(const Circuit& c) {
    return Sha256::digest(emit_netlist(c));
}

}  // namespace sgc
