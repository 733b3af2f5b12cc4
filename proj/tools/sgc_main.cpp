#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "sgc/benchgen.hpp"
#include "sgc/oracle.hpp"
#include "sgc/protocol.hpp"
#include "sgc/sha256.hpp"

namespace {

using nlohmann::json;

// exit codes (also documented in the README)
constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitUsage = 2;
constexpr int kExitHandshake = 3;
constexpr int kExitTransport = 4;
constexpr int kExitOtFlag = 5;
constexpr int kExitMismatch = 6;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& data) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << data;
}

sgc::BitVec load_bits(const std::string& path, uint32_t count, const char* what) {
    if (count == 0) return {};
    if (path.empty())
        throw std::invalid_argument(std::string("circuit needs ") + what +
                                    " bits but no input file was given");
    auto bytes = sgc::hex_decode(read_file(path));
    return sgc::unpack_bits(bytes, count);
}

std::string bits_hex(const sgc::BitVec& bits) {
    auto packed = sgc::pack_bits(bits);
    return sgc::hex_encode(packed.data(), packed.size());
}

void split_hostport(const std::string& s, std::string& host, uint16_t& port) {
    auto pos = s.rfind(':');
    if (pos == std::string::npos)
        throw std::invalid_argument("expected host:port, got '" + s + "'");
    host = s.substr(0, pos);
    port = uint16_t(std::stoul(s.substr(pos + 1)));
}

json stats_line(const sgc::CycleStats& s) {
    return json{{"cycle", s.cycle},
                {"cat1", s.cat1},
                {"cat2", s.cat2},
                {"cat3", s.cat3},
                {"cat4", s.cat4},
                {"tables_emitted", s.tables_emitted},
                {"tables_filtered", s.tables_filtered},
                {"reduction_calls", s.reduction_calls},
                {"skipped", s.skipped}};
}

void write_stats(const std::string& path, const sgc::SessionResult& r) {
    if (path.empty()) return;
    std::ostringstream out;
    for (const auto& s : r.cycle_stats) out << stats_line(s).dump() << "\n";
    out << json{{"total_tables", r.total_tables},
                {"total_skipped", r.total_skipped},
                {"bytes_sent", r.bytes_sent},
                {"wall_time", r.wall_seconds}}
               .dump()
        << "\n";
    write_file(path, out.str());
}

void print_gate_stats(const sgc::Circuit& c) {
    size_t by_kind[7] = {};
    for (const auto& g : c.gates) by_kind[size_t(g.kind)]++;
    size_t and_family = 0, and_family_live = 0;
    auto live = sgc::live_gate_mask(c);
    for (const auto& g : c.gates) {
        if (!sgc::is_and_family(g.kind)) continue;
        and_family++;
        if (live[g.id]) and_family_live++;
    }
    std::cout << "gates: " << c.gates.size() << " (AND-family " << and_family
              << ", " << and_family_live << " live";
    for (int k = 0; k < 7; k++) {
        if (by_kind[k] == 0) continue;
        std::cout << ", " << sgc::gate_kind_name(sgc::GateKind(k)) << " "
                  << by_kind[k];
    }
    std::cout << ")\n";
    std::cout << "wires: " << c.wire_count << ", dffs: " << c.dffs.size()
              << ", inputs g/e/p: " << c.garbler_input_count << "/"
              << c.evaluator_input_count << "/" << c.public_input_count
              << ", outputs: " << c.outputs.size() << "\n";
}

int cmd_gen(const std::string& kind, uint32_t bits, uint32_t width, uint32_t ways,
            const std::string& asm_path, const std::string& out_path, bool stats) {
    sgc::Circuit c;
    uint32_t cycles = 1;
    if (kind == "adder") {
        c = sgc::bench::gen_adder(bits);
    } else if (kind == "comparator") {
        c = sgc::bench::gen_comparator(bits);
    } else if (kind == "hamming") {
        c = sgc::bench::gen_hamming(bits);
    } else if (kind == "mult") {
        c = sgc::bench::gen_mult(bits);
    } else if (kind == "muxtree") {
        c = sgc::bench::gen_mux_tree(width, ways);
    } else if (kind == "tinycpu") {
        if (asm_path.empty())
            throw std::invalid_argument("gen tinycpu needs --asm <file>");
        auto prog = sgc::bench::assemble(read_file(asm_path));
        auto cpu = sgc::bench::gen_tinycpu(prog);
        c = std::move(cpu.circuit);
        cycles = cpu.cycles;
        std::cout << "program words: " << prog.words.size() << "\n";
        std::cout << "public bits (hex, LSB-first): "
                  << bits_hex(sgc::bench::tinycpu_public_bits(prog)) << "\n";
    } else {
        throw std::invalid_argument("unknown generator '" + kind + "'");
    }
    std::string text = "# cycles: " + std::to_string(cycles) + "\n" +
                       sgc::emit_netlist(c);
    write_file(out_path, text);
    std::cout << "wrote " << out_path << " (run with --cycles " << cycles << ")\n";
    if (stats) print_gate_stats(c);
    return kExitOk;
}

struct RunArgs {
    std::string netlist, role, listen, connect;
    std::string input_a, input_b, input_p, stats_path;
    uint32_t cycles = 1;
    int64_t seed = -1;
    bool insecure_test_ot = false;
    bool public_as_secret = false;
    std::string output_policy = "both";
};

int cmd_run(const RunArgs& args) {
    if (args.role != "garbler" && args.role != "evaluator" && args.role != "simulate")
        throw std::invalid_argument("role must be garbler, evaluator, or simulate");
    if (args.role != "simulate" && !args.insecure_test_ot)
        throw sgc::OtPolicyError(
            "network sessions use the dealer OT, which reveals the "
            "evaluator's choices; pass --insecure-test-ot to accept that");
    if (args.role == "simulate" && (!args.listen.empty() || !args.connect.empty()))
        throw std::invalid_argument("simulate runs in-process; drop --listen/--connect");

    sgc::Circuit c = sgc::parse_netlist(read_file(args.netlist));
    auto rep = sgc::validate(c);
    if (!rep.ok()) {
        std::cerr << "netlist failed validation:\n" << rep.to_string();
        return kExitUsage;
    }
    sgc::OutputPolicy policy = args.output_policy == "garbler"
                                   ? sgc::OutputPolicy::GarblerOnly
                                   : sgc::OutputPolicy::Both;
    std::optional<uint64_t> seed;
    if (args.seed >= 0) seed = uint64_t(args.seed);

    // Under --public-as-secret the former public bits become the garbler's
    // private inputs, so only the garbler (and simulate) loads them.
    sgc::BitVec p;
    if (!args.public_as_secret || args.role != "evaluator")
        p = load_bits(args.input_p, c.public_input_count, "public");
    if (args.public_as_secret) c = sgc::bench::make_public_inputs_secret(c);

    if (args.role == "simulate") {
        sgc::BitVec a = load_bits(args.input_a, c.garbler_input_count -
                                   (args.public_as_secret ? uint32_t(p.size()) : 0),
                                  "garbler");
        sgc::BitVec b = load_bits(args.input_b, c.evaluator_input_count, "evaluator");
        if (args.public_as_secret) {
            a.insert(a.end(), p.begin(), p.end());
            p.clear();
        }
        auto expected = sgc::plain_eval(c, a, b, p, args.cycles).outputs;
        auto sim = sgc::simulate_session(c, a, b, p, args.cycles, policy, seed);
        write_stats(args.stats_path, sim.garbler);
        std::cout << "output (hex, LSB-first): " << bits_hex(sim.garbler.outputs)
                  << "\n";
        std::cout << "total tables: " << sim.garbler.total_tables << "\n";
        if (sim.garbler.outputs != expected ||
            (policy == sgc::OutputPolicy::Both &&
             sim.evaluator.outputs != expected)) {
            std::cerr << "MISMATCH against reference evaluation\n";
            return kExitMismatch;
        }
        std::cout << "matches reference evaluation\n";
        return kExitOk;
    }

    sgc::DealerOt ot(args.insecure_test_ot);
    std::unique_ptr<sgc::ByteChannel> ch;
    std::string host;
    uint16_t port = 0;
    if (!args.listen.empty()) {
        split_hostport(args.listen, host, port);
        ch = sgc::tcp_listen_one(host, port);
    } else if (!args.connect.empty()) {
        split_hostport(args.connect, host, port);
        ch = sgc::tcp_connect(host, port);
    } else {
        throw std::invalid_argument("network roles need --listen or --connect");
    }

    sgc::SessionResult r;
    if (args.role == "garbler") {
        sgc::BitVec a = load_bits(args.input_a, c.garbler_input_count -
                                   (args.public_as_secret ? uint32_t(p.size()) : 0),
                                  "garbler");
        if (args.public_as_secret) {
            a.insert(a.end(), p.begin(), p.end());
            p.clear();
        }
        r = sgc::run_garbler_session(c, a, p, args.cycles, *ch, ot, policy, seed);
    } else {
        if (args.public_as_secret) p.clear();
        sgc::BitVec b = load_bits(args.input_b, c.evaluator_input_count, "evaluator");
        r = sgc::run_evaluator_session(c, b, p, args.cycles, *ch, ot, policy);
    }
    write_stats(args.stats_path, r);
    if (r.have_outputs)
        std::cout << "output (hex, LSB-first): " << bits_hex(r.outputs) << "\n";
    std::cout << "total tables: " << r.total_tables << "\n";
    return kExitOk;
}

int cmd_check(const std::string& netlist, uint32_t cycles, uint32_t limit) {
    sgc::Circuit c = sgc::parse_netlist(read_file(netlist));
    auto verdict = sgc::exhaustive_equiv(c, cycles, limit);
    if (verdict.refused) {
        std::cerr << "refused: " << verdict.refusal_reason << "\n";
        return kExitUsage;
    }
    std::cout << verdict.cases_run << " cases, " << verdict.mismatches.size()
              << " mismatches\n";
    return verdict.mismatches.empty() ? kExitOk : kExitMismatch;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"two-party garbled evaluation of sequential netlists"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "generate a benchmark netlist");
    std::string gen_kind, gen_asm, gen_out = "circuit.sgc";
    uint32_t gen_bits = 32, gen_width = 1, gen_ways = 2;
    bool gen_stats = false;
    gen->add_option("kind", gen_kind,
                    "adder|comparator|hamming|mult|muxtree|tinycpu")
        ->required();
    gen->add_option("--bits", gen_bits, "bit width");
    gen->add_option("--width", gen_width, "mux tree word width");
    gen->add_option("--ways", gen_ways, "mux tree fan-in");
    gen->add_option("--asm", gen_asm, "assembly source (tinycpu)");
    gen->add_option("-o,--out", gen_out, "output netlist path");
    gen->add_flag("--stats", gen_stats, "print static gate counts");

    // run
    auto* run = app.add_subcommand("run", "run a two-party session");
    RunArgs ra;
    run->add_option("--netlist", ra.netlist)->required();
    run->add_option("--role", ra.role, "garbler|evaluator|simulate")->required();
    run->add_option("--listen", ra.listen, "host:port to accept on");
    run->add_option("--connect", ra.connect, "host:port to connect to");
    run->add_option("--cycles", ra.cycles)->required();
    run->add_option("--input-a", ra.input_a, "garbler input bits (hex file)");
    run->add_option("--input-b", ra.input_b, "evaluator input bits (hex file)");
    run->add_option("--input-p", ra.input_p, "public input bits (hex file)");
    run->add_option("--seed", ra.seed, "label generator seed (reproducible runs)");
    run->add_flag("--insecure-test-ot", ra.insecure_test_ot,
                  "allow the choice-revealing dealer OT over the network");
    run->add_flag("--public-as-secret", ra.public_as_secret,
                  "rebind public inputs as garbler-private inputs");
    run->add_option("--output-policy", ra.output_policy, "both|garbler");
    run->add_option("--stats", ra.stats_path, "write per-cycle stats (JSON lines)");

    // check
    auto* check = app.add_subcommand("check", "exhaustive small-circuit check");
    std::string check_netlist;
    uint32_t check_cycles = 1, check_limit = 16;
    check->add_option("--netlist", check_netlist)->required();
    check->add_option("--cycles", check_cycles);
    check->add_option("--limit", check_limit, "max private input bits");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (gen->parsed())
            return cmd_gen(gen_kind, gen_bits, gen_width, gen_ways, gen_asm,
                           gen_out, gen_stats);
        if (run->parsed()) return cmd_run(ra);
        if (check->parsed()) return cmd_check(check_netlist, check_cycles, check_limit);
    } catch (const sgc::OtPolicyError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitOtFlag;
    } catch (const sgc::HandshakeError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitHandshake;
    } catch (const sgc::TransportError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitTransport;
    } catch (const sgc::ProtocolError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitTransport;
    } catch (const sgc::DesyncError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitTransport;
    } catch (const sgc::DecodeError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitTransport;
    } catch (const sgc::ParseError& e) {
        std::cerr << "netlist error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const sgc::bench::AsmError& e) {
        std::cerr << "assembly error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitUsage;
}
