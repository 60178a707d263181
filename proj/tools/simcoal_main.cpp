// simcoal: simulation-like preorders on finite labeled transition systems,
// plus exhaustive finite-carrier checks of the order-stability laws.

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "simcoal/engines.hpp"
#include "simcoal/errors.hpp"
#include "simcoal/lts.hpp"
#include "simcoal/orders.hpp"
#include "simcoal/report.hpp"
#include "simcoal/stability.hpp"

namespace {

using namespace simcoal;

struct OutputOptions {
    std::string format = "text";
    std::string out_path;
};

void add_output_flags(CLI::App* cmd, OutputOptions& io) {
    cmd->add_option("--format", io.format, "Output format")
        ->check(CLI::IsMember({"text", "structured"}));
    cmd->add_option("--out", io.out_path, "Write the report to a file instead of stdout");
}

void emit(const OutputOptions& io, const std::string& text, const nlohmann::json& structured) {
    std::string payload = io.format == "structured" ? structured.dump(2) + "\n" : text;
    if (io.out_path.empty()) {
        std::cout << payload;
    } else {
        std::ofstream out(io.out_path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write file: " + io.out_path);
        out << payload;
    }
}

struct PairInputs {
    std::string lhs_path, rhs_path;
    std::string state_both, lhs_state, rhs_state;
    bool strict_alphabet = false;

    Lts lhs, rhs;
    std::size_t lhs_index = 0, rhs_index = 0;
    std::string lhs_display = "root", rhs_display = "root";
};

void add_pair_flags(CLI::App* cmd, PairInputs& in) {
    cmd->add_option("--lhs", in.lhs_path, "Left-hand system (.aut, .term or .json)")->required();
    cmd->add_option("--rhs", in.rhs_path, "Right-hand system (.aut, .term or .json)")->required();
    cmd->add_option("--state", in.state_both, "State (index or name) used on both sides");
    cmd->add_option("--lhs-state", in.lhs_state, "State on the left side only");
    cmd->add_option("--rhs-state", in.rhs_state, "State on the right side only");
    cmd->add_flag("--strict-alphabet", in.strict_alphabet,
                  "Fail instead of unifying differing alphabets");
}

std::size_t resolve_state(const Lts& lts, const std::string& token, const char* side) {
    if (token.empty() || token == "root" || token == "initial") {
        if (!lts.initial())
            throw std::invalid_argument(std::string(side) + ": system has no initial state");
        return *lts.initial();
    }
    if (std::all_of(token.begin(), token.end(), [](unsigned char c) { return std::isdigit(c); })) {
        std::size_t s = std::stoul(token);
        if (s >= lts.state_count())
            throw std::invalid_argument(std::string(side) + ": state index out of range: " + token);
        return s;
    }
    if (auto s = lts.state_by_label(token)) return *s;
    throw std::invalid_argument(std::string(side) + ": unknown state name: " + token);
}

void load_pair(PairInputs& in) {
    in.lhs = load_lts(in.lhs_path);
    in.rhs = load_lts(in.rhs_path);
    if (in.lhs.alphabet() != in.rhs.alphabet()) {
        if (in.strict_alphabet)
            throw std::invalid_argument("alphabets differ and --strict-alphabet is set");
        std::cerr << "warning: unifying differing alphabets of " << in.lhs_path << " and "
                  << in.rhs_path << "\n";
        unify_alphabets(in.lhs, in.rhs);
    }
    std::string lt = !in.lhs_state.empty() ? in.lhs_state : in.state_both;
    std::string rt = !in.rhs_state.empty() ? in.rhs_state : in.state_both;
    in.lhs_index = resolve_state(in.lhs, lt, "--lhs");
    in.rhs_index = resolve_state(in.rhs, rt, "--rhs");
    in.lhs_display = lt.empty() ? "root" : lt;
    in.rhs_display = rt.empty() ? "root" : rt;
}

struct SemanticsChoice {
    std::string semantics_name;
    std::string order_expr;
    std::string partition_path;
    std::string mode = "fast";
    std::uint64_t budget = kDefaultLiftBudget;
};

void add_semantics_flags(CLI::App* cmd, SemanticsChoice& sc) {
    cmd->add_option("--semantics", sc.semantics_name, "plain, reverse, cc, conformance or bisim")
        ->check(CLI::IsMember({"plain", "reverse", "cc", "conformance", "bisim"}));
    cmd->add_option("--order", sc.order_expr, "Functorial-order expression (overrides --semantics)");
    cmd->add_option("--partition", sc.partition_path, "Partition file for cc (r/l/bi lists)");
    cmd->add_option("--mode", sc.mode, "Lifting mode for order-based runs")
        ->check(CLI::IsMember({"fast", "generic"}));
    cmd->add_option("--budget", sc.budget, "Witness-search budget for generic lifting");
}

Semantics bind_semantics(const SemanticsChoice& sc, const std::vector<std::string>& alphabet) {
    if (sc.semantics_name == "plain") return Semantics::plain();
    if (sc.semantics_name == "reverse") return Semantics::reverse();
    if (sc.semantics_name == "conformance") return Semantics::conformance();
    if (sc.semantics_name == "bisim") return Semantics::bisimulation();
    if (sc.semantics_name == "cc") {
        if (sc.partition_path.empty())
            throw std::invalid_argument("--semantics cc requires --partition");
        return Semantics::cc(CcPartition::bind(load_partition(sc.partition_path), alphabet));
    }
    throw std::invalid_argument("choose a semantics with --semantics or an order with --order");
}

Relation compute_relation(const PairInputs& in, const SemanticsChoice& sc) {
    if (!sc.order_expr.empty()) {
        Order order = parse_order_expr(sc.order_expr);
        order.validate_alphabet(in.lhs.alphabet());
        LiftMode mode = sc.mode == "generic" ? LiftMode::Generic : LiftMode::Fast;
        return greatest_coalgebraic_sim(in.lhs, in.rhs, order, mode, sc.budget);
    }
    return greatest_classical_sim(in.lhs, in.rhs, bind_semantics(sc, in.lhs.alphabet()));
}

int cmd_check(PairInputs& in, const SemanticsChoice& sc, const OutputOptions& io) {
    load_pair(in);
    Relation rel = compute_relation(in, sc);
    bool verdict = rel.at(in.lhs_index, in.rhs_index);
    std::string text = in.lhs_display + " ⊑ " + in.rhs_display + ": " +
                       (verdict ? "true" : "false") + "\n";
    nlohmann::json structured = {
        {"command", "check"},
        {"semantics", sc.order_expr.empty() ? sc.semantics_name : sc.order_expr},
        {"lhs", {{"file", in.lhs_path}, {"state", in.lhs_index}}},
        {"rhs", {{"file", in.rhs_path}, {"state", in.rhs_index}}},
        {"holds", verdict}};
    emit(io, text, structured);
    return verdict ? 0 : 1;
}

int cmd_preorder(PairInputs& in, const SemanticsChoice& sc, const OutputOptions& io, bool matrix) {
    load_pair(in);
    Relation rel = compute_relation(in, sc);
    std::string text;
    if (matrix) {
        for (std::size_t x = 0; x < rel.rows(); ++x) {
            for (std::size_t y = 0; y < rel.cols(); ++y) text += rel.at(x, y) ? '1' : '0';
            text += '\n';
        }
    } else {
        for (const auto& [x, y] : rel.pairs())
            text += std::to_string(x) + " ⊑ " + std::to_string(y) + "\n";
    }
    nlohmann::json structured = {{"command", "preorder"},
                                 {"semantics", sc.order_expr.empty() ? sc.semantics_name
                                                                     : sc.order_expr},
                                 {"rows", rel.rows()},
                                 {"cols", rel.cols()},
                                 {"pairs", relation_to_json(rel)["pairs"]}};
    emit(io, text, structured);
    return 0;
}

int cmd_oracle(PairInputs& in, const SemanticsChoice& sc, const OutputOptions& io) {
    load_pair(in);
    Semantics semantics = bind_semantics(sc, in.lhs.alphabet());
    Order order = semantics.order();
    Relation classical = greatest_classical_sim(in.lhs, in.rhs, semantics);
    Relation fast = greatest_coalgebraic_sim(in.lhs, in.rhs, order, LiftMode::Fast, sc.budget);
    Relation generic = greatest_coalgebraic_sim(in.lhs, in.rhs, order, LiftMode::Generic, sc.budget);
    Relation brute =
        brute_force_similarity(in.lhs, in.rhs, classical_step_predicate(in.lhs, in.rhs, semantics));
    bool agree = classical == fast && classical == generic && classical == brute;

    std::string text;
    text += "classical:          " + std::to_string(classical.pair_count()) + " pairs\n";
    text += "coalgebraic (fast): " + std::to_string(fast.pair_count()) + " pairs\n";
    text += "coalgebraic (gen.): " + std::to_string(generic.pair_count()) + " pairs\n";
    text += "brute force:        " + std::to_string(brute.pair_count()) + " pairs\n";
    text += agree ? "AGREE\n" : "DISAGREE\n";
    nlohmann::json structured = {{"command", "oracle"},
                                 {"semantics", semantics.name()},
                                 {"agree", agree},
                                 {"pairs", relation_to_json(classical)["pairs"]}};
    emit(io, text, structured);
    return agree ? 0 : 1;
}

struct StabilityArgs {
    std::string law;
    std::vector<std::string> orders;
    std::string factor_x, factor_y;
    std::vector<std::size_t> sizes;
    std::size_t alphabet = 1;
    std::uint64_t budget = kDefaultStabilityBudget;
    bool sample = false;
    std::uint64_t seed = 0;
};

int cmd_stability(const StabilityArgs& args, const OutputOptions& io) {
    if (args.orders.empty()) throw std::invalid_argument("--order is required");
    Order order = parse_order_expr(args.orders.front());
    auto second_order = [&]() {
        if (args.orders.size() < 2)
            throw std::invalid_argument("law '" + args.law + "' needs two --order arguments");
        return parse_order_expr(args.orders[1]);
    };
    auto need_sizes = [&](std::size_t n) {
        if (args.sizes.size() != n)
            throw std::invalid_argument("law '" + args.law + "' needs --sizes with " +
                                        std::to_string(n) + " entries");
    };

    StabilityOptions opt;
    opt.budget = args.budget;
    opt.allow_sampling = args.sample;
    opt.seed = args.seed;

    CheckReport report;
    if (args.law == "preorder") {
        need_sizes(1);
        report = check_preorder(order, args.sizes[0], args.alphabet, args.budget);
    } else if (args.law == "functorial") {
        need_sizes(2);
        report = check_functorial(order, args.sizes[0], args.sizes[1], args.alphabet, args.budget);
    } else if (args.law == "right-stable") {
        need_sizes(2);
        report = check_right_stable(order, args.sizes[0], args.sizes[1], args.alphabet, opt);
    } else if (args.law == "left-stable") {
        need_sizes(2);
        report = check_left_stable(order, args.sizes[0], args.sizes[1], args.alphabet, opt);
    } else if (args.law == "stable") {
        need_sizes(4);
        report = check_stable(order, args.sizes[0], args.sizes[1], args.sizes[2], args.sizes[3],
                              args.alphabet, opt);
    } else if (args.law == "interchange") {
        need_sizes(2);
        report = check_interchange(order, args.sizes[0], args.sizes[1], args.alphabet, opt);
    } else if (args.law == "commute") {
        need_sizes(1);
        report = check_commute(order, second_order(), args.sizes[0], args.alphabet, opt);
    } else if (args.law == "composition") {
        report = check_composition_stability(order, second_order(), args.sizes, args.alphabet, opt);
    } else if (args.law == "factored-lift") {
        need_sizes(2);
        Order x_side = Order::equality(), y_side = Order::equality();
        if (!args.factor_x.empty() || !args.factor_y.empty()) {
            if (args.factor_x.empty() || args.factor_y.empty())
                throw std::invalid_argument("give both --factor-x and --factor-y, or neither");
            x_side = parse_order_expr(args.factor_x);
            y_side = parse_order_expr(args.factor_y);
        } else {
            auto factored = order.factored();
            if (!factored)
                throw std::invalid_argument(
                    "this order has no canonical factorisation; give --factor-x/--factor-y");
            x_side = *factored->x_side;
            y_side = *factored->y_side;
        }
        report = check_factored_lift(order, x_side, y_side, args.sizes[0], args.sizes[1],
                                     args.alphabet, opt);
    } else if (args.law == "op-duality") {
        need_sizes(4);
        report = check_op_duality(order, args.sizes[0], args.sizes[1], args.sizes[2],
                                  args.sizes[3], args.alphabet, opt);
    } else {
        throw std::invalid_argument("unknown law: " + args.law);
    }

    emit(io, format_report(report), report.to_json());
    return report.passed() ? 0 : 1;
}

int cmd_convert(const std::string& input, const std::string& out_path) {
    Lts lts = load_lts(input);
    auto dot = out_path.rfind('.');
    std::string ext = dot == std::string::npos ? "" : out_path.substr(dot);
    std::string payload;
    if (ext == ".aut")
        payload = to_aut(lts);
    else if (ext == ".json")
        payload = to_native(lts);
    else
        throw std::invalid_argument("cannot write format '" + ext + "' (want .aut or .json)");
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + out_path);
    out << payload;
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"simulation-like preorders on labeled transition systems"};
    app.require_subcommand(1);

    PairInputs check_in, pre_in, oracle_in;
    SemanticsChoice check_sc, pre_sc, oracle_sc;
    OutputOptions check_io, pre_io, oracle_io, stab_io;
    bool pre_matrix = false;
    StabilityArgs stab;
    std::string convert_in, convert_out;

    CLI::App* check = app.add_subcommand("check", "Decide one state pair");
    add_pair_flags(check, check_in);
    add_semantics_flags(check, check_sc);
    add_output_flags(check, check_io);

    CLI::App* preorder = app.add_subcommand("preorder", "Compute the full greatest relation");
    add_pair_flags(preorder, pre_in);
    add_semantics_flags(preorder, pre_sc);
    add_output_flags(preorder, pre_io);
    preorder->add_flag("--matrix", pre_matrix, "Print as a 0/1 matrix instead of a pair list");

    CLI::App* stability = app.add_subcommand("stability", "Check one order-stability law");
    stability->add_option("--law", stab.law,
                          "preorder, functorial, right-stable, left-stable, stable, interchange, "
                          "commute, composition, factored-lift or op-duality")
        ->required();
    stability->add_option("--order", stab.orders, "Order expression (repeat for two-order laws)")
        ->required();
    stability->add_option("--factor-x", stab.factor_x, "x-side factor for factored-lift");
    stability->add_option("--factor-y", stab.factor_y, "y-side factor for factored-lift");
    stability->add_option("--sizes", stab.sizes, "Carrier sizes, comma separated")
        ->required()
        ->delimiter(',');
    stability->add_option("--alphabet", stab.alphabet, "Alphabet size")->required();
    stability->add_option("--budget", stab.budget, "Instance budget");
    stability->add_flag("--sample", stab.sample, "Sample uniformly when over budget");
    stability->add_option("--seed", stab.seed, "Seed for sampled runs");
    add_output_flags(stability, stab_io);

    CLI::App* oracle = app.add_subcommand(
        "oracle", "Compare fixed-point engines against the brute-force enumeration");
    add_pair_flags(oracle, oracle_in);
    add_semantics_flags(oracle, oracle_sc);
    add_output_flags(oracle, oracle_io);

    CLI::App* convert = app.add_subcommand("convert", "Convert between .aut, .term and .json");
    convert->add_option("input", convert_in, "Input file")->required();
    convert->add_option("--out", convert_out, "Output file (.aut or .json)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (check->parsed()) return cmd_check(check_in, check_sc, check_io);
        if (preorder->parsed()) return cmd_preorder(pre_in, pre_sc, pre_io, pre_matrix);
        if (stability->parsed()) return cmd_stability(stab, stab_io);
        if (oracle->parsed()) return cmd_oracle(oracle_in, oracle_sc, oracle_io);
        if (convert->parsed()) return cmd_convert(convert_in, convert_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
