#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <json.hpp>

#include "simcoal/engines.hpp"
#include "simcoal/enumeration.hpp"
#include "simcoal/errors.hpp"
#include "simcoal/lifting.hpp"
#include "simcoal/lts.hpp"
#include "simcoal/orders.hpp"
#include "simcoal/report.hpp"
#include "simcoal/stability.hpp"

namespace py = pybind11;
using namespace simcoal;

namespace {

std::vector<std::size_t> set_to_list(const StateSet& s) {
    std::vector<std::size_t> out;
    for (auto x = s.find_first(); x != StateSet::npos; x = s.find_next(x)) out.push_back(x);
    return out;
}

StepFunction step_fn_from_lists(std::size_t carrier,
                                const std::vector<std::vector<std::size_t>>& per_action) {
    StepFunction u(carrier, per_action.size());
    for (std::size_t a = 0; a < per_action.size(); ++a)
        for (std::size_t x : per_action[a]) u.per_action[a].set(x);
    return u;
}

py::object json_to_py(const nlohmann::json& j) {
    switch (j.type()) {
        case nlohmann::json::value_t::null: return py::none();
        case nlohmann::json::value_t::boolean: return py::bool_(j.get<bool>());
        case nlohmann::json::value_t::number_integer: return py::int_(j.get<std::int64_t>());
        case nlohmann::json::value_t::number_unsigned: return py::int_(j.get<std::uint64_t>());
        case nlohmann::json::value_t::number_float: return py::float_(j.get<double>());
        case nlohmann::json::value_t::string: return py::str(j.get<std::string>());
        case nlohmann::json::value_t::array: {
            py::list out;
            for (const auto& item : j) out.append(json_to_py(item));
            return out;
        }
        case nlohmann::json::value_t::object: {
            py::dict out;
            for (auto it = j.begin(); it != j.end(); ++it)
                out[py::str(it.key())] = json_to_py(it.value());
            return out;
        }
        default: return py::none();
    }
}

Semantics semantics_from_arg(const std::string& name, const std::optional<ActionPartition>& p,
                             const std::vector<std::string>& alphabet) {
    if (name == "plain") return Semantics::plain();
    if (name == "reverse") return Semantics::reverse();
    if (name == "conformance") return Semantics::conformance();
    if (name == "bisim") return Semantics::bisimulation();
    if (name == "cc") {
        if (!p) throw std::invalid_argument("cc semantics needs a partition");
        return Semantics::cc(CcPartition::bind(*p, alphabet));
    }
    throw std::invalid_argument("unknown semantics: " + name);
}

LiftMode mode_from_string(const std::string& mode) {
    if (mode == "fast") return LiftMode::Fast;
    if (mode == "generic") return LiftMode::Generic;
    throw std::invalid_argument("mode must be 'fast' or 'generic'");
}

StabilityOptions options(std::uint64_t budget, bool sample, std::uint64_t seed) {
    StabilityOptions opt;
    opt.budget = budget;
    opt.allow_sampling = sample;
    opt.seed = seed;
    return opt;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Simulation-like preorders on finite labeled transition systems";
    m.attr("__version__") = "0.1.0";

    py::register_exception<BudgetError>(m, "BudgetError", PyExc_RuntimeError);
    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

    py::class_<StepFunction>(m, "StepFunction")
        .def(py::init(&step_fn_from_lists), py::arg("carrier"), py::arg("per_action"))
        .def_readonly("carrier", &StepFunction::carrier_size)
        .def_property_readonly("per_action",
                               [](const StepFunction& u) {
                                   std::vector<std::vector<std::size_t>> out;
                                   for (const auto& s : u.per_action) out.push_back(set_to_list(s));
                                   return out;
                               })
        .def("__eq__", [](const StepFunction& a, const StepFunction& b) { return a == b; })
        .def("__repr__", [](const StepFunction& u) { return format_step_fn(u); });

    py::class_<Relation>(m, "Relation")
        .def(py::init([](std::size_t rows, std::size_t cols,
                         const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
                 Relation r(rows, cols);
                 for (const auto& [x, y] : pairs) r.set(x, y);
                 return r;
             }),
             py::arg("rows"), py::arg("cols"),
             py::arg("pairs") = std::vector<std::pair<std::size_t, std::size_t>>{})
        .def_property_readonly("rows", &Relation::rows)
        .def_property_readonly("cols", &Relation::cols)
        .def("at", &Relation::at, py::arg("x"), py::arg("y"))
        .def("__contains__",
             [](const Relation& r, std::pair<std::size_t, std::size_t> p) {
                 return p.first < r.rows() && p.second < r.cols() && r.at(p.first, p.second);
             })
        .def("pairs", &Relation::pairs)
        .def("pair_count", &Relation::pair_count)
        .def("transpose", &Relation::transpose)
        .def("compose", &Relation::compose, py::arg("second"))
        .def("subset_of", &Relation::subset_of, py::arg("other"))
        .def("__eq__", [](const Relation& a, const Relation& b) { return a == b; })
        .def("__repr__", [](const Relation& r) {
            return "Relation(" + std::to_string(r.rows()) + "x" + std::to_string(r.cols()) + ", " +
                   std::to_string(r.pair_count()) + " pairs)";
        });

    py::class_<StateMap>(m, "StateMap")
        .def(py::init<std::size_t, std::size_t, std::vector<std::size_t>>(), py::arg("domain"),
             py::arg("codomain"), py::arg("table"))
        .def_readonly("domain", &StateMap::domain_size)
        .def_readonly("codomain", &StateMap::codomain_size)
        .def_readonly("table", &StateMap::table)
        .def("apply", &StateMap::apply, py::arg("step_function"))
        .def("__call__", [](const StateMap& f, std::size_t x) { return f(x); });

    py::class_<Lts>(m, "Lts")
        .def(py::init<std::size_t, std::vector<std::string>>(), py::arg("states"),
             py::arg("alphabet"))
        .def_property_readonly("state_count", &Lts::state_count)
        .def_property_readonly("alphabet", &Lts::alphabet)
        .def_property_readonly("initial", &Lts::initial)
        .def_property_readonly("state_labels", &Lts::state_labels)
        .def("set_initial", &Lts::set_initial, py::arg("state"))
        .def("add_transition",
             [](Lts& lts, std::size_t src, const std::string& label, std::size_t dst) {
                 auto a = lts.action_index(label);
                 if (!a) throw std::invalid_argument("label not in alphabet: " + label);
                 lts.add_transition(src, *a, dst);
             },
             py::arg("src"), py::arg("label"), py::arg("dst"))
        .def("successors",
             [](const Lts& lts, std::size_t s, const std::string& label) {
                 auto a = lts.action_index(label);
                 if (!a) throw std::invalid_argument("label not in alphabet: " + label);
                 return set_to_list(lts.successors(s, *a));
             },
             py::arg("state"), py::arg("label"))
        .def("transitions",
             [](const Lts& lts) {
                 std::vector<std::tuple<std::size_t, std::string, std::size_t>> out;
                 for (const auto& [s, a, d] : lts.transitions())
                     out.emplace_back(s, lts.alphabet()[a], d);
                 return out;
             })
        .def("step_of", &Lts::step_of, py::arg("state"))
        .def("initials", &Lts::initials, py::arg("state"))
        .def("state_by_label", &Lts::state_by_label, py::arg("label"))
        .def("__repr__", [](const Lts& lts) {
            return "Lts(" + std::to_string(lts.state_count()) + " states, " +
                   std::to_string(lts.transition_count()) + " transitions)";
        });

    py::class_<ActionPartition>(m, "ActionPartition")
        .def(py::init([](std::vector<std::string> r, std::vector<std::string> l,
                         std::vector<std::string> bi) {
                 return ActionPartition{std::move(r), std::move(l), std::move(bi)};
             }),
             py::arg("r") = std::vector<std::string>{}, py::arg("l") = std::vector<std::string>{},
             py::arg("bi") = std::vector<std::string>{})
        .def_readwrite("r", &ActionPartition::r)
        .def_readwrite("l", &ActionPartition::l)
        .def_readwrite("bi", &ActionPartition::bi)
        .def("validate_against", &ActionPartition::validate_against, py::arg("alphabet"));

    py::class_<Semantics>(m, "Semantics")
        .def_static("plain", &Semantics::plain)
        .def_static("reverse", &Semantics::reverse)
        .def_static("conformance", &Semantics::conformance)
        .def_static("bisimulation", &Semantics::bisimulation)
        .def_static("cc",
                    [](const ActionPartition& p, const std::vector<std::string>& alphabet) {
                        return Semantics::cc(CcPartition::bind(p, alphabet));
                    },
                    py::arg("partition"), py::arg("alphabet"))
        .def_property_readonly("name", &Semantics::name)
        .def("order", &Semantics::order)
        .def("__repr__", [](const Semantics& s) { return "Semantics(" + s.name() + ")"; });

    py::enum_<LiftMode>(m, "LiftMode")
        .value("FAST", LiftMode::Fast)
        .value("GENERIC", LiftMode::Generic);

    py::class_<Order>(m, "Order")
        .def_static("inclusion", &Order::inclusion)
        .def_static("reverse_inclusion", &Order::reverse_inclusion)
        .def_static("equality", &Order::equality)
        .def_static("conformance", &Order::conformance)
        .def_static("conf_empty", &Order::conf_empty)
        .def_static("conf_nonempty", &Order::conf_nonempty)
        .def_static("cov_contra",
                    [](const ActionPartition& p, std::vector<std::string> alphabet) {
                        CcPartition bound = CcPartition::bind(p, alphabet);
                        return Order::cov_contra(std::move(bound), std::move(alphabet));
                    },
                    py::arg("partition"), py::arg("alphabet"))
        .def_static("opposite", &Order::opposite, py::arg("inner"))
        .def_static("compose", &Order::compose, py::arg("a"), py::arg("b"))
        .def("validate_alphabet", &Order::validate_alphabet, py::arg("alphabet"))
        .def_property_readonly("name", &Order::name)
        .def("leq", &Order::leq, py::arg("u"), py::arg("v"),
             py::arg("budget") = kDefaultLeqBudget)
        .def("factored",
             [](const Order& o) -> std::optional<std::pair<Order, Order>> {
                 auto f = o.factored();
                 if (!f) return std::nullopt;
                 return std::make_pair(*f->x_side, *f->y_side);
             })
        .def("__eq__", [](const Order& a, const Order& b) { return a == b; })
        .def("__repr__", [](const Order& o) { return "Order(" + o.name() + ")"; });

    py::class_<CheckReport>(m, "CheckReport")
        .def_property_readonly("law", [](const CheckReport& r) { return r.law; })
        .def_property_readonly("verdict",
                               [](const CheckReport& r) { return to_string(r.verdict); })
        .def_property_readonly("passed", &CheckReport::passed)
        .def_property_readonly("mode", [](const CheckReport& r) { return r.mode; })
        .def_property_readonly("instances", [](const CheckReport& r) { return r.instances; })
        .def_property_readonly("seed", [](const CheckReport& r) { return r.seed; })
        .def_property_readonly("witness",
                               [](const CheckReport& r) -> py::object {
                                   if (!r.witness) return py::none();
                                   return json_to_py(r.to_json()["witness"]);
                               })
        .def_property_readonly("details",
                               [](const CheckReport& r) { return json_to_py(r.details); })
        .def("to_json", [](const CheckReport& r) { return r.to_json().dump(2); })
        .def_static("from_json",
                    [](const std::string& text) {
                        return CheckReport::from_json(nlohmann::json::parse(text));
                    },
                    py::arg("text"))
        .def("__repr__", [](const CheckReport& r) {
            return "CheckReport(" + r.law + ": " + to_string(r.verdict) + ")";
        });

    // parsing and serialization
    m.def("parse_aut", &parse_aut, py::arg("text"));
    m.def("to_aut", &to_aut, py::arg("lts"));
    m.def("parse_native", &parse_native, py::arg("text"));
    m.def("to_native", &to_native, py::arg("lts"));
    m.def("parse_term", &parse_term, py::arg("text"));
    m.def("load_lts", &load_lts, py::arg("path"));
    m.def("load_partition", &load_partition, py::arg("path"));
    m.def("parse_order_expr", &parse_order_expr, py::arg("text"));
    m.def("unify_alphabets",
          [](Lts a, Lts b) {
              bool already = unify_alphabets(a, b);
              return std::make_tuple(std::move(a), std::move(b), already);
          },
          py::arg("lhs"), py::arg("rhs"),
          "Returns (lhs, rhs, alphabets_already_equal) over the union alphabet");

    // lifting
    m.def("rel_lift", &rel_lift, py::arg("relation"), py::arg("u"), py::arg("v"));
    m.def("lax_lift_generic", &lax_lift_generic, py::arg("order"), py::arg("relation"),
          py::arg("u"), py::arg("v"), py::arg("budget") = kDefaultLiftBudget);
    m.def("lax_lift_two", &lax_lift_two, py::arg("x_side"), py::arg("y_side"), py::arg("relation"),
          py::arg("u"), py::arg("v"), py::arg("budget") = kDefaultLiftBudget);
    m.def("lax_lift_fast",
          [](const std::string& semantics, const Relation& rel, const StepFunction& u,
             const StepFunction& v, const std::optional<ActionPartition>& partition,
             const std::vector<std::string>& alphabet) {
              return lax_lift_fast(semantics_from_arg(semantics, partition, alphabet), rel, u, v);
          },
          py::arg("semantics"), py::arg("relation"), py::arg("u"), py::arg("v"),
          py::arg("partition") = std::nullopt, py::arg("alphabet") = std::vector<std::string>{});

    // engines
    m.def("greatest_classical_sim", &greatest_classical_sim, py::arg("lhs"), py::arg("rhs"),
          py::arg("semantics"));
    m.def("greatest_coalgebraic_sim",
          [](const Lts& x, const Lts& y, const Order& order, const std::string& mode,
             std::uint64_t budget) {
              return greatest_coalgebraic_sim(x, y, order, mode_from_string(mode), budget);
          },
          py::arg("lhs"), py::arg("rhs"), py::arg("order"), py::arg("mode") = "fast",
          py::arg("budget") = kDefaultLiftBudget);
    m.def("greatest_bisimulation", &greatest_bisimulation, py::arg("lhs"), py::arg("rhs"));
    m.def("brute_force_similarity",
          [](const Lts& x, const Lts& y, const Semantics& semantics) {
              return brute_force_similarity(x, y, classical_step_predicate(x, y, semantics));
          },
          py::arg("lhs"), py::arg("rhs"), py::arg("semantics"));
    m.def("holds",
          [](const Lts& x, std::size_t sx, const Lts& y, std::size_t sy,
             const Semantics& semantics) { return holds(x, sx, y, sy, semantics); },
          py::arg("lhs"), py::arg("lhs_state"), py::arg("rhs"), py::arg("rhs_state"),
          py::arg("semantics"));
    m.def("holds",
          [](const Lts& x, std::size_t sx, const Lts& y, std::size_t sy, const Order& order,
             const std::string& mode, std::uint64_t budget) {
              return holds(x, sx, y, sy, order, mode_from_string(mode), budget);
          },
          py::arg("lhs"), py::arg("lhs_state"), py::arg("rhs"), py::arg("rhs_state"),
          py::arg("order"), py::arg("mode") = "fast", py::arg("budget") = kDefaultLiftBudget);

    // order law checks
    m.def("check_preorder", &check_preorder, py::arg("order"), py::arg("carrier"),
          py::arg("alphabet"), py::arg("budget") = kDefaultLeqBudget);
    m.def("check_functorial", &check_functorial, py::arg("order"), py::arg("carrier_x"),
          py::arg("carrier_y"), py::arg("alphabet"), py::arg("budget") = kDefaultLeqBudget);

    // stability lab
    m.def("check_right_stable",
          [](const Order& order, std::size_t sx, std::size_t sy, std::size_t alphabet,
             std::uint64_t budget, bool sample, std::uint64_t seed) {
              return check_right_stable(order, sx, sy, alphabet, options(budget, sample, seed));
          },
          py::arg("order"), py::arg("size_x"), py::arg("size_y"), py::arg("alphabet"),
          py::arg("budget") = kDefaultStabilityBudget, py::arg("sample") = false,
          py::arg("seed") = 0);
    m.def("check_left_stable",
          [](const Order& order, std::size_t sx, std::size_t sy, std::size_t alphabet,
             std::uint64_t budget, bool sample, std::uint64_t seed) {
              return check_left_stable(order, sx, sy, alphabet, options(budget, sample, seed));
          },
          py::arg("order"), py::arg("size_x"), py::arg("size_y"), py::arg("alphabet"),
          py::arg("budget") = kDefaultStabilityBudget, py::arg("sample") = false,
          py::arg("seed") = 0);
    m.def("check_stable",
          [](const Order& order, std::size_t sx, std::size_t sy, std::size_t sz, std::size_t sw,
             std::size_t alphabet, std::uint64_t budget, bool sample, std::uint64_t seed) {
              return check_stable(order, sx, sy, sz, sw, alphabet, options(budget, sample, seed));
          },
          py::arg("order"), py::arg("size_x"), py::arg("size_y"), py::arg("size_z"),
          py::arg("size_w"), py::arg("alphabet"), py::arg("budget") = kDefaultStabilityBudget,
          py::arg("sample") = false, py::arg("seed") = 0);
    m.def("check_interchange",
          [](const Order& order, std::size_t sx, std::size_t sy, std::size_t alphabet,
             std::uint64_t budget) {
              return check_interchange(order, sx, sy, alphabet, options(budget, false, 0));
          },
          py::arg("order"), py::arg("size_x"), py::arg("size_y"), py::arg("alphabet"),
          py::arg("budget") = kDefaultStabilityBudget);
    m.def("check_commute",
          [](const Order& a, const Order& b, std::size_t carrier, std::size_t alphabet,
             std::uint64_t budget) {
              return check_commute(a, b, carrier, alphabet, options(budget, false, 0));
          },
          py::arg("order_a"), py::arg("order_b"), py::arg("carrier"), py::arg("alphabet"),
          py::arg("budget") = kDefaultStabilityBudget);
    m.def("check_composition_stability",
          [](const Order& a, const Order& b, const std::vector<std::size_t>& sizes,
             std::size_t alphabet, std::uint64_t budget) {
              return check_composition_stability(a, b, sizes, alphabet, options(budget, false, 0));
          },
          py::arg("order_a"), py::arg("order_b"), py::arg("sizes"), py::arg("alphabet"),
          py::arg("budget") = kDefaultStabilityBudget);
    m.def("check_factored_lift",
          [](const Order& order, const Order& x_side, const Order& y_side, std::size_t sx,
             std::size_t sy, std::size_t alphabet, std::uint64_t budget) {
              return check_factored_lift(order, x_side, y_side, sx, sy, alphabet,
                                         options(budget, false, 0));
          },
          py::arg("order"), py::arg("x_side"), py::arg("y_side"), py::arg("size_x"),
          py::arg("size_y"), py::arg("alphabet"), py::arg("budget") = kDefaultStabilityBudget);
    m.def("check_op_duality",
          [](const Order& order, std::size_t sx, std::size_t sy, std::size_t sz, std::size_t sw,
             std::size_t alphabet, std::uint64_t budget) {
              return check_op_duality(order, sx, sy, sz, sw, alphabet, options(budget, false, 0));
          },
          py::arg("order"), py::arg("size_x"), py::arg("size_y"), py::arg("size_z"),
          py::arg("size_w"), py::arg("alphabet"), py::arg("budget") = kDefaultStabilityBudget);
    m.def("revalidate_witness", &revalidate_witness, py::arg("report"));
}
