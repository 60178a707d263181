#include "simcoal/orders.hpp"

#include <cctype>
#include <stdexcept>

#include "simcoal/enumeration.hpp"
#include "simcoal/errors.hpp"

namespace simcoal {

bool set_leq(SetOrder o, const StateSet& a, const StateSet& b) {
    switch (o) {
        case SetOrder::Subset: return a.is_subset_of(b);
        case SetOrder::Superset: return b.is_subset_of(a);
        case SetOrder::Equal: return a == b;
        case SetOrder::ConfEmpty: return a.none() || a == b;
        case SetOrder::ConfNonEmpty: return (b.is_subset_of(a) && b.any()) || a == b;
        case SetOrder::Conf: return a.none() || (b.is_subset_of(a) && b.any());
    }
    return false;
}

std::string set_order_name(SetOrder o) {
    switch (o) {
        case SetOrder::Subset: return "sub";
        case SetOrder::Superset: return "sup";
        case SetOrder::Equal: return "eq";
        case SetOrder::ConfEmpty: return "conf_empty";
        case SetOrder::ConfNonEmpty: return "conf_nonempty";
        case SetOrder::Conf: return "conf";
    }
    return "?";
}

struct Order::Node {
    OrderKind kind;
    CcPartition partition;                 // CovContra
    std::vector<std::string> action_names; // CovContra bound from a named partition
    std::vector<SetOrder> components;      // PerActionProduct
    std::shared_ptr<const Node> inner;     // Opposite
    std::shared_ptr<const Node> a;         // Compose
    std::shared_ptr<const Node> b;         // Compose
};

Order Order::inclusion() {
    auto n = std::make_shared<Node>();
    n->kind = OrderKind::Inclusion;
    return Order(std::move(n));
}
Order Order::reverse_inclusion() {
    auto n = std::make_shared<Node>();
    n->kind = OrderKind::ReverseInclusion;
    return Order(std::move(n));
}
Order Order::equality() {
    auto n = std::make_shared<Node>();
    n->kind = OrderKind::Equality;
    return Order(std::move(n));
}
Order Order::conformance() {
    auto n = std::make_shared<Node>();
    n->kind = OrderKind::Conformance;
    return Order(std::move(n));
}
Order Order::conf_empty() {
    auto n = std::make_shared<Node>();
    n->kind = OrderKind::ConfEmpty;
    return Order(std::move(n));
}
Order Order::conf_nonempty() {
    auto n = std::make_shared<Node>();
    n->kind = OrderKind::ConfNonEmpty;
    return Order(std::move(n));
}
Order Order::cov_contra(CcPartition partition) {
    auto n = std::make_shared<Node>();
    n->kind = OrderKind::CovContra;
    n->partition = std::move(partition);
    return Order(std::move(n));
}
Order Order::cov_contra(CcPartition partition, std::vector<std::string> action_names) {
    if (action_names.size() != partition.alphabet_size())
        throw std::invalid_argument("cov_contra: one action name per partition entry required");
    auto n = std::make_shared<Node>();
    n->kind = OrderKind::CovContra;
    n->partition = std::move(partition);
    n->action_names = std::move(action_names);
    return Order(std::move(n));
}
Order Order::per_action(std::vector<SetOrder> components) {
    auto n = std::make_shared<Node>();
    n->kind = OrderKind::PerActionProduct;
    n->components = std::move(components);
    return Order(std::move(n));
}
Order Order::opposite(Order inner) {
    auto n = std::make_shared<Node>();
    n->kind = OrderKind::Opposite;
    n->inner = inner.node_;
    return Order(std::move(n));
}
Order Order::compose(Order a, Order b) {
    auto n = std::make_shared<Node>();
    n->kind = OrderKind::Compose;
    n->a = a.node_;
    n->b = b.node_;
    return Order(std::move(n));
}

OrderKind Order::kind() const { return node_->kind; }

const CcPartition& Order::partition() const {
    if (node_->kind != OrderKind::CovContra)
        throw std::logic_error("Order::partition: not a cc order");
    return node_->partition;
}

const std::vector<SetOrder>& Order::components() const {
    if (node_->kind != OrderKind::PerActionProduct)
        throw std::logic_error("Order::components: not a per-action product");
    return node_->components;
}

Order Order::opposite_inner() const {
    if (node_->kind != OrderKind::Opposite) throw std::logic_error("Order::opposite_inner");
    return Order(node_->inner);
}
Order Order::compose_a() const {
    if (node_->kind != OrderKind::Compose) throw std::logic_error("Order::compose_a");
    return Order(node_->a);
}
Order Order::compose_b() const {
    if (node_->kind != OrderKind::Compose) throw std::logic_error("Order::compose_b");
    return Order(node_->b);
}

std::string Order::name() const {
    switch (node_->kind) {
        case OrderKind::Inclusion: return "inclusion";
        case OrderKind::ReverseInclusion: return "reverse";
        case OrderKind::Equality: return "equality";
        case OrderKind::Conformance: return "conformance";
        case OrderKind::ConfEmpty: return "conf_empty";
        case OrderKind::ConfNonEmpty: return "conf_nonempty";
        case OrderKind::CovContra: return node_->partition.to_string();
        case OrderKind::Opposite: return "op(" + Order(node_->inner).name() + ")";
        case OrderKind::Compose:
            return "compose(" + Order(node_->a).name() + "," + Order(node_->b).name() + ")";
        case OrderKind::PerActionProduct: {
            std::string out = "prod[";
            for (std::size_t i = 0; i < node_->components.size(); ++i) {
                if (i) out += ",";
                out += set_order_name(node_->components[i]);
            }
            return out + "]";
        }
    }
    return "?";
}

namespace {

void check_compatible(const StepFunction& u, const StepFunction& v) {
    if (u.carrier_size != v.carrier_size)
        throw std::invalid_argument("leq: step functions have different carriers");
    if (u.alphabet_size() != v.alphabet_size())
        throw std::invalid_argument("leq: step functions have different alphabets");
}

} // namespace

bool Order::leq(const StepFunction& u, const StepFunction& v, std::uint64_t budget) const {
    check_compatible(u, v);
    const std::size_t alphabet = u.alphabet_size();
    switch (node_->kind) {
        case OrderKind::Inclusion:
        case OrderKind::ReverseInclusion:
        case OrderKind::Equality:
        case OrderKind::Conformance:
        case OrderKind::ConfEmpty:
        case OrderKind::ConfNonEmpty: {
            SetOrder o;
            switch (node_->kind) {
                case OrderKind::Inclusion: o = SetOrder::Subset; break;
                case OrderKind::ReverseInclusion: o = SetOrder::Superset; break;
                case OrderKind::Equality: o = SetOrder::Equal; break;
                case OrderKind::Conformance: o = SetOrder::Conf; break;
                case OrderKind::ConfEmpty: o = SetOrder::ConfEmpty; break;
                default: o = SetOrder::ConfNonEmpty; break;
            }
            for (std::size_t a = 0; a < alphabet; ++a)
                if (!set_leq(o, u.per_action[a], v.per_action[a])) return false;
            return true;
        }
        case OrderKind::CovContra: {
            const CcPartition& p = node_->partition;
            if (p.alphabet_size() != alphabet)
                throw std::invalid_argument("leq: partition alphabet mismatch");
            for (std::size_t a = 0; a < alphabet; ++a) {
                if (p.covariant(a) && !u.per_action[a].is_subset_of(v.per_action[a])) return false;
                if (p.contravariant(a) && !v.per_action[a].is_subset_of(u.per_action[a]))
                    return false;
            }
            return true;
        }
        case OrderKind::PerActionProduct: {
            if (node_->components.size() != alphabet)
                throw std::invalid_argument("leq: product arity does not match alphabet");
            for (std::size_t a = 0; a < alphabet; ++a)
                if (!set_leq(node_->components[a], u.per_action[a], v.per_action[a])) return false;
            return true;
        }
        case OrderKind::Opposite:
            return Order(node_->inner).leq(v, u, budget);
        case OrderKind::Compose: {
            std::uint64_t n = enumeration::step_fn_count(u.carrier_size, alphabet);
            enumeration::require_budget(n, budget, "compose witness enumeration");
            Order first(node_->b), second(node_->a);
            for (std::uint64_t i = 0; i < n; ++i) {
                StepFunction w = enumeration::step_fn_from_index(i, u.carrier_size, alphabet);
                if (first.leq(u, w, budget) && second.leq(w, v, budget)) return true;
            }
            return false;
        }
    }
    return false;
}

std::optional<Semantics> Order::fast_semantics() const {
    switch (node_->kind) {
        case OrderKind::Inclusion: return Semantics::plain();
        case OrderKind::ReverseInclusion: return Semantics::reverse();
        case OrderKind::Equality: return Semantics::bisimulation();
        case OrderKind::Conformance: return Semantics::conformance();
        case OrderKind::CovContra: return Semantics::cc(node_->partition);
        case OrderKind::ConfEmpty:
        case OrderKind::ConfNonEmpty: return std::nullopt;
        case OrderKind::PerActionProduct: {
            CcPartition p{std::vector<CcPartition::Side>(node_->components.size())};
            bool all_conf = true, all_cc = true;
            for (std::size_t a = 0; a < node_->components.size(); ++a) {
                switch (node_->components[a]) {
                    case SetOrder::Subset: p.side[a] = CcPartition::Side::R; all_conf = false; break;
                    case SetOrder::Superset: p.side[a] = CcPartition::Side::L; all_conf = false; break;
                    case SetOrder::Equal: p.side[a] = CcPartition::Side::Bi; all_conf = false; break;
                    case SetOrder::Conf: all_cc = false; break;
                    default: all_cc = false; all_conf = false; break;
                }
            }
            if (all_cc) return Semantics::cc(std::move(p));
            if (all_conf) return Semantics::conformance();
            return std::nullopt;
        }
        case OrderKind::Opposite: {
            auto inner = Order(node_->inner).fast_semantics();
            if (!inner) return std::nullopt;
            switch (inner->kind) {
                case Semantics::Kind::Plain: return Semantics::reverse();
                case Semantics::Kind::Reverse: return Semantics::plain();
                case Semantics::Kind::Bisimulation: return Semantics::bisimulation();
                case Semantics::Kind::Cc: {
                    // the opposite of a cc order swaps the covariant and
                    // contravariant classes
                    CcPartition p = *inner->partition;
                    for (auto& s : p.side) {
                        if (s == CcPartition::Side::R)
                            s = CcPartition::Side::L;
                        else if (s == CcPartition::Side::L)
                            s = CcPartition::Side::R;
                    }
                    return Semantics::cc(std::move(p));
                }
                case Semantics::Kind::Conformance: return std::nullopt;
            }
            return std::nullopt;
        }
        case OrderKind::Compose: return std::nullopt;
    }
    return std::nullopt;
}

namespace {

// x-side factors are left-stable, y-side factors right-stable.
std::optional<std::pair<SetOrder, SetOrder>> factor_set_order(SetOrder o) {
    switch (o) {
        case SetOrder::Subset: return {{SetOrder::Equal, SetOrder::Subset}};
        case SetOrder::Superset: return {{SetOrder::Superset, SetOrder::Equal}};
        case SetOrder::Equal: return {{SetOrder::Equal, SetOrder::Equal}};
        case SetOrder::ConfEmpty: return {{SetOrder::Equal, SetOrder::ConfEmpty}};
        case SetOrder::ConfNonEmpty: return {{SetOrder::ConfNonEmpty, SetOrder::Equal}};
        case SetOrder::Conf: return {{SetOrder::ConfNonEmpty, SetOrder::ConfEmpty}};
    }
    return std::nullopt;
}

FactoredForm make_factored(Order x, Order y) {
    return FactoredForm{std::make_shared<Order>(std::move(x)), std::make_shared<Order>(std::move(y))};
}

std::vector<SetOrder> cc_components(const CcPartition& p) {
    std::vector<SetOrder> out(p.alphabet_size());
    for (std::size_t a = 0; a < p.alphabet_size(); ++a) {
        switch (p.side[a]) {
            case CcPartition::Side::R: out[a] = SetOrder::Subset; break;
            case CcPartition::Side::L: out[a] = SetOrder::Superset; break;
            case CcPartition::Side::Bi: out[a] = SetOrder::Equal; break;
        }
    }
    return out;
}

} // namespace

std::optional<FactoredForm> Order::factored() const {
    switch (node_->kind) {
        case OrderKind::Inclusion:
            return make_factored(equality(), inclusion());
        case OrderKind::ReverseInclusion:
            return make_factored(reverse_inclusion(), equality());
        case OrderKind::Equality:
            return make_factored(equality(), equality());
        case OrderKind::Conformance:
            return make_factored(conf_nonempty(), conf_empty());
        case OrderKind::ConfEmpty:
            return make_factored(equality(), conf_empty());
        case OrderKind::ConfNonEmpty:
            return make_factored(conf_nonempty(), equality());
        case OrderKind::CovContra:
        case OrderKind::PerActionProduct: {
            std::vector<SetOrder> comps = node_->kind == OrderKind::CovContra
                                              ? cc_components(node_->partition)
                                              : node_->components;
            std::vector<SetOrder> xs, ys;
            for (SetOrder o : comps) {
                auto f = factor_set_order(o);
                if (!f) return std::nullopt;
                xs.push_back(f->first);
                ys.push_back(f->second);
            }
            return make_factored(per_action(std::move(xs)), per_action(std::move(ys)));
        }
        case OrderKind::Opposite: {
            auto inner = Order(node_->inner).factored();
            if (!inner) return std::nullopt;
            return make_factored(opposite(*inner->y_side), opposite(*inner->x_side));
        }
        case OrderKind::Compose:
            return std::nullopt;
    }
    return std::nullopt;
}

void Order::validate_alphabet(const std::vector<std::string>& alphabet) const {
    switch (node_->kind) {
        case OrderKind::CovContra: {
            if (node_->partition.alphabet_size() != alphabet.size())
                throw std::invalid_argument(
                    "partition covers " + std::to_string(node_->partition.alphabet_size()) +
                    " actions but the alphabet has " + std::to_string(alphabet.size()));
            if (!node_->action_names.empty() && node_->action_names != alphabet) {
                std::string named;
                for (const auto& a : node_->action_names) named += (named.empty() ? "" : ",") + a;
                throw std::invalid_argument("partition names actions {" + named +
                                            "} which differ from the system alphabet");
            }
            return;
        }
        case OrderKind::PerActionProduct:
            if (node_->components.size() != alphabet.size())
                throw std::invalid_argument(
                    "per-action product has " + std::to_string(node_->components.size()) +
                    " components but the alphabet has " + std::to_string(alphabet.size()));
            return;
        case OrderKind::Opposite:
            return Order(node_->inner).validate_alphabet(alphabet);
        case OrderKind::Compose:
            Order(node_->a).validate_alphabet(alphabet);
            Order(node_->b).validate_alphabet(alphabet);
            return;
        default:
            return;
    }
}

// --- Semantics ---

std::string Semantics::name() const {
    switch (kind) {
        case Kind::Plain: return "plain";
        case Kind::Reverse: return "reverse";
        case Kind::Conformance: return "conformance";
        case Kind::Bisimulation: return "bisim";
        case Kind::Cc: return partition->to_string();
    }
    return "?";
}

Order Semantics::order() const {
    switch (kind) {
        case Kind::Plain: return Order::inclusion();
        case Kind::Reverse: return Order::reverse_inclusion();
        case Kind::Conformance: return Order::conformance();
        case Kind::Bisimulation: return Order::equality();
        case Kind::Cc: return Order::cov_contra(*partition);
    }
    throw std::logic_error("Semantics::order");
}

// --- expression parser ---

namespace {

struct ExprCursor {
    const std::string& text;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    bool try_eat(char c) {
        skip_ws();
        if (pos < text.size() && text[pos] == c) { ++pos; return true; }
        return false;
    }
    void expect(char c) {
        if (!try_eat(c))
            throw std::invalid_argument("order expression: expected '" + std::string(1, c) +
                                        "' at offset " + std::to_string(pos));
    }
    std::string word() {
        skip_ws();
        std::size_t start = pos;
        while (pos < text.size() &&
               (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
            ++pos;
        return text.substr(start, pos - start);
    }
};

Order parse_expr(ExprCursor& c);

Order parse_cc(ExprCursor& c) {
    c.skip_ws();
    if (c.pos < c.text.size() && c.text[c.pos] == '{') {
        // inline index form, cc{r=[..];l=[..];bi=[..]}
        std::size_t close = c.text.find('}', c.pos);
        if (close == std::string::npos)
            throw std::invalid_argument("order expression: unterminated cc{...}");
        std::string inline_form = "cc" + c.text.substr(c.pos, close - c.pos + 1);
        c.pos = close + 1;
        return Order::cov_contra(CcPartition::parse(inline_form));
    }
    c.expect('(');
    std::size_t close = c.text.find(')', c.pos);
    if (close == std::string::npos)
        throw std::invalid_argument("order expression: unterminated cc(...)");
    std::string path = c.text.substr(c.pos, close - c.pos);
    c.pos = close + 1;
    ActionPartition p = load_partition(path);
    std::vector<std::string> alphabet;
    for (const auto* group : {&p.r, &p.l, &p.bi})
        alphabet.insert(alphabet.end(), group->begin(), group->end());
    std::sort(alphabet.begin(), alphabet.end());
    CcPartition bound = CcPartition::bind(p, alphabet);
    return Order::cov_contra(std::move(bound), std::move(alphabet));
}

Order parse_prod(ExprCursor& c) {
    c.expect('[');
    std::vector<SetOrder> comps;
    while (true) {
        std::string w = c.word();
        if (w == "sub") comps.push_back(SetOrder::Subset);
        else if (w == "sup") comps.push_back(SetOrder::Superset);
        else if (w == "eq") comps.push_back(SetOrder::Equal);
        else if (w == "conf") comps.push_back(SetOrder::Conf);
        else if (w == "conf_empty") comps.push_back(SetOrder::ConfEmpty);
        else if (w == "conf_nonempty") comps.push_back(SetOrder::ConfNonEmpty);
        else throw std::invalid_argument("order expression: unknown component '" + w + "'");
        if (c.try_eat(']')) break;
        c.expect(',');
    }
    return Order::per_action(std::move(comps));
}

Order parse_expr(ExprCursor& c) {
    std::string w = c.word();
    if (w == "inclusion") return Order::inclusion();
    if (w == "reverse") return Order::reverse_inclusion();
    if (w == "equality") return Order::equality();
    if (w == "conformance") return Order::conformance();
    if (w == "conf_empty") return Order::conf_empty();
    if (w == "conf_nonempty") return Order::conf_nonempty();
    if (w == "cc") return parse_cc(c);
    if (w == "prod") return parse_prod(c);
    if (w == "op") {
        c.expect('(');
        Order inner = parse_expr(c);
        c.expect(')');
        return Order::opposite(std::move(inner));
    }
    if (w == "compose") {
        c.expect('(');
        Order a = parse_expr(c);
        c.expect(',');
        Order b = parse_expr(c);
        c.expect(')');
        return Order::compose(std::move(a), std::move(b));
    }
    throw std::invalid_argument("order expression: unknown order '" + w + "'");
}

} // namespace

Order parse_order_expr(const std::string& text) {
    ExprCursor c{text};
    Order o = parse_expr(c);
    c.skip_ws();
    if (c.pos != c.text.size())
        throw std::invalid_argument("order expression: trailing content at offset " +
                                    std::to_string(c.pos));
    return o;
}

// --- law checks ---

CheckReport check_preorder(const Order& order, std::size_t carrier, std::size_t alphabet,
                           std::uint64_t budget) {
    enumeration::StepSpace space(carrier, alphabet, budget);
    const std::size_t n = space.size();

    CheckReport report;
    report.law = "preorder";
    report.params = {{"order", order.name()},
                     {"carrier", carrier},
                     {"alphabet", alphabet},
                     {"budget", budget}};

    std::vector<StateSet> leq_rows(n, StateSet(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (order.leq(space.at(i), space.at(j), budget)) leq_rows[i].set(j);
    report.instances = static_cast<std::uint64_t>(n) * n;

    for (std::size_t i = 0; i < n; ++i) {
        if (!leq_rows[i].test(i)) {
            report.verdict = Verdict::Fail;
            report.witness = Witness{.u = space.at(i), .equation = "reflexivity"};
            return report;
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (auto j = leq_rows[i].find_first(); j != StateSet::npos; j = leq_rows[i].find_next(j)) {
            if (leq_rows[j].is_subset_of(leq_rows[i])) continue;
            StateSet extra = leq_rows[j] - leq_rows[i];
            report.verdict = Verdict::Fail;
            report.witness = Witness{.u = space.at(i),
                                     .v = space.at(j),
                                     .w = space.at(extra.find_first()),
                                     .equation = "transitivity"};
            return report;
        }
    }
    return report;
}

CheckReport check_functorial(const Order& order, std::size_t carrier_x, std::size_t carrier_y,
                             std::size_t alphabet, std::uint64_t budget) {
    enumeration::StepSpace space_x(carrier_x, alphabet, budget);
    enumeration::StepSpace space_y(carrier_y, alphabet, budget);
    std::uint64_t map_count = enumeration::state_map_count(carrier_x, carrier_y);
    enumeration::require_budget(map_count, budget, "renaming enumeration");
    std::uint64_t total = map_count * space_x.size() * space_x.size();

    CheckReport report;
    report.law = "functorial";
    report.params = {{"order", order.name()},
                     {"carrier_x", carrier_x},
                     {"carrier_y", carrier_y},
                     {"alphabet", alphabet},
                     {"budget", budget}};
    report.instances = total;

    for (std::uint64_t fi = 0; fi < map_count; ++fi) {
        StateMap f = enumeration::state_map_from_index(fi, carrier_x, carrier_y);
        auto img = space_x.map_along(f);
        for (std::size_t i = 0; i < space_x.size(); ++i) {
            for (std::size_t j = 0; j < space_x.size(); ++j) {
                if (!order.leq(space_x.at(i), space_x.at(j), budget)) continue;
                if (order.leq(space_y.at(img[i]), space_y.at(img[j]), budget)) continue;
                report.verdict = Verdict::Fail;
                report.witness =
                    Witness{.f = f, .u = space_x.at(i), .v = space_x.at(j), .equation = "functorial"};
                return report;
            }
        }
    }
    return report;
}

} // namespace simcoal
