#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "simcoal/lts.hpp"
#include "simcoal/report.hpp"

namespace simcoal {

/// Cap on (2^carrier)^alphabet for exhaustive step-function enumeration.
inline constexpr std::uint64_t kDefaultLeqBudget = 4096;

enum class OrderKind {
    Inclusion,
    ReverseInclusion,
    Equality,
    CovContra,
    Conformance,
    ConfEmpty,
    ConfNonEmpty,
    PerActionProduct,
    Compose,
    Opposite,
};

/// Per-action order on P(X), the building block of action-distributive orders.
enum class SetOrder : std::uint8_t { Subset, Superset, Equal, ConfEmpty, ConfNonEmpty, Conf };

bool set_leq(SetOrder o, const StateSet& a, const StateSet& b);
std::string set_order_name(SetOrder o);

class Order;

/// The two halves of a lax lifting in which each side carries only one order:
/// `x_side` is applied at the source carrier, `y_side` at the target carrier.
struct FactoredForm {
    std::shared_ptr<const Order> x_side;
    std::shared_ptr<const Order> y_side;
};

/// Named classical simulation semantics with a direct step-clause decision
/// procedure (no witness enumeration).
struct Semantics {
    enum class Kind { Plain, Reverse, Cc, Conformance, Bisimulation };

    Kind kind = Kind::Plain;
    std::optional<CcPartition> partition; // Cc only

    static Semantics plain() { return {Kind::Plain, std::nullopt}; }
    static Semantics reverse() { return {Kind::Reverse, std::nullopt}; }
    static Semantics conformance() { return {Kind::Conformance, std::nullopt}; }
    static Semantics bisimulation() { return {Kind::Bisimulation, std::nullopt}; }
    static Semantics cc(CcPartition p) { return {Kind::Cc, std::move(p)}; }

    std::string name() const;
    /// The functorial order whose coalgebraic simulations coincide with this
    /// semantics (Bisimulation maps to Equality).
    Order order() const;

    bool operator==(const Semantics&) const = default;
};

/// A functorial order ⊑ on FX = P(X)^A: an immutable descriptor closed under
/// per-action products, composition and opposite. Cheap to copy.
class Order {
public:
    static Order inclusion();
    static Order reverse_inclusion();
    static Order equality();
    static Order conformance();
    static Order conf_empty();
    static Order conf_nonempty();
    static Order cov_contra(CcPartition partition);
    /// As above, remembering the action names the partition was bound to, so
    /// later use against a concrete system can be validated by name.
    static Order cov_contra(CcPartition partition, std::vector<std::string> action_names);
    static Order per_action(std::vector<SetOrder> components);
    static Order opposite(Order inner);
    /// compose(A, B): u ⊑ v iff there is w with u B w and w A v.
    static Order compose(Order a, Order b);

    OrderKind kind() const;
    const CcPartition& partition() const;          // CovContra only
    const std::vector<SetOrder>& components() const; // PerActionProduct only
    Order opposite_inner() const;                  // Opposite only
    Order compose_a() const;                       // Compose only
    Order compose_b() const;                       // Compose only

    /// Canonical expression; parse_order_expr(name()) reconstructs the order.
    std::string name() const;

    /// u ⊑ v on a shared carrier and alphabet. Compose enumerates the finite
    /// step-function space, so it is subject to the budget.
    bool leq(const StepFunction& u, const StepFunction& v,
             std::uint64_t budget = kDefaultLeqBudget) const;

    /// Classical step-clause semantics equivalent to this order, if any.
    std::optional<Semantics> fast_semantics() const;

    /// Canonical factorisation into a left-stable x-side and a right-stable
    /// y-side, when this order admits one.
    std::optional<FactoredForm> factored() const;

    /// Checks that this order is usable over the given alphabet: partition
    /// and product arities must match, and a partition bound to named actions
    /// must name exactly these.
    void validate_alphabet(const std::vector<std::string>& alphabet) const;

    bool operator==(const Order& other) const { return name() == other.name(); }
    bool operator!=(const Order& other) const { return !(*this == other); }

private:
    struct Node;
    explicit Order(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

/// Parses the order expression syntax: inclusion, reverse, equality,
/// conformance, conf_empty, conf_nonempty, op(E), compose(E,E),
/// cc(partition.json), cc{r=[..];l=[..];bi=[..]}, prod[sub,sup,eq,...].
Order parse_order_expr(const std::string& text);

/// Reflexivity and transitivity of `order` over every step function on the
/// given carrier.
CheckReport check_preorder(const Order& order, std::size_t carrier, std::size_t alphabet,
                           std::uint64_t budget = kDefaultLeqBudget);

/// Preservation of `order` under renaming along every map between the two
/// carriers.
CheckReport check_functorial(const Order& order, std::size_t carrier_x, std::size_t carrier_y,
                             std::size_t alphabet, std::uint64_t budget = kDefaultLeqBudget);

} // namespace simcoal
