#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "simcoal/enumeration.hpp"
#include "simcoal/errors.hpp"
#include "simcoal/stability.hpp"

using namespace simcoal;
namespace enm = simcoal::enumeration;
namespace st = simcoal::testing;

namespace {

StepFunction full_step(std::size_t carrier, std::size_t alphabet) {
    StepFunction u(carrier, alphabet);
    for (auto& s : u.per_action) s.set();
    return u;
}

} // namespace

TEST_CASE("inclusion is right-stable on every small carrier") {
    for (std::size_t sx = 1; sx <= 3; ++sx)
        for (std::size_t sy = 1; sy <= 3; ++sy)
            for (std::size_t alphabet = 1; alphabet <= 2; ++alphabet) {
                INFO(sx << " " << sy << " " << alphabet);
                CheckReport r = check_right_stable(Order::inclusion(), sx, sy, alphabet);
                CHECK(r.passed());
                CHECK(r.mode == "exhaustive");
            }
}

TEST_CASE("reverse inclusion fails right-stability with the canonical witness") {
    CheckReport r = check_right_stable(Order::reverse_inclusion(), 1, 2, 1);
    CHECK(r.verdict == Verdict::Fail);
    REQUIRE(r.witness);
    // one point mapped to the first of two, with both step functions full
    CHECK(r.witness->f->table == std::vector<std::size_t>{0});
    CHECK(*r.witness->u == full_step(1, 1));
    CHECK(*r.witness->v == full_step(2, 1));
    CHECK(revalidate_witness(r));
}

TEST_CASE("equality is right- and left-stable") {
    CHECK(check_right_stable(Order::equality(), 2, 2, 1).passed());
    CHECK(check_left_stable(Order::equality(), 2, 2, 1).passed());
}

TEST_CASE("reverse inclusion is left-stable; inclusion is not") {
    for (std::size_t sx = 1; sx <= 3; ++sx)
        for (std::size_t sy = 1; sy <= 3; ++sy) {
            INFO(sx << " " << sy);
            CHECK(check_left_stable(Order::reverse_inclusion(), sx, sy, 1).passed());
        }
    CheckReport r = check_left_stable(Order::inclusion(), 1, 2, 1);
    CHECK(r.verdict == Verdict::Fail);
    REQUIRE(r.witness);
    CHECK(*r.witness->u == full_step(1, 1));
    CHECK(*r.witness->v == full_step(2, 1));
    CHECK(revalidate_witness(r));
}

TEST_CASE("conformance component orders split the stability directions") {
    CHECK(check_right_stable(Order::conf_empty(), 2, 2, 1).passed());
    CHECK_FALSE(check_left_stable(Order::conf_empty(), 1, 2, 1).passed());
    CHECK(check_left_stable(Order::conf_nonempty(), 2, 2, 1).passed());
    CHECK_FALSE(check_right_stable(Order::conf_nonempty(), 1, 2, 1).passed());
}

TEST_CASE("cov-contra and conformance are neither right- nor left-stable") {
    Order cc = Order::cov_contra(st::cc_r_a_l_b());
    for (const Order& order : {cc, Order::conformance()}) {
        std::size_t alphabet = order.kind() == OrderKind::CovContra ? 2 : 1;
        CAPTURE(order.name());
        CheckReport right = check_right_stable(order, 1, 2, alphabet);
        CheckReport left = check_left_stable(order, 1, 2, alphabet);
        CHECK(right.verdict == Verdict::Fail);
        CHECK(left.verdict == Verdict::Fail);
        CHECK(revalidate_witness(right));
        CHECK(revalidate_witness(left));
    }
}

TEST_CASE("cov-contra and conformance are nevertheless stable") {
    Order cc = Order::cov_contra(st::cc_r_a_l_b());
    CHECK(check_stable(Order::conformance(), 2, 2, 2, 2, 1).passed());
    CHECK(check_stable(Order::conformance(), 2, 2, 2, 2, 2).passed());
    CHECK(check_stable(cc, 2, 2, 2, 2, 2).passed());
    CHECK(check_stable(Order::reverse_inclusion(), 2, 2, 2, 2, 1).passed());
    CHECK(check_stable(Order::inclusion(), 2, 2, 2, 2, 1).passed());
}

TEST_CASE("stability also holds on asymmetric carriers") {
    CHECK(check_stable(Order::conformance(), 2, 1, 1, 2, 1).passed());
    CHECK(check_stable(Order::cov_contra(st::cc_r_a_l_b()), 1, 2, 2, 1, 2).passed());
}

TEST_CASE("interchange holds for right-stable orders and fails for reverse") {
    CheckReport inc = check_interchange(Order::inclusion(), 2, 2, 1);
    CHECK(inc.passed());
    CHECK(inc.details["inclusion"] == "pass");
    CHECK(inc.details["equality"] == "pass");

    CheckReport eq = check_interchange(Order::equality(), 2, 2, 1);
    CHECK(eq.passed());

    CheckReport rev = check_interchange(Order::reverse_inclusion(), 1, 2, 1);
    CHECK(rev.verdict == Verdict::Fail);
    CHECK(rev.details["inclusion"] == "fail");
    REQUIRE(rev.witness);
    CHECK(revalidate_witness(rev));
}

TEST_CASE("right-stability implies the interchange inclusion") {
    // Right-stability is quantified over all maps between all carriers, so
    // establish it across the size range before demanding the inclusion.
    std::vector<Order> orders = {Order::inclusion(),     Order::reverse_inclusion(),
                                 Order::equality(),      Order::conformance(),
                                 Order::conf_empty(),    Order::conf_nonempty()};
    for (const Order& order : orders) {
        bool right_stable = true;
        for (std::size_t sx = 1; sx <= 2 && right_stable; ++sx)
            for (std::size_t sy = 1; sy <= 2 && right_stable; ++sy)
                right_stable = check_right_stable(order, sx, sy, 1).passed();
        if (!right_stable) continue; // reverse, conf_nonempty, conformance
        for (std::size_t sx = 1; sx <= 2; ++sx)
            for (std::size_t sy = 1; sy <= 2; ++sy) {
                CheckReport inter = check_interchange(order, sx, sy, 1);
                INFO(order.name() << " " << sx << " " << sy);
                CHECK(inter.details["inclusion"] == "pass");
            }
    }
}

TEST_CASE("right-stability of an order is left-stability of its opposite, instancewise") {
    std::vector<Order> orders = {Order::inclusion(), Order::conformance(), Order::conf_empty(),
                                 Order::cov_contra(st::cc_r_a_l_b())};
    for (const Order& order : orders) {
        std::size_t alphabet = order.kind() == OrderKind::CovContra ? 2 : 1;
        Order op = Order::opposite(order);
        std::uint64_t maps = enm::state_map_count(2, 2);
        for (std::uint64_t fi = 0; fi < maps; ++fi) {
            StateMap f = enm::state_map_from_index(fi, 2, 2);
            for (std::uint64_t ui = 0; ui < enm::step_fn_count(2, alphabet); ++ui)
                for (std::uint64_t vi = 0; vi < enm::step_fn_count(2, alphabet); ++vi) {
                    StepFunction u = enm::step_fn_from_index(ui, 2, alphabet);
                    StepFunction v = enm::step_fn_from_index(vi, 2, alphabet);
                    INFO(order.name() << " " << fi << " " << ui << " " << vi);
                    CHECK(right_stable_instance(order, f, u, v) ==
                          left_stable_instance(op, f, u, v));
                }
        }
    }
}

TEST_CASE("commutation of the conformance components and the cc factors") {
    CHECK(check_commute(Order::conf_empty(), Order::conf_nonempty(), 4, 1).passed());
    Order cc = Order::cov_contra(st::cc_r_a_l_b());
    auto f = cc.factored();
    REQUIRE(f);
    CHECK(check_commute(*f->x_side, *f->y_side, 3, 2).passed());
    CHECK(check_commute(Order::inclusion(), Order::inclusion(), 3, 1).passed());
}

TEST_CASE("a non-commuting pair is caught with a witness") {
    CheckReport r = check_commute(Order::conf_empty(), Order::reverse_inclusion(), 2, 1);
    CHECK(r.verdict == Verdict::Fail);
    REQUIRE(r.witness);
    CHECK(revalidate_witness(r));
}

TEST_CASE("composing right-stable orders stays right-stable") {
    CheckReport r = check_composition_stability(Order::inclusion(), Order::inclusion(), {2, 2}, 1);
    CHECK(r.law == "composition-right-stable");
    CHECK(r.passed());
}

TEST_CASE("composing left-stable orders stays left-stable") {
    CheckReport r = check_composition_stability(Order::reverse_inclusion(),
                                                Order::conf_nonempty(), {2, 2}, 1);
    CHECK(r.law == "composition-left-stable");
    CHECK(r.passed());
}

TEST_CASE("a commuting right/left-stable pair composes to a stable order") {
    CheckReport conf =
        check_composition_stability(Order::conf_nonempty(), Order::conf_empty(), {2, 2, 2, 2}, 1);
    CHECK(conf.law == "composition-stable");
    CHECK(conf.passed());

    Order cc = Order::cov_contra(st::cc_r_a_l_b());
    auto f = cc.factored();
    REQUIRE(f);
    CheckReport sides =
        check_composition_stability(*f->y_side, *f->x_side, {2, 2, 2, 2}, 2);
    CHECK(sides.law == "composition-stable");
    CHECK(sides.passed());
}

TEST_CASE("composition checks report inconclusive when their preconditions fail") {
    CheckReport two =
        check_composition_stability(Order::reverse_inclusion(), Order::inclusion(), {2, 2}, 1);
    CHECK(two.verdict == Verdict::Inconclusive);

    CheckReport four =
        check_composition_stability(Order::conformance(), Order::conformance(), {2, 2, 2, 2}, 1);
    CHECK(four.verdict == Verdict::Inconclusive);

    // a one-sided-stable pair that does not commute is inconclusive, not fail
    CheckReport no_commute =
        check_composition_stability(Order::inclusion(), Order::conf_nonempty(), {2, 2, 2, 2}, 1);
    CHECK(no_commute.verdict == Verdict::Inconclusive);
    CHECK(no_commute.details["preconditions"]["commute"] == "fail");
}

TEST_CASE("a non-commuting composite really is unstable") {
    // inclusion is right-stable and conf_nonempty left-stable, but they do
    // not commute, so their composite escapes the composition laws
    CheckReport r =
        check_stable(Order::compose(Order::inclusion(), Order::conf_nonempty()), 2, 2, 2, 2, 1);
    CHECK(r.verdict == Verdict::Fail);
    REQUIRE(r.witness);
    CHECK(r.witness->equation == "substitution");
    CHECK(revalidate_witness(r));
}

TEST_CASE("factored lifting forms match the full lax lifting") {
    SUBCASE("plain simulation needs no order on the source side") {
        CHECK(check_factored_lift(Order::inclusion(), Order::equality(), Order::inclusion(), 2, 2,
                                  1)
                  .passed());
        CHECK(check_factored_lift(Order::inclusion(), Order::equality(), Order::inclusion(), 3, 3,
                                  1)
                  .passed());
    }
    SUBCASE("cov-contra factors by sides") {
        Order cc = Order::cov_contra(st::cc_r_a_l_b());
        auto f = cc.factored();
        REQUIRE(f);
        CHECK(check_factored_lift(cc, *f->x_side, *f->y_side, 2, 2, 2).passed());
    }
    SUBCASE("conformance factors into its two components") {
        CHECK(check_factored_lift(Order::conformance(), Order::conf_nonempty(),
                                  Order::conf_empty(), 2, 2, 1)
                  .passed());
        CHECK(check_factored_lift(Order::conformance(), Order::conf_nonempty(),
                                  Order::conf_empty(), 3, 3, 1)
                  .passed());
    }
}

TEST_CASE("the factored sides are not interchangeable") {
    CheckReport swapped = check_factored_lift(Order::conformance(), Order::conf_empty(),
                                              Order::conf_nonempty(), 2, 2, 1);
    CHECK(swapped.verdict == Verdict::Fail);
    REQUIRE(swapped.witness);
    CHECK(swapped.witness->equation == "full lifting only");
    CHECK(revalidate_witness(swapped));
}

TEST_CASE("stability of an order and of its opposite agree instance by instance") {
    CHECK(check_op_duality(Order::inclusion(), 2, 2, 2, 2, 1).passed());
    CHECK(check_op_duality(Order::conformance(), 2, 2, 2, 2, 1).passed());
    CHECK(check_op_duality(Order::equality(), 2, 2, 2, 2, 1).passed());
}

TEST_CASE("budget handling: hard failure without sampling, seeded run with it") {
    StabilityOptions tight;
    tight.budget = 10;
    CHECK_THROWS_AS(check_right_stable(Order::inclusion(), 2, 2, 1, tight), BudgetError);

    tight.allow_sampling = true;
    tight.seed = 99;
    CheckReport sampled = check_right_stable(Order::inclusion(), 2, 2, 1, tight);
    CHECK(sampled.passed());
    CHECK(sampled.mode == "sampled");
    CHECK(sampled.seed == 99);
    CHECK(sampled.instances == 10);

    CheckReport sampled_fail = check_right_stable(Order::reverse_inclusion(), 1, 2, 1,
                                                  StabilityOptions{.budget = 64,
                                                                   .allow_sampling = true,
                                                                   .seed = 3});
    // 16 instances fit the budget, so this stays exhaustive and still fails
    CHECK(sampled_fail.verdict == Verdict::Fail);
}

TEST_CASE("sampled stable runs reproduce with the same seed") {
    StabilityOptions opt;
    opt.budget = 500;
    opt.allow_sampling = true;
    opt.seed = 12345;
    CheckReport a = check_stable(Order::conformance(), 2, 2, 2, 2, 2, opt);
    CheckReport b = check_stable(Order::conformance(), 2, 2, 2, 2, 2, opt);
    CHECK(a.to_json() == b.to_json());
    CHECK(a.mode == "sampled");
    CHECK(a.passed());
}

TEST_CASE("reports serialize and parse back exactly") {
    CheckReport r = check_right_stable(Order::reverse_inclusion(), 1, 2, 1);
    CheckReport back = CheckReport::from_json(r.to_json());
    CHECK(back == r);
    CHECK(back.witness == r.witness);
    CHECK(revalidate_witness(back));

    CheckReport pass = check_stable(Order::inclusion(), 2, 2, 2, 2, 1);
    CHECK(CheckReport::from_json(pass.to_json()) == pass);
}

TEST_CASE("every failing law in this suite produces a self-validating witness") {
    std::vector<CheckReport> fails = {
        check_right_stable(Order::reverse_inclusion(), 1, 2, 1),
        check_right_stable(Order::conformance(), 1, 2, 1),
        check_left_stable(Order::inclusion(), 1, 2, 1),
        check_left_stable(Order::conf_empty(), 1, 2, 1),
        check_interchange(Order::reverse_inclusion(), 1, 2, 1),
        check_commute(Order::conf_empty(), Order::reverse_inclusion(), 2, 1),
        check_factored_lift(Order::conformance(), Order::conf_empty(), Order::conf_nonempty(), 2,
                            2, 1),
        check_preorder(Order::compose(Order::reverse_inclusion(), Order::conf_empty()), 2, 1),
    };
    for (const CheckReport& r : fails) {
        INFO(r.law << " " << r.params.dump());
        CHECK(r.verdict == Verdict::Fail);
        CHECK(revalidate_witness(r));
    }
}
