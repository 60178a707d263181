#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "simcoal/errors.hpp"
#include "simcoal/lts.hpp"

using namespace simcoal;
namespace st = simcoal::testing;

TEST_CASE("parse_aut reads the declared structure") {
    Lts lts = parse_aut("des (0, 2, 2)\n(0, \"a\", 1)\n(1, \"b\", 0)\n");
    CHECK(lts.state_count() == 2);
    CHECK(lts.initial() == 0);
    CHECK(lts.alphabet() == std::vector<std::string>{"a", "b"});
    CHECK(lts.successors(0, *lts.action_index("a")).test(1));
    CHECK(lts.successors(1, *lts.action_index("b")).test(0));
    CHECK(lts.transition_count() == 2);
}

TEST_CASE("parse_aut accepts a transitionless system") {
    Lts lts = parse_aut("des (0, 0, 1)");
    CHECK(lts.state_count() == 1);
    CHECK(lts.transition_count() == 0);
    CHECK(lts.alphabet().empty());
}

TEST_CASE("parse_aut rejects malformed input with line numbers") {
    SUBCASE("state index out of declared range") {
        try {
            parse_aut("des (0, 1, 1)\n(0, \"a\", 5)\n");
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.line() == 2);
            CHECK(std::string(e.what()).find("state index out of range") != std::string::npos);
        }
    }
    SUBCASE("malformed header") {
        CHECK_THROWS_WITH_AS(parse_aut("this is not aut\n"),
                             doctest::Contains("malformed header"), ParseError);
    }
    SUBCASE("transition count mismatch") {
        CHECK_THROWS_WITH_AS(parse_aut("des (0, 2, 2)\n(0, a, 1)\n"),
                             doctest::Contains("transition count mismatch"), ParseError);
    }
    SUBCASE("initial state out of range") {
        CHECK_THROWS_AS(parse_aut("des (3, 0, 2)\n"), ParseError);
    }
    SUBCASE("unterminated label") {
        CHECK_THROWS_AS(parse_aut("des (0, 1, 2)\n(0, \"a, 1)\n"), ParseError);
    }
}

TEST_CASE("parse_aut handles unquoted and exotic labels") {
    Lts lts = parse_aut("des (0, 2, 2)\n(0, tau_1, 1)\n(0, \"a b,c\", 1)\n");
    CHECK(lts.alphabet() == std::vector<std::string>{"a b,c", "tau_1"});
}

TEST_CASE("parse_term builds the reachable LTS of the first definition") {
    SUBCASE("single prefix") {
        Lts lts = parse_term("P = a.0;");
        CHECK(lts.state_count() == 2);
        CHECK(lts.transition_count() == 1);
        CHECK(lts.initial() == 0);
        CHECK(lts.state_labels() == std::vector<std::string>{"P", "0"});
    }
    SUBCASE("choice of two prefixes") {
        Lts lts = parse_term("P = a.0 + b.0;");
        CHECK(lts.state_count() == 2);
        CHECK(lts.alphabet() == std::vector<std::string>{"a", "b"});
        CHECK(lts.initials(0) == std::vector<std::string>{"a", "b"});
    }
    SUBCASE("guarded constant recursion gives a self-loop") {
        Lts lts = parse_term("P = a.P;");
        CHECK(lts.state_count() == 1);
        CHECK(lts.successors(0, 0).test(0));
    }
    SUBCASE("constants unfold through other definitions") {
        Lts lts = parse_term("P = a.Q;\nQ = b.P;");
        CHECK(lts.state_count() == 2);
        CHECK(lts.alphabet() == std::vector<std::string>{"a", "b"});
    }
}

TEST_CASE("parse_term rejects bad definitions") {
    CHECK_THROWS_WITH_AS(parse_term("P = a.Q;"), doctest::Contains("undefined name"),
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(parse_term("P = 0;\nP = a.0;"), doctest::Contains("duplicate definition"),
                         ParseError);
    CHECK_THROWS_WITH_AS(parse_term("P = P;"), doctest::Contains("unguarded recursion"),
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(parse_term("P = Q + a.0;\nQ = P;"),
                         doctest::Contains("unguarded recursion"), std::invalid_argument);
    CHECK_THROWS_AS(parse_term("P = a. ;"), ParseError);
    CHECK_THROWS_AS(parse_term(""), ParseError);
    CHECK_THROWS_AS(parse_term("P = a.0"), ParseError); // missing semicolon
}

TEST_CASE("step_of reads the coalgebra map off the transition table") {
    Lts sum = parse_term("P = a.0 + b.0;");
    StepFunction root = sum.step_of(0);
    CHECK(root.carrier_size == 2);
    CHECK(root.per_action[*sum.action_index("a")].test(1));
    CHECK(root.per_action[*sum.action_index("b")].test(1));

    StepFunction dead = sum.step_of(1);
    for (const auto& set : dead.per_action) CHECK(set.none());

    Lts loop = parse_term("P = a.P;");
    CHECK(loop.step_of(0).per_action[0].test(0));

    CHECK_THROWS_AS(sum.step_of(7), std::out_of_range);
}

TEST_CASE("initials lists exactly the enabled actions") {
    Lts sum = parse_term("P = a.0 + b.0;");
    CHECK(sum.initials(0) == std::vector<std::string>{"a", "b"});
    CHECK(sum.initials(1).empty());

    Lts ab = parse_term("P = a.b.0;");
    CHECK(ab.initials(*ab.state_by_label("b.0")) == std::vector<std::string>{"b"});
    CHECK_THROWS_AS(sum.initials(9), std::out_of_range);
}

TEST_CASE("step_of and initials agree with the transition table everywhere") {
    std::mt19937_64 rng(41);
    for (int i = 0; i < 25; ++i) {
        Lts lts = st::random_lts(rng, 5, 2);
        for (std::size_t s = 0; s < lts.state_count(); ++s) {
            StepFunction u = lts.step_of(s);
            std::vector<std::string> enabled;
            for (std::size_t a = 0; a < lts.alphabet_size(); ++a) {
                CHECK(u.per_action[a] == lts.successors(s, a));
                if (u.per_action[a].any()) enabled.push_back(lts.alphabet()[a]);
            }
            CHECK(lts.initials(s) == enabled);
        }
    }
}

TEST_CASE("aut serialization round-trips up to action-index renaming") {
    // an action with no transitions drops out of the serialized alphabet, so
    // compare transitions by label
    auto labeled = [](const Lts& lts) {
        std::vector<std::tuple<std::size_t, std::string, std::size_t>> out;
        for (const auto& [s, a, d] : lts.transitions())
            out.emplace_back(s, lts.alphabet()[a], d);
        return out;
    };
    std::mt19937_64 rng(42);
    for (int i = 0; i < 40; ++i) {
        Lts lts = st::random_lts(rng, 6, 2);
        Lts back = parse_aut(to_aut(lts));
        CHECK(back.state_count() == lts.state_count());
        CHECK(back.initial() == lts.initial());
        CHECK(labeled(back) == labeled(lts));
    }
}

TEST_CASE("native format round-trips and validates") {
    Lts lts = parse_term("P = a.b.0 + a.c.0;");
    Lts back = parse_native(to_native(lts));
    CHECK(back.state_count() == lts.state_count());
    CHECK(back.alphabet() == lts.alphabet());
    CHECK(back.transitions() == lts.transitions());
    CHECK(back.initial() == lts.initial());

    CHECK_THROWS_AS(parse_native("{"), ParseError);
    CHECK_THROWS_WITH_AS(
        parse_native(R"({"states": 2, "alphabet": ["a"], "transitions": [[0, "b", 1]]})"),
        doctest::Contains("not in alphabet"), std::invalid_argument);
    CHECK_THROWS_AS(
        parse_native(R"({"states": 1, "alphabet": ["a"], "transitions": [[0, "a", 3]]})"),
        std::out_of_range);
}

TEST_CASE("alphabet unification pads missing actions with empty sets") {
    Lts a = parse_term("P = a.0;");
    Lts b = parse_term("P = b.0;");
    CHECK_FALSE(unify_alphabets(a, b));
    CHECK(a.alphabet() == std::vector<std::string>{"a", "b"});
    CHECK(b.alphabet() == a.alphabet());
    CHECK(a.successors(0, *a.action_index("b")).none());
    CHECK(b.successors(0, *b.action_index("a")).none());

    Lts c = parse_term("P = a.0;");
    Lts d = parse_term("Q = a.Q;");
    CHECK(unify_alphabets(c, d));

    // state labels survive the rebuild
    Lts e = parse_term("P = a.0;");
    Lts f = parse_term("Q = b.Q;");
    unify_alphabets(e, f);
    CHECK(e.state_labels() == std::vector<std::string>{"P", "0"});
    CHECK(f.state_labels() == std::vector<std::string>{"Q"});
}

TEST_CASE("partitions validate disjointness and coverage") {
    ActionPartition good{{"a"}, {"b"}, {}};
    good.validate_against({"a", "b"});
    CcPartition bound = CcPartition::bind(good, {"a", "b"});
    CHECK(bound.covariant(0));
    CHECK_FALSE(bound.covariant(1));
    CHECK(bound.contravariant(1));

    ActionPartition overlap{{"a"}, {"a"}, {}};
    CHECK_THROWS_WITH_AS(overlap.validate_against({"a"}), doctest::Contains("not disjoint"),
                         std::invalid_argument);
    ActionPartition missing{{"a"}, {}, {}};
    CHECK_THROWS_WITH_AS(missing.validate_against({"a", "b"}), doctest::Contains("cover"),
                         std::invalid_argument);
}

TEST_CASE("cc partition text form round-trips") {
    CcPartition p{{CcPartition::Side::R, CcPartition::Side::L, CcPartition::Side::Bi}};
    CHECK(p.to_string() == "cc{r=[0];l=[1];bi=[2]}");
    CHECK(CcPartition::parse(p.to_string()) == p);
}
