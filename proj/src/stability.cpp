#include "simcoal/stability.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

#include "simcoal/enumeration.hpp"
#include "simcoal/errors.hpp"

namespace simcoal {

namespace enm = enumeration;

namespace {

using Table = std::vector<StateSet>;

Table leq_table(const Order& order, const enm::StepSpace& space, std::uint64_t leq_budget) {
    Table rows(space.size(), StateSet(space.size()));
    for (std::size_t i = 0; i < space.size(); ++i)
        for (std::size_t j = 0; j < space.size(); ++j)
            if (order.leq(space.at(i), space.at(j), leq_budget)) rows[i].set(j);
    return rows;
}

Table em_table(const Relation& rel, const enm::StepSpace& sx, const enm::StepSpace& sy) {
    Table rows(sx.size(), StateSet(sy.size()));
    for (std::size_t i = 0; i < sx.size(); ++i)
        for (std::size_t j = 0; j < sy.size(); ++j)
            if (rel_lift(rel, sx.at(i), sy.at(j))) rows[i].set(j);
    return rows;
}

/// out[i] = union of b[j] over j in a[i].
Table row_compose(const Table& a, const Table& b) {
    std::size_t width = b.empty() ? 0 : b.front().size();
    Table out(a.size(), StateSet(width));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (auto j = a[i].find_first(); j != StateSet::npos; j = a[i].find_next(j))
            out[i] |= b[j];
    return out;
}

Relation pullback(const StateMap& f, const StateMap& g, const Relation& rel) {
    Relation out(f.domain_size, g.domain_size);
    for (std::size_t x = 0; x < f.domain_size; ++x)
        for (std::size_t y = 0; y < g.domain_size; ++y)
            if (rel.at(f(x), g(y))) out.set(x, y);
    return out;
}

nlohmann::json sizes_json(std::initializer_list<std::size_t> sizes) {
    nlohmann::json a = nlohmann::json::array();
    for (auto s : sizes) a.push_back(s);
    return a;
}

struct Sampler {
    std::mt19937_64 rng;
    explicit Sampler(std::uint64_t seed) : rng(seed) {}
    std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : rng() % n; }
};

} // namespace

// --- single-instance evaluations ---

bool right_stable_instance(const Order& order, const StateMap& f, const StepFunction& u,
                           const StepFunction& v, std::uint64_t lift_budget) {
    if (!order.leq(v, f.apply(u), lift_budget)) return true;
    std::uint64_t n = enm::step_fn_count(f.domain_size, u.alphabet_size());
    enm::require_budget(n, lift_budget, "right-stability witness search");
    for (std::uint64_t i = 0; i < n; ++i) {
        StepFunction cand = enm::step_fn_from_index(i, f.domain_size, u.alphabet_size());
        if (f.apply(cand) == v && order.leq(cand, u, lift_budget)) return true;
    }
    return false;
}

bool left_stable_instance(const Order& order, const StateMap& f, const StepFunction& u,
                          const StepFunction& v, std::uint64_t lift_budget) {
    if (!order.leq(f.apply(u), v, lift_budget)) return true;
    std::uint64_t n = enm::step_fn_count(f.domain_size, u.alphabet_size());
    enm::require_budget(n, lift_budget, "left-stability witness search");
    for (std::uint64_t i = 0; i < n; ++i) {
        StepFunction cand = enm::step_fn_from_index(i, f.domain_size, u.alphabet_size());
        if (f.apply(cand) == v && order.leq(u, cand, lift_budget)) return true;
    }
    return false;
}

bool stable_instance(const Order& order, const StateMap& f, const StateMap& g, const Relation& rel,
                     const StepFunction& u, const StepFunction& v, std::uint64_t lift_budget) {
    bool lifted_pullback = lax_lift_generic(order, pullback(f, g, rel), u, v, lift_budget);
    bool pulled_lifting = lax_lift_generic(order, rel, f.apply(u), g.apply(v), lift_budget);
    return lifted_pullback == pulled_lifting;
}

// --- right / left stability ---

namespace {

CheckReport check_side_stable(const Order& order, bool right, std::size_t size_x,
                              std::size_t size_y, std::size_t alphabet,
                              const StabilityOptions& opt) {
    CheckReport report;
    report.law = right ? "right-stable" : "left-stable";
    report.params = {{"order", order.name()},
                     {"sizes", sizes_json({size_x, size_y})},
                     {"alphabet", alphabet},
                     {"budget", opt.budget}};

    std::uint64_t map_count = enm::state_map_count(size_x, size_y);
    std::uint64_t nx = enm::step_fn_count(size_x, alphabet);
    std::uint64_t ny = enm::step_fn_count(size_y, alphabet);
    std::uint64_t total = map_count * nx * ny;

    if (total > opt.budget) {
        if (!opt.allow_sampling)
            throw BudgetError("budget exceeded: " + report.law + " needs " + std::to_string(total) +
                              " instances (enable sampling or raise the budget)");
        report.mode = "sampled";
        report.seed = opt.seed;
        report.instances = opt.budget;
        Sampler sampler(opt.seed);
        for (std::uint64_t i = 0; i < opt.budget; ++i) {
            StateMap f = enm::state_map_from_index(sampler.below(map_count), size_x, size_y);
            StepFunction u = enm::step_fn_from_index(sampler.below(nx), size_x, alphabet);
            StepFunction v = enm::step_fn_from_index(sampler.below(ny), size_y, alphabet);
            bool ok = right ? right_stable_instance(order, f, u, v, opt.lift_budget)
                            : left_stable_instance(order, f, u, v, opt.lift_budget);
            if (!ok) {
                report.verdict = Verdict::Fail;
                report.witness = Witness{.f = f, .u = u, .v = v, .equation = report.law};
                return report;
            }
        }
        return report;
    }

    report.instances = total;
    enm::StepSpace space_x(size_x, alphabet, opt.budget);
    enm::StepSpace space_y(size_y, alphabet, opt.budget);
    Table tx = leq_table(order, space_x, opt.lift_budget);
    Table ty = leq_table(order, space_y, opt.lift_budget);

    for (std::uint64_t fi = 0; fi < map_count; ++fi) {
        StateMap f = enm::state_map_from_index(fi, size_x, size_y);
        auto img = space_x.map_along(f);
        std::vector<std::vector<std::size_t>> preimages(space_y.size());
        for (std::size_t i = 0; i < space_x.size(); ++i) preimages[img[i]].push_back(i);

        for (std::size_t ui = space_x.size(); ui-- > 0;) {
            for (std::size_t vi = space_y.size(); vi-- > 0;) {
                bool premise = right ? ty[vi].test(img[ui]) : ty[img[ui]].test(vi);
                if (!premise) continue;
                bool found = false;
                for (std::size_t cand : preimages[vi]) {
                    bool related = right ? tx[cand].test(ui) : tx[ui].test(cand);
                    if (related) { found = true; break; }
                }
                if (!found) {
                    report.verdict = Verdict::Fail;
                    report.witness = Witness{.f = f,
                                             .u = space_x.at(ui),
                                             .v = space_y.at(vi),
                                             .equation = report.law};
                    return report;
                }
            }
        }
    }
    return report;
}

} // namespace

CheckReport check_right_stable(const Order& order, std::size_t size_x, std::size_t size_y,
                               std::size_t alphabet, const StabilityOptions& opt) {
    return check_side_stable(order, true, size_x, size_y, alphabet, opt);
}

CheckReport check_left_stable(const Order& order, std::size_t size_x, std::size_t size_y,
                              std::size_t alphabet, const StabilityOptions& opt) {
    return check_side_stable(order, false, size_x, size_y, alphabet, opt);
}

// --- stability ---

CheckReport check_stable(const Order& order, std::size_t size_x, std::size_t size_y,
                         std::size_t size_z, std::size_t size_w, std::size_t alphabet,
                         const StabilityOptions& opt) {
    CheckReport report;
    report.law = "stable";
    report.params = {{"order", order.name()},
                     {"sizes", sizes_json({size_x, size_y, size_z, size_w})},
                     {"alphabet", alphabet},
                     {"budget", opt.budget}};

    std::uint64_t f_count = enm::state_map_count(size_x, size_z);
    std::uint64_t g_count = enm::state_map_count(size_y, size_w);
    std::uint64_t r_count = enm::relation_count(size_z, size_w);
    std::uint64_t nx = enm::step_fn_count(size_x, alphabet);
    std::uint64_t ny = enm::step_fn_count(size_y, alphabet);
    std::uint64_t total = f_count * g_count * r_count * nx * ny;

    if (total > opt.budget) {
        if (!opt.allow_sampling)
            throw BudgetError("budget exceeded: stable needs " + std::to_string(total) +
                              " instances (enable sampling or raise the budget)");
        report.mode = "sampled";
        report.seed = opt.seed;
        report.instances = opt.budget;
        Sampler sampler(opt.seed);
        for (std::uint64_t i = 0; i < opt.budget; ++i) {
            StateMap f = enm::state_map_from_index(sampler.below(f_count), size_x, size_z);
            StateMap g = enm::state_map_from_index(sampler.below(g_count), size_y, size_w);
            Relation rel = enm::relation_from_bits(sampler.below(r_count), size_z, size_w);
            StepFunction u = enm::step_fn_from_index(sampler.below(nx), size_x, alphabet);
            StepFunction v = enm::step_fn_from_index(sampler.below(ny), size_y, alphabet);
            if (!stable_instance(order, f, g, rel, u, v, opt.lift_budget)) {
                report.verdict = Verdict::Fail;
                report.witness =
                    Witness{.f = f, .g = g, .rel = rel, .u = u, .v = v, .equation = "substitution"};
                return report;
            }
        }
        return report;
    }

    report.instances = total;
    enm::StepSpace space_x(size_x, alphabet, opt.budget);
    enm::StepSpace space_y(size_y, alphabet, opt.budget);
    enm::StepSpace space_z(size_z, alphabet, opt.budget);
    enm::StepSpace space_w(size_w, alphabet, opt.budget);
    Table tx = leq_table(order, space_x, opt.lift_budget);
    Table ty = leq_table(order, space_y, opt.lift_budget);
    Table tz = leq_table(order, space_z, opt.lift_budget);
    Table tw = leq_table(order, space_w, opt.lift_budget);

    for (std::uint64_t bits = r_count; bits-- > 0;) {
        Relation rel = enm::relation_from_bits(bits, size_z, size_w);
        Table lax_zw = row_compose(tz, row_compose(em_table(rel, space_z, space_w), tw));
        for (std::uint64_t fi = 0; fi < f_count; ++fi) {
            StateMap f = enm::state_map_from_index(fi, size_x, size_z);
            auto img_f = space_x.map_along(f);
            for (std::uint64_t gi = 0; gi < g_count; ++gi) {
                StateMap g = enm::state_map_from_index(gi, size_y, size_w);
                auto img_g = space_y.map_along(g);
                Relation pulled = pullback(f, g, rel);
                Table lax_xy =
                    row_compose(tx, row_compose(em_table(pulled, space_x, space_y), ty));
                for (std::size_t ui = space_x.size(); ui-- > 0;) {
                    for (std::size_t vi = space_y.size(); vi-- > 0;) {
                        bool lifted_pullback = lax_xy[ui].test(vi);
                        bool pulled_lifting = lax_zw[img_f[ui]].test(img_g[vi]);
                        if (lifted_pullback == pulled_lifting) continue;
                        report.verdict = Verdict::Fail;
                        report.witness = Witness{
                            .f = f,
                            .g = g,
                            .rel = rel,
                            .u = space_x.at(ui),
                            .v = space_y.at(vi),
                            // the subset direction holds for every functorial
                            // order; a break there is flagged apart
                            .equation = lifted_pullback ? "subset-direction" : "substitution"};
                        return report;
                    }
                }
            }
        }
    }
    return report;
}

// --- interchange ---

CheckReport check_interchange(const Order& order, std::size_t size_x, std::size_t size_y,
                              std::size_t alphabet, const StabilityOptions& opt) {
    CheckReport report;
    report.law = "interchange";
    report.params = {{"order", order.name()},
                     {"sizes", sizes_json({size_x, size_y})},
                     {"alphabet", alphabet},
                     {"budget", opt.budget}};

    std::uint64_t r_count = enm::relation_count(size_x, size_y);
    std::uint64_t nx = enm::step_fn_count(size_x, alphabet);
    std::uint64_t ny = enm::step_fn_count(size_y, alphabet);
    std::uint64_t total = r_count * nx * ny;
    enm::require_budget(total, opt.budget, "interchange enumeration");
    report.instances = total;

    enm::StepSpace space_x(size_x, alphabet, opt.budget);
    enm::StepSpace space_y(size_y, alphabet, opt.budget);
    Table tx = leq_table(order, space_x, opt.lift_budget);
    Table ty = leq_table(order, space_y, opt.lift_budget);

    bool inclusion_ok = true;
    bool equality_ok = true;
    std::optional<Witness> first_witness;

    for (std::uint64_t bits = r_count; bits-- > 0;) {
        Relation rel = enm::relation_from_bits(bits, size_x, size_y);
        Table em = em_table(rel, space_x, space_y);
        Table after = row_compose(em, ty);  // ⊑_Y ∘ Rel(F)(R)
        Table before = row_compose(tx, em); // Rel(F)(R) ∘ ⊑_X
        Table lax = row_compose(tx, after); // ⊑_Y ∘ Rel(F)(R) ∘ ⊑_X
        for (std::size_t ui = space_x.size(); ui-- > 0;) {
            if (inclusion_ok && !before[ui].is_subset_of(after[ui])) {
                inclusion_ok = false;
                StateSet extra = before[ui] - after[ui];
                Witness w{.rel = rel,
                          .u = space_x.at(ui),
                          .v = space_y.at(extra.find_first()),
                          .equation = "interchange-inclusion"};
                if (!first_witness) first_witness = w;
            }
            if (equality_ok && lax[ui] != after[ui]) {
                equality_ok = false;
                StateSet extra = lax[ui] - after[ui];
                Witness w{.rel = rel,
                          .u = space_x.at(ui),
                          .v = space_y.at(extra.find_first()),
                          .equation = "interchange-equality"};
                if (!first_witness) first_witness = w;
            }
        }
    }
    report.details = {{"inclusion", inclusion_ok ? "pass" : "fail"},
                      {"equality", equality_ok ? "pass" : "fail"}};
    if (!inclusion_ok || !equality_ok) {
        report.verdict = Verdict::Fail;
        report.witness = first_witness;
    }
    return report;
}

// --- commutation ---

CheckReport check_commute(const Order& a, const Order& b, std::size_t carrier,
                          std::size_t alphabet, const StabilityOptions& opt) {
    CheckReport report;
    report.law = "commute";
    report.params = {{"order_a", a.name()},
                     {"order_b", b.name()},
                     {"sizes", sizes_json({carrier})},
                     {"alphabet", alphabet},
                     {"budget", opt.budget}};

    enm::StepSpace space(carrier, alphabet, opt.budget);
    std::uint64_t total = static_cast<std::uint64_t>(space.size()) * space.size();
    enm::require_budget(total, opt.budget, "commutation enumeration");
    report.instances = total;

    Table ta = leq_table(a, space, opt.lift_budget);
    Table tb = leq_table(b, space, opt.lift_budget);
    Table ab = row_compose(tb, ta); // u b w, w a v
    Table ba = row_compose(ta, tb);

    for (std::size_t ui = space.size(); ui-- > 0;) {
        if (ab[ui] == ba[ui]) continue;
        StateSet diff = ab[ui] ^ ba[ui];
        std::size_t vi = diff.find_first();
        report.verdict = Verdict::Fail;
        report.witness = Witness{.u = space.at(ui),
                                 .v = space.at(vi),
                                 .equation = ab[ui].test(vi) ? "compose(a,b) only"
                                                             : "compose(b,a) only"};
        return report;
    }
    return report;
}

// --- composition laws ---

CheckReport check_composition_stability(const Order& a, const Order& b,
                                        const std::vector<std::size_t>& sizes,
                                        std::size_t alphabet, const StabilityOptions& opt) {
    CheckReport report;
    report.law = "composition";
    nlohmann::json sz = nlohmann::json::array();
    for (auto s : sizes) sz.push_back(s);
    report.params = {{"order_a", a.name()},
                     {"order_b", b.name()},
                     {"sizes", sz},
                     {"alphabet", alphabet},
                     {"budget", opt.budget}};

    Order composite = Order::compose(a, b);
    auto finish = [&](CheckReport inner, nlohmann::json preconditions) {
        report.law = "composition-" + inner.law;
        report.verdict = inner.verdict;
        report.mode = inner.mode;
        report.instances = inner.instances;
        report.seed = inner.seed;
        report.witness = inner.witness;
        report.details = {{"preconditions", std::move(preconditions)},
                          {"composite", composite.name()}};
        return report;
    };

    if (sizes.size() == 2) {
        CheckReport ra = check_right_stable(a, sizes[0], sizes[1], alphabet, opt);
        CheckReport rb = check_right_stable(b, sizes[0], sizes[1], alphabet, opt);
        if (ra.passed() && rb.passed()) {
            nlohmann::json pre = {{"right_stable(order_a)", "pass"},
                                  {"right_stable(order_b)", "pass"}};
            return finish(check_right_stable(composite, sizes[0], sizes[1], alphabet, opt), pre);
        }
        CheckReport la = check_left_stable(a, sizes[0], sizes[1], alphabet, opt);
        CheckReport lb = check_left_stable(b, sizes[0], sizes[1], alphabet, opt);
        if (la.passed() && lb.passed()) {
            nlohmann::json pre = {{"left_stable(order_a)", "pass"},
                                  {"left_stable(order_b)", "pass"}};
            return finish(check_left_stable(composite, sizes[0], sizes[1], alphabet, opt), pre);
        }
        report.verdict = Verdict::Inconclusive;
        report.details = {{"preconditions",
                           {{"right_stable(order_a)", to_string(ra.verdict)},
                            {"right_stable(order_b)", to_string(rb.verdict)},
                            {"left_stable(order_a)", to_string(la.verdict)},
                            {"left_stable(order_b)", to_string(lb.verdict)}}},
                          {"reason", "neither composition law applies at these sizes"}};
        return report;
    }
    if (sizes.size() != 4)
        throw std::invalid_argument("check_composition_stability: sizes must have 2 or 4 entries");

    std::size_t m = *std::max_element(sizes.begin(), sizes.end());
    CheckReport ra = check_right_stable(a, m, m, alphabet, opt);
    CheckReport lb = check_left_stable(b, m, m, alphabet, opt);
    CheckReport la = check_left_stable(a, m, m, alphabet, opt);
    CheckReport rb = check_right_stable(b, m, m, alphabet, opt);
    bool right_left = ra.passed() && lb.passed();
    bool left_right = la.passed() && rb.passed();
    if (!right_left && !left_right) {
        report.verdict = Verdict::Inconclusive;
        report.details = {{"preconditions",
                           {{"right_stable(order_a)", to_string(ra.verdict)},
                            {"left_stable(order_b)", to_string(lb.verdict)},
                            {"left_stable(order_a)", to_string(la.verdict)},
                            {"right_stable(order_b)", to_string(rb.verdict)}}},
                          {"reason", "no right-stable/left-stable split of the factors"}};
        return report;
    }
    CheckReport comm = check_commute(a, b, m, alphabet, opt);
    if (!comm.passed()) {
        report.verdict = Verdict::Inconclusive;
        report.details = {{"preconditions", {{"commute", to_string(comm.verdict)}}},
                          {"reason", "the factors do not commute"}};
        report.witness = comm.witness;
        return report;
    }
    nlohmann::json pre = {{"split", right_left ? "a right-stable, b left-stable"
                                               : "a left-stable, b right-stable"},
                          {"commute", "pass"}};
    return finish(
        check_stable(composite, sizes[0], sizes[1], sizes[2], sizes[3], alphabet, opt), pre);
}

// --- factored lifting ---

CheckReport check_factored_lift(const Order& order, const Order& x_side, const Order& y_side,
                                std::size_t size_x, std::size_t size_y, std::size_t alphabet,
                                const StabilityOptions& opt) {
    CheckReport report;
    report.law = "factored-lift";
    report.params = {{"order", order.name()},
                     {"x_side", x_side.name()},
                     {"y_side", y_side.name()},
                     {"sizes", sizes_json({size_x, size_y})},
                     {"alphabet", alphabet},
                     {"budget", opt.budget}};

    std::uint64_t r_count = enm::relation_count(size_x, size_y);
    std::uint64_t nx = enm::step_fn_count(size_x, alphabet);
    std::uint64_t ny = enm::step_fn_count(size_y, alphabet);
    std::uint64_t total = r_count * nx * ny;
    enm::require_budget(total, opt.budget, "factored-lift enumeration");
    report.instances = total;

    enm::StepSpace space_x(size_x, alphabet, opt.budget);
    enm::StepSpace space_y(size_y, alphabet, opt.budget);
    Table tx_full = leq_table(order, space_x, opt.lift_budget);
    Table ty_full = leq_table(order, space_y, opt.lift_budget);
    Table tx_fact = leq_table(x_side, space_x, opt.lift_budget);
    Table ty_fact = leq_table(y_side, space_y, opt.lift_budget);

    for (std::uint64_t bits = r_count; bits-- > 0;) {
        Relation rel = enm::relation_from_bits(bits, size_x, size_y);
        Table em = em_table(rel, space_x, space_y);
        Table full = row_compose(tx_full, row_compose(em, ty_full));
        Table fact = row_compose(tx_fact, row_compose(em, ty_fact));
        for (std::size_t ui = space_x.size(); ui-- > 0;) {
            if (full[ui] == fact[ui]) continue;
            StateSet diff = full[ui] ^ fact[ui];
            std::size_t vi = diff.find_first();
            report.verdict = Verdict::Fail;
            report.witness = Witness{.rel = rel,
                                     .u = space_x.at(ui),
                                     .v = space_y.at(vi),
                                     .equation = full[ui].test(vi) ? "full lifting only"
                                                                   : "factored lifting only"};
            return report;
        }
    }
    return report;
}

// --- opposite duality ---

CheckReport check_op_duality(const Order& order, std::size_t size_x, std::size_t size_y,
                             std::size_t size_z, std::size_t size_w, std::size_t alphabet,
                             const StabilityOptions& opt) {
    CheckReport report;
    report.law = "op-duality";
    report.params = {{"order", order.name()},
                     {"sizes", sizes_json({size_x, size_y, size_z, size_w})},
                     {"alphabet", alphabet},
                     {"budget", opt.budget}};

    Order op = Order::opposite(order);
    std::uint64_t f_count = enm::state_map_count(size_x, size_z);
    std::uint64_t g_count = enm::state_map_count(size_y, size_w);
    std::uint64_t r_count = enm::relation_count(size_z, size_w);
    std::uint64_t nx = enm::step_fn_count(size_x, alphabet);
    std::uint64_t ny = enm::step_fn_count(size_y, alphabet);
    std::uint64_t total = f_count * g_count * r_count * nx * ny;
    enm::require_budget(total, opt.budget, "op-duality enumeration");
    report.instances = total;

    for (std::uint64_t fi = 0; fi < f_count; ++fi) {
        StateMap f = enm::state_map_from_index(fi, size_x, size_z);
        for (std::uint64_t gi = 0; gi < g_count; ++gi) {
            StateMap g = enm::state_map_from_index(gi, size_y, size_w);
            for (std::uint64_t bits = r_count; bits-- > 0;) {
                Relation rel = enm::relation_from_bits(bits, size_z, size_w);
                Relation rel_t = rel.transpose();
                for (std::uint64_t ui = nx; ui-- > 0;) {
                    StepFunction u = enm::step_fn_from_index(ui, size_x, alphabet);
                    for (std::uint64_t vi = ny; vi-- > 0;) {
                        StepFunction v = enm::step_fn_from_index(vi, size_y, alphabet);
                        bool direct = stable_instance(order, f, g, rel, u, v, opt.lift_budget);
                        bool dual = stable_instance(op, g, f, rel_t, v, u, opt.lift_budget);
                        if (direct == dual) continue;
                        report.verdict = Verdict::Fail;
                        report.witness =
                            Witness{.f = f, .g = g, .rel = rel, .u = u, .v = v,
                                    .equation = "op-duality"};
                        return report;
                    }
                }
            }
        }
    }
    return report;
}

// --- witness re-validation ---

namespace {

const Witness& witness_of(const CheckReport& report) {
    if (!report.witness)
        throw std::invalid_argument("revalidate_witness: report carries no witness");
    return *report.witness;
}

Order order_param(const CheckReport& report, const char* key) {
    return parse_order_expr(report.params.at(key).get<std::string>());
}

// Rel(F)(R) ∘ ⊑_X, pointwise.
bool em_after_leq(const Order& order, const Relation& rel, const StepFunction& u,
                  const StepFunction& v) {
    std::uint64_t n = enm::step_fn_count(u.carrier_size, u.alphabet_size());
    for (std::uint64_t i = 0; i < n; ++i) {
        StepFunction mid = enm::step_fn_from_index(i, u.carrier_size, u.alphabet_size());
        if (order.leq(u, mid) && rel_lift(rel, mid, v)) return true;
    }
    return false;
}

// ⊑_Y ∘ Rel(F)(R), pointwise.
bool leq_after_em(const Order& order, const Relation& rel, const StepFunction& u,
                  const StepFunction& v) {
    std::uint64_t n = enm::step_fn_count(v.carrier_size, v.alphabet_size());
    for (std::uint64_t i = 0; i < n; ++i) {
        StepFunction mid = enm::step_fn_from_index(i, v.carrier_size, v.alphabet_size());
        if (rel_lift(rel, u, mid) && order.leq(mid, v)) return true;
    }
    return false;
}

bool compose_holds(const Order& outer, const Order& inner, const StepFunction& u,
                   const StepFunction& v) {
    return Order::compose(outer, inner).leq(u, v);
}

} // namespace

bool revalidate_witness(const CheckReport& report) {
    const Witness& w = witness_of(report);
    const std::string& law = report.law;

    if (law == "preorder") {
        Order order = order_param(report, "order");
        if (w.equation == "reflexivity") return !order.leq(*w.u, *w.u);
        return order.leq(*w.u, *w.v) && order.leq(*w.v, *w.w) && !order.leq(*w.u, *w.w);
    }
    if (law == "functorial") {
        Order order = order_param(report, "order");
        return order.leq(*w.u, *w.v) && !order.leq(w.f->apply(*w.u), w.f->apply(*w.v));
    }
    if (law == "right-stable")
        return !right_stable_instance(order_param(report, "order"), *w.f, *w.u, *w.v);
    if (law == "left-stable")
        return !left_stable_instance(order_param(report, "order"), *w.f, *w.u, *w.v);
    if (law == "stable")
        return !stable_instance(order_param(report, "order"), *w.f, *w.g, *w.rel, *w.u, *w.v);
    if (law == "interchange") {
        Order order = order_param(report, "order");
        if (w.equation == "interchange-inclusion")
            return em_after_leq(order, *w.rel, *w.u, *w.v) &&
                   !leq_after_em(order, *w.rel, *w.u, *w.v);
        return lax_lift_generic(order, *w.rel, *w.u, *w.v) !=
               leq_after_em(order, *w.rel, *w.u, *w.v);
    }
    if (law == "commute") {
        Order a = order_param(report, "order_a");
        Order b = order_param(report, "order_b");
        return compose_holds(a, b, *w.u, *w.v) != compose_holds(b, a, *w.u, *w.v);
    }
    if (law == "factored-lift") {
        Order order = order_param(report, "order");
        Order x_side = order_param(report, "x_side");
        Order y_side = order_param(report, "y_side");
        return lax_lift_generic(order, *w.rel, *w.u, *w.v) !=
               lax_lift_two(x_side, y_side, *w.rel, *w.u, *w.v);
    }
    if (law == "op-duality") {
        Order order = order_param(report, "order");
        return stable_instance(order, *w.f, *w.g, *w.rel, *w.u, *w.v) !=
               stable_instance(Order::opposite(order), *w.g, *w.f, w.rel->transpose(), *w.v, *w.u);
    }
    if (law.rfind("composition-", 0) == 0) {
        Order composite =
            Order::compose(order_param(report, "order_a"), order_param(report, "order_b"));
        if (law == "composition-right-stable")
            return !right_stable_instance(composite, *w.f, *w.u, *w.v);
        if (law == "composition-left-stable")
            return !left_stable_instance(composite, *w.f, *w.u, *w.v);
        return !stable_instance(composite, *w.f, *w.g, *w.rel, *w.u, *w.v);
    }
    throw std::invalid_argument("revalidate_witness: unknown law " + law);
}

} // namespace simcoal
