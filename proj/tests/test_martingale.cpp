#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "martkit/martkit.hpp"
#include "support/gen.hpp"

using namespace martkit;

namespace {

ProcessTable coin_walk() {
    return ProcessTable({FnTable::scalars({Rat(0), Rat(0), Rat(0), Rat(0)}),
                         FnTable::scalars({Rat(1), Rat(1), Rat(-1), Rat(-1)}),
                         FnTable::scalars({Rat(2), Rat(0), Rat(0), Rat(-2)})});
}

MeasureSpace fair_space() { return MeasureSpace(4, std::vector<Rat>(4, rat(1, 4))); }
MeasureSpace heads_space() { return MeasureSpace(4, {rat(4, 9), rat(2, 9), rat(2, 9), rat(1, 9)}); }
MeasureSpace tails_space() { return MeasureSpace(4, {rat(1, 9), rat(2, 9), rat(2, 9), rat(4, 9)}); }

// X_t = M_t + (partial sums of nonnegative adapted increments): always a
// submartingale w.r.t. f.
ProcessTable rand_submartingale(gen::Rng& rng, const MeasureSpace& m, const Filtration& f) {
    const ProcessTable base = gen::rand_martingale(rng, m, f, 1);
    std::vector<FnTable> tables;
    tables.push_back(base[0]);
    FnTable drift = FnTable::zero(m.n(), 1);
    for (int t = 1; t <= f.horizon(); ++t) {
        std::vector<Rat> inc;
        for (int w = 0; w < m.n(); ++w) inc.push_back(gen::rand_nonneg_rat(rng, 3, 6));
        FnTable step = FnTable::scalars(inc);
        // make the increment F_t-measurable by averaging over atoms is
        // unnecessary; constant-on-atom values keep it adapted
        std::vector<VecD> leveled(static_cast<std::size_t>(m.n()), VecD::scalar(Rat(0)));
        for (const auto& atom : f[t].atoms()) {
            const VecD v = step[atom.front()];
            for (int w : atom) leveled[static_cast<std::size_t>(w)] = v;
        }
        drift = drift + FnTable(std::move(leveled));
        tables.push_back(base[t] + drift);
    }
    return ProcessTable(std::move(tables));
}

} // namespace

TEST_CASE("the symmetric coin walk is a martingale") {
    const ProcessTable x = coin_walk();
    const Filtration f = natural_filtration(x);
    const MeasureSpace m = fair_space();
    CHECK(is_martingale(m, f, x));
    CHECK(is_submartingale(m, f, x));
    CHECK(is_supermartingale(m, f, x));
    CHECK(check_succ(m, f, x, Relation::eq));
    CHECK(check_set_integral(m, f, x, Relation::eq));
    CHECK(check_set_integral(m, f, x, Relation::eq, /*successor_only=*/true));
    CHECK(check_difference(m, f, x, Relation::eq));
}

TEST_CASE("the heads-biased walk is a strict submartingale") {
    const ProcessTable x = coin_walk();
    const Filtration f = natural_filtration(x);
    const MeasureSpace m = heads_space();
    CHECK(is_submartingale(m, f, x));
    CHECK_FALSE(is_martingale(m, f, x));
    CHECK_FALSE(is_supermartingale(m, f, x));
    CHECK(check_succ(m, f, x, Relation::le));
    CHECK(check_set_integral(m, f, x, Relation::le));
    CHECK(check_difference(m, f, x, Relation::ge)); // expected increments are nonnegative

    // the failed equality is pinned by atom averages under the biased law
    const FnTable e2 = cond_exp(m, f[1], x[2]).table;
    CHECK(e2 == FnTable::scalars({rat(4, 3), rat(4, 3), rat(-2, 3), rat(-2, 3)}));
    CHECK(integral(m, x[1] - x[0]) == VecD::scalar(rat(1, 3)));
    const FnTable dinc = cond_exp(m, f[1], x[2] - x[1]).table;
    CHECK(ae_eq(m, dinc, FnTable::constant(4, VecD::scalar(rat(1, 3)))));

    // set-integral example: integrals over {0,1} at times 1 and 2
    CHECK(set_integral(m, std::vector<int>{0, 1}, x[1]) == VecD::scalar(rat(2, 3)));
    CHECK(set_integral(m, std::vector<int>{0, 1}, x[2]) == VecD::scalar(rat(8, 9)));
}

TEST_CASE("the tails-biased walk is a supermartingale") {
    const ProcessTable x = coin_walk();
    const Filtration f = natural_filtration(x);
    const MeasureSpace m = tails_space();
    CHECK(is_supermartingale(m, f, x));
    CHECK_FALSE(is_martingale(m, f, x));
    CHECK_FALSE(is_submartingale(m, f, x));
}

TEST_CASE("constant processes built from F_0-measurable functions are martingales") {
    const Filtration f = natural_filtration(coin_walk());
    const MeasureSpace m = fair_space();
    const ProcessTable constant(std::vector<FnTable>(3, FnTable::constant(4, VecD::scalar(rat(5, 7)))));
    CHECK(is_martingale(m, f, constant));
    CHECK(check_difference(m, f, constant, Relation::eq));
}

TEST_CASE("successor check is vacuous on a single time") {
    const MeasureSpace m(2, {rat(1, 2), rat(1, 2)});
    const ProcessTable x({FnTable::scalars({Rat(1), Rat(2)})});
    const Filtration f = natural_filtration(x);
    CHECK(check_succ(m, f, x, Relation::eq));
    CHECK(check_difference(m, f, x, Relation::eq));
}

TEST_CASE("preconditions and unsupported orders") {
    const ProcessTable x = coin_walk();
    const MeasureSpace m = fair_space();
    CHECK_THROWS_AS(is_martingale(m, Filtration::constant(2, Partition::trivial(4)), x),
                    precondition_error);
    const ProcessTable planar(std::vector<FnTable>(2, FnTable::zero(4, 2)));
    const Filtration f2 = Filtration::constant(1, Partition::trivial(4));
    CHECK_THROWS_AS(is_submartingale(m, f2, planar), unsupported_order_error);
    CHECK_THROWS_AS(check_succ(m, f2, planar, Relation::ge), unsupported_order_error);
    CHECK(is_martingale(m, f2, planar)); // equality has no order requirement
}

TEST_CASE("classification report for the three coin laws") {
    const ProcessTable x = coin_walk();
    const Filtration f = natural_filtration(x);

    const ClassificationReport fair = classify(fair_space(), f, x);
    CHECK(fair.adapted);
    REQUIRE(fair.martingale.has_value());
    CHECK(fair.martingale->verdict == true);
    CHECK(fair.martingale->pairwise == true);
    CHECK(fair.martingale->successor == true);
    CHECK(fair.martingale->set_integral == true);
    CHECK(fair.martingale->difference == true);
    CHECK(fair.submartingale->verdict == true);
    CHECK(fair.supermartingale->verdict == true);
    CHECK_FALSE(fair.martingale->counterexample.has_value());

    const ClassificationReport heads = classify(heads_space(), f, x);
    CHECK(heads.martingale->verdict == false);
    CHECK(heads.submartingale->verdict == true);
    CHECK(heads.supermartingale->verdict == false);
    // first failure in lexicographic (i, j, outcome) order: X_0 = 0 but
    // E(X_1 | F_0) = 1/3 on the whole space
    REQUIRE(heads.martingale->counterexample.has_value());
    const Counterexample& ce = *heads.martingale->counterexample;
    CHECK(ce.time_i == 0);
    CHECK(ce.time_j == 1);
    CHECK(ce.where == std::vector<int>{0, 1, 2, 3});
    CHECK_FALSE(ce.where_is_event);
    CHECK(ce.lhs == VecD::scalar(Rat(0)));
    CHECK(ce.rhs == VecD::scalar(rat(1, 3)));

    const ClassificationReport tails = classify(tails_space(), f, x);
    CHECK(tails.martingale->verdict == false);
    CHECK(tails.submartingale->verdict == false);
    CHECK(tails.supermartingale->verdict == true);
}

TEST_CASE("classification handles vector processes and non-adapted input") {
    const MeasureSpace m = fair_space();
    const ProcessTable planar(std::vector<FnTable>(2, FnTable::zero(4, 3)));
    const Filtration f = Filtration::constant(1, Partition::trivial(4));
    const ClassificationReport report = classify(m, f, planar);
    CHECK(report.adapted);
    CHECK(report.martingale->supported);
    CHECK(report.martingale->verdict == true);
    CHECK_FALSE(report.submartingale->supported);
    CHECK_FALSE(report.supermartingale->supported);

    const ClassificationReport skipped = classify(m, Filtration::constant(2, Partition::trivial(4)),
                                                  coin_walk());
    CHECK_FALSE(skipped.adapted);
    CHECK(skipped.adapted_violation_time == 1);
    CHECK_FALSE(skipped.martingale.has_value());
    CHECK_FALSE(skipped.submartingale.has_value());
    CHECK_FALSE(skipped.supermartingale.has_value());
}

TEST_CASE("four characterizations agree on random adapted processes") {
    gen::Rng rng(20240651);
    for (int rep = 0; rep < 250; ++rep) {
        const int n = gen::pick(rng, 1, 6);
        const int horizon = gen::pick(rng, 0, 4);
        const MeasureSpace m = gen::rand_space(rng, n);
        const Filtration f = gen::rand_filtration(rng, n, horizon);
        const int flavor = gen::pick(rng, 0, 2);
        const ProcessTable x = flavor == 0   ? gen::rand_adapted_process(rng, f, 1)
                               : flavor == 1 ? gen::rand_martingale(rng, m, f, 1)
                                             : rand_submartingale(rng, m, f);

        const bool eq_pairwise = is_martingale(m, f, x);
        CHECK(eq_pairwise == check_succ(m, f, x, Relation::eq));
        CHECK(eq_pairwise == check_set_integral(m, f, x, Relation::eq));
        CHECK(eq_pairwise == check_difference(m, f, x, Relation::eq));

        const bool le_pairwise = is_submartingale(m, f, x);
        CHECK(le_pairwise == check_succ(m, f, x, Relation::le));
        CHECK(le_pairwise == check_set_integral(m, f, x, Relation::le));
        CHECK(le_pairwise == check_difference(m, f, x, Relation::ge));

        const bool ge_pairwise = is_supermartingale(m, f, x);
        CHECK(ge_pairwise == check_succ(m, f, x, Relation::ge));
        CHECK(ge_pairwise == check_set_integral(m, f, x, Relation::ge));
        CHECK(ge_pairwise == check_difference(m, f, x, Relation::le));

        // a martingale is exactly a process that is both sub and super
        CHECK(eq_pairwise == (le_pairwise && ge_pairwise));

        if (flavor == 1) CHECK(eq_pairwise);
        if (flavor == 2) CHECK(le_pairwise);
    }
}

TEST_CASE("closure under scaling, sums and maxima") {
    gen::Rng rng(20240652);
    for (int rep = 0; rep < 150; ++rep) {
        const int n = gen::pick(rng, 1, 6);
        const int horizon = gen::pick(rng, 0, 3);
        const MeasureSpace m = gen::rand_space(rng, n);
        const Filtration f = gen::rand_filtration(rng, n, horizon);
        const ProcessTable x = gen::rand_martingale(rng, m, f, 1);
        const ProcessTable y = gen::rand_martingale(rng, m, f, 1);
        const Rat c = gen::rand_rat(rng);
        CHECK(is_martingale(m, f, p_scale(c, x)));
        CHECK(is_martingale(m, f, p_add(x, y)));
        CHECK(is_martingale(m, f, p_sub(x, y)));
        CHECK(is_martingale(m, f, p_neg(x)));

        const ProcessTable s = rand_submartingale(rng, m, f);
        const ProcessTable s2 = rand_submartingale(rng, m, f);
        CHECK(is_submartingale(m, f, p_add(s, s2)));
        const Rat nonneg = gen::rand_nonneg_rat(rng);
        CHECK(is_submartingale(m, f, p_scale(nonneg, s)));
        CHECK(is_supermartingale(m, f, p_scale(-nonneg, s)));
        CHECK(is_submartingale(m, f, p_max(s, s2)));
        const ProcessTable zero(std::vector<FnTable>(static_cast<std::size_t>(horizon) + 1,
                                                     FnTable::zero(n, 1)));
        CHECK(is_submartingale(m, f, p_max(s, zero)));
    }
}

TEST_CASE("conditional-expectation processes are martingales") {
    const MeasureSpace m = fair_space();
    const ProcessTable walk = coin_walk();
    const Filtration f = natural_filtration(walk);

    // terminal value of the walk regenerates the walk
    const ProcessTable regenerated = cond_exp_process(m, f, walk[2]);
    for (int t = 0; t <= 2; ++t) CHECK(ae_eq(m, regenerated[t], walk[t]));

    // F_0-measurable g gives a process constant in time
    const FnTable g0 = FnTable::constant(4, VecD::scalar(rat(2, 3)));
    const ProcessTable constant = cond_exp_process(m, f, g0);
    for (int t = 0; t <= 2; ++t) CHECK(ae_eq(m, constant[t], g0));

    // all-singleton filtration reproduces g at every time
    const Filtration sharp = Filtration::constant(2, Partition::singletons(4));
    const ProcessTable reproduced = cond_exp_process(m, sharp, walk[2]);
    for (int t = 0; t <= 2; ++t) CHECK(ae_eq(m, reproduced[t], walk[2]));

    gen::Rng rng(20240653);
    for (int rep = 0; rep < 150; ++rep) {
        const int n = gen::pick(rng, 1, 6);
        const int horizon = gen::pick(rng, 0, 4);
        const std::size_t d = static_cast<std::size_t>(gen::pick(rng, 1, 3));
        const MeasureSpace ms = gen::rand_space(rng, n);
        const Filtration fs = gen::rand_filtration(rng, n, horizon);
        const FnTable g = gen::rand_table(rng, n, d);
        CHECK(is_martingale(ms, fs, cond_exp_process(ms, fs, g)));
    }
}

TEST_CASE("predictable martingales are constant, predictable sub/super are monotone") {
    gen::Rng rng(20240654);
    int martingale_hits = 0;
    int monotone_hits = 0;
    for (int rep = 0; rep < 400; ++rep) {
        const int n = gen::pick(rng, 1, 5);
        const int horizon = gen::pick(rng, 1, 4);
        const MeasureSpace m = gen::rand_space(rng, n);
        const Filtration f = gen::rand_filtration(rng, n, horizon);
        // bias half the instances toward nonnegative increments so genuine
        // predictable submartingales occur
        ProcessTable x = gen::rand_predictable_process(rng, f, 1, gen::pick(rng, 0, 1) == 1);
        REQUIRE(is_predictable(x, f));
        if (is_martingale(m, f, x)) {
            ++martingale_hits;
            for (int i = 0; i <= horizon; ++i)
                for (int j = i; j <= horizon; ++j) CHECK(ae_eq(m, x[i], x[j]));
        }
        if (is_submartingale(m, f, x)) {
            ++monotone_hits;
            for (int i = 0; i <= horizon; ++i)
                for (int j = i; j <= horizon; ++j) CHECK(ae_le(m, x[i], x[j]));
        }
        if (is_supermartingale(m, f, x)) {
            for (int i = 0; i <= horizon; ++i)
                for (int j = i; j <= horizon; ++j) CHECK(ae_ge(m, x[i], x[j]));
        }
    }
    CHECK(martingale_hits > 0);
    CHECK(monotone_hits > 20);
}

TEST_CASE("martingale transform on the coin walk") {
    const ProcessTable x = coin_walk();
    const MeasureSpace m = fair_space();
    const Filtration f = natural_filtration(x);

    const ProcessTable unit(std::vector<FnTable>(3, FnTable::constant(4, VecD::scalar(Rat(1)))));
    const ProcessTable telescoped = transform(unit, x);
    for (int t = 0; t <= 2; ++t) CHECK(telescoped[t] == x[t] - x[0]);

    const ProcessTable none(std::vector<FnTable>(3, FnTable::zero(4, 1)));
    const ProcessTable flat = transform(none, x);
    for (int t = 0; t <= 2; ++t) CHECK(flat[t] == FnTable::zero(4, 1));

    // bet one unit on the first toss only
    const ProcessTable first_round({FnTable::zero(4, 1), FnTable::constant(4, VecD::scalar(Rat(1))),
                                    FnTable::zero(4, 1)});
    const ProcessTable winnings = transform(first_round, x);
    CHECK(winnings[2] == FnTable::scalars({Rat(1), Rat(1), Rat(-1), Rat(-1)}));
    CHECK(winnings[2] == x[1] - x[0]);
    CHECK(is_martingale(m, f, winnings));

    CHECK_THROWS_AS(transform(ProcessTable({FnTable::zero(4, 1)}), x), universe_error);
}

TEST_CASE("the transform preserves martingales and submartingales") {
    gen::Rng rng(20240655);
    for (int rep = 0; rep < 150; ++rep) {
        const int n = gen::pick(rng, 1, 6);
        const int horizon = gen::pick(rng, 1, 4);
        const MeasureSpace m = gen::rand_space(rng, n);
        const Filtration f = gen::rand_filtration(rng, n, horizon);

        const ProcessTable x = gen::rand_martingale(rng, m, f, 1);
        const ProcessTable c = gen::rand_predictable_process(rng, f, 1);
        CHECK(is_martingale(m, f, transform(c, x)));

        const ProcessTable s = rand_submartingale(rng, m, f);
        const ProcessTable c_pos = gen::rand_predictable_process(rng, f, 1, /*nonneg=*/true);
        CHECK(is_submartingale(m, f, transform(c_pos, s)));
    }
}
