#include "sedscore/intersection.hpp"

#include "sedscore/errors.hpp"
#include "sedscore/synth.hpp"
#include "helpers.hpp"

#include <doctest.h>

#include <cstdint>
#include <vector>

using namespace sedscore;
using namespace sedscore::testutil;

TEST_CASE("dtc_partition splits detections at the coverage ratio") {
    std::vector<Event> valid;
    std::vector<Event> failed;

    SUBCASE("fully covered detection") {
        dtc_partition({ev(0, 4.9)}, {ev(0, 10)}, 0.5, valid, failed);
        CHECK(valid.size() == 1);
        CHECK(failed.empty());
    }
    SUBCASE("coverage sums across references") {
        dtc_partition({ev(0, 5)}, {ev(0, 2), ev(3, 5)}, 0.5, valid, failed);
        CHECK(valid.size() == 1); // 4 of 5 seconds covered
        CHECK(failed.empty());
    }
    SUBCASE("mostly uncovered detection fails") {
        dtc_partition({ev(0, 10)}, {ev(0, 1)}, 0.5, valid, failed);
        CHECK(valid.empty());
        CHECK(failed.size() == 1);
    }
    SUBCASE("the threshold itself passes") {
        dtc_partition({ev(0, 10)}, {ev(0, 5)}, 0.5, valid, failed);
        CHECK(valid.size() == 1);
    }
}

TEST_CASE("gtc_count tolerates interruptions and mergers") {
    // interrupted detection still covers 98% of the reference
    CHECK(gtc_count({ev(0, 10)}, {ev(0, 4.9), ev(5.1, 10)}, 0.5) == 1);
    // one merged detection covers both references completely
    CHECK(gtc_count({ev(0, 2), ev(3, 5)}, {ev(0, 5)}, 0.5) == 2);
    CHECK(gtc_count({ev(0, 10)}, {}, 0.5) == 0);
}

TEST_CASE("cttc_count normalizes by the foreign reference duration") {
    // a long failed detection swallows the shorter foreign reference
    CHECK(cttc_count({ev(0, 8)}, {ev(0, 6, "Vacuum_cleaner")}, 0.3) == 1);
    CHECK(cttc_count({}, {ev(0, 6, "Vacuum_cleaner")}, 0.3) == 0);
    // 1 of 6 seconds covered stays under the 0.3 ratio
    CHECK(cttc_count({ev(0, 1)}, {ev(0, 6, "Vacuum_cleaner")}, 0.3) == 0);
}

TEST_CASE("ratios use summed intersections and can exceed one") {
    // two overlapping references both intersect the detection fully
    std::vector<Event> valid;
    std::vector<Event> failed;
    dtc_partition({ev(0, 2)}, {ev(0, 2), ev(0, 2)}, 1.0, valid, failed);
    CHECK(valid.size() == 1);
}

TEST_CASE("intersection_counts accepts interrupted and merged detections") {
    SUBCASE("interrupted") {
        const auto counts = intersection_counts(corpus_a({ev(0, 10)}),
                                                corpus_a({ev(0, 4.9), ev(5.1, 10)}), {});
        const auto& dog = counts.per_class.at("Dog");
        CHECK(dog.tp == 1);
        CHECK(dog.fp == 0);
        CHECK(dog.n_ref == 1);
        CHECK(dog.fn() == 0);
    }
    SUBCASE("merged") {
        const auto counts = intersection_counts(corpus_a({ev(0, 2), ev(3, 5)}),
                                                corpus_a({ev(0, 5)}), {});
        const auto& dog = counts.per_class.at("Dog");
        CHECK(dog.tp == 2);
        CHECK(dog.fp == 0);
        CHECK(dog.n_ref == 2);
    }
}

TEST_CASE("failed detections become fp and may cross-trigger") {
    const Corpus refs = corpus_a({ev(0, 6)});
    const Corpus dets = corpus_a({ev(0, 8, "Cat")});
    const auto counts = intersection_counts(refs, dets, {});
    const auto& cat = counts.per_class.at("Cat");
    CHECK(cat.fp == 1);
    CHECK(cat.tp == 0);
    CHECK(cat.n_ref == 0);
    const auto& dog = counts.per_class.at("Dog");
    CHECK(dog.tp == 0);
    CHECK(dog.n_ref == 1);
    CHECK(counts.ct("Cat", "Dog") == 1);
    // zero pairs are suppressed, the accessor still answers
    CHECK(counts.cross_triggers.size() == 1);
    CHECK(counts.ct("Dog", "Cat") == 0);
}

TEST_CASE("a valid detection never cross-triggers") {
    // Cat detection sits on both a Cat and a Dog reference; DTC passes,
    // so the Dog reference sees no cross-trigger
    const Corpus refs = corpus_a({ev(0, 4, "Cat"), ev(0, 6)});
    const Corpus dets = corpus_a({ev(0, 4, "Cat")});
    const auto counts = intersection_counts(refs, dets, {});
    CHECK(counts.per_class.at("Cat").tp == 1);
    CHECK(counts.cross_triggers.empty());
}

TEST_CASE("counts are invariant under time scaling") {
    for (std::uint64_t seed : {11u, 12u, 13u}) {
        const Corpus refs = generate_reference(desed_like_profiles(), 3, 60.0, seed);
        DegradeParams params;
        params.onset_jitter_abs = 0.5;
        params.delete_prob = 0.2;
        params.insert_rate = 40.0;
        params.split_prob = 0.2;
        params.seed = seed;
        const Corpus dets = degrade(refs, params);
        const IntersectionConfig cfg;
        const IntersectionCounts base = intersection_counts(refs, dets, cfg);
        for (double s : {0.5, 2.0, 10.0}) {
            const IntersectionCounts scaled =
                intersection_counts(refs.scaled(s), dets.scaled(s), cfg);
            CHECK(scaled.cross_triggers == base.cross_triggers);
            REQUIRE(scaled.per_class.size() == base.per_class.size());
            for (const auto& [cls, c] : base.per_class) {
                const auto& sc = scaled.per_class.at(cls);
                CHECK(sc.tp == c.tp);
                CHECK(sc.fp == c.fp);
                CHECK(sc.n_ref == c.n_ref);
            }
        }
    }
}

TEST_CASE("raising either ratio never helps the detector") {
    const Corpus refs = generate_reference(desed_like_profiles(), 4, 60.0, 99);
    DegradeParams params;
    params.onset_jitter_abs = 0.8;
    params.duration_scale = 0.7;
    params.insert_rate = 25.0;
    params.seed = 99;
    const Corpus dets = degrade(refs, params);

    std::int64_t prev_tp = INT64_MAX;
    std::int64_t prev_fp = -1;
    for (double rho : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        IntersectionConfig cfg;
        cfg.rho_dtc = rho;
        cfg.rho_gtc = rho;
        std::int64_t tp = 0;
        std::int64_t fp = 0;
        for (const auto& [cls, c] : intersection_counts(refs, dets, cfg).per_class) {
            tp += c.tp;
            fp += c.fp;
        }
        CHECK(tp <= prev_tp);
        CHECK(fp >= prev_fp);
        prev_tp = tp;
        prev_fp = fp;
    }
}

TEST_CASE("to_class_counts flattens with fn derived from n_ref") {
    const Corpus refs = corpus_a({ev(0, 6), ev(7, 8)});
    const Corpus dets = corpus_a({ev(0, 5.9), ev(1, 1.2, "Cat")});
    const auto counts = to_class_counts(intersection_counts(refs, dets, {}));
    const ClassCounts* dog = find_counts(counts, "Dog");
    REQUIRE(dog != nullptr);
    CHECK(dog->tp == 1);
    CHECK(dog->fn == 1);
    CHECK(dog->n_ref == 2);
    const ClassCounts* cat = find_counts(counts, "Cat");
    REQUIRE(cat != nullptr);
    CHECK(cat->fp == 1);
    CHECK(cat->n_ref == 0);
}

TEST_CASE("intersection config validation") {
    IntersectionConfig bad;
    bad.rho_dtc = 0.0;
    CHECK_THROWS_AS(bad.validate(), EvalError);
    bad = {};
    bad.rho_gtc = 1.5;
    CHECK_THROWS_AS(bad.validate(), EvalError);
    bad = {};
    bad.rho_cttc = -0.2;
    CHECK_THROWS_AS(bad.validate(), EvalError);
}
