#include "doctest.h"
#include "unets/canonical.hpp"
#include "unets/corpus.hpp"

using namespace unets;

TEST_CASE("random networks are deterministic and valid") {
    CorpusSpec spec;
    spec.n_leaves = 6;
    spec.tier_lo = 0;
    spec.tier_hi = 3;
    spec.seed = 77;
    for (std::size_t i = 0; i < 30; ++i) {
        PhyloNetwork a = random_network(spec, i);
        PhyloNetwork b = random_network(spec, i);
        CHECK(canonical_form(a.graph()) == canonical_form(b.graph()));
        CHECK(a.leaf_count() == 6);
        CHECK(a.tier() <= 3);
        CHECK(validate_network(a.graph()).tier() == a.tier());
    }
    spec.tier_hi = 0;
    CHECK(is_tree(random_network(spec, 4)));
    spec.n_leaves = 2;
    spec.tier_hi = 2;
    CHECK(random_network(spec, 1).leaf_count() == 2);
}

TEST_CASE("claim lists") {
    CHECK(parse_claims("all") == kAllClaims);
    CHECK(parse_claims("metric,trees") ==
          (static_cast<std::uint32_t>(Claim::Metric) | static_cast<std::uint32_t>(Claim::Trees)));
    CHECK_THROWS_AS(parse_claims("metric,bogus"), std::invalid_argument);
}

TEST_CASE("verification on small corpora") {
    CorpusSpec spec;
    spec.n_leaves = 4;
    spec.tier_lo = 0;
    spec.tier_hi = 0;
    VerificationReport r = verify_claims(spec);
    CHECK(r.networks == 3);
    CHECK(r.pairs == 6);
    CHECK(r.ok());
    CHECK(r.to_text() == verify_claims(spec).to_text());
    spec.count = 4;
    spec.tier_hi = 1;
    spec.seed = 3;
    VerificationReport q = verify_claims(spec, parse_claims("metric,bounds,ad1,sequence"));
    CHECK(q.ok());
    CHECK(q.to_text().find("claim=fixtures") == std::string::npos);
}
