#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "json.hpp"

#include "cdulab/cdiff.hpp"
#include "cdulab/field.hpp"
#include "cdulab/function.hpp"
#include "cdulab/oracles.hpp"
#include "cdulab/search.hpp"
#include "naive.hpp"
#include "properties.hpp"

using namespace cdulab;

namespace {

using Set = std::vector<std::uint64_t>;

// Every exponent in [1, q-2] tested by map-based counting.
Set brute_pcn_exponents(const FieldPtr& field, Elt c) {
    const auto N = props::naive_of(*field);
    Set out;
    for (std::uint64_t d = 1; d + 1 < field->q(); ++d) {
        std::vector<std::uint32_t> f(field->q());
        for (std::uint32_t x = 0; x < field->q(); ++x) f[x] = N.pow(x, d);
        if (naive::cdu(N, f, c.index) == 1) out.push_back(d);
    }
    return out;
}

std::filesystem::path temp_file(const std::string& name) {
    const auto p = std::filesystem::temp_directory_path() / ("cdulab_test_" + name);
    std::filesystem::remove(p);
    return p;
}

}  // namespace

TEST_SUITE("search") {
    TEST_CASE("GF(3^5) at c = -1 gives the 25-exponent orbit closure") {
        const auto field = Field::build(3, 5);
        const auto rep = pcn_monomial_search(field, field->minus_one());
        CHECK(rep.strategy == Strategy::FastPathMinusOne);
        CHECK(rep.orbit_sharded);
        CHECK(rep.exponents_found == orbit_closure({1, 5, 41, 61, 97}, 3, 5));
        CHECK(rep.exponents_found.size() == 25);
        CHECK(rep.orbit_inconsistencies.empty());
    }

    TEST_CASE("fast path and generic path agree with brute force") {
        for (auto [p, n] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{3, 3}, {3, 4}, {5, 2}, {7, 2}, {3, 5}}) {
            const auto field = Field::build(p, n);
            const auto expect = brute_pcn_exponents(field, field->minus_one());
            CHECK(pcn_monomial_search(field, field->minus_one()).exponents_found == expect);
            SearchOptions paranoid;
            paranoid.paranoid = true;
            const auto rp = pcn_monomial_search(field, field->minus_one(), paranoid);
            CHECK(rp.exponents_found == expect);
            CHECK(rp.orbit_inconsistencies.empty());
        }
        // c outside {-1} and outside F_p: the generic path without orbit sharding.
        for (auto [p, n] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{2, 4}, {3, 3}, {5, 2}}) {
            const auto field = Field::build(p, n);
            for (Elt c : {field->zero(), field->generator(), field->from_int(2)}) {
                if (c == field->one()) continue;
                const auto r = pcn_monomial_search(field, c);
                CHECK(r.exponents_found == brute_pcn_exponents(field, c));
                CHECK(r.orbit_sharded == field->in_prime_field(c));
            }
        }
    }

    TEST_CASE("c = 0 search finds exactly the permutation exponents") {
        const auto field = Field::build(3, 4);
        Set perms;
        for (std::uint64_t d = 1; d + 1 < field->q(); ++d) {
            if (naive::gcd(d, field->q() - 1) == 1) perms.push_back(d);
        }
        CHECK(pcn_monomial_search(field, field->zero()).exponents_found == perms);
    }

    TEST_CASE("membership") {
        const auto F243 = Field::build(3, 5);
        CHECK_FALSE(pcn_membership(F243, F243->minus_one(), 7).pcn);
        CHECK(pcn_membership(F243, F243->minus_one(), 5).pcn);
        CHECK(pcn_membership(F243, F243->minus_one(), 5).strategy == Strategy::FastPathMinusOne);
        CHECK(pcn_membership(F243, F243->zero(), 7).pcn);
        CHECK(pcn_membership(F243, F243->zero(), 7).strategy == Strategy::Generic);
        const auto F3_9 = Field::build(3, 9);
        CHECK(pcn_membership(F3_9, F3_9->minus_one(), 29).pcn);
    }

    TEST_CASE("worker count does not change the exponent set") {
        const auto field = Field::build(5, 5);
        SearchOptions one, four;
        four.workers = 4;
        const auto a = pcn_monomial_search(field, field->minus_one(), one);
        const auto b = pcn_monomial_search(field, field->minus_one(), four);
        CHECK(a.exponents_found == b.exponents_found);
        CHECK(a.exponents_found == conjecture_set(5, 5));
        CHECK(b.worker_count == 4);
    }

    TEST_CASE("ranges") {
        const auto field = Field::build(3, 5);
        SearchOptions o;
        o.d_range = std::pair<std::uint64_t, std::uint64_t>{1, 60};
        const auto r = pcn_monomial_search(field, field->minus_one(), o);
        Set expect;
        for (auto d : conjecture_set(3, 5)) {
            if (d <= 60) expect.push_back(d);
        }
        CHECK(r.exponents_found == expect);
        o.d_range = std::pair<std::uint64_t, std::uint64_t>{0, 10};
        CHECK_THROWS_AS(pcn_monomial_search(field, field->minus_one(), o), SearchError);
        o.d_range = std::pair<std::uint64_t, std::uint64_t>{10, 242};
        CHECK_THROWS_AS(pcn_monomial_search(field, field->minus_one(), o), SearchError);
        o.d_range = std::pair<std::uint64_t, std::uint64_t>{20, 10};
        CHECK_THROWS_AS(pcn_monomial_search(field, field->minus_one(), o), SearchError);
    }

    TEST_CASE("generic search respects its field-size cap") {
        const auto field = Field::build(3, 9);
        CHECK_THROWS_AS(pcn_monomial_search(field, field->zero()), SearchError);
        CHECK_THROWS_AS(pcn_membership(field, field->generator(), 5), SearchError);
    }

    TEST_CASE("checkpoint resume") {
        const auto field = Field::build(3, 5);
        const auto path = temp_file("ckpt.json");
        SearchOptions o;
        o.checkpoint_path = path.string();
        o.checkpoint_every = 4;
        const auto full = pcn_monomial_search(field, field->minus_one(), o);
        REQUIRE(std::filesystem::exists(path));

        // Drop the second half of the recorded verdicts to simulate an interrupted run.
        nlohmann::json j;
        std::ifstream(path) >> j;
        auto& v = j["verdicts"];
        const std::size_t keep = v.size() / 2;
        const std::size_t dropped = v.size() - keep;
        v.erase(v.begin() + static_cast<std::ptrdiff_t>(keep), v.end());
        std::ofstream(path, std::ios::trunc) << j.dump();

        const auto resumed = pcn_monomial_search(field, field->minus_one(), o);
        CHECK(resumed.candidates_tested == dropped);
        CHECK(resumed.exponents_found == full.exponents_found);

        // Fully checkpointed: nothing left to test.
        CHECK(pcn_monomial_search(field, field->minus_one(), o).candidates_tested == 0);

        // A checkpoint from another search is rejected.
        SearchOptions other = o;
        other.paranoid = true;
        CHECK_THROWS_AS(pcn_monomial_search(field, field->minus_one(), other), SearchError);
        std::ofstream(path, std::ios::trunc) << "{not json";
        CHECK_THROWS_AS(pcn_monomial_search(field, field->minus_one(), o), SearchError);
        std::filesystem::remove(path);
    }

    TEST_CASE("uniformity scan") {
        const auto F25 = Field::build(5, 2);
        CHECK(uniformity_scan(F25, F25->minus_one(), {3}).at(0).uniformity == 3);
        const auto F169 = Field::build(13, 2);
        CHECK(uniformity_scan(F169, F169->minus_one(), {7}).at(0).uniformity == 7);
        const auto F1331 = Field::build(11, 3);
        CHECK(uniformity_scan(F1331, F1331->minus_one(), {6}).at(0).uniformity == 6);
        CHECK_THROWS(uniformity_scan(F1331, F1331->minus_one(), {6}, 1000));
    }

    TEST_CASE("audits") {
        const auto r = conjecture_audit(3, 5);
        CHECK(r.prediction_source == "conjecture");
        CHECK(r.diff_empty());
        const auto r3 = conjecture_audit(3, 3);
        CHECK(r3.prediction_source == "half_gold_pattern");
        CHECK(r3.predicted.has_value());
        CHECK_THROWS_AS(conjecture_audit(2, 5), SearchError);
        CHECK_THROWS_AS(conjecture_audit(3, 4), SearchError);
    }
}
