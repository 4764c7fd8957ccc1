#include "cdulab/search.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <numeric>
#include <set>

#include "json.hpp"

#include "cdulab/oracles.hpp"
#include "cdulab/parallel.hpp"

namespace cdulab {

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t orbit_min(std::uint64_t d, std::uint32_t p, std::uint32_t n, std::uint64_t m) {
    std::uint64_t best = d, cur = d;
    for (std::uint32_t j = 1; j < n; ++j) {
        cur = mulmod(cur, p, m);
        best = std::min(best, cur);
    }
    return best;
}

bool generic_pcn(const FieldPtr& field, Elt c, std::uint64_t d, std::uint32_t cap) {
    if (field->q() > cap) {
        throw SearchError("generic PcN check on GF(" + std::to_string(field->q()) + ") exceeds the cap of " +
                          std::to_string(cap) + " elements");
    }
    if (c != field->one() && std::gcd(d, std::uint64_t{field->group_order()}) != 1) return false;
    return is_pcn(materialize(field, FunctionSpec::monomial(static_cast<std::int64_t>(d))), c, 1);
}

nlohmann::json checkpoint_key(const Field& F, Elt c, std::pair<std::uint64_t, std::uint64_t> range, bool paranoid) {
    return {{"p", F.p()}, {"n", F.n()}, {"modulus", F.modulus().coeffs()}, {"c", F.coeffs(c)},
            {"d_range", {range.first, range.second}}, {"paranoid", paranoid}};
}

std::map<std::uint64_t, bool> load_checkpoint(const std::string& path, const nlohmann::json& key) {
    std::ifstream in(path);
    if (!in) return {};
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw SearchError("unreadable checkpoint " + path + ": " + e.what());
    }
    if (j.value("key", nlohmann::json{}) != key) {
        throw SearchError("checkpoint " + path + " belongs to a different search");
    }
    std::map<std::uint64_t, bool> out;
    for (const auto& entry : j.at("verdicts")) out[entry.at(0).get<std::uint64_t>()] = entry.at(1).get<bool>();
    return out;
}

void write_checkpoint(const std::string& path, const nlohmann::json& key, const std::map<std::uint64_t, bool>& v) {
    nlohmann::json j;
    j["key"] = key;
    j["verdicts"] = nlohmann::json::array();
    for (const auto& [d, ok] : v) j["verdicts"].push_back({d, ok});
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw SearchError("cannot write checkpoint " + tmp);
        out << j.dump() << '\n';
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace

std::string to_string(Strategy s) {
    return s == Strategy::FastPathMinusOne ? "fast_path_c_minus_1" : "generic";
}

ShiftedSumChecker::ShiftedSumChecker(const Field& field)
    : field_(field), log_plus_(field.q()), log_minus_(field.q()), stamp_(field.q(), 0) {
    const Elt one = field.one();
    for (std::uint32_t x = 0; x < field.q(); ++x) {
        const Elt plus = field.add(Elt{x}, one);
        const Elt minus = field.sub(Elt{x}, one);
        log_plus_[x] = plus.index == 0 ? Field::kNoLog : field.log(plus);
        log_minus_[x] = minus.index == 0 ? Field::kNoLog : field.log(minus);
    }
}

bool ShiftedSumChecker::is_permutation(std::uint64_t d) {
    const Field& F = field_;
    const std::uint64_t m = F.group_order();
    const std::uint64_t e = d % m;
    const auto exp = F.exp_table();
    auto power = [&](std::uint32_t lg) -> Elt {
        if (lg == Field::kNoLog) return d == 0 ? F.one() : F.zero();
        return exp[mulmod(lg, e, m)];
    };
    if (++generation_ == 0) {
        std::fill(stamp_.begin(), stamp_.end(), 0U);
        generation_ = 1;
    }
    for (std::uint32_t x = 0; x < F.q(); ++x) {
        const Elt v = F.add(power(log_plus_[x]), power(log_minus_[x]));
        if (stamp_[v.index] == generation_) return false;
        stamp_[v.index] = generation_;
    }
    return true;
}

Strategy choose_strategy(const Field& field, Elt c) {
    return field.p() % 2 == 1 && c == field.minus_one() ? Strategy::FastPathMinusOne : Strategy::Generic;
}

MembershipResult pcn_membership(const FieldPtr& field, Elt c, std::uint64_t d, std::uint32_t generic_max_q) {
    MembershipResult r;
    r.strategy = choose_strategy(*field, c);
    if (r.strategy == Strategy::FastPathMinusOne) {
        if (std::gcd(d, std::uint64_t{field->group_order()}) != 1) return r;
        ShiftedSumChecker checker(*field);
        r.pcn = checker.is_permutation(d);
    } else {
        r.pcn = generic_pcn(field, c, d, generic_max_q);
    }
    return r;
}

SearchReport pcn_monomial_search(const FieldPtr& field, Elt c, const SearchOptions& opts) {
    const auto t0 = std::chrono::steady_clock::now();
    const Field& F = *field;
    if (!F.contains(c)) throw SearchError("c is not an element of the field");
    const std::uint64_t m = F.group_order();
    if (m < 2) throw SearchError("exponent search needs q >= 3");

    SearchReport rep;
    rep.p = F.p();
    rep.n = F.n();
    rep.modulus = F.modulus().coeffs();
    rep.c = F.coeffs(c);
    rep.strategy = choose_strategy(F, c);
    rep.d_range = opts.d_range.value_or(std::pair<std::uint64_t, std::uint64_t>{1, m - 1});
    if (rep.d_range.first < 1 || rep.d_range.second > m - 1 || rep.d_range.first > rep.d_range.second) {
        throw SearchError("exponent range must lie in [1, " + std::to_string(m - 1) + "]");
    }
    rep.paranoid = opts.paranoid;
    rep.worker_count = std::max(1U, opts.workers);
    // x^{dp} = (x^d)^p, so for c in the prime field the PcN property is
    // constant on exponent orbits and one representative per orbit suffices.
    rep.orbit_sharded = F.in_prime_field(c);
    if (rep.strategy == Strategy::Generic && F.q() > opts.generic_max_q) {
        throw SearchError("generic PcN search on GF(" + std::to_string(F.q()) + ") exceeds the cap of " +
                          std::to_string(opts.generic_max_q) + " elements");
    }
    const bool gcd_filter = c != F.one();

    // Units of work: orbit representatives when sharded, otherwise single exponents.
    std::vector<std::uint64_t> units;
    {
        std::set<std::uint64_t> seen;
        for (std::uint64_t d = rep.d_range.first; d <= rep.d_range.second; ++d) {
            if (gcd_filter && std::gcd(d, m) != 1) continue;
            seen.insert(rep.orbit_sharded ? orbit_min(d, F.p(), F.n(), m) : d);
        }
        units.assign(seen.begin(), seen.end());
    }

    // Paranoid mode verifies every orbit member, keyed by the member itself.
    auto members = [&](std::uint64_t u) {
        std::vector<std::uint64_t> out{u};
        if (rep.orbit_sharded && opts.paranoid) out = exponent_orbit(u, F.p(), F.n());
        return out;
    };

    const auto key = checkpoint_key(F, c, rep.d_range, opts.paranoid);
    std::map<std::uint64_t, bool> verdicts;
    if (opts.checkpoint_path) verdicts = load_checkpoint(*opts.checkpoint_path, key);

    std::vector<std::uint64_t> todo;
    for (auto u : units) {
        for (auto d : members(u)) {
            if (!verdicts.contains(d)) todo.push_back(d);
        }
    }

    const unsigned workers = rep.worker_count;
    std::vector<std::unique_ptr<ShiftedSumChecker>> checkers(workers);
    auto test = [&](std::uint64_t d, unsigned w) {
        if (rep.strategy == Strategy::FastPathMinusOne) {
            if (std::gcd(d, m) != 1) return false;
            if (!checkers[w]) checkers[w] = std::make_unique<ShiftedSumChecker>(F);
            return checkers[w]->is_permutation(d);
        }
        return generic_pcn(field, c, d, opts.generic_max_q);
    };

    const std::size_t chunk = opts.checkpoint_path ? std::max<std::uint32_t>(1, opts.checkpoint_every) : todo.size();
    for (std::size_t start = 0; start < todo.size(); start += chunk) {
        const std::size_t len = std::min(chunk, todo.size() - start);
        std::vector<char> out(len, 0);
        parallel_for(len, workers, [&](std::size_t i, unsigned w) { out[i] = test(todo[start + i], w) ? 1 : 0; });
        for (std::size_t i = 0; i < len; ++i) verdicts[todo[start + i]] = out[i] != 0;
        if (opts.checkpoint_path) write_checkpoint(*opts.checkpoint_path, key, verdicts);
    }
    rep.candidates_tested = todo.size();

    std::set<std::uint64_t> found;
    for (auto u : units) {
        const auto ms = members(u);
        const bool first = verdicts.at(ms.front());
        bool consistent = true;
        for (auto d : ms) consistent = consistent && verdicts.at(d) == first;
        if (!consistent) rep.orbit_inconsistencies.push_back(u);
        if (rep.orbit_sharded) {
            for (auto d : exponent_orbit(u, F.p(), F.n())) {
                const bool hit = opts.paranoid ? verdicts.at(d) : first;
                if (hit && d >= rep.d_range.first && d <= rep.d_range.second) found.insert(d);
            }
            if (first) rep.orbit_representatives.push_back(u);
        } else if (first) {
            found.insert(u);
            rep.orbit_representatives.push_back(u);
        }
    }
    rep.exponents_found.assign(found.begin(), found.end());
    rep.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

std::vector<CDiffResult> uniformity_scan(const FieldPtr& field, Elt c, const std::vector<std::uint64_t>& d_list,
                                         std::uint64_t budget, unsigned workers) {
    const auto q = std::uint64_t{field->q()};
    if (q * q > budget || q * q * d_list.size() > budget) {
        throw BudgetExceeded("uniformity scan needs " + std::to_string(q * q * d_list.size()) +
                             " derivative evaluations, budget is " + std::to_string(budget));
    }
    std::vector<CDiffResult> out;
    out.reserve(d_list.size());
    for (auto d : d_list) {
        out.push_back(cdu(materialize(field, FunctionSpec::monomial(static_cast<std::int64_t>(d))), c, workers));
    }
    return out;
}

SearchReport conjecture_audit(std::uint32_t p, std::uint32_t n, const SearchOptions& opts) {
    const bool conjectured = n == 5 || n == 7;
    if (p % 2 == 0 || (!conjectured && n % 2 == 0)) {
        throw SearchError("the audit needs odd p, and odd n outside n = 5, 7");
    }
    const auto predicted = conjectured ? conjecture_set(p, n) : half_gold_pattern_set(p, n);
    const auto field = Field::build(p, n);
    SearchOptions o = opts;
    o.d_range.reset();
    auto rep = pcn_monomial_search(field, field->minus_one(), o);
    rep.predicted = predicted;
    rep.prediction_source = conjectured ? "conjecture" : "half_gold_pattern";
    std::set_difference(predicted.begin(), predicted.end(), rep.exponents_found.begin(), rep.exponents_found.end(),
                        std::back_inserter(rep.missing));
    std::set_difference(rep.exponents_found.begin(), rep.exponents_found.end(), predicted.begin(), predicted.end(),
                        std::back_inserter(rep.unexpected));
    return rep;
}

}  // namespace cdulab
