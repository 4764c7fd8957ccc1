#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace cdulab {

/// Outcome of one closed-form-versus-brute-force matrix.
struct CheckSummary {
    explicit CheckSummary(std::string check_name = {}) : name(std::move(check_name)) {}

    std::string name;
    std::uint64_t cases = 0;
    std::uint64_t failures = 0;
    /// First few failing cases, human readable.
    std::vector<std::string> samples;
    /// Observations that are reported but not asserted.
    std::vector<std::string> notes;
    double seconds = 0.0;

    bool passed() const { return cases > 0 && failures == 0; }
    void fail(std::string what);
};

/// All (p, n) with p prime and p^n <= max_q, ordered by q.
std::vector<std::pair<std::uint32_t, std::uint32_t>> fields_up_to(std::uint32_t max_q, bool odd_only = false);

CheckSummary check_gcd_lemma();
CheckSummary check_dickson_coeffs(std::uint64_t max_d = 200);
/// Permutation criterion and fiber bound gcd(d, q^2 - 1) for D_d(x, a), all
/// a != 0 and 1 <= d <= q.
CheckSummary check_dickson_perm(std::uint32_t max_q = 343);
/// D_d(u + a/u, a) = u^d + (a/u)^d for all a, all u != 0, d <= max_d.
CheckSummary check_dickson_functional(std::uint32_t max_q = 625, std::uint64_t max_d = 50);
CheckSummary check_perm_l2();
CheckSummary check_pcn_mainp(unsigned workers = 1);
/// For p | d the check compares against d / p, since both sides of the
/// identity are then images under Frobenius.
CheckSummary check_maint(std::uint64_t max_d = 400);
CheckSummary check_uniformity(unsigned workers = 1);
/// Orbit and inverse invariance of cdu(x^d) on GF(3^4) and GF(5^3), plus
/// independence of the modulus.
CheckSummary check_orbit_inverse(unsigned workers = 1);
/// Shifted-sum fast path against generic is_pcn for every d on every odd-characteristic field
/// with q <= max_q.
CheckSummary check_equiv_def(std::uint32_t max_q = 729, unsigned workers = 1);

// Perturbation constructions against brute force.

/// Random (f, gamma, c) draws per field with a fixed seed, plus a second
/// trace-1 element to confirm the verdict does not depend on it.
CheckSummary check_sum_pcn(std::uint32_t draws = 200, std::uint64_t seed = 20240611);
/// L = x^p - x on GF(3^2): every p-ary f, every gamma, c in {0, 2}.
CheckSummary check_p_to_1();
CheckSummary check_ck_permutation();
CheckSummary check_trace_linearized();
/// Brute-force never-PcN scan plus the explicit collision witness.
CheckSummary check_gold_g2();
CheckSummary check_gold_g1_exclusion();
CheckSummary check_linearized();
/// Input-affine invariance of the spectrum and of every cdu(F, c).
CheckSummary check_a_equivalence(std::uint64_t seed = 7);
CheckSummary check_ccz_transfer(std::uint64_t seed = 11);
/// Pinned spectra on GF(2^4) and the pinned G1 and switching hits.
CheckSummary check_pinned_scans();

const std::vector<std::string>& verify_names();
/// Runs a named matrix; throws std::invalid_argument for an unknown name.
CheckSummary run_verify(const std::string& name, unsigned workers = 1);

}  // namespace cdulab
