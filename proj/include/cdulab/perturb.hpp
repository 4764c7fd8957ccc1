#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cdulab/cdiff.hpp"
#include "cdulab/function.hpp"

namespace cdulab {

/// Closed-form criterion against its brute-force oracle for one instance.
struct PerturbVerdict {
    explicit PerturbVerdict(std::string name = {}) : construction(std::move(name)) {}

    std::string construction;
    /// Parameter name -> external form (coefficient list, or integer).
    std::map<std::string, std::string> params;
    bool criterion_value = false;
    bool brute_force_value = false;
    bool agree = false;
    /// False when a hypothesis of the construction failed to verify; the two
    /// values are then not comparable and `agree` is left false.
    bool applicable = true;
    std::string note;
};

class PerturbError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// One scanned parameter tuple and whether the resulting function is PcN.
struct ScanFinding {
    std::string construction;
    std::map<std::string, std::string> params;
    std::uint64_t d = 0;
    std::uint64_t e = 0;
    std::uint32_t k = 0;
    std::uint32_t n = 0;
    Elt c;
    Elt gamma;
    bool pcn = false;
};

/// Sum of a_i x^{p^i} is PcN for c != 1 iff its kernel is trivial.
PerturbVerdict linearized_pcn(const FieldPtr& field, std::span<const Elt> coeffs, Elt c);

/// x^{p^j} - a x^{p^i} with a != 0: PcN for c != 1 iff a is not a
/// (p^{j-i} - 1)-st power.
PerturbVerdict binomial_pcn(const FieldPtr& field, std::uint32_t i, std::uint32_t j, Elt a, Elt c);

/// First element in enumeration order with trace 1.
Elt first_trace_one(const Field& field);

/// Walsh-sum criterion for F + gamma f with f p-ary (values in [0, p)),
/// c in F_p \ {1}, p odd. `delta` is the trace-1 element used to lift the
/// p-ary derivative into the field; defaults to first_trace_one.
PerturbVerdict sum_pcn_criterion(const FuncTable& F, std::span<const std::uint32_t> f, Elt gamma, Elt c,
                                 std::optional<Elt> delta = std::nullopt);

/// L + gamma f for a p-to-1 linearized L and p-ary f, c in F_p \ {1}.
PerturbVerdict p_to_1_perturb_check(const FieldPtr& field, std::span<const Elt> L_coeffs,
                                    std::span<const std::uint32_t> f, Elt gamma, Elt c);

/// x + gamma Tr(H(x^p - gamma^{p-1} x) + beta x) permutes iff Tr(beta gamma) != -1.
PerturbVerdict ck_permutation_check(const FieldPtr& field, Elt beta, Elt gamma, const SpecPtr& H);

/// x + gamma Tr(x^p - alpha x) is PcN for every c != 1 iff Tr(gamma (1 - alpha)) != -1.
PerturbVerdict trace_linearized_pcn(const FieldPtr& field, Elt gamma, Elt alpha);

/// gamma values for which x^{p^k+1} + gamma Tr(x) cannot be PcN for c.
std::vector<Elt> gold_g1_gamma_exclusion(const FieldPtr& field, std::uint32_t k, Elt c);

/// The explicit collision for x^{p^k+1} + gamma x^{p^k} at a = gamma (c - 1):
/// returns the nonzero point sharing its c-derivative value with 0, or
/// nullopt if the two values differ.
std::optional<Elt> gold_g2_witness(const FieldPtr& field, std::uint32_t k, Elt gamma, Elt c);

/// Brute-force PcN test of x^{p^k+1} + gamma x^{p^k} over all k in
/// [k_min, k_max], gamma != 0 and c != 1. criterion_value is always false.
std::vector<PerturbVerdict> gold_g2_never_pcn_scan(const FieldPtr& field, std::uint32_t k_min, std::uint32_t k_max);

/// x^{2^k+1} + gamma Tr(x) over GF(2^n), 2 <= n <= 4 with the default moduli,
/// 2 <= k <= n, every c and gamma != 0.
std::vector<ScanFinding> g1_small_field_scan();

/// x^d + gamma Tr(x^e) over all listed (d, e, c, gamma).
std::vector<ScanFinding> switching_scan(const FieldPtr& field, const std::vector<std::uint64_t>& base_exponents,
                                        const std::vector<std::uint64_t>& inner_exponents,
                                        const std::vector<Elt>& c_range, const std::vector<Elt>& gamma_range);

/// Affine map of F_p^{2n}: u -> matrix u + constant, u = (x, y) as coefficient vectors.
struct BlockAffine {
    std::vector<std::vector<std::uint32_t>> matrix;
    std::vector<std::uint32_t> constant;
};

/// Checks that A maps the graph of F onto the graph of F2, that the scaled
/// map (x, y) -> ((A11 x + A12 (c y)) / c*, (A21 x + A22 (c y)) / c*) does so
/// up to a translation, and then compares cdu(F, c) with cdu(F2, c*).
PerturbVerdict ccz_transfer_check(const FuncTable& F, const FuncTable& F2, const BlockAffine& A, Elt c, Elt c_star);

/// Rank over F_p of a matrix with entries in [0, p).
std::size_t rank_mod_p(std::vector<std::vector<std::uint32_t>> M, std::uint32_t p);

std::vector<ScanFinding> hits(const std::vector<ScanFinding>& all);

}  // namespace cdulab
