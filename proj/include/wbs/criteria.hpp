#pragma once

#include <string>
#include <utility>
#include <vector>

#include "wbs/weights.hpp"

namespace wbs {

enum class CriterionId {
    kSalasHypercyclic,
    kSalasSupercyclic,
    kJointInfJM,
    kQuasinilpotent,
    kFixedJRatio,
    kDirectSumLq,
    kAagCyclic,
    kScWitness,
};

const char* criterion_name(CriterionId id);

// Witness-carrying verdict for one inf/liminf-type criterion. A liminf
// condition can be witnessed below a tolerance on a finite horizon, never
// refuted; verdicts are therefore {witnessed, undetermined} only.
// Reports are deterministic: identical inputs and budgets reproduce the
// identical report, independent of the worker count.
struct CriterionReport {
    CriterionId id = CriterionId::kSalasHypercyclic;
    bool witnessed = false;
    // witness parameters when witnessed, best-found parameters otherwise
    std::vector<std::pair<std::string, long long>> witness;
    double value_log = 0.0;      // witness value, or best value when undetermined
    double tolerance_log = 0.0;  // threshold the value was tested against
    std::vector<std::pair<std::string, long long>> horizon;
    std::vector<double> trace;   // optional per-index value trace
    std::vector<std::pair<std::string, std::string>> details;
};

// For any m in [0, m_max], searches for n in [1, n_max] with
//   max( w~(m-n+1, m), w~(m+1, m+n)^{-1} ) <= exp(tol)   (log domain).
// Witnessed only when every m has a witness; the report carries the hardest
// m (largest per-m witness value, smallest such m) and its first witnessing
// n, or the hardest unwitnessed m with its best value.
CriterionReport salas_hypercyclic(const WeightSequence& ws, long long m_max, long long n_max,
                                  double tol, int workers = 1);

// Same quantification for the ratio w~(m-n+1, m) / w~(m+1, m+n).
CriterionReport salas_supercyclic(const WeightSequence& ws, long long m_max, long long n_max,
                                  double tol, int workers = 1);

// Minimizes -w~log(1,m) + w~log(-j(m-a), 0)/j over j in [1, j_max],
// m in [a, m_max]; ties broken by smallest (value, m, j).
CriterionReport joint_inf_jm(const WeightSequence& ws, long long a, long long j_max,
                             long long m_max, double tol, int workers = 1);

// Minimizes w~log(1-n, 0)/n over n in [1, n_max]; the full value sequence is
// attached as a spectral-radius-estimate trace.
CriterionReport quasinilpotent(const WeightSequence& ws, long long n_max, double tol,
                               int workers = 1);

// Minimizes w~log(a-jm, 0) - j*w~log(1, m) over m in [max(1, ceil(a/j)), m_max].
CriterionReport fixed_j_ratio(const WeightSequence& ws, long long j, long long a,
                              long long m_max, double tol, int workers = 1);

// Evidence that a_n = w~(m+1,m+n)/w~(m-n+1,m) lies in l_q with
// q = p1 p2/(p1 p2 - p1 - p2) (infinity when p1 + p2 >= p1 p2), which makes
// the direct sum of the two shifts non-cyclic. For q = inf the evidence is a
// trace that stops rising by the first half of the horizon (value = sup);
// for finite q, relative convergence of the partial sums of a_n^q (value =
// log of the last dyadic block's fraction, tested against tol).
CriterionReport direct_sum_lq(const WeightSequence& ws, double p1, double p2, long long m,
                              long long n_max, double tol);

// Positive caller-supplied comparison sequence rho for the cyclicity test;
// submultiplicativity is asserted by the caller, not verified.
struct RhoSpec {
    enum Kind { kConstant, kPower, kStretchedExp } kind = kConstant;
    double c = 1.0;
    double e = 0.0;

    static RhoSpec constant(double c);
    static RhoSpec power(double c, double e);
    static RhoSpec stretched_exp(double c, double e);
    static RhoSpec from_json_text(const std::string& text);

    double log_at(long long n) const;  // n >= 1
    std::string label() const;
};

// Heuristic horizon check of the alpha-sequence cyclicity test: verifies the
// growth hypotheses ln+ rho_n = o(sqrt n), alpha_{-n} = O(n^k),
// alpha_n = O(rho_n) on the horizon and then looks for divergence
// (=> cyclic) or membership (=> non-cyclic) evidence for {alpha_n^{-1}} in
// l_q, 1/p + 1/q = 1. The conclusion is in details["conclusion"].
CriterionReport aag_cyclic(const WeightSequence& ws, double p, long long k, const RhoSpec& rho,
                           long long n_max, double tol);

// Greedy search for n_1 < n_2 < ... <= n_max with, for all |s|,|t| <=
// support_radius, w~log(s-n+1, s) - w~log(t+1, t+n) <= tol - (k-1) log 2 at
// the k-th element; returns the found prefix (trace) and is witnessed when
// nonempty.
CriterionReport sc_witness(const WeightSequence& ws, long long support_radius, long long n_max,
                           double tol);

struct Budgets {
    double tol = -13.815510557964274;  // log(1e-6)
    long long m_max = 64;
    long long n_max = 4096;
    long long j_max = 64;
    int workers = 1;
};

// One classification condition C1..C6 (or the cyclicity summary) with its
// machine-checkable justification chain. Tokens are either criterion names,
// "equivalence(Cx)", edge tokens "Cx=>Cy[name]", "contrapositive:Cx=>Cy[name]", or
// one of the fixed conclusion rules.
struct ConditionStatus {
    std::string name;
    std::string status;  // "witnessed" | "refuted" | "undetermined" | "conflict"
    std::vector<std::string> via;
};

struct ClassificationReport {
    std::string family;
    double p = 2.0;
    Budgets budgets;
    std::vector<CriterionReport> runs;
    std::vector<ConditionStatus> conditions;  // C1..C6
    ConditionStatus cyclic;                   // cyclicity of T itself
};

// Runs the supercyclicity/hypercyclicity scans, the joint inf criterion
// (a = 1), the quasinilpotency trace, and the direct-sum obstruction at
// p1 = p2 = p, then propagates statuses: for p <= 2 through the six-way
// equivalence, for p > 2 only along the fixed implication edges.
ClassificationReport classify(const WeightSequence& ws, double p, const Budgets& budgets);

// The fixed edge set the justification chains draw from (for validation).
const std::vector<std::string>& classification_edge_tokens();

}  // namespace wbs
