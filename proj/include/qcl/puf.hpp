#pragma once

#include "qcl/equality.hpp"
#include "qcl/random.hpp"
#include "qcl/state.hpp"

#include <cstdint>
#include <set>
#include <string>
#include <vector>

namespace qcl {

// Hardware token modelled as an unknown Haar-sampled unitary. Evaluation is
// exact conjugation; the query counter records oracle use.
class UqPUF {
public:
    UqPUF(Eigen::Index dim, std::uint64_t seed);

    Eigen::Index dim() const { return unitary_.rows(); }
    long query_count() const { return query_count_; }

    PureState eval(const PureState& challenge);
    DensityMatrix eval(const DensityMatrix& challenge);

    // test-only peek used by oracles that need the hidden map
    const Matrix& hidden_unitary() const { return unitary_; }

private:
    Matrix unitary_;
    long query_count_ = 0;
};

struct CRPRecord {
    PureState challenge;
    PureState response;
    int copies = 1;
};

struct CRPDatabase {
    std::vector<CRPRecord> records;

    std::string to_csv() const;
    static CRPDatabase from_csv(const std::string& text);
};

// Soundness bound of the identification protocol with N distinct challenges,
// M copies each, against an adversary whose best response fidelity is f_adv:
//   swap: ((1 + f)/2)^{N M},  gswap: (1/(M+1) + M f/(M+1))^N.
double hrv_soundness(int n_challenges, int copies, double f_adv, TestKind kind);

enum class HrvAdversary { Honest, RandomState, SpanEmulation };

struct HrvRunStats {
    double accept_rate = 0.0;
    long trials = 0;
    double mean_response_fidelity = 0.0;
};

// Monte Carlo of the identification protocol. Haar challenges are drawn
// fresh per trial; the verifier samples M SWAP tests (or one M-copy GSWAP)
// per challenge and accepts when every test passes. The span-emulation
// adversary sees a public 2-dimensional challenge span and answers with the
// quantum emulator.
HrvRunStats run_hrv(UqPUF& puf, int n_challenges, int copies, TestKind kind,
                    HrvAdversary adversary, long trials, std::uint64_t seed);

// Two-stage classical verification of SWAP outcome bits. test1: all
// non-trap positions read 0. test2: the 1-count over the trap positions is
// within delta_er of half the trap count.
int cver(const std::vector<int>& bits, const std::set<int>& traps, int delta_er);

struct LrvRunStats {
    double accept_rate = 0.0;
    long trials = 0;
};

// Honest completeness Monte Carlo of the classical-verification protocol:
// valid responses answer 0 deterministically, traps give unbiased coin
// flips. delta_er < 0 selects the default N/4 tolerance.
LrvRunStats run_lrv_honest(int n, long trials, std::uint64_t seed, int delta_er = -1);

enum class ClassicalStrategy { Independent, GlobalOptimal };

struct ClassicalAttackResult {
    double probability = 0.0;
    bool rounded = false;  // N not divisible by 4: counts were rounded
};

// Acceptance probability of a classical adversary against cver. The
// independent strategy guesses bits iid with P[0] = alpha; the global
// strategy plays an optimal-weight string.
ClassicalAttackResult classical_attack_prob(int n, int delta_er, ClassicalStrategy strategy,
                                            double alpha = 0.75);

// Exhaustive enumeration over all strings and trap placements (small N):
// best single-string acceptance probability.
double classical_attack_bruteforce(int n, int delta_er);

struct GeneralTrapResult {
    double probability = 0.0;
    bool rounded = false;
};

// Hidden trap fraction: verifier marks (1-p)N trap positions. Success of the
// optimal classical string including the 1/(N/2+1) guess of the 1-count.
GeneralTrapResult general_trap_prob(int n, double p);
// Exact average of the conditional success term over the uniform trap count;
// approaches 6/(N(N+2)).
double general_trap_average(int n);

// --- hybrid construction -------------------------------------------------

struct HPUFModel {
    double p = 0.5;  // per-bit randomness bias of the classical function
    int m = 1;       // qubits per half-response
    int q = 1;       // adversary copy/query budget
};

// Conjugate coding of (value, basis) tuples: (0,0)->|0>, (1,0)->|1>,
// (0,1)->|+>, (1,1)->|->.
std::vector<PureState> hpuf_encode(const std::vector<std::pair<int, int>>& bit_pairs);

// Optimal probability of extracting the value bit from one encoded qubit of
// a p-biased function: Helstrom between the two basis mixtures with priors
// (p, 1-p).
double hpuf_guess_prob(double p);
// The two analytic upper bounds on the guess probability, clipped at one:
// p(1 + sqrt(p^2 + (1-p)^2)) and p(1 + sqrt(2) p).
double hpuf_guess_bound_tight(double p);
double hpuf_guess_bound_sqrt2(double p);
// Forgery bound p_classic * (p (1 + sqrt(2) p))^{2 m q}.
double hpuf_forgery_bound(double p, int m, int q, double p_classic);

enum class HlpufAdversary { Honest, InterceptMeasure, ForwardBlind };

struct HlpufRoundResult {
    bool client_accept = false;  // the lock released the second half
    bool server_accept = false;
    std::vector<int> eve_extracted_values;  // per qubit of the first half
    std::vector<int> eve_extracted_bases;
    int eve_correct_bits = 0;  // extracted (value, basis) pairs fully right
};

// One authentication round of the locked construction. The intercept
// adversary holds model.q copies of the first-half state and runs the
// measure-until-the-bases-split extraction on each qubit, then forwards its
// reconstruction; the forward-blind adversary supplies nothing and the lock
// answers bottom.
HlpufRoundResult hlpuf_round(const HPUFModel& model, HlpufAdversary adversary,
                             std::uint64_t seed);

}  // namespace qcl
