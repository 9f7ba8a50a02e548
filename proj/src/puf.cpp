#include "qcl/puf.hpp"

#include "qcl/cloning.hpp"
#include "qcl/emulation.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace qcl {

UqPUF::UqPUF(Eigen::Index dim, std::uint64_t seed) {
    Rng rng(seed);
    unitary_ = haar_unitary(dim, rng);
}

PureState UqPUF::eval(const PureState& challenge) {
    if (challenge.dim() != dim()) throw std::invalid_argument("challenge dimension mismatch");
    ++query_count_;
    return PureState(Vector(unitary_ * challenge.amplitudes()));
}

DensityMatrix UqPUF::eval(const DensityMatrix& challenge) {
    if (challenge.dim() != dim()) throw std::invalid_argument("challenge dimension mismatch");
    ++query_count_;
    return DensityMatrix(unitary_ * challenge.entries() * unitary_.adjoint());
}

std::string CRPDatabase::to_csv() const {
    std::ostringstream os;
    for (const auto& r : records)
        os << r.copies << ',' << r.challenge.to_csv() << ',' << r.response.to_csv() << '\n';
    return os.str();
}

CRPDatabase CRPDatabase::from_csv(const std::string& text) {
    CRPDatabase db;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto first = line.find(',');
        const int copies = std::stoi(line.substr(0, first));
        const std::string rest = line.substr(first + 1);
        // challenge and response halves have equal length
        std::vector<std::string> toks;
        std::istringstream ls(rest);
        std::string tok;
        while (std::getline(ls, tok, ',')) toks.push_back(tok);
        if (toks.size() % 4 != 0) throw std::invalid_argument("malformed CRP row");
        const std::size_t half = toks.size() / 2;
        auto join = [&](std::size_t b, std::size_t e) {
            std::string s;
            for (std::size_t i = b; i < e; ++i) {
                if (i > b) s += ',';
                s += toks[i];
            }
            return s;
        };
        db.records.push_back({PureState::from_csv(join(0, half)),
                              PureState::from_csv(join(half, toks.size())), copies});
    }
    return db;
}

double hrv_soundness(int n_challenges, int copies, double f_adv, TestKind kind) {
    if (n_challenges < 1 || copies < 1) throw std::invalid_argument("need N, M >= 1");
    if (f_adv < 0.0 || f_adv > 1.0) throw std::out_of_range("fidelity must lie in [0,1]");
    if (kind == TestKind::Swap)
        return std::pow(0.5 * (1.0 + f_adv), static_cast<double>(n_challenges) * copies);
    return std::pow(1.0 / (copies + 1) + static_cast<double>(copies) * f_adv / (copies + 1),
                    n_challenges);
}

HrvRunStats run_hrv(UqPUF& puf, int n_challenges, int copies, TestKind kind,
                    HrvAdversary adversary, long trials, std::uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("need at least one trial");
    Rng rng(seed);
    const Eigen::Index d = puf.dim();

    // public span for the emulation adversary, with the reference chosen as
    // the equal-weight span vector
    Vector e1 = haar_state(d, rng).amplitudes();
    Vector e2 = haar_state(d, rng).amplitudes();
    e2 -= e1.dot(e2) * e1;
    e2 /= e2.norm();
    EmulationSamples leak;
    if (adversary == HrvAdversary::SpanEmulation) {
        Vector ref = (e1 + e2) / std::sqrt(2.0);
        const PureState s1(e1), sr{PureState(ref)};
        leak.inputs = {s1, sr};
        leak.outputs = {puf.eval(s1), puf.eval(sr)};
        leak.reference_index = 1;
    }

    long accepted = 0;
    double fid_sum = 0.0;
    long fid_count = 0;
    for (long t = 0; t < trials; ++t) {
        bool pass = true;
        for (int i = 0; i < n_challenges && pass; ++i) {
            PureState challenge = haar_state(d, rng);
            if (adversary == HrvAdversary::SpanEmulation) {
                const double ang = rng.uniform(0.0, 2.0 * std::numbers::pi);
                Vector v = std::cos(ang) * e1 + std::sin(ang) * e2;
                challenge = PureState(std::move(v));
            }
            const PureState truth = puf.eval(challenge);
            DensityMatrix response = [&]() {
                switch (adversary) {
                    case HrvAdversary::Honest:
                        return DensityMatrix(truth);
                    case HrvAdversary::RandomState:
                        return DensityMatrix(haar_state(d, rng));
                    case HrvAdversary::SpanEmulation: {
                        const QEResult qe = run_qe(leak, challenge);
                        if (!qe.output_state) return DensityMatrix::maximally_mixed(truth.num_qubits());
                        return *qe.output_state;
                    }
                }
                throw std::logic_error("unknown adversary");
            }();
            const double f = fidelity(response, truth);
            fid_sum += f;
            ++fid_count;
            if (kind == TestKind::Swap) {
                const double p = 0.5 + 0.5 * f;
                for (int j = 0; j < copies && pass; ++j)
                    if (!rng.bernoulli(p)) pass = false;
            } else {
                const double p = 1.0 / (copies + 1) + static_cast<double>(copies) * f / (copies + 1);
                if (!rng.bernoulli(p)) pass = false;
            }
        }
        if (pass) ++accepted;
    }
    HrvRunStats st;
    st.trials = trials;
    st.accept_rate = static_cast<double>(accepted) / trials;
    st.mean_response_fidelity = fid_count ? fid_sum / fid_count : 0.0;
    return st;
}

int cver(const std::vector<int>& bits, const std::set<int>& traps, int delta_er) {
    if (delta_er < 0) throw std::invalid_argument("tolerance must be nonnegative");
    const int n = static_cast<int>(bits.size());
    for (int t : traps)
        if (t < 0 || t >= n) throw std::out_of_range("trap index out of range");
    for (int b : bits)
        if (b != 0 && b != 1) throw std::invalid_argument("bits must be 0/1");
    // test1: every non-trap position must read 0
    for (int i = 0; i < n; ++i)
        if (!traps.count(i) && bits[i] != 0) return 0;
    // test2: the trap 1-count sits within delta_er of half the traps
    int ones = 0;
    for (int t : traps) ones += bits[t];
    const double target = static_cast<double>(traps.size()) / 2.0;
    return std::abs(ones - target) <= static_cast<double>(delta_er) ? 1 : 0;
}

LrvRunStats run_lrv_honest(int n, long trials, std::uint64_t seed, int delta_er) {
    if (n < 2 || n % 2 != 0) throw std::invalid_argument("N must be even and >= 2");
    if (delta_er < 0) delta_er = n / 4;  // the SWAP-statistics default tolerance
    Rng rng(seed);
    long accepted = 0;
    for (long t = 0; t < trials; ++t) {
        // traps: a uniformly random half of the positions
        std::vector<int> idx(n);
        for (int i = 0; i < n; ++i) idx[i] = i;
        for (int i = n - 1; i > 0; --i) std::swap(idx[i], idx[rng.integer(i + 1)]);
        std::set<int> traps(idx.begin(), idx.begin() + n / 2);
        std::vector<int> bits(n, 0);
        for (int i = 0; i < n; ++i) {
            if (traps.count(i))
                bits[i] = rng.bit();  // orthogonal trap: SWAP accepts half the time
            else
                bits[i] = 0;  // valid response: SWAP always accepts
        }
        accepted += cver(bits, traps, delta_er);
    }
    return {static_cast<double>(accepted) / trials, trials};
}

namespace {

double log_binom(double n, double k) {
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

}  // namespace

ClassicalAttackResult classical_attack_prob(int n, int delta_er, ClassicalStrategy strategy,
                                            double alpha) {
    if (n < 4) throw std::invalid_argument("N must be at least 4");
    if (delta_er < 0) throw std::invalid_argument("tolerance must be nonnegative");
    ClassicalAttackResult res;
    res.rounded = (n % 4 != 0);
    const int traps = n / 2;
    const int target = static_cast<int>(std::lround(traps / 2.0));

    if (strategy == ClassicalStrategy::Independent) {
        if (alpha <= 0.0 || alpha >= 1.0) throw std::out_of_range("alpha must lie in (0,1)");
        // test1: all n/2 non-trap bits are 0; test2: trap 1-count in the window
        double p = 0.0;
        for (int x = std::max(0, target - delta_er); x <= std::min(traps, target + delta_er); ++x)
            p += std::exp(log_binom(traps, x) + x * std::log(1.0 - alpha) +
                          (traps - x) * std::log(alpha));
        res.probability = std::pow(alpha, traps) * p;
        return res;
    }
    // global strategy: a string whose 1-count c1 is inside the accepted window
    // passes iff all its ones fall on trap positions
    double p = 0.0;
    for (int c1 = std::max(0, target - delta_er); c1 <= std::min(traps, target + delta_er); ++c1)
        p += std::exp(log_binom(traps, c1) - log_binom(n, c1));
    res.probability = p;
    return res;
}

double classical_attack_bruteforce(int n, int delta_er) {
    if (n < 4 || n > 16 || n % 2 != 0) throw std::invalid_argument("brute force needs small even N");
    const int traps_count = n / 2;
    // enumerate all trap placements once
    std::vector<std::set<int>> placements;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        if (__builtin_popcount(mask) != traps_count) continue;
        std::set<int> t;
        for (int i = 0; i < n; ++i)
            if (mask & (1u << i)) t.insert(i);
        placements.push_back(std::move(t));
    }
    double best = 0.0;
    for (std::uint32_t smask = 0; smask < (1u << n); ++smask) {
        std::vector<int> bits(n);
        for (int i = 0; i < n; ++i) bits[i] = (smask >> i) & 1;
        long wins = 0;
        for (const auto& t : placements) wins += cver(bits, t, delta_er);
        best = std::max(best, static_cast<double>(wins) / placements.size());
    }
    return best;
}

GeneralTrapResult general_trap_prob(int n, double p) {
    if (p < 0.0 || p > 1.0) throw std::out_of_range("p must lie in [0,1]");
    if (n < 2) throw std::invalid_argument("N must be at least 2");
    GeneralTrapResult res;
    const double np_raw = p * n;
    const double np = std::round(np_raw);
    res.rounded = std::abs(np - np_raw) > 1e-9;
    const double traps = n - np;  // (1-p) N trap positions
    const double guess = 1.0 / (n / 2.0 + 1.0);
    if (traps <= 0.0) {
        res.probability = guess;  // no traps: the all-zero string always passes
        return res;
    }
    res.probability =
        guess * std::exp(log_binom(traps, traps / 2.0) - log_binom(n, traps / 2.0));
    return res;
}

double general_trap_average(int n) {
    if (n < 2) throw std::invalid_argument("N must be at least 2");
    double sum = 0.0;
    for (int k = 0; k <= n; ++k) {
        // (N-k)! ((N+k)/2)! / (N! ((N-k)/2)!)
        const double lg = std::lgamma(n - k + 1.0) + std::lgamma((n + k) / 2.0 + 1.0) -
                          std::lgamma(n + 1.0) - std::lgamma((n - k) / 2.0 + 1.0);
        sum += std::exp(lg);
    }
    return 2.0 / (static_cast<double>(n) * (n + 2)) * sum;
}

std::vector<PureState> hpuf_encode(const std::vector<std::pair<int, int>>& bit_pairs) {
    std::vector<PureState> out;
    out.reserve(bit_pairs.size());
    for (auto [value, basis] : bit_pairs) {
        if ((value != 0 && value != 1) || (basis != 0 && basis != 1))
            throw std::invalid_argument("bit pairs must be 0/1");
        Vector v(2);
        const double r = 1.0 / std::sqrt(2.0);
        if (basis == 0)
            v << (value == 0 ? 1.0 : 0.0), (value == 0 ? 0.0 : 1.0);
        else
            v << r, (value == 0 ? r : -r);
        out.emplace_back(std::move(v));
    }
    return out;
}

namespace {

std::pair<DensityMatrix, DensityMatrix> hpuf_mixtures(double p) {
    const auto states = hpuf_encode({{0, 0}, {1, 0}, {0, 1}, {1, 1}});
    const Matrix rho0 = p * states[0].projector() + (1.0 - p) * states[2].projector();
    const Matrix rho1 = p * states[1].projector() + (1.0 - p) * states[3].projector();
    return {DensityMatrix(rho0), DensityMatrix(rho1)};
}

}  // namespace

double hpuf_guess_prob(double p) {
    if (p < 0.5 || p > 1.0) throw std::out_of_range("p must lie in [1/2, 1]");
    auto [rho0, rho1] = hpuf_mixtures(p);
    return helstrom_prob(rho0, rho1, p, 1.0 - p);
}

double hpuf_guess_bound_tight(double p) {
    if (p < 0.5 || p > 1.0) throw std::out_of_range("p must lie in [1/2, 1]");
    return std::min(1.0, p * (1.0 + std::sqrt(p * p + (1.0 - p) * (1.0 - p))));
}

double hpuf_guess_bound_sqrt2(double p) {
    if (p < 0.5 || p > 1.0) throw std::out_of_range("p must lie in [1/2, 1]");
    return std::min(1.0, p * (1.0 + std::sqrt(2.0) * p));
}

double hpuf_forgery_bound(double p, int m, int q, double p_classic) {
    if (m < 1 || q < 1) throw std::invalid_argument("need m, q >= 1");
    if (p_classic < 0.0 || p_classic > 1.0) throw std::out_of_range("p_classic must lie in [0,1]");
    return p_classic * std::pow(hpuf_guess_bound_sqrt2(p), 2.0 * m * q);
}

HlpufRoundResult hlpuf_round(const HPUFModel& model, HlpufAdversary adversary,
                             std::uint64_t seed) {
    if (model.p < 0.5 || model.p > 1.0) throw std::out_of_range("p must lie in [1/2, 1]");
    if (model.m < 1 || model.q < 1) throw std::invalid_argument("need m, q >= 1");
    Rng rng(seed);

    // fresh CRP: 4m response bits of the biased classical function, split in
    // two halves of (value, basis) tuples
    auto draw_half = [&]() {
        std::vector<std::pair<int, int>> tuples(model.m);
        for (auto& t : tuples)
            t = {rng.bernoulli(model.p) ? 0 : 1, rng.bernoulli(model.p) ? 0 : 1};
        return tuples;
    };
    const auto half1 = draw_half();
    const auto half2 = draw_half();

    HlpufRoundResult res;
    if (adversary == HlpufAdversary::Honest) {
        res.client_accept = true;  // the exact state always passes the basis check
        res.server_accept = true;
        return res;
    }
    if (adversary == HlpufAdversary::ForwardBlind) {
        // nothing valid reaches the lock; the construction answers bottom
        res.client_accept = false;
        res.server_accept = false;
        return res;
    }

    // intercept-measure: per qubit, the adversary holds model.q copies and
    // measures Z until two consecutive outcomes differ, then reads X once
    for (int j = 0; j < model.m; ++j) {
        const auto [value, basis] = half1[j];
        auto measure_z = [&]() {
            if (basis == 0) return value;    // Z eigenstate: deterministic
            return rng.bit();                // |+/-> in Z: fair coin
        };
        auto measure_x = [&]() {
            if (basis == 1) return value;
            return rng.bit();
        };
        int z_prev = measure_z();
        int guess_basis = 0, guess_value = z_prev;
        for (int copy = 2; copy <= model.q - 1; ++copy) {
            const int z = measure_z();
            if (z != z_prev) {
                guess_basis = 1;
                guess_value = measure_x();  // spends the next copy
                break;
            }
            z_prev = z;
            guess_value = z;
        }
        res.eve_extracted_values.push_back(guess_value);
        res.eve_extracted_bases.push_back(guess_basis);
        if (guess_basis == basis && guess_value == value) ++res.eve_correct_bits;
    }

    // the adversary re-encodes its guesses and forwards them to the lock,
    // which measures in the true bases and compares against the true values
    bool lock_pass = true;
    for (int j = 0; j < model.m; ++j) {
        const auto [value, basis] = half1[j];
        const int gv = res.eve_extracted_values[j];
        const int gb = res.eve_extracted_bases[j];
        double p_match = 0.0;
        if (gb == basis)
            p_match = (gv == value) ? 1.0 : 0.0;
        else
            p_match = 0.5;  // conjugate-basis state measured in the true basis
        if (!rng.bernoulli(p_match)) lock_pass = false;
    }
    res.client_accept = lock_pass;
    // when the lock opens, the second half travels back untouched
    res.server_accept = lock_pass;
    (void)half2;
    return res;
}

}  // namespace qcl
