#ifndef OL_AVERAGING_HPP
#define OL_AVERAGING_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <vector>

namespace ol {

/// How to evaluate an average over a finite index space: full enumeration
/// (subject to an elementary-term budget) or seeded Monte Carlo.
struct AveragingPlan {
    enum class Mode { Exact, MonteCarlo };

    Mode mode = Mode::Exact;
    std::uint64_t samples = 100000;        // MonteCarlo only
    std::uint64_t seed = 0;
    std::optional<double> target_rel_se;   // early stop at se/|mean| <= target
    std::uint64_t budget = 100000000;      // exact-mode elementary terms
    int threads = 1;

    static AveragingPlan exact();
    static AveragingPlan monte_carlo(std::uint64_t samples, std::uint64_t seed);
};

struct Estimate {
    double mean = 0.0;
    double se = 0.0; // 0 in exact mode
    std::uint64_t n_samples = 0;
    bool exact = true;
    bool se_approximate = false; // delta-method propagation through a root
};

/// Deterministic random stream. Wraps mt19937_64 with self-contained
/// conversions so results do not depend on the standard library's
/// distribution implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }
    /// uniform in [0, 1) with 53 random bits
    double next_unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
    /// unbiased uniform integer in [0, n)
    std::uint64_t below(std::uint64_t n);
    /// standard normal via Box-Muller (two uniforms per draw, no caching)
    double next_gaussian();
    /// Fisher-Yates shuffle
    void shuffle(std::span<int> v);
    /// random sign vector, one bit per entry
    void signs(std::span<int> s);

private:
    std::mt19937_64 gen_;
};

/// Stable derivation of per-stream seeds from a master seed.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream);

/// Sum with a fixed pairwise reduction tree.
double pairwise_sum(std::span<const double> xs);

/// Writes leaf values for indices [begin, end) into out. Must create any
/// cursor state locally: blocks are evaluated concurrently.
using BlockEval = std::function<void(std::uint64_t begin, std::uint64_t end, double* out)>;

/// Mean of `count` leaves evaluated block-wise with a fixed reduction tree;
/// identical output for any thread count.
double exact_mean(std::uint64_t count, const BlockEval& eval, int threads);

struct McMoments {
    double mean = 0.0;
    double se = 0.0;
    std::uint64_t n = 0;
};

/// Monte Carlo mean of `one(rng)` under the plan. Each fixed-size block runs
/// on its own derived stream; the early-stop decision scans blocks in order,
/// so the result is bit-identical for any thread count.
McMoments mc_mean(const AveragingPlan& plan, const std::function<double(Rng&)>& one);

std::uint64_t factorial(int n); // throws above 20!
std::vector<int> nth_permutation(int n, std::uint64_t index);

/// Average of f over the symmetric group S_n, exact (lexicographic
/// enumeration) or Monte Carlo per the plan. The permutation is passed
/// 0-based: entry i holds pi(i+1)-1.
Estimate average_over_perms(const std::function<double(std::span<const int>)>& f, int n,
                            const AveragingPlan& plan);

} // namespace ol

#endif
