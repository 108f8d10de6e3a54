#include "ol/averaging.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace ol {

namespace {

constexpr std::uint64_t kBlockSize = 4096;

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

} // namespace

AveragingPlan AveragingPlan::exact() {
    AveragingPlan plan;
    plan.mode = Mode::Exact;
    return plan;
}

AveragingPlan AveragingPlan::monte_carlo(std::uint64_t samples, std::uint64_t seed) {
    AveragingPlan plan;
    plan.mode = Mode::MonteCarlo;
    plan.samples = samples;
    plan.seed = seed;
    return plan;
}

std::uint64_t Rng::below(std::uint64_t n) {
    if (n == 0)
        throw std::invalid_argument("Rng::below(0)");
    std::uint64_t threshold = -n % n; // 2^64 mod n
    for (;;) {
        std::uint64_t r = gen_();
        if (r >= threshold)
            return r % n;
    }
}

double Rng::next_gaussian() {
    double u1 = next_unit();
    double u2 = next_unit();
    while (u1 == 0.0)
        u1 = next_unit();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
}

void Rng::shuffle(std::span<int> v) {
    for (std::size_t i = v.size(); i > 1; --i) {
        std::size_t j = static_cast<std::size_t>(below(i));
        std::swap(v[i - 1], v[j]);
    }
}

void Rng::signs(std::span<int> s) {
    for (auto& e : s)
        e = (next_u64() & 1u) ? -1 : 1;
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
    std::uint64_t state = master ^ (0xD1B54A32D192ED03ULL * (stream + 1));
    std::uint64_t a = splitmix64(state);
    std::uint64_t b = splitmix64(state);
    return a ^ (b << 1);
}

double pairwise_sum(std::span<const double> xs) {
    if (xs.size() <= 16) {
        double s = 0.0;
        for (double x : xs)
            s += x;
        return s;
    }
    std::size_t half = xs.size() / 2;
    return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

double exact_mean(std::uint64_t count, const BlockEval& eval, int threads) {
    if (count == 0)
        throw std::invalid_argument("exact_mean over an empty space");
    std::uint64_t n_blocks = (count + kBlockSize - 1) / kBlockSize;
    std::vector<double> block_sums(n_blocks);

    auto run_block = [&](std::uint64_t b) {
        std::uint64_t begin = b * kBlockSize;
        std::uint64_t end = std::min(count, begin + kBlockSize);
        std::vector<double> leaves(end - begin);
        eval(begin, end, leaves.data());
        block_sums[b] = pairwise_sum(leaves);
    };

    int workers = std::max(1, threads);
    if (workers == 1 || n_blocks == 1) {
        for (std::uint64_t b = 0; b < n_blocks; ++b)
            run_block(b);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (std::uint64_t b = static_cast<std::uint64_t>(w); b < n_blocks;
                     b += static_cast<std::uint64_t>(workers))
                    run_block(b);
            });
        }
        for (auto& t : pool)
            t.join();
    }
    return pairwise_sum(block_sums) / static_cast<double>(count);
}

McMoments mc_mean(const AveragingPlan& plan, const std::function<double(Rng&)>& one) {
    if (plan.samples == 0)
        throw std::invalid_argument("MonteCarlo plan needs samples > 0");
    std::uint64_t n_blocks = (plan.samples + kBlockSize - 1) / kBlockSize;
    std::vector<double> sums(n_blocks), sumsqs(n_blocks);
    std::vector<std::uint64_t> counts(n_blocks);

    auto run_block = [&](std::uint64_t b) {
        std::uint64_t begin = b * kBlockSize;
        std::uint64_t end = std::min(plan.samples, begin + kBlockSize);
        Rng rng(derive_seed(plan.seed, b));
        std::vector<double> vals(end - begin), sqs(end - begin);
        for (std::uint64_t i = 0; i + begin < end; ++i) {
            double v = one(rng);
            vals[i] = v;
            sqs[i] = v * v;
        }
        sums[b] = pairwise_sum(vals);
        sumsqs[b] = pairwise_sum(sqs);
        counts[b] = end - begin;
    };

    int workers = std::max(1, plan.threads);
    std::uint64_t done = 0;      // blocks evaluated
    std::uint64_t accepted = 0;  // blocks accepted by the in-order early-stop scan
    double acc_sum = 0.0, acc_sumsq = 0.0;
    std::uint64_t acc_n = 0;
    bool stopped = false;

    auto moments = [&](double sum, double sumsq, std::uint64_t m) {
        McMoments r;
        r.n = m;
        r.mean = sum / static_cast<double>(m);
        if (m > 1) {
            double var = (sumsq - sum * sum / static_cast<double>(m)) / static_cast<double>(m - 1);
            r.se = var > 0.0 ? std::sqrt(var / static_cast<double>(m)) : 0.0;
        }
        return r;
    };

    while (done < n_blocks && !stopped) {
        std::uint64_t wave = std::min<std::uint64_t>(n_blocks - done, static_cast<std::uint64_t>(workers));
        if (wave == 1 || workers == 1) {
            run_block(done);
        } else {
            std::vector<std::thread> pool;
            for (std::uint64_t j = 0; j < wave; ++j)
                pool.emplace_back(run_block, done + j);
            for (auto& t : pool)
                t.join();
        }
        done += wave;
        // the stop decision consumes blocks strictly in index order, so it
        // cannot depend on how many blocks a wave computed
        while (accepted < done && !stopped) {
            acc_sum += sums[accepted];
            acc_sumsq += sumsqs[accepted];
            acc_n += counts[accepted];
            ++accepted;
            if (plan.target_rel_se && acc_n > 1) {
                McMoments m = moments(acc_sum, acc_sumsq, acc_n);
                if (std::abs(m.mean) > 0.0 && m.se / std::abs(m.mean) <= *plan.target_rel_se)
                    stopped = true;
            }
        }
    }
    // straight summation of block partials keeps the early-stopped prefix
    // identical to what a full run accumulates for the same blocks
    return moments(acc_sum, acc_sumsq, acc_n);
}

std::uint64_t factorial(int n) {
    if (n < 0 || n > 20)
        throw std::invalid_argument("factorial defined here for 0 <= n <= 20");
    std::uint64_t f = 1;
    for (int i = 2; i <= n; ++i)
        f *= static_cast<std::uint64_t>(i);
    return f;
}

std::vector<int> nth_permutation(int n, std::uint64_t index) {
    if (n < 1)
        throw std::invalid_argument("nth_permutation needs n >= 1");
    std::vector<int> pool(static_cast<std::size_t>(n));
    std::iota(pool.begin(), pool.end(), 0);
    std::vector<int> out;
    out.reserve(pool.size());
    std::uint64_t rem = index;
    for (int k = n; k > 0; --k) {
        std::uint64_t f = factorial(k - 1);
        std::uint64_t digit = rem / f;
        rem %= f;
        if (digit >= pool.size())
            throw std::invalid_argument("permutation index out of range");
        out.push_back(pool[static_cast<std::size_t>(digit)]);
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(digit));
    }
    return out;
}

Estimate average_over_perms(const std::function<double(std::span<const int>)>& f, int n,
                            const AveragingPlan& plan) {
    if (n < 1)
        throw std::invalid_argument("average_over_perms needs n >= 1");

    if (plan.mode == AveragingPlan::Mode::Exact) {
        if (n > 20 || factorial(n) > plan.budget) {
            std::ostringstream os;
            os << "exact enumeration of " << n << "! permutations exceeds the budget of "
               << plan.budget << " terms; use a MonteCarlo plan";
            throw std::runtime_error(os.str());
        }
        std::uint64_t count = factorial(n);
        auto eval = [&, n](std::uint64_t begin, std::uint64_t end, double* out) {
            std::vector<int> perm = nth_permutation(n, begin);
            for (std::uint64_t i = begin; i < end; ++i) {
                out[i - begin] = f(perm);
                std::next_permutation(perm.begin(), perm.end());
            }
        };
        Estimate est;
        est.mean = exact_mean(count, eval, plan.threads);
        est.n_samples = count;
        est.exact = true;
        return est;
    }

    auto one = [&, n](Rng& rng) {
        std::vector<int> perm(static_cast<std::size_t>(n));
        std::iota(perm.begin(), perm.end(), 0);
        rng.shuffle(perm);
        return f(perm);
    };
    McMoments m = mc_mean(plan, one);
    Estimate est;
    est.mean = m.mean;
    est.se = m.se;
    est.n_samples = m.n;
    est.exact = false;
    return est;
}

} // namespace ol
