#include "freqlab/collectives.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "freqlab/rng.hpp"

namespace freqlab::collectives {

LabelSet::LabelSet(std::vector<std::string> labels) : labels_(std::move(labels)) {
    if (labels_.empty()) fail(Errc::BadConfig, "label set must be non-empty");
    for (LabelIndex i = 0; i < labels_.size(); ++i) {
        if (!index_.emplace(labels_[i], i).second)
            fail(Errc::BadConfig, "duplicate label '" + labels_[i] + "'");
    }
}

LabelIndex LabelSet::index_of(std::string_view s) const {
    auto it = index_.find(s);
    if (it == index_.end()) fail(Errc::UnknownLabel, "label '" + std::string(s) + "'");
    return it->second;
}

Collective::Collective(LabelSet labels, std::vector<LabelIndex> prefix)
    : labels_(std::make_shared<const LabelSet>(std::move(labels))), prefix_(std::move(prefix)) {
    for (LabelIndex v : prefix_) {
        if (v >= labels_->size()) fail(Errc::UnknownLabel, "prefix index out of label set");
    }
}

Collective::Collective(LabelSet labels, Generator generator, std::uint64_t seed,
                       std::uint64_t length)
    : labels_(std::make_shared<const LabelSet>(std::move(labels))),
      generator_(std::move(generator)),
      seed_(seed) {
    prefix_.resize(length);
    for (std::uint64_t i = 0; i < length; ++i) {
        const LabelIndex v = generator_(seed_, i);
        if (v >= labels_->size()) fail(Errc::UnknownLabel, "generator produced out-of-set label");
        prefix_[i] = v;
    }
}

Collective::Collective(std::shared_ptr<const LabelSet> labels, std::vector<LabelIndex> prefix,
                       Generator generator, std::uint64_t seed)
    : labels_(std::move(labels)),
      prefix_(std::move(prefix)),
      generator_(std::move(generator)),
      seed_(seed) {}

Collective Collective::extended_to(std::uint64_t n) const {
    if (n <= size()) {
        std::vector<LabelIndex> head(prefix_.begin(), prefix_.begin() + n);
        return Collective(labels_, std::move(head), generator_, seed_);
    }
    if (!generator_) fail(Errc::LengthMismatch, "no generator to extend the prefix");
    std::vector<LabelIndex> out(prefix_.begin(), prefix_.end());
    out.resize(n);
    for (std::uint64_t i = size(); i < n; ++i) out[i] = generator_(seed_, i);
    return Collective(labels_, std::move(out), generator_, seed_);
}

Collective Collective::from_symbols(LabelSet labels, const std::vector<std::string>& symbols) {
    std::vector<LabelIndex> prefix;
    prefix.reserve(symbols.size());
    for (const auto& s : symbols) prefix.push_back(labels.index_of(s));
    return Collective(std::move(labels), std::move(prefix));
}

FrequencyTable::FrequencyTable(const LabelSet& labels) : counts_(labels.size(), 0) {}

void FrequencyTable::merge(const FrequencyTable& other) {
    if (other.counts_.size() != counts_.size())
        fail(Errc::LengthMismatch, "frequency tables over different label sets");
    for (std::size_t i = 0; i < counts_.size(); ++i) counts_[i] += other.counts_[i];
    total_ += other.total_;
}

double FrequencyTable::frequency(LabelIndex i) const {
    if (total_ == 0) fail(Errc::EmptyPrefix, "frequency of an empty table");
    return static_cast<double>(counts_.at(i)) / static_cast<double>(total_);
}

Rational FrequencyTable::frequency_exact(LabelIndex i) const {
    if (total_ == 0) fail(Errc::EmptyPrefix, "frequency of an empty table");
    return Rational(static_cast<std::int64_t>(counts_.at(i)), static_cast<std::int64_t>(total_));
}

std::vector<double> FrequencyTable::frequencies() const {
    std::vector<double> out(counts_.size());
    for (std::size_t i = 0; i < counts_.size(); ++i)
        out[i] = static_cast<double>(counts_[i]) / static_cast<double>(total_);
    return out;
}

namespace {

FrequencyTable count_range(const Collective& c, std::uint64_t begin, std::uint64_t end) {
    FrequencyTable t(c.labels());
    const auto prefix = c.prefix();
    for (std::uint64_t i = begin; i < end; ++i) t.add(prefix[i]);
    return t;
}

constexpr std::uint64_t kParallelThreshold = 1 << 18;

}  // namespace

FrequencyTable frequency_table(const Collective& c, std::uint64_t n) {
    if (n > c.size()) throw std::out_of_range("frequency_table: n exceeds realized prefix");
    if (n < kParallelThreshold) return count_range(c, 0, n);

    const unsigned workers = std::max(1u, std::thread::hardware_concurrency());
    const std::uint64_t chunk = (n + workers - 1) / workers;
    std::vector<FrequencyTable> parts(workers, FrequencyTable(c.labels()));
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        const std::uint64_t b = std::min<std::uint64_t>(n, w * chunk);
        const std::uint64_t e = std::min<std::uint64_t>(n, b + chunk);
        threads.emplace_back([&c, &parts, w, b, e] { parts[w] = count_range(c, b, e); });
    }
    for (auto& t : threads) t.join();
    FrequencyTable out(c.labels());
    for (const auto& p : parts) out.merge(p);
    return out;
}

std::uint64_t subset_count(const Collective& c, const std::vector<std::string>& subset,
                           std::uint64_t n) {
    if (n > c.size()) throw std::out_of_range("subset_count: n exceeds realized prefix");
    std::vector<bool> member(c.labels().size(), false);
    for (const auto& s : subset) member[c.labels().index_of(s)] = true;
    std::uint64_t count = 0;
    const auto prefix = c.prefix();
    for (std::uint64_t i = 0; i < n; ++i) count += member[prefix[i]] ? 1 : 0;
    return count;
}

double relative_frequency(const Collective& c, const std::vector<std::string>& subset,
                          std::uint64_t n) {
    if (n == 0) fail(Errc::EmptyPrefix, "relative frequency over an empty prefix");
    return static_cast<double>(subset_count(c, subset, n)) / static_cast<double>(n);
}

Rational relative_frequency_exact(const Collective& c, const std::vector<std::string>& subset,
                                  std::uint64_t n) {
    if (n == 0) fail(Errc::EmptyPrefix, "relative frequency over an empty prefix");
    return Rational(static_cast<std::int64_t>(subset_count(c, subset, n)),
                    static_cast<std::int64_t>(n));
}

Schedule Schedule::geometric(std::uint64_t start, std::uint64_t ratio, std::uint32_t steps) {
    Schedule s;
    std::uint64_t n = start;
    for (std::uint32_t k = 0; k < steps; ++k, n *= ratio) s.checkpoints.push_back(n);
    s.validate();
    return s;
}

Schedule Schedule::geometric_to(std::uint64_t n, std::uint64_t ratio, std::uint32_t steps) {
    Schedule s;
    std::uint64_t v = n;
    for (std::uint32_t k = 0; k < steps && v >= 1; ++k, v /= ratio) s.checkpoints.push_back(v);
    std::reverse(s.checkpoints.begin(), s.checkpoints.end());
    s.checkpoints.erase(std::unique(s.checkpoints.begin(), s.checkpoints.end()),
                        s.checkpoints.end());
    s.validate();
    return s;
}

void Schedule::validate() const {
    if (checkpoints.size() < 2) fail(Errc::BadSchedule, "need at least two checkpoints");
    for (std::size_t i = 1; i < checkpoints.size(); ++i) {
        if (checkpoints[i] <= checkpoints[i - 1])
            fail(Errc::BadSchedule, "checkpoints must be strictly increasing");
    }
    if (checkpoints.front() == 0) fail(Errc::BadSchedule, "checkpoints must be positive");
}

ToleranceFn inverse_sqrt_tolerance(double c) {
    return [c](std::uint64_t n) { return c / std::sqrt(static_cast<double>(n)); };
}

StabilizationVerdict stabilization_audit(const Collective& c, const Schedule& schedule,
                                         const ToleranceFn& tolerance) {
    schedule.validate();
    const std::uint64_t needed = schedule.final_checkpoint();
    const Collective seq = c.size() >= needed ? c : c.extended_to(needed);

    StabilizationVerdict verdict;
    FrequencyTable running(seq.labels());
    const auto prefix = seq.prefix();
    std::uint64_t pos = 0;
    for (std::uint64_t n : schedule.checkpoints) {
        for (; pos < n; ++pos) running.add(prefix[pos]);
        verdict.checkpoints.push_back({n, running.frequencies()});
    }

    verdict.stabilized = true;
    for (std::size_t k = 0; k + 1 < verdict.checkpoints.size() && verdict.stabilized; ++k) {
        const auto& a = verdict.checkpoints[k];
        const auto& b = verdict.checkpoints[k + 1];
        const double tau = tolerance(a.n);
        for (LabelIndex l = 0; l < a.frequencies.size(); ++l) {
            if (std::fabs(a.frequencies[l] - b.frequencies[l]) > tau) {
                verdict.stabilized = false;
                verdict.witness = StabilizationWitness{
                    l, a.n, b.n, a.frequencies[l], b.frequencies[l], tau};
                break;
            }
        }
    }
    if (verdict.stabilized) verdict.probabilities = verdict.checkpoints.back().frequencies;
    return verdict;
}

Collective make_iid(LabelSet labels, std::vector<double> probabilities, std::uint64_t n,
                    std::uint64_t seed) {
    if (probabilities.size() != labels.size())
        fail(Errc::LengthMismatch, "probability vector size must match label set");
    std::vector<double> cumulative(probabilities.size());
    double acc = 0;
    for (std::size_t i = 0; i < probabilities.size(); ++i) {
        if (probabilities[i] < 0) fail(Errc::BadConfig, "negative probability");
        acc += probabilities[i];
        cumulative[i] = acc;
    }
    if (std::fabs(acc - 1.0) > 1e-9) fail(Errc::BadConfig, "probabilities must sum to 1");
    cumulative.back() = 1.0;

    auto gen = [cumulative](std::uint64_t s, std::uint64_t i) -> LabelIndex {
        const double u = stream_uniform(s, i);
        const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
        return static_cast<LabelIndex>(std::min<std::size_t>(
            static_cast<std::size_t>(it - cumulative.begin()), cumulative.size() - 1));
    };
    return Collective(std::move(labels), std::move(gen), seed, n);
}

Collective make_uniform_iid(LabelSet labels, std::uint64_t n, std::uint64_t seed) {
    std::vector<double> p(labels.size(), 1.0 / static_cast<double>(labels.size()));
    return make_iid(std::move(labels), std::move(p), n, seed);
}

Collective make_oscillating(LabelSet two_labels, std::uint64_t block_growth, std::uint64_t n) {
    if (two_labels.size() != 2) fail(Errc::BadConfig, "oscillating generator needs two labels");
    if (block_growth < 2) fail(Errc::BadConfig, "block growth ratio must be >= 2");
    const std::uint64_t r = block_growth;
    // Block j spans positions [(r^j - 1)/(r - 1), (r^{j+1} - 1)/(r - 1)),
    // labelled by parity of j.
    auto gen = [r](std::uint64_t, std::uint64_t index) -> LabelIndex {
        std::uint64_t block_start = 0, block_len = 1, j = 0;
        while (index >= block_start + block_len) {
            block_start += block_len;
            block_len *= r;
            ++j;
        }
        return static_cast<LabelIndex>(j % 2);
    };
    return Collective(std::move(two_labels), std::move(gen), 0, n);
}

Collective make_periodic(LabelSet labels, const std::vector<std::string>& pattern,
                         std::uint64_t n) {
    if (pattern.empty()) fail(Errc::BadConfig, "empty pattern");
    std::vector<LabelIndex> cycle;
    cycle.reserve(pattern.size());
    for (const auto& s : pattern) cycle.push_back(labels.index_of(s));
    auto gen = [cycle](std::uint64_t, std::uint64_t index) -> LabelIndex {
        return cycle[index % cycle.size()];
    };
    return Collective(std::move(labels), std::move(gen), 0, n);
}

}  // namespace freqlab::collectives
