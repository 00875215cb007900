#include "fqlab/counter.hpp"

#include <atomic>
#include <chrono>
#include <fstream>
#include <memory>
#include <sstream>
#include <thread>

#include "fqlab/error.hpp"

namespace fqlab {

BigInt count_pn(unsigned n, const BigInt& q) {
    BigInt sum = 0, term = 1;
    for (unsigned i = 0; i <= n; ++i) {
        sum += term;
        term *= q;
    }
    return sum;
}

// ---------------------------------------------------------------------------
// CountTable

namespace {

const char* kCsvHeader = "fingerprint,m,count";

bool is_hex(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (!((c >= '0' && c <= '9') || (c >= 'a' && c <= 'f'))) return false;
    }
    return true;
}

}  // namespace

CountTable::CountTable(std::filesystem::path path) : path_(std::move(path)) {
    std::error_code ec;
    if (path_->has_parent_path()) std::filesystem::create_directories(path_->parent_path(), ec);
    if (!std::filesystem::exists(*path_)) {
        std::ofstream out(*path_);
        if (!out) throw IntegrityError("cannot create cache file " + path_->string());
        out << kCsvHeader << '\n';
        return;
    }
    std::ifstream in(*path_);
    if (!in) throw IntegrityError("cannot read cache file " + path_->string());
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader) {
        throw IntegrityError("cache file " + path_->string() + " has a bad header");
    }
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string fp, ms, cs;
        if (!std::getline(ls, fp, ',') || !std::getline(ls, ms, ',') || !std::getline(ls, cs) || !is_hex(fp)) {
            throw IntegrityError("malformed cache line " + std::to_string(lineno));
        }
        BigInt count;
        unsigned m = 0;
        try {
            m = static_cast<unsigned>(std::stoul(ms));
            Rational r = parse_rational(cs);
            if (boost::multiprecision::denominator(r) != 1 || r < 0) throw std::invalid_argument(cs);
            count = boost::multiprecision::numerator(r);
        } catch (const std::exception&) {
            throw IntegrityError("malformed cache line " + std::to_string(lineno));
        }
        auto key = std::make_pair(fp, m);
        auto it = entries_.find(key);
        if (it != entries_.end() && it->second != count) {
            throw IntegrityError("cache holds conflicting counts for " + fp + " at m=" + ms);
        }
        entries_[key] = count;
    }
}

std::optional<BigInt> CountTable::get(const std::string& fingerprint, unsigned m) const {
    std::lock_guard lock(mu_);
    auto it = entries_.find({fingerprint, m});
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

void CountTable::put(const std::string& fingerprint, unsigned m, const BigInt& count) {
    std::lock_guard lock(mu_);
    auto key = std::make_pair(fingerprint, m);
    auto it = entries_.find(key);
    if (it != entries_.end()) {
        if (it->second != count) {
            throw IntegrityError("integrity violation: " + fingerprint + " at m=" + std::to_string(m) +
                                 " is cached as " + it->second.str() + ", new count " + count.str());
        }
        return;
    }
    if (path_) {
        std::ofstream out(*path_, std::ios::app);
        if (!out) throw IntegrityError("cannot append to cache file " + path_->string());
        out << fingerprint << ',' << m << ',' << count.str() << '\n';
        if (!out) throw IntegrityError("write to cache file failed");
    }
    entries_.emplace(std::move(key), count);
}

std::size_t CountTable::size() const {
    std::lock_guard lock(mu_);
    return entries_.size();
}

// ---------------------------------------------------------------------------
// Enumeration kernel

std::optional<std::uint64_t> representative_count(unsigned ambient_dim, std::uint64_t field_size) {
    unsigned __int128 total = 0, term = 1;
    for (unsigned j = 0; j <= ambient_dim; ++j) {
        total += term;
        if (total > ~0ULL) return std::nullopt;
        term *= field_size;
        if (term > (static_cast<unsigned __int128>(1) << 100)) term = static_cast<unsigned __int128>(1) << 100;
    }
    return static_cast<std::uint64_t>(total);
}

namespace {

std::shared_ptr<const LogTables> tables_for(std::uint32_t p, unsigned m) {
    static std::mutex mu;
    static std::map<std::pair<std::uint32_t, unsigned>, std::shared_ptr<const LogTables>> cache;
    std::lock_guard lock(mu);
    auto& slot = cache[{p, m}];
    if (!slot) slot = std::make_shared<const LogTables>(make_field(p, m, 0));
    return slot;
}

struct KernelTerm {
    std::uint32_t coeff_log;
    std::vector<std::uint32_t> outer_exp;  // exponents of x_{k+1} .. x_{N-1}
    std::uint32_t inner_exp;               // exponent of x_N
};

struct ChartPoly {
    unsigned degree;
    std::vector<KernelTerm> terms;
};

// Everything a worker needs for one chart: x_0..x_{k-1} = 0, x_k = 1.
struct Chart {
    unsigned k;
    unsigned outer_vars;
    std::vector<ChartPoly> polys;
};

struct WorkerResult {
    std::vector<std::uint64_t> chart_counts;
    std::vector<std::vector<std::uint64_t>> anomalies;
};

class Kernel {
  public:
    Kernel(const CompleteIntersectionSpec& spec, std::shared_ptr<const LogTables> tables, const CountOptions& opt)
        : spec_(spec), tables_(std::move(tables)), opt_(opt), Q_(tables_->field()->size()) {
        const unsigned N = spec.ambient_dim();
        for (unsigned k = 0; k <= N; ++k) {
            Chart chart{k, k < N ? N - k - 1 : 0, {}};
            for (const auto& f : spec.polys()) {
                ChartPoly cp{f.degree(), {}};
                for (const auto& t : f.terms()) {
                    bool vanishes = false;
                    for (unsigned i = 0; i < k; ++i) vanishes = vanishes || t.exponents[i] != 0;
                    if (vanishes) continue;
                    KernelTerm kt{tables_->log_of(t.coeff), {}, k < N ? t.exponents[N] : 0};
                    for (unsigned i = k + 1; i < N; ++i) kt.outer_exp.push_back(t.exponents[i]);
                    cp.terms.push_back(std::move(kt));
                }
                chart.polys.push_back(std::move(cp));
            }
            charts_.push_back(std::move(chart));
        }
        // rows per chart: Q^{outer_vars} rows of Q points, the last chart has one point
        for (const auto& c : charts_) {
            std::uint64_t rows = 1;
            if (c.k < N) {
                for (unsigned i = 0; i < c.outer_vars; ++i) rows *= Q_;
            }
            row_offset_.push_back(total_rows_);
            total_rows_ += rows;
        }
    }

    std::uint64_t total_rows() const { return total_rows_; }

    void run(std::uint64_t row_begin, std::uint64_t row_end, WorkerResult& out, std::atomic<bool>& stop) const {
        out.chart_counts.assign(charts_.size(), 0);
        std::uint64_t row = row_begin;
        while (row < row_end && !stop.load(std::memory_order_relaxed)) {
            unsigned ci = 0;
            while (ci + 1 < charts_.size() && row_offset_[ci + 1] <= row) ++ci;
            const std::uint64_t chart_end = ci + 1 < charts_.size() ? row_offset_[ci + 1] : total_rows_;
            const std::uint64_t stop_row = std::min(row_end, chart_end);
            run_chart(charts_[ci], row - row_offset_[ci], stop_row - row_offset_[ci], out, stop);
            row = stop_row;
        }
    }

  private:
    void run_chart(const Chart& chart, std::uint64_t local_begin, std::uint64_t local_end, WorkerResult& out,
                   std::atomic<bool>& stop) const {
        const LogTables& T = *tables_;
        const std::uint32_t M = T.group_order();
        const unsigned N = spec_.ambient_dim();
        const std::size_t npolys = chart.polys.size();

        // Odometer over outer coordinates, least significant first.
        std::vector<std::uint64_t> outer_idx(chart.outer_vars, 0);
        {
            std::uint64_t v = local_begin;
            for (auto& d : outer_idx) {
                d = v % Q_;
                v /= Q_;
            }
        }
        std::vector<std::uint32_t> outer_log(chart.outer_vars);

        // Univariate coefficients in x_N, log domain: coeff[j][e].
        std::vector<std::vector<std::uint32_t>> coeff(npolys);
        for (std::size_t j = 0; j < npolys; ++j) coeff[j].assign(chart.polys[j].degree + 1, LogTables::kZero);

        // Flattened running values for the inner sweep.
        std::vector<std::uint32_t> run_val, run_step;
        std::vector<std::size_t> run_begin(npolys + 1);

        for (std::uint64_t row = local_begin; row < local_end; ++row) {
            if (stop.load(std::memory_order_relaxed)) return;
            for (unsigned i = 0; i < chart.outer_vars; ++i) outer_log[i] = T.log_of(outer_idx[i]);

            for (std::size_t j = 0; j < npolys; ++j) {
                std::fill(coeff[j].begin(), coeff[j].end(), LogTables::kZero);
                for (const auto& t : chart.polys[j].terms) {
                    std::uint64_t acc = t.coeff_log;
                    bool zero = false;
                    for (unsigned i = 0; i < chart.outer_vars; ++i) {
                        if (t.outer_exp[i] == 0) continue;
                        if (outer_log[i] == LogTables::kZero) {
                            zero = true;
                            break;
                        }
                        acc += static_cast<std::uint64_t>(outer_log[i]) * t.outer_exp[i];
                    }
                    if (zero) continue;
                    auto& slot = coeff[j][t.inner_exp];
                    slot = T.add(slot, static_cast<std::uint32_t>(acc % M));
                }
            }

            if (chart.k == N) {
                // The single point (0 : ... : 0 : 1).
                bool on_x = true;
                for (std::size_t j = 0; j < npolys && on_x; ++j) {
                    std::uint32_t v = LogTables::kZero;
                    for (auto c : coeff[j]) v = T.add(v, c);
                    on_x = v == LogTables::kZero;
                }
                if (on_x) record_zero(chart, outer_idx, 1, out, stop);
            } else {
                // x_N = 0
                bool on_x = true;
                for (std::size_t j = 0; j < npolys && on_x; ++j) on_x = coeff[j][0] == LogTables::kZero;
                if (on_x) record_zero(chart, outer_idx, 0, out, stop);

                run_val.clear();
                run_step.clear();
                for (std::size_t j = 0; j < npolys; ++j) {
                    run_begin[j] = run_val.size();
                    for (std::size_t e = 0; e < coeff[j].size(); ++e) {
                        if (coeff[j][e] == LogTables::kZero) continue;
                        run_val.push_back(coeff[j][e]);
                        run_step.push_back(static_cast<std::uint32_t>(e % M));
                    }
                }
                run_begin[npolys] = run_val.size();
                const std::size_t nrun = run_val.size();

                // x_N = g^t
                for (std::uint32_t t = 0; t < M; ++t) {
                    bool zero_all = true;
                    for (std::size_t j = 0; j < npolys && zero_all; ++j) {
                        std::uint32_t v = LogTables::kZero;
                        for (std::size_t s = run_begin[j]; s < run_begin[j + 1]; ++s) v = T.add(v, run_val[s]);
                        zero_all = v == LogTables::kZero;
                    }
                    if (zero_all) record_zero(chart, outer_idx, T.index_of(t), out, stop);
                    for (std::size_t s = 0; s < nrun; ++s) {
                        std::uint32_t nv = run_val[s] + run_step[s];
                        run_val[s] = nv >= M ? nv - M : nv;
                    }
                }
            }

            for (auto& d : outer_idx) {
                if (++d < Q_) break;
                d = 0;
            }
        }
    }

    void record_zero(const Chart& chart, const std::vector<std::uint64_t>& outer_idx, std::uint64_t last_idx,
                     WorkerResult& out, std::atomic<bool>& stop) const {
        ++out.chart_counts[chart.k];
        if (!opt_.smoothness) return;
        const unsigned N = spec_.ambient_dim();
        std::vector<std::uint64_t> idx(N + 1, 0);
        idx[chart.k] = 1;
        for (unsigned i = 0; i < chart.outer_vars; ++i) idx[chart.k + 1 + i] = outer_idx[i];
        if (chart.k < N) idx[N] = last_idx;
        std::vector<FieldElement> point;
        point.reserve(N + 1);
        for (auto v : idx) point.push_back(from_index(tables_->field(), v));
        if (jacobian_rank_at(spec_, point) < spec_.r()) {
            out.anomalies.push_back(std::move(idx));
            if (opt_.stop_at_first_anomaly) stop.store(true);
        }
    }

    const CompleteIntersectionSpec& spec_;
    std::shared_ptr<const LogTables> tables_;
    CountOptions opt_;
    std::uint64_t Q_;
    std::vector<Chart> charts_;
    std::vector<std::uint64_t> row_offset_;
    std::uint64_t total_rows_ = 0;
};

}  // namespace

CountRecord count_projective(const CompleteIntersectionSpec& spec, unsigned m, const CountOptions& options) {
    if (m == 0) throw MathError("extension degree must be positive");
    CountRecord rec;
    rec.fingerprint = spec.fingerprint();
    rec.m = m;

    std::optional<BigInt> cached;
    if (options.cache) cached = options.cache->get(rec.fingerprint, m);
    if (cached && !options.audit && !options.smoothness) {
        rec.count = *cached;
        rec.from_cache = true;
        return rec;
    }

    // Budget first: field sizes that cannot be enumerated never reach make_field.
    std::uint64_t Q = 1;
    for (unsigned i = 0; i < m; ++i) {
        if (Q > options.budget / spec.p()) throw BudgetError("F_{p^m} exceeds the enumeration budget");
        Q *= spec.p();
    }
    auto reps = representative_count(spec.ambient_dim(), Q);
    if (!reps || *reps > options.budget) {
        throw BudgetError("P^" + std::to_string(spec.ambient_dim()) + "(F_" + std::to_string(Q) +
                          ") exceeds the enumeration budget of " + std::to_string(options.budget) +
                          " representatives");
    }

    const auto start = std::chrono::steady_clock::now();
    Kernel kernel(spec, tables_for(spec.p(), m), options);
    const std::uint64_t rows = kernel.total_rows();
    const unsigned workers = static_cast<unsigned>(std::max<std::uint64_t>(1, std::min<std::uint64_t>(options.threads, rows)));
    std::vector<WorkerResult> results(workers);
    std::atomic<bool> stop{false};
    if (workers == 1) {
        kernel.run(0, rows, results[0], stop);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            const std::uint64_t begin = rows * w / workers, end = rows * (w + 1) / workers;
            pool.emplace_back([&, w, begin, end] { kernel.run(begin, end, results[w], stop); });
        }
    }

    rec.chart_counts.assign(spec.ambient_dim() + 1, 0);
    std::uint64_t total = 0;
    for (auto& r : results) {
        for (std::size_t k = 0; k < r.chart_counts.size(); ++k) rec.chart_counts[k] += r.chart_counts[k];
        for (auto c : r.chart_counts) total += c;
        for (auto& a : r.anomalies) rec.anomalies.push_back(std::move(a));
    }
    rec.count = total;
    rec.complete = !stop.load();
    rec.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    if (rec.complete) {
        if (cached && *cached != rec.count) {
            throw IntegrityError("audit failed: " + rec.fingerprint + " at m=" + std::to_string(m) + " cached as " +
                                 cached->str() + " but recounted as " + rec.count.str());
        }
        if (options.cache) options.cache->put(rec.fingerprint, m, rec.count);
    }
    return rec;
}

BigInt count_affine_complement(const CompleteIntersectionSpec& spec, unsigned hyperplane, unsigned m,
                               const CountOptions& options) {
    const auto section = hyperplane_section(spec, hyperplane);
    const BigInt whole = count_projective(spec, m, options).count;
    const BigInt at_infinity = count_projective(section, m, options).count;
    return whole - at_infinity;
}

std::vector<BigInt> count_series(const CompleteIntersectionSpec& spec, unsigned max_m, const CountOptions& options) {
    std::vector<BigInt> out;
    for (unsigned m = 1; m <= max_m; ++m) out.push_back(count_projective(spec, m, options).count);
    return out;
}

bool smooth_at_points_up_to(const CompleteIntersectionSpec& spec, unsigned depth, const CountOptions& options) {
    CountOptions probe = options;
    probe.smoothness = true;
    probe.stop_at_first_anomaly = true;
    probe.audit = false;
    for (unsigned m = 1; m <= depth; ++m) {
        if (!count_projective(spec, m, probe).anomalies.empty()) return false;
    }
    return true;
}

}  // namespace fqlab
