#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fqlab/bigint.hpp"
#include "fqlab/poly.hpp"

namespace fqlab {

/// |P^n(F_q)| = 1 + q + ... + q^n.
BigInt count_pn(unsigned n, const BigInt& q);

struct CountRecord {
    std::string fingerprint;
    unsigned m = 0;
    BigInt count;
    double wall_seconds = 0.0;
    bool from_cache = false;
    /// False when a smoothness probe stopped at its first anomaly.
    bool complete = true;
    /// Points (enumeration indices of coordinates over F_{p^m}) where the
    /// Jacobian rank drops below r. Only filled by smoothness runs.
    std::vector<std::vector<std::uint64_t>> anomalies;
    /// Zeros found in each leading-1 chart; empty for cache hits.
    std::vector<std::uint64_t> chart_counts;
};

// Append-only store of exact counts keyed by (fingerprint, m). With a backing
// path every new record is appended to a CSV file `fingerprint,m,count`.
class CountTable {
  public:
    CountTable() = default;
    /// Opens (creating if needed) the CSV at path. Throws IntegrityError on a
    /// malformed or self-contradictory file.
    explicit CountTable(std::filesystem::path path);

    std::optional<BigInt> get(const std::string& fingerprint, unsigned m) const;
    /// Throws IntegrityError if the key already holds a different count.
    void put(const std::string& fingerprint, unsigned m, const BigInt& count);
    std::size_t size() const;
    const std::optional<std::filesystem::path>& path() const noexcept { return path_; }

  private:
    mutable std::mutex mu_;
    std::map<std::pair<std::string, unsigned>, BigInt> entries_;
    std::optional<std::filesystem::path> path_;
};

struct CountOptions {
    unsigned threads = 1;
    std::uint64_t budget = kDefaultBudget;
    bool smoothness = false;
    bool stop_at_first_anomaly = false;
    /// Recount cached keys and fail on mismatch.
    bool audit = false;
    CountTable* cache = nullptr;
};

/// Number of leading-1 representatives of P^N(F_Q): 1 + Q + ... + Q^N, or
/// nullopt if it does not fit in 64 bits.
std::optional<std::uint64_t> representative_count(unsigned ambient_dim, std::uint64_t field_size);

CountRecord count_projective(const CompleteIntersectionSpec& spec, unsigned m, const CountOptions& options = {});

/// |X(F_{p^m})| - |(X cap {x_i = 0})(F_{p^m})|.
BigInt count_affine_complement(const CompleteIntersectionSpec& spec, unsigned hyperplane, unsigned m,
                               const CountOptions& options = {});

/// N_1 .. N_max as exact integers.
std::vector<BigInt> count_series(const CompleteIntersectionSpec& spec, unsigned max_m,
                                 const CountOptions& options = {});

/// True if the Jacobian has full rank at every point of X(F_{p^m}), m <= depth.
bool smooth_at_points_up_to(const CompleteIntersectionSpec& spec, unsigned depth, const CountOptions& options = {});

}  // namespace fqlab
