#pragma once

#include <cstdint>

namespace grbm {

// Counter-based pseudo-random stream. Draw t is a hash of (key, t), so a
// stream is fully determined by its key and the number of draws taken, and
// substreams derived from the same key never collide with the parent's
// sequence. This keeps sampling reproducible no matter how work is split
// across batches or threads.
class RngStream {
  public:
    RngStream() : RngStream(0, 0) {}
    RngStream(std::uint64_t seed, std::uint64_t stream_id);

    // Derives an independent child stream; deterministic in (key, id).
    RngStream substream(std::uint64_t id) const;

    std::uint64_t next_u64();

    // Uniform in [0, 1), 53-bit resolution.
    double next_double();

    // Uniform in [lo, hi).
    double uniform(double lo, double hi);

    // Uniform integer in [0, n), n >= 1. Uses rejection to avoid modulo bias.
    std::uint64_t below(std::uint64_t n);

    std::uint64_t key() const { return key_; }

  private:
    explicit RngStream(std::uint64_t key) : key_(key) {}

    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace grbm
