#include "bandsurg/bfacf.hpp"

#include <algorithm>
#include <barrier>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace bandsurg {

void check_params(const FugacityParams& params) {
  if (params.q != 1.0) throw std::invalid_argument("fugacity q must be 1");
  if (!(params.z > 0.0 && params.z < kCriticalFugacity)) {
    throw std::invalid_argument("fugacity z must lie in (0, 0.2135)");
  }
}

double grow_acceptance(double z, std::size_t n) {
  const double nn = static_cast<double>(n);
  return std::min(1.0, z * z * nn / (nn + 2.0));
}

Chain::Chain(const LatticePolygon& start, FugacityParams params, std::uint64_t seed)
    : verts_(start.vertices()), params_(params), rng_(seed), seed_(seed) {
  check_params(params_);
  if (params_.max_length != 0 && verts_.size() > params_.max_length) {
    throw std::invalid_argument("starting polygon longer than max_length");
  }
  rebuild_occupancy();
}

void Chain::rebuild_occupancy() {
  occupied_.clear();
  occupied_.reserve(verts_.size() * 2);
  for (const auto& v : verts_) occupied_.insert(pack(v));
}

void Chain::swap_state(Chain& other) {
  verts_.swap(other.verts_);
  occupied_.swap(other.occupied_);
}

bool Chain::consistent() const {
  if (!validate(verts_).valid || occupied_.size() != verts_.size()) return false;
  return std::all_of(verts_.begin(), verts_.end(),
                     [this](const Vec3& v) { return occupied_.contains(pack(v)); });
}

MoveKind Chain::step() {
  ++steps_;
  const std::size_t n = verts_.size();
  // one draw: 4n equally likely (edge, direction) proposals
  const std::uint64_t r = rng_.below(4 * n);
  const std::size_t i = static_cast<std::size_t>(r >> 2);
  const std::size_t j = i + 1 == n ? 0 : i + 1;
  const Vec3 u = verts_[i];
  const Vec3 w = verts_[j];
  const Vec3 d = perpendicular_steps(w - u)[r & 3];
  const Vec3 a = u + d;
  const Vec3 b = w + d;
  const Vec3& prev = verts_[i == 0 ? n - 1 : i - 1];
  const Vec3& next = verts_[j + 1 == n ? 0 : j + 1];
  const bool back_a = prev == a;
  const bool fwd_b = next == b;

  if (back_a && fwd_b) {
    if (n <= 4) return MoveKind::kRejected;
    occupied_.erase(pack(u));
    occupied_.erase(pack(w));
    if (j == 0) {
      verts_.pop_back();
      verts_.erase(verts_.begin());
    } else {
      verts_.erase(verts_.begin() + static_cast<std::ptrdiff_t>(i),
                   verts_.begin() + static_cast<std::ptrdiff_t>(i + 2));
    }
    return MoveKind::kShrink;
  }
  if (back_a) {
    if (occupied_.contains(pack(b))) return MoveKind::kRejected;
    occupied_.erase(pack(u));
    occupied_.insert(pack(b));
    verts_[i] = b;
    return MoveKind::kSlide;
  }
  if (fwd_b) {
    if (occupied_.contains(pack(a))) return MoveKind::kRejected;
    occupied_.erase(pack(w));
    occupied_.insert(pack(a));
    verts_[j] = a;
    return MoveKind::kSlide;
  }
  if (params_.max_length != 0 && n + 2 > params_.max_length) return MoveKind::kRejected;
  if (occupied_.contains(pack(a)) || occupied_.contains(pack(b))) return MoveKind::kRejected;
  if (rng_.uniform01() >= grow_acceptance(params_.z, n)) return MoveKind::kRejected;
  occupied_.insert(pack(a));
  occupied_.insert(pack(b));
  const Vec3 ins[2] = {a, b};
  verts_.insert(verts_.begin() + static_cast<std::ptrdiff_t>(i + 1), ins, ins + 2);
  return MoveKind::kGrow;
}

std::vector<LatticePolygon> run_chain(Chain& chain, std::uint64_t n_steps,
                                      std::uint64_t sample_interval) {
  if (sample_interval == 0) throw std::invalid_argument("sample_interval must be positive");
  std::vector<LatticePolygon> out;
  out.reserve(static_cast<std::size_t>(n_steps / sample_interval));
  for (std::uint64_t t = 1; t <= n_steps; ++t) {
    chain.step();
#ifndef NDEBUG
    if (!chain.consistent()) throw std::logic_error("BFACF step broke polygon invariants");
#endif
    if (t % sample_interval == 0) out.push_back(chain.polygon());
  }
  return out;
}

double swap_acceptance(double z_lo, double z_hi, std::size_t n_lo, std::size_t n_hi) {
  const double expo = static_cast<double>(n_hi) - static_cast<double>(n_lo);
  if (expo <= 0) return 1.0;
  return std::min(1.0, std::pow(z_lo / z_hi, expo));
}

std::vector<double> geometric_ladder(double lo, double hi, std::size_t count) {
  if (count == 0 || lo <= 0 || hi < lo) throw std::invalid_argument("bad fugacity ladder bounds");
  std::vector<double> out;
  if (count == 1) return {hi};
  const double ratio = std::pow(hi / lo, 1.0 / static_cast<double>(count - 1));
  for (std::size_t k = 0; k < count; ++k) out.push_back(lo * std::pow(ratio, static_cast<double>(k)));
  out.back() = hi;
  return out;
}

std::vector<double> default_ladder() { return geometric_ladder(0.117, 0.2125, 8); }

Ensemble::Ensemble(const LatticePolygon& start, const std::vector<double>& z_ladder,
                   std::uint64_t seed, std::size_t max_length)
    : rng_(stream_seed(seed, z_ladder.size())) {
  if (z_ladder.empty()) throw std::invalid_argument("empty fugacity ladder");
  for (std::size_t k = 1; k < z_ladder.size(); ++k) {
    if (!(z_ladder[k] > z_ladder[k - 1])) {
      throw std::invalid_argument("fugacity ladder must be strictly increasing");
    }
  }
  chains_.reserve(z_ladder.size());
  for (std::size_t k = 0; k < z_ladder.size(); ++k) {
    chains_.emplace_back(start, FugacityParams{z_ladder[k], 1.0, max_length}, stream_seed(seed, k));
  }
}

ExchangeRecord Ensemble::exchange() {
  if (chains_.size() < 2) throw std::logic_error("exchange needs at least two chains");
  ExchangeRecord rec;
  rec.step = steps_;
  rec.pair = static_cast<std::size_t>(rng_.below(chains_.size() - 1));
  Chain& lo = chains_[rec.pair];
  Chain& hi = chains_[rec.pair + 1];
  const double p = swap_acceptance(lo.params().z, hi.params().z, lo.length(), hi.length());
  const double u = rng_.uniform01();
  rec.accepted = u < p;
  if (rec.accepted) lo.swap_state(hi);
  log_.push_back(rec);
  return rec;
}

std::vector<EnsembleSample> Ensemble::run(std::uint64_t n_steps, std::uint64_t sample_interval,
                                          std::uint64_t exchange_interval, unsigned threads) {
  if (sample_interval == 0) throw std::invalid_argument("sample_interval must be positive");
  const std::size_t k = chains_.size();
  const bool exchanging = exchange_interval > 0 && k >= 2;
  const std::uint64_t block = exchanging ? exchange_interval : std::max<std::uint64_t>(n_steps, 1);
  const std::uint64_t base = steps_;
  std::vector<std::vector<EnsembleSample>> per_chain(k);

  auto advance = [&](std::size_t c, std::uint64_t from, std::uint64_t to) {
    for (std::uint64_t t = from; t < to; ++t) {
      chains_[c].step();
#ifndef NDEBUG
      if (!chains_[c].consistent()) throw std::logic_error("BFACF step broke polygon invariants");
#endif
      if ((t + 1) % sample_interval == 0) {
        per_chain[c].push_back({c, base + t + 1, chains_[c].polygon()});
      }
    }
  };
  auto after_block = [&](std::uint64_t end) {
    steps_ = base + end;
    if (exchanging && end % block == 0) exchange();
  };

  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(k)));
  if (threads == 1) {
    for (std::uint64_t start = 0; start < n_steps; start += block) {
      const std::uint64_t end = std::min(n_steps, start + block);
      for (std::size_t c = 0; c < k; ++c) advance(c, start, end);
      after_block(end);
    }
  } else {
    std::uint64_t cursor = 0;
    auto on_block = [&]() noexcept {
      cursor = std::min(n_steps, cursor + block);
      after_block(cursor);
    };
    std::barrier sync(static_cast<std::ptrdiff_t>(threads), on_block);
    {
      std::vector<std::jthread> pool;
      for (unsigned w = 0; w < threads; ++w) {
        pool.emplace_back([&, w] {
          for (std::uint64_t start = 0; start < n_steps; start += block) {
            const std::uint64_t end = std::min(n_steps, start + block);
            for (std::size_t c = w; c < k; c += threads) advance(c, start, end);
            sync.arrive_and_wait();
          }
        });
      }
    }
  }
  steps_ = base + n_steps;

  std::vector<EnsembleSample> out;
  for (auto& v : per_chain) {
    for (auto& s : v) out.push_back(std::move(s));
  }
  std::stable_sort(out.begin(), out.end(), [](const EnsembleSample& a, const EnsembleSample& b) {
    return a.step != b.step ? a.step < b.step : a.chain < b.chain;
  });
  return out;
}

}  // namespace bandsurg
