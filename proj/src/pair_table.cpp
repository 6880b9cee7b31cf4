#include "magcode/pair_table.hpp"

#include <algorithm>
#include <array>
#include <cstring>
#include <fstream>
#include <thread>

#include "magcode/packed.hpp"
#include "magcode/universe.hpp"

namespace magcode {

namespace {

constexpr std::array<char, 8> kMagic = {'M', 'G', 'P', 'A', 'I', 'R', 'S', '\0'};
constexpr std::uint32_t kVersion = 1;

template <typename T>
void put(std::ostream& os, T value) {
  unsigned char bytes[sizeof(T)];
  for (std::size_t k = 0; k < sizeof(T); ++k) bytes[k] = static_cast<unsigned char>((static_cast<std::uint64_t>(value) >> (8 * k)) & 0xffU);
  os.write(reinterpret_cast<const char*>(bytes), sizeof(T));
}

template <typename T>
T get(std::istream& is) {
  unsigned char bytes[sizeof(T)];
  if (!is.read(reinterpret_cast<char*>(bytes), sizeof(T))) throw IoError("pair-score cache truncated");
  std::uint64_t v = 0;
  for (std::size_t k = 0; k < sizeof(T); ++k) v |= std::uint64_t{bytes[k]} << (8 * k);
  return static_cast<T>(v);
}

}  // namespace

std::uint64_t PairTable::key_for(const std::vector<Encoding>& members, ConfigSet set) {
  const std::uint64_t salt = set == ConfigSet::RotatedTranslations ? 0x9e3779b97f4a7c15ULL : 0xc2b2ae3d27d4eb4fULL;
  return universe_hash(members) ^ salt;
}

PairTable PairTable::compute(const std::vector<Encoding>& members, ConfigSet set, unsigned threads) {
  PairTable t;
  t.count_ = members.size();
  t.order_ = members.empty() ? 0 : members.front().order();
  t.set_ = set;
  t.key_ = key_for(members, set);
  for (const auto& m : members) {
    if (m.order() != t.order_) throw DimensionError("pair table members must share one order");
  }
  const std::size_t n = t.count_;
  t.upper_.assign(n < 2 ? 0 : n * (n - 1) / 2, 0);
  if (n < 2) return t;

  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));

  if (t.order_ <= kMaxPackedOrder) {
    const PackedScorer scorer(t.order_, set);
    const std::size_t stride = scorer.stride();
    std::vector<std::uint64_t> words(n);
    std::vector<std::uint64_t> banks(n * stride);
    for (std::size_t i = 0; i < n; ++i) {
      const PackedGrid g = PackedGrid::pack(members[i]);
      words[i] = g.bits;
      scorer.fill_bank(g, std::span<std::uint64_t>(banks.data() + i * stride, stride));
    }
    // Rows are dealt round-robin so the triangular workload stays balanced.
    auto work = [&](unsigned worker) {
      for (std::size_t i = worker; i < n; i += threads) {
        std::int16_t* out = t.upper_.data() + t.offset(i);
        for (std::size_t j = i + 1; j < n; ++j) {
          out[j - i - 1] = static_cast<std::int16_t>(-scorer.max_abs_numerator(words[i], banks.data() + j * stride));
        }
      }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < threads; ++w) pool.emplace_back(work, w);
    work(0);
    for (auto& th : pool) th.join();
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const Rational s = pair_score(members[i], members[j], set);
        t.upper_[t.offset(i) + (j - i - 1)] = static_cast<std::int16_t>(s.num() * (t.denominator() / s.den()));
      }
    }
  }
  return t;
}

void PairTable::save(const std::filesystem::path& path) const {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw IoError("cannot write pair-score cache " + tmp);
    os.write(kMagic.data(), kMagic.size());
    put<std::uint32_t>(os, kVersion);
    put<std::uint64_t>(os, key_);
    put<std::uint32_t>(os, static_cast<std::uint32_t>(order_));
    put<std::uint64_t>(os, count_);
    put<std::uint32_t>(os, set_ == ConfigSet::RotatedTranslations ? 0U : 1U);
    std::vector<unsigned char> bytes(upper_.size() * 2);
    for (std::size_t k = 0; k < upper_.size(); ++k) {
      const auto v = static_cast<std::uint16_t>(upper_[k]);
      bytes[2 * k] = static_cast<unsigned char>(v & 0xffU);
      bytes[2 * k + 1] = static_cast<unsigned char>(v >> 8);
    }
    os.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!os) throw IoError("failed writing pair-score cache " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

PairTable PairTable::load(const std::filesystem::path& path, std::uint64_t expected_key) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("pair-score cache not found: " + path.string());
  std::array<char, 8> magic{};
  if (!is.read(magic.data(), magic.size()) || magic != kMagic) throw IoError("not a pair-score cache: " + path.string());
  if (get<std::uint32_t>(is) != kVersion) throw IoError("unsupported pair-score cache version");
  PairTable t;
  t.key_ = get<std::uint64_t>(is);
  if (t.key_ != expected_key) throw IoError("pair-score cache key mismatch: " + path.string());
  t.order_ = static_cast<int>(get<std::uint32_t>(is));
  t.count_ = get<std::uint64_t>(is);
  t.set_ = get<std::uint32_t>(is) == 0 ? ConfigSet::RotatedTranslations : ConfigSet::CenteredRotations;
  const std::size_t entries = t.count_ < 2 ? 0 : t.count_ * (t.count_ - 1) / 2;
  std::vector<unsigned char> bytes(entries * 2);
  if (!is.read(reinterpret_cast<char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()))) {
    throw IoError("pair-score cache truncated: " + path.string());
  }
  t.upper_.resize(entries);
  for (std::size_t k = 0; k < entries; ++k) {
    t.upper_[k] = static_cast<std::int16_t>(static_cast<std::uint16_t>(bytes[2 * k] | (bytes[2 * k + 1] << 8)));
  }
  return t;
}

}  // namespace magcode
