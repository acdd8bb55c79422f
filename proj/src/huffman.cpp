#include "parc/huffman.hpp"

#include <algorithm>
#include <utility>

namespace parc::huffman {

namespace {

// Two-queue Huffman construction over leaves sorted ascending by weight.
// Ties prefer the leaf queue, so the merge order is a function of the weight
// multiset alone; build() and cost_from_counts() therefore agree exactly.
struct Node {
  std::uint64_t weight = 0;
  int depth = 0;  // height of the subtree: max code length below this node
  std::int16_t left = -1;
  std::int16_t right = -1;
};

// Runs the merge over `leaves` (ascending weights) appending internal nodes;
// returns total internal weight (= optimal payload bits) and the root index.
std::uint64_t two_queue(std::vector<Node>& nodes, int leaf_count,
                        int* root_out) {
  int next_leaf = 0;                 // leaves occupy nodes[0 .. leaf_count)
  int merged_head = leaf_count;      // internal nodes form a FIFO
  int remaining = leaf_count;
  std::uint64_t total = 0;
  auto take = [&]() -> int {
    bool leaf_ok = next_leaf < leaf_count;
    bool merged_ok = merged_head < static_cast<int>(nodes.size());
    if (leaf_ok &&
        (!merged_ok || nodes[next_leaf].weight <= nodes[merged_head].weight)) {
      return next_leaf++;
    }
    return merged_head++;
  };
  while (remaining > 1) {
    int a = take();
    int b = take();
    Node merged;
    merged.weight = nodes[a].weight + nodes[b].weight;
    merged.depth = std::max(nodes[a].depth, nodes[b].depth) + 1;
    merged.left = static_cast<std::int16_t>(a);
    merged.right = static_cast<std::int16_t>(b);
    total += merged.weight;
    nodes.push_back(merged);
    --remaining;
  }
  *root_out = static_cast<int>(nodes.size()) - 1;
  return total;
}

}  // namespace

Build build(const kernels::Histogram& counts) {
  Build result;

  std::vector<std::pair<std::uint32_t, std::uint8_t>> present;
  for (int s = 0; s < 256; ++s) {
    if (counts[s] != 0) {
      present.emplace_back(counts[s], static_cast<std::uint8_t>(s));
    }
  }
  result.alphabet_size = static_cast<int>(present.size());
  if (present.size() <= 1) return result;  // zero-length code, zero payload

  std::sort(present.begin(), present.end());

  std::vector<Node> nodes;
  nodes.reserve(2 * present.size() - 1);
  for (const auto& [count, symbol] : present) {
    nodes.push_back(Node{count, 0, -1, -1});
  }
  int root = 0;
  result.payload_bits = two_queue(nodes, static_cast<int>(present.size()),
                                  &root);
  result.max_length = nodes[root].depth;
  result.fits = result.max_length <= kMaxCodeLength;

  // Code length of a leaf = its depth from the root.
  std::vector<std::uint8_t> depth_from_root(nodes.size(), 0);
  for (int i = static_cast<int>(nodes.size()) - 1;
       i >= static_cast<int>(present.size()); --i) {
    std::uint8_t d = depth_from_root[i];
    depth_from_root[nodes[i].left] = d + 1;
    depth_from_root[nodes[i].right] = d + 1;
  }
  for (std::size_t i = 0; i < present.size(); ++i) {
    result.lengths[present[i].second] = depth_from_root[i];
  }
  return result;
}

Cost cost_from_counts(std::span<const std::uint32_t> counts_desc) {
  Cost result;
  if (counts_desc.size() <= 1) return result;

  std::vector<Node> nodes;
  nodes.reserve(2 * counts_desc.size() - 1);
  for (auto it = counts_desc.rbegin(); it != counts_desc.rend(); ++it) {
    nodes.push_back(Node{*it, 0, -1, -1});
  }
  int root = 0;
  result.payload_bits =
      two_queue(nodes, static_cast<int>(counts_desc.size()), &root);
  result.max_length = nodes[root].depth;
  result.fits = result.max_length <= kMaxCodeLength;
  return result;
}

std::array<std::uint32_t, 256> canonical_codes(const Lengths& lengths) {
  std::array<std::uint32_t, 256> codes{};
  std::array<std::uint32_t, kMaxCodeLength + 1> bl_count{};
  for (std::uint8_t len : lengths) {
    if (len != 0) ++bl_count[len];
  }
  std::array<std::uint32_t, kMaxCodeLength + 1> next_code{};
  std::uint32_t code = 0;
  for (int len = 1; len <= kMaxCodeLength; ++len) {
    code = (code + bl_count[len - 1]) << 1;
    next_code[len] = code;
  }
  // Increasing symbol order within each length = canonical order.
  for (int s = 0; s < 256; ++s) {
    if (lengths[s] != 0) codes[s] = next_code[lengths[s]]++;
  }
  return codes;
}

Decoder::Decoder(
    std::span<const std::pair<std::uint8_t, std::uint8_t>> entries) {
  if (entries.empty()) {
    throw CorruptionError(Corruption::BadModel, "empty code table");
  }
  // Kraft equality in integers: sum 2^(cap - len) must equal 2^cap. A lone
  // symbol therefore must have length 0, and longer tables must be complete.
  std::uint64_t kraft = 0;
  for (const auto& [symbol, len] : entries) {
    if (len > kMaxCodeLength) {
      throw CorruptionError(Corruption::BadModel, "code length over cap");
    }
    kraft += 1ull << (kMaxCodeLength - len);
  }
  if (kraft != (1ull << kMaxCodeLength)) {
    throw CorruptionError(Corruption::KraftViolation,
                          "code lengths form an incomplete or oversubscribed "
                          "code");
  }

  if (entries.size() == 1) {
    single_ = true;
    symbols_.push_back(entries[0].first);
    return;
  }

  std::vector<std::pair<std::uint8_t, std::uint8_t>> sorted(entries.begin(),
                                                            entries.end());
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const auto& a, const auto& b) {
                     return std::make_pair(a.second, a.first) <
                            std::make_pair(b.second, b.first);
                   });
  min_length_ = sorted.front().second;
  max_length_ = sorted.back().second;
  symbols_.reserve(sorted.size());
  for (const auto& [symbol, len] : sorted) symbols_.push_back(symbol);

  std::uint16_t index = 0;
  std::uint32_t code = 0;
  int prev_len = 0;
  for (const auto& [symbol, len] : sorted) {
    code <<= (len - prev_len);
    if (count_by_length_[len] == 0) {
      first_code_[len] = code;
      first_index_[len] = index;
    }
    ++count_by_length_[len];
    ++code;
    ++index;
    prev_len = len;
  }
}

std::uint8_t Decoder::decode_one(BitReader& reader) const {
  if (single_) return symbols_[0];
  std::uint32_t code = 0;
  int len = 0;
  while (len < max_length_) {
    code = (code << 1) | reader.read_bit();
    ++len;
    if (len < min_length_) continue;
    std::uint32_t offset = code - first_code_[len];
    if (count_by_length_[len] != 0 && code >= first_code_[len] &&
        offset < count_by_length_[len]) {
      return symbols_[first_index_[len] + offset];
    }
  }
  // Unreachable when Kraft equality holds; kept as a hard stop.
  throw CorruptionError(Corruption::BadModel, "undecodable codeword");
}

}  // namespace parc::huffman
