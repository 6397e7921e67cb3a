#pragma once

#include <cctype>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace latforge {

// Relations can live on ground sets of up to this many points. Everything
// the workbench computes at full depth happens far below it.
inline constexpr int kMaxGround = 128;

// A fixed finite ground set: a size and optional distinct display labels
// ("a0", "b3", "x"). Relation values carry only the size; a GroundSet is
// passed alongside wherever labels matter (builders, file I/O, reports).
class GroundSet {
 public:
  explicit GroundSet(int n) : n_(n) { check_size(n); }

  GroundSet(int n, std::vector<std::string> labels) : n_(n), labels_(std::move(labels)) {
    check_size(n);
    if (labels_.size() != static_cast<std::size_t>(n))
      throw std::invalid_argument("ground set: label count != size");
    for (int i = 0; i < n; ++i) {
      auto [it, fresh] = index_.emplace(labels_[i], i);
      if (!fresh) throw std::invalid_argument("ground set: duplicate label '" + labels_[i] + "'");
    }
  }

  int size() const { return n_; }
  bool has_labels() const { return !labels_.empty(); }

  std::string label(int i) const {
    if (i < 0 || i >= n_) throw std::out_of_range("ground set: index out of range");
    if (!labels_.empty()) return labels_[i];
    return "x" + std::to_string(i);
  }

  std::optional<int> find(const std::string& label) const {
    if (auto it = index_.find(label); it != index_.end()) return it->second;
    return std::nullopt;
  }

  // Label lookup that also accepts plain numeric indices.
  int index_of(const std::string& token) const {
    if (auto i = find(token)) return *i;
    if (!token.empty() && (std::isdigit(static_cast<unsigned char>(token[0])))) {
      const int v = std::stoi(token);
      if (v >= 0 && v < n_) return v;
    }
    throw std::invalid_argument("ground set: unknown vertex '" + token + "'");
  }

 private:
  static void check_size(int n) {
    if (n < 1 || n > kMaxGround)
      throw std::invalid_argument("ground set size must be in [1, " +
                                  std::to_string(kMaxGround) + "]");
  }

  int n_;
  std::vector<std::string> labels_;
  std::unordered_map<std::string, int> index_;
};

}  // namespace latforge
