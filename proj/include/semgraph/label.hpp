#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace semgraph {

/// Absolute hierarchical meaning name, e.g. `#School.Teaching.Student`.
///
/// The root keeps its sigil and may be a compound (`#School^#GIS`, `*#School`)
/// or a pure reference (`@#School.Teacher`).
class MeaningLabel {
 public:
  MeaningLabel() = default;
  explicit MeaningLabel(std::string root, std::vector<std::string> path = {});

  /// Parses canonical text. The root ends at the first '.' outside braces;
  /// pure references (`@...`) never have components.
  static MeaningLabel parse(std::string_view text);

  const std::string& root() const { return root_; }
  const std::vector<std::string>& path() const { return path_; }
  const std::string& str() const { return text_; }

  bool isRoot() const { return path_.empty(); }
  std::optional<MeaningLabel> parent() const;
  MeaningLabel rootLabel() const { return MeaningLabel(root_); }
  MeaningLabel child(const std::string& name) const;
  /// Last path segment, or the root text for roots.
  const std::string& localName() const { return path_.empty() ? root_ : path_.back(); }
  /// True when this label is a strict prefix of `other`.
  bool isAncestorOf(const MeaningLabel& other) const;
  bool empty() const { return root_.empty(); }

  friend bool operator==(const MeaningLabel& a, const MeaningLabel& b) { return a.text_ == b.text_; }
  friend auto operator<=>(const MeaningLabel& a, const MeaningLabel& b) { return a.text_ <=> b.text_; }
  friend std::ostream& operator<<(std::ostream& os, const MeaningLabel& l) { return os << l.text_; }

 private:
  std::string root_;
  std::vector<std::string> path_;
  std::string text_;
};

/// Label of the implicit pure reference meaning `@host`.
MeaningLabel pureReferenceOf(const MeaningLabel& host);

}  // namespace semgraph
