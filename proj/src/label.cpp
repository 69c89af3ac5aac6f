#include "semgraph/label.hpp"

#include "semgraph/diagnostics.hpp"

namespace semgraph {

MeaningLabel::MeaningLabel(std::string root, std::vector<std::string> path)
    : root_(std::move(root)), path_(std::move(path)), text_(root_) {
  for (const auto& p : path_) {
    text_ += '.';
    text_ += p;
  }
}

MeaningLabel MeaningLabel::parse(std::string_view text) {
  if (text.empty()) throw Error("empty meaning label");
  if (text.front() == '@') return MeaningLabel(std::string(text));
  if (text.front() != '#' && text.front() != '*') {
    throw Error("meaning label must be absolute: '" + std::string(text) + "'");
  }
  int depth = 0;
  std::size_t i = 0;
  for (; i < text.size(); ++i) {
    char c = text[i];
    if (c == '{') ++depth;
    if (c == '}') --depth;
    if (c == '.' && depth == 0) break;
  }
  std::string root(text.substr(0, i));
  std::vector<std::string> path;
  while (i < text.size()) {
    std::size_t start = i + 1;
    std::size_t end = text.find('.', start);
    if (end == std::string_view::npos) end = text.size();
    if (end == start) throw Error("empty segment in meaning label '" + std::string(text) + "'");
    path.emplace_back(text.substr(start, end - start));
    i = end;
  }
  return MeaningLabel(std::move(root), std::move(path));
}

std::optional<MeaningLabel> MeaningLabel::parent() const {
  if (path_.empty()) return std::nullopt;
  return MeaningLabel(root_, std::vector<std::string>(path_.begin(), path_.end() - 1));
}

MeaningLabel MeaningLabel::child(const std::string& name) const {
  auto p = path_;
  p.push_back(name);
  return MeaningLabel(root_, std::move(p));
}

bool MeaningLabel::isAncestorOf(const MeaningLabel& other) const {
  if (root_ != other.root_ || path_.size() >= other.path_.size()) return false;
  for (std::size_t i = 0; i < path_.size(); ++i) {
    if (path_[i] != other.path_[i]) return false;
  }
  return true;
}

MeaningLabel pureReferenceOf(const MeaningLabel& host) { return MeaningLabel("@" + host.str()); }

}  // namespace semgraph
