#include <cstdint>
#include <functional>
#include <unordered_map>

#include "semgraph/analysis.hpp"

namespace semgraph {

namespace {

using Mask = std::uint64_t;

struct KeyHash {
  std::size_t operator()(const std::pair<const LabelOcc*, Mask>& k) const {
    return std::hash<const void*>()(k.first) * 31u ^ std::hash<Mask>()(k.second);
  }
};

// Bitmask evaluation over one expression's alphabet.
class MaskEval {
 public:
  explicit MaskEval(const LabelOcc& root) {
    forEachLeaf(root, [&](const std::string& l) {
      if (!bits_.count(l)) {
        if (bits_.size() >= 64) throw Error("occurrence expression has more than 64 distinct labels");
        bits_.emplace(l, Mask(1) << bits_.size());
      }
    });
  }

  std::optional<Mask> maskOf(const LabelSet& s) const {
    Mask m = 0;
    for (const auto& l : s) {
      auto it = bits_.find(l);
      if (it == bits_.end()) return std::nullopt;
      m |= it->second;
    }
    return m;
  }

  Mask alpha(const LabelOcc& e) {
    auto it = alpha_.find(&e);
    if (it != alpha_.end()) return it->second;
    Mask m = 0;
    if (e.kind == OccKind::Leaf) m = bits_.at(e.leafValue());
    for (const auto& c : e.children) m |= alpha(c);
    alpha_[&e] = m;
    return m;
  }

  bool member(const LabelOcc& e, Mask s) {
    auto key = std::make_pair(&e, s);
    auto it = memberMemo_.find(key);
    if (it != memberMemo_.end()) return it->second;
    bool r = false;
    switch (e.kind) {
      case OccKind::Empty: r = s == 0; break;
      case OccKind::Leaf: r = s == bits_.at(e.leafValue()); break;
      case OccKind::Group: r = member(e.children[0], s); break;
      case OccKind::Optional: r = s == 0 || member(e.children[0], s); break;
      case OccKind::Disj: r = member(e.children[0], s) || member(e.children[1], s); break;
      case OccKind::Conj: {
        const LabelOcc& a = e.children[0];
        const LabelOcc& b = e.children[1];
        Mask A = alpha(a), B = alpha(b);
        if (s & ~(A | B)) break;
        if ((A & B) == 0) {
          r = member(a, s & A) && member(b, s & B);
          break;
        }
        // Overlapping alphabets: S = S1 ∪ S2 with S1 ⊆ A, S2 ⊆ B.
        Mask sa = s & A;
        for (Mask s1 = sa;; s1 = (s1 - 1) & sa) {
          Mask rest = s & ~s1;
          if ((rest & ~B) == 0 && member(a, s1)) {
            Mask shared = s1 & B;
            for (Mask t = shared;; t = (t - 1) & shared) {
              if (member(b, rest | t)) {
                r = true;
                break;
              }
              if (t == 0) break;
            }
          }
          if (r || s1 == 0) break;
        }
        break;
      }
    }
    memberMemo_[key] = r;
    return r;
  }

  bool extendable(const LabelOcc& e, Mask s) {
    auto key = std::make_pair(&e, s);
    auto it = extMemo_.find(key);
    if (it != extMemo_.end()) return it->second;
    bool r = false;
    switch (e.kind) {
      case OccKind::Empty: r = s == 0; break;
      case OccKind::Leaf: r = s == 0 || s == bits_.at(e.leafValue()); break;
      case OccKind::Group:
      case OccKind::Optional: r = extendable(e.children[0], s); break;
      case OccKind::Disj: r = extendable(e.children[0], s) || extendable(e.children[1], s); break;
      case OccKind::Conj: {
        Mask A = alpha(e.children[0]), B = alpha(e.children[1]);
        if (s & ~(A | B)) break;
        Mask both = s & A & B;
        for (Mask t = both;; t = (t - 1) & both) {
          Mask toA = (s & A & ~B) | t;
          Mask toB = (s & B & ~A) | (both & ~t);
          if (extendable(e.children[0], toA) && extendable(e.children[1], toB)) {
            r = true;
            break;
          }
          if (t == 0) break;
        }
        break;
      }
    }
    extMemo_[key] = r;
    return r;
  }

 private:
  std::map<std::string, Mask> bits_;
  std::unordered_map<const LabelOcc*, Mask> alpha_;
  std::unordered_map<std::pair<const LabelOcc*, Mask>, bool, KeyHash> memberMemo_;
  std::unordered_map<std::pair<const LabelOcc*, Mask>, bool, KeyHash> extMemo_;
};

OccurrenceSet enumerate(const LabelOcc& e) {
  switch (e.kind) {
    case OccKind::Empty: return {LabelSet{}};
    case OccKind::Leaf: return {LabelSet{e.leafValue()}};
    case OccKind::Group: return enumerate(e.children[0]);
    case OccKind::Optional: {
      auto s = enumerate(e.children[0]);
      s.insert(LabelSet{});
      return s;
    }
    case OccKind::Disj: {
      auto a = enumerate(e.children[0]);
      auto b = enumerate(e.children[1]);
      a.insert(b.begin(), b.end());
      return a;
    }
    case OccKind::Conj: {
      auto a = enumerate(e.children[0]);
      auto b = enumerate(e.children[1]);
      OccurrenceSet out;
      for (const auto& x : a) {
        for (const auto& y : b) {
          LabelSet u = x;
          u.insert(y.begin(), y.end());
          out.insert(std::move(u));
        }
      }
      return out;
    }
  }
  return {};
}

}  // namespace

bool occMember(const LabelOcc& expr, const LabelSet& s) {
  MaskEval ev(expr);
  auto m = ev.maskOf(s);
  return m && ev.member(expr, *m);
}

bool occExtendable(const LabelOcc& expr, const LabelSet& s) {
  MaskEval ev(expr);
  auto m = ev.maskOf(s);
  return m && ev.extendable(expr, *m);
}

std::size_t leafCount(const LabelOcc& expr) {
  std::size_t n = 0;
  forEachLeaf(expr, [&](const std::string&) { ++n; });
  return n;
}

bool occNullable(const LabelOcc& e) {
  switch (e.kind) {
    case OccKind::Empty:
    case OccKind::Optional: return true;
    case OccKind::Leaf: return false;
    case OccKind::Group: return occNullable(e.children[0]);
    case OccKind::Conj: return occNullable(e.children[0]) && occNullable(e.children[1]);
    case OccKind::Disj: return occNullable(e.children[0]) || occNullable(e.children[1]);
  }
  return false;
}

OccurrenceSet occEnumerate(const LabelOcc& expr, std::size_t leafBound) {
  std::size_t n = leafCount(expr);
  if (n > leafBound) {
    throw Error("occurrence enumeration bound exceeded: " + std::to_string(n) + " leaves > " +
                std::to_string(leafBound));
  }
  return enumerate(expr);
}

}  // namespace semgraph
