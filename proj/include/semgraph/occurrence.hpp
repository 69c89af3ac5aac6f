#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "semgraph/box.hpp"

namespace semgraph {

enum class OccKind { Empty, Leaf, Optional, Conj, Disj, Group };

/// Occurrence expression tree over an arbitrary leaf payload.
///
/// `Empty` is the body `{}` and denotes the occurrence set {{}}. `Conj` and
/// `Disj` are binary; `Optional` and `Group` have exactly one child.
template <class LeafT>
struct BasicOcc {
  OccKind kind = OccKind::Empty;
  std::optional<Box<LeafT>> leaf;
  std::vector<BasicOcc> children;

  static BasicOcc empty() { return {}; }
  static BasicOcc makeLeaf(LeafT value) {
    BasicOcc e;
    e.kind = OccKind::Leaf;
    e.leaf = Box<LeafT>(std::move(value));
    return e;
  }
  static BasicOcc makeOptional(BasicOcc inner) { return unary(OccKind::Optional, std::move(inner)); }
  static BasicOcc makeGroup(BasicOcc inner) { return unary(OccKind::Group, std::move(inner)); }
  static BasicOcc makeConj(BasicOcc a, BasicOcc b) { return binary(OccKind::Conj, std::move(a), std::move(b)); }
  static BasicOcc makeDisj(BasicOcc a, BasicOcc b) { return binary(OccKind::Disj, std::move(a), std::move(b)); }

  const LeafT& leafValue() const { return **leaf; }
  LeafT& leafValue() { return **leaf; }

  friend bool operator==(const BasicOcc&, const BasicOcc&) = default;

 private:
  static BasicOcc unary(OccKind k, BasicOcc inner) {
    BasicOcc e;
    e.kind = k;
    e.children.push_back(std::move(inner));
    return e;
  }
  static BasicOcc binary(OccKind k, BasicOcc a, BasicOcc b) {
    BasicOcc e;
    e.kind = k;
    e.children.push_back(std::move(a));
    e.children.push_back(std::move(b));
    return e;
  }
};

/// Visits every leaf in left-to-right order.
template <class LeafT, class F>
void forEachLeaf(const BasicOcc<LeafT>& e, F&& f) {
  if (e.kind == OccKind::Leaf) {
    f(e.leafValue());
    return;
  }
  for (const auto& c : e.children) forEachLeaf(c, f);
}

template <class LeafT, class F>
void forEachLeaf(BasicOcc<LeafT>& e, F&& f) {
  if (e.kind == OccKind::Leaf) {
    f(e.leafValue());
    return;
  }
  for (auto& c : e.children) forEachLeaf(c, f);
}

/// Removes `Empty` operands while preserving the denoted occurrence set:
/// Conj(Empty,e)=e, Disj(Empty,e)=Optional(e), Optional(Empty)=Empty.
template <class LeafT>
BasicOcc<LeafT> simplifyEmpty(BasicOcc<LeafT> e) {
  using Occ = BasicOcc<LeafT>;
  switch (e.kind) {
    case OccKind::Empty:
    case OccKind::Leaf:
      return e;
    case OccKind::Optional:
    case OccKind::Group: {
      Occ inner = simplifyEmpty(std::move(e.children[0]));
      if (inner.kind == OccKind::Empty) return inner;
      if (e.kind == OccKind::Optional && inner.kind == OccKind::Optional) return inner;
      return e.kind == OccKind::Optional ? Occ::makeOptional(std::move(inner))
                                         : Occ::makeGroup(std::move(inner));
    }
    case OccKind::Conj:
    case OccKind::Disj: {
      Occ a = simplifyEmpty(std::move(e.children[0]));
      Occ b = simplifyEmpty(std::move(e.children[1]));
      if (e.kind == OccKind::Conj) {
        if (a.kind == OccKind::Empty) return b;
        if (b.kind == OccKind::Empty) return a;
        return Occ::makeConj(std::move(a), std::move(b));
      }
      if (a.kind == OccKind::Empty && b.kind == OccKind::Empty) return a;
      if (a.kind == OccKind::Empty) return simplifyEmpty(Occ::makeOptional(std::move(b)));
      if (b.kind == OccKind::Empty) return simplifyEmpty(Occ::makeOptional(std::move(a)));
      return Occ::makeDisj(std::move(a), std::move(b));
    }
  }
  return e;
}

/// Maps every leaf through `f`, which returns `std::optional<To>`. Leaves
/// mapped to nullopt become `Empty`; the result is simplified.
template <class To, class From, class F>
BasicOcc<To> mapLeaves(const BasicOcc<From>& e, F&& f) {
  using Occ = BasicOcc<To>;
  Occ out;
  out.kind = e.kind;
  if (e.kind == OccKind::Leaf) {
    std::optional<To> v = f(e.leafValue());
    if (!v) return Occ::empty();
    return Occ::makeLeaf(std::move(*v));
  }
  for (const auto& c : e.children) out.children.push_back(mapLeaves<To>(c, f));
  return simplifyEmpty(std::move(out));
}

}  // namespace semgraph
