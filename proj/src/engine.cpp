// Copyright 2026 The bnbptas Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "bnbptas/engine.hpp"

#include <algorithm>

namespace bnbptas {

std::string to_string(Sense sense) { return sense == Sense::kMaximize ? "max" : "min"; }

std::string to_string(Selection selection) {
  switch (selection) {
    case Selection::kDfs:
      return "DFS";
    case Selection::kBfs:
      return "BFS";
    case Selection::kBestFirst:
      return "BEST";
  }
  return "unknown";
}

std::string to_string(Termination termination) {
  switch (termination) {
    case Termination::kRatioMet:
      return "ratio-met";
    case Termination::kNodeLimit:
      return "node-limit";
    case Termination::kFrontierEmpty:
      return "frontier-empty";
    case Termination::kDepthCap:
      return "depth-cap";
    case Termination::kAdapterHalt:
      return "adapter-halt";
  }
  return "unknown";
}

Selection parse_selection(const std::string& text) {
  if (text == "DFS" || text == "dfs") return Selection::kDfs;
  if (text == "BFS" || text == "bfs") return Selection::kBfs;
  if (text == "BEST" || text == "HUB" || text == "LLB" || text == "best") {
    return Selection::kBestFirst;
  }
  throw std::invalid_argument("unknown selection rule '" + text + "'");
}

bool should_stop(const Rational& best_value, const Rational& global_bound,
                 const Rational& target, Sense sense) {
  if (global_bound.is_zero()) {
    throw DegenerateBound("global bound is zero; the instance is degenerate");
  }
  const Rational ratio = best_value / global_bound;
  return sense == Sense::kMaximize ? ratio >= target : ratio <= target;
}

bool Frontier::Before::operator()(const FrontierEntry& a, const FrontierEntry& b) const {
  switch (selection) {
    case Selection::kBestFirst:
      if (a.key != b.key) return sense == Sense::kMaximize ? a.key > b.key : a.key < b.key;
      return a.id < b.id;
    case Selection::kDfs:
      if (a.depth != b.depth) return a.depth > b.depth;
      return a.id > b.id;
    case Selection::kBfs:
      if (a.depth != b.depth) return a.depth < b.depth;
      return a.id < b.id;
  }
  return a.id < b.id;
}

bool Frontier::ByKey::operator()(const FrontierEntry& a, const FrontierEntry& b) const {
  if (a.key != b.key) return a.key < b.key;
  return a.id < b.id;
}

Frontier::Frontier(Selection selection, Sense sense)
    : sense_(sense), order_(Before{selection, sense}) {}

void Frontier::push(const FrontierEntry& entry) {
  order_.insert(entry);
  keys_.insert(entry);
}

FrontierEntry Frontier::pop() {
  if (order_.empty()) throw std::invalid_argument("select from an empty frontier");
  FrontierEntry entry = *order_.begin();
  order_.erase(order_.begin());
  keys_.erase(entry);
  return entry;
}

const Rational& Frontier::best_bound() const {
  if (keys_.empty()) throw std::invalid_argument("bound of an empty frontier");
  return sense_ == Sense::kMaximize ? keys_.rbegin()->key : keys_.begin()->key;
}

FrontierEntry select_next(const std::vector<FrontierEntry>& frontier, Selection selection,
                          Sense sense) {
  if (frontier.empty()) throw std::invalid_argument("select from an empty frontier");
  Frontier f(selection, sense);
  for (const auto& e : frontier) f.push(e);
  return f.pop();
}

}  // namespace bnbptas
