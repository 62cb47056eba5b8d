#include "teamlogic/kripke.hpp"

#include <bit>

#include "teamlogic/error.hpp"

namespace teamlogic {

WorldSet world_set(const std::vector<std::size_t>& worlds) {
  WorldSet s = 0;
  for (std::size_t w : worlds) {
    if (w >= kMaxWorlds) throw InvariantError("world index out of range");
    s |= WorldSet{1} << w;
  }
  return s;
}

std::vector<std::size_t> worlds_of(WorldSet set) {
  std::vector<std::size_t> out;
  while (set) {
    out.push_back(static_cast<std::size_t>(std::countr_zero(set)));
    set &= set - 1;
  }
  return out;
}

KripkeStructure::KripkeStructure(std::size_t worlds) : worlds_(worlds), successors_(worlds, 0) {
  if (worlds > kMaxWorlds) throw InvariantError("at most 64 worlds are supported");
}

WorldSet KripkeStructure::all_worlds() const {
  return worlds_ == 64 ? ~WorldSet{0} : (WorldSet{1} << worlds_) - 1;
}

void KripkeStructure::add_edge(std::size_t from, std::size_t to) {
  if (from >= worlds_ || to >= worlds_) {
    throw InvariantError("edge (" + std::to_string(from) + "," + std::to_string(to) +
                         ") leaves the world set");
  }
  successors_[from] |= WorldSet{1} << to;
}

bool KripkeStructure::has_edge(std::size_t from, std::size_t to) const {
  return (successors_.at(from) >> to) & 1U;
}

WorldSet KripkeStructure::image(WorldSet team) const {
  WorldSet out = 0;
  for (std::size_t w : worlds_of(team & all_worlds())) out |= successors_[w];
  return out;
}

WorldSet KripkeStructure::preimage(WorldSet team) const {
  WorldSet out = 0;
  for (std::size_t w = 0; w < worlds_; ++w) {
    if (successors_[w] & team) out |= WorldSet{1} << w;
  }
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> KripkeStructure::edges() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t w = 0; w < worlds_; ++w) {
    for (std::size_t v : worlds_of(successors_[w])) out.emplace_back(w, v);
  }
  return out;
}

void KripkeStructure::set_valuation(const std::string& proposition, WorldSet worlds) {
  if (worlds & ~all_worlds()) throw InvariantError("valuation of '" + proposition +
                                                   "' leaves the world set");
  valuation_[proposition] = worlds;
}

WorldSet KripkeStructure::valuation(const std::string& proposition) const {
  auto it = valuation_.find(proposition);
  if (it == valuation_.end()) {
    throw UnknownSymbolError("no valuation for proposition '" + proposition + "'");
  }
  return it->second;
}

void for_each_successor_team(const KripkeStructure& k, WorldSet team,
                             const std::function<bool(WorldSet)>& visit, std::size_t max_image) {
  WorldSet rt = k.image(team);
  std::vector<std::size_t> members = worlds_of(rt);
  if (members.size() > max_image) {
    throw ResourceExhausted("image team has " + std::to_string(members.size()) +
                            " worlds, above the successor-team limit");
  }
  std::uint64_t count = std::uint64_t{1} << members.size();
  for (std::uint64_t i = 0; i < count; ++i) {
    WorldSet s = 0;
    for (std::size_t b = 0; b < members.size(); ++b) {
      if ((i >> b) & 1U) s |= WorldSet{1} << members[b];
    }
    // S ⊆ RT holds by construction.
    if ((team & ~k.preimage(s)) != 0) continue;
    if (!visit(s)) return;
  }
}

std::vector<WorldSet> successor_teams(const KripkeStructure& k, WorldSet team,
                                      std::size_t max_image) {
  std::vector<WorldSet> out;
  for_each_successor_team(k, team, [&](WorldSet s) {
    out.push_back(s);
    return true;
  }, max_image);
  return out;
}

}  // namespace teamlogic
