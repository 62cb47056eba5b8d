#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace teamlogic {

// Set of worlds as a bit mask; at most 64 worlds.
using WorldSet = std::uint64_t;

inline constexpr std::size_t kMaxWorlds = 64;

WorldSet world_set(const std::vector<std::size_t>& worlds);
std::vector<std::size_t> worlds_of(WorldSet set);

class KripkeStructure {
 public:
  explicit KripkeStructure(std::size_t worlds = 1);

  std::size_t world_count() const { return worlds_; }
  WorldSet all_worlds() const;

  void add_edge(std::size_t from, std::size_t to);
  bool has_edge(std::size_t from, std::size_t to) const;
  WorldSet successors(std::size_t world) const { return successors_.at(world); }
  // RT.
  WorldSet image(WorldSet team) const;
  // R^{-1}S: worlds with a successor in S.
  WorldSet preimage(WorldSet team) const;
  std::vector<std::pair<std::size_t, std::size_t>> edges() const;

  void set_valuation(const std::string& proposition, WorldSet worlds);
  // Throws UnknownSymbolError for propositions without a valuation.
  WorldSet valuation(const std::string& proposition) const;
  const std::map<std::string, WorldSet>& valuations() const { return valuation_; }

  friend bool operator==(const KripkeStructure&, const KripkeStructure&) = default;

 private:
  std::size_t worlds_;
  std::vector<WorldSet> successors_;
  std::map<std::string, WorldSet> valuation_;
};

// Calls `visit` for every successor team S of T (S ⊆ RT and T ⊆ R^{-1}S),
// in increasing binary-counter order over subsets of RT, until `visit`
// returns false. Throws ResourceExhausted if |RT| exceeds `max_image`.
void for_each_successor_team(const KripkeStructure& k, WorldSet team,
                             const std::function<bool(WorldSet)>& visit,
                             std::size_t max_image = 24);
std::vector<WorldSet> successor_teams(const KripkeStructure& k, WorldSet team,
                                      std::size_t max_image = 24);

}  // namespace teamlogic
