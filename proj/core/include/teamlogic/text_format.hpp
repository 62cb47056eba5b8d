#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "teamlogic/kripke.hpp"
#include "teamlogic/structure.hpp"

namespace teamlogic {

struct SOAssignment;

// Contents of a structure file:
//
//   domain 2
//   rel R { (0,1) (1,1) }        arity taken from the tuples
//   rel E 2 { }                  explicit arity, needed when empty
//   fun f { (0)->1 (1)->0 }      must be total
//   fun c { ()->0 }              constant
//   team x y { (0,1) (1,0) }     unnamed teams are called T, T1, T2, ...
//   team S: x { (0) }
//   team { () }                  the team containing the empty assignment
//   kripke 3 { edges (0,1) (0,2) ; val p { 1 2 } ; team { 0 } }
//
// `#` starts a comment.
struct Document {
  std::optional<Structure> structure;
  std::vector<std::pair<std::string, Team>> teams;
  std::optional<KripkeStructure> kripke;
  std::vector<std::pair<std::string, WorldSet>> world_teams;

  // Throw UnknownSymbolError for missing names.
  const Team& team(const std::string& name) const;
  WorldSet world_team(const std::string& name) const;
};

Document parse_document(std::string_view text);
Document load_document(const std::string& path);

// Second-order assignment file, over a structure with the given domain size:
//   rel S 2 { (0,1) }
//   fun g { (0)->1 (1)->0 }
//   var x 0
SOAssignment parse_so_assignment(std::string_view text, std::size_t domain_size);
SOAssignment load_so_assignment(const std::string& path, std::size_t domain_size);

// Writers producing text the readers accept.
std::string format_structure(const Structure& structure);
std::string format_team(const Team& team, const std::string& name = "");
std::string format_kripke(const KripkeStructure& kripke,
                          const std::vector<std::pair<std::string, WorldSet>>& teams = {});
std::string format_world_set(WorldSet set);

std::string read_file(const std::string& path);

}  // namespace teamlogic
