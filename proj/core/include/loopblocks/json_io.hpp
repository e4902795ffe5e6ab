#pragma once

#include <string>
#include <vector>

#include "loopblocks/block_engine.hpp"
#include "loopblocks/gauge.hpp"
#include "loopblocks/group.hpp"
#include "loopblocks/rep.hpp"
#include "loopblocks/topology.hpp"

namespace loopblocks {

// {"order": n, "cayley": [[...]]} or {"family": "D", "param": 6}
FiniteGroup load_group_json(const std::string& path);

std::string group_to_json(const FiniteGroup& g);
std::string character_table_to_json(const CharacterTable& ct);
std::string block_structure_to_json(const BlockStructure& bs);
std::string gauge_blocks_to_json(const GaugeBlockStructure& gb);

// Re-reads a blocks document and recomputes the dimension bookkeeping
// (round-trip check for the CLI).
struct BlocksRoundTrip {
  long long total_dof = 0;
  long long recomputed = 0;
  bool consistent = false;
};
BlocksRoundTrip reparse_blocks_json(const std::string& text);

// {"amplitudes": [{"orbit": [...], "sector": [...], "values": [...]}]}
std::vector<SectorAmplitudes> load_state_json(const std::string& path);

// Two-sided presentation file for generic cuts:
// {"x": {"generators": 2, "relators": [[...]], "boundary": [[...]]},
//  "y": {...}, "pairing": [0, ...], "signs": [1, ...], "base_points": 1}
GenericCut load_generic_cut_json(const std::string& path);

}  // namespace loopblocks
