#pragma once

#include <string>
#include <vector>

#include "snlab/operators.hpp"

namespace snlab {

// An operator with analytically known (or deliberately unknown) s-numbers,
// used as ground truth by the acceptance suite and the CLI.
struct GalleryEntry {
  std::string id;
  SequenceOperator op;
  std::string provenance;
};

// The operator zoo. Entries with known_snumbers carry a provenance note;
// the Hilbert matrix is included as a stress operator without ground truth
// and its reports are always flagged as extrapolated.
const std::vector<GalleryEntry>& gallery();

// nullptr when the id is unknown.
const GalleryEntry* gallery_find(const std::string& id);

}  // namespace snlab
