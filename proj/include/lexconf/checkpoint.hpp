#pragma once

#include <cstdint>

#include "lexconf/generator.hpp"
#include "lexconf/period.hpp"
#include "lexconf/rowlog.hpp"

namespace lexconf {

/// Everything needed to continue a long run exactly where it stopped.
struct Checkpoint {
  Generator generator{1};
  /// FNV-1a over the row log text of every row emitted so far.
  std::uint64_t running_hash = kFnvOffset;
  /// Byte length of the associated row log at save time; 0 without a log.
  std::uint64_t log_offset = 0;
  DetectorState detector{DetectorAlgorithm::none, 0, {}};

  bool operator==(const Checkpoint&) const = default;
};

}  // namespace lexconf
