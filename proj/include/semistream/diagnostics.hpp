#pragma once
// Post-hoc diagnostics over a recorded improve-matching trace: labels every
// 3-augmentable base edge good, partially good, or bad under the charging
// scheme, and checks the bad-edge and charges-per-good-edge bounds.  Pure
// test machinery; never feeds back into algorithm behavior.

#include <cstddef>
#include <string>
#include <vector>

#include "semistream/core.hpp"
#include "semistream/oracle.hpp"
#include "semistream/support.hpp"

namespace semistream {

struct ChargingReport {
  std::size_t augmentable = 0;     // 3-augmentable base edges
  std::size_t good = 0;            // augmented base edges (3-augmentable or not)
  std::size_t partially_good = 0;  // charged to some good edge
  std::size_t bad = 0;
  std::size_t max_charges = 0;  // heaviest charge load on one good edge

  bool lemma3_ok = false;  // bad * lambda_u <= lambda_m * |M0|
  bool lemma4_ok = false;  // max_charges <= 2*lambda_u - 1 (2*lambda_u - 2 strict)

  // Coverage failures; a nonempty list means the classifier could not map
  // some trace onto the scheme's cases and the run should be investigated.
  std::vector<std::string> errors;
};

// Classify one pass.  `m0` is the pass's base matching and `d` the
// decomposition of m0 against the canonicalized optimum, whose 3-augmenting
// paths drive the labeling.
ChargingReport classify_trace(const ImproveTrace& trace, const Matching& m0,
                              const AugDecomposition& d);

}  // namespace semistream
