#pragma once

// Brute-force integer ground truth for the quantities the ensemble
// simulation is expected to reproduce. Nothing here touches complex
// matrices; only the unit-number table is shared with the simulator.

#include <optional>
#include <vector>

#include "nmrparity/oracle_ops.hpp"
#include "nmrparity/spin_core.hpp"

namespace nmrparity {

struct ReferenceReport {
    int parity = 1;
    long G = 0;
    std::vector<long> P;
    /// M_k for the offset spec the report was built with, if any.
    std::optional<std::vector<long>> M;
};

/// prod_x f(x).
int brute_parity(const PhaseFunction& f);

/// sum_x g(x).
long brute_g(const PhaseFunction& f);

/// P_k = sum_s g(s) a_k^s for k = 1..n.
std::vector<long> brute_pk(const PhaseFunction& f, const UnitNumberTable& table);

/// M_k = sum over the canonical index set of a_k^l.
std::vector<long> brute_mk(const MSpec& spec, const UnitNumberTable& table);

/// Exact integer readout with an offset operation inserted. With combined
/// phase exp(-i pi/2 h_x), h = g - m, each spin-k pair (r, r with bit k set)
/// contributes sin(pi/2 (h_r - h_c)) in {-1, 0, 1}. Equals P_k - M_k
/// only when no pair has |h_r - h_c| = 2.
std::vector<long> brute_offset_signal(const PhaseFunction& f, const MSpec& spec,
                                      const UnitNumberTable& table);

ReferenceReport reference_report(const PhaseFunction& f,
                                 const std::optional<MSpec>& spec = std::nullopt);

}  // namespace nmrparity
