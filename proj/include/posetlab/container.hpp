#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "posetlab/bigint.hpp"
#include "posetlab/set_family.hpp"

namespace posetlab {

inline constexpr int kMaxContainerGround = 16;

/// Which maximum antichain of an up-set gets removed in a branching round.
enum class AntichainRule {
    lowest,         // the unique one with least total set size
    lexicographic,  // smallest ascending code sequence
};

enum class RoundAction {
    drop,       // chosen set is not in F: only it leaves the ground family
    remove,     // chosen set is in F and heavy: it and an antichain above it leave
    end_phase,  // chosen set is in F and light: the phase stops here
};

const char* to_string(RoundAction action) noexcept;

struct ContainerRound {
    std::size_t round = 0;  // 1-based
    Code chosen = 0;
    std::size_t weight = 0;
    int phase = 1;
    RoundAction action = RoundAction::drop;
    std::vector<Code> removed;  // ascending

    bool operator==(const ContainerRound&) const = default;
};

struct ContainerOutput {
    int ground_n = 0;
    SetFamily h1;
    SetFamily h2;
    SetFamily f_h1;  // ground family when the first phase stopped
    SetFamily g;     // ground family when the second phase stopped
    std::vector<ContainerRound> trace;
    /// Number of rounds played in the first phase (including the stopping round).
    std::size_t phase_boundary = 0;
    /// Set when eps exceeds 1/(2t)^(t+1).
    bool eps_above_hypothesis = false;

    bool operator==(const ContainerOutput&) const = default;
};

/// Two-phase container algorithm for an induced vee_{r+1}-free family F over [n].
/// The ground family starts as 2^[n]; each round takes the member of largest
/// weight (largest antichain among its supersets in the ground family, itself
/// included), smallest code on ties. Heavy sets of F are removed together with
/// a maximum antichain above them: first-phase threshold n^(t+0.9) (compared as
/// w^10 > n^(10t+9)), second-phase threshold eps^2 n^t. A phase also stops once
/// the ground family is empty.
ContainerOutput run_container(const SetFamily& family, int t, int r, const ExactRational& eps,
                              AntichainRule rule = AntichainRule::lowest);

struct BoundCheck {
    std::string name;
    std::string value;
    std::string limit;
    bool satisfied = false;
};

struct ContainerReport {
    std::size_t rounds_replayed = 0;
    /// Largest strict-superset weight inside g among members of F.
    std::size_t final_weight = 0;
    /// Asymptotic size bounds, reported but never enforced.
    std::vector<BoundCheck> bounds;
};

/// Replays the trace against F and re-checks every structural conclusion, the
/// per-round accounting and the stopping weights; throws InvariantViolation
/// naming the first failure.
ContainerReport verify_container(const ContainerOutput& out, const SetFamily& family, int t, int r,
                                 const ExactRational& eps);

enum class FamilyGenerator {
    middle_antichain,  // random subfamily of the middle level
    greedy,            // random greedy induced vee_{r+1}-free family on the middle three levels
};

FamilyGenerator parse_family_generator(const std::string& name);

SetFamily generate_vee_free_family(int n, int r, FamilyGenerator generator, std::uint64_t seed);

struct CensusSummary {
    std::size_t runs = 0;
    std::size_t distinct_containers = 0;  // distinct (H1, H2) pairs
    std::size_t max_h = 0;                // largest |H1 u H2|
    std::size_t max_container = 0;        // largest |H1 u H2 u g|
    /// (1 + 2 eps) C(n, n/2), the container size the counting argument uses.
    ExactRational container_limit;
    std::size_t over_limit = 0;
    /// max |H1 u H2| * n: bits needed to name H1 u H2 inside 2^[n].
    std::size_t max_h_bits = 0;
};

CensusSummary container_census(int n, int t, int r, const ExactRational& eps, FamilyGenerator generator,
                               std::size_t trials, std::uint64_t seed);

}  // namespace posetlab
