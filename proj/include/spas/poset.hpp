#pragma once

#include "spas/core_model.hpp"
#include "spas/rotations.hpp"
#include "spas/stability.hpp"

#include <string>
#include <utility>
#include <vector>

namespace spas {

// The structure of the whole stable set: repeated elimination from the
// student-optimal matching discovers every stable matching and every
// meta-rotation; rotations ordered by "must be eliminated first" form a
// poset whose downward-closed subsets correspond one-to-one with the stable
// matchings.

struct LatticeEdge {
    int from = 0;        // matching index
    int rotation = 0;    // rotation id
    int to = 0;          // matching index

    auto operator<=>(const LatticeEdge&) const = default;
};

struct EliminationLattice {
    std::vector<Matching> matchings;           // discovery order; [0] is student-optimal
    std::vector<MetaRotation> rotations;       // registry with dense ids
    std::vector<LatticeEdge> edges;            // one per (matching, exposed rotation)
    std::vector<std::vector<int>> closed_sets; // per matching: rotation ids eliminated to reach it
    int lecturer_optimal_index = 0;

    /// Index of a matching in `matchings`, or -1 when unknown.
    int index_of(const Matching& matching) const;
    /// Id of a rotation in the registry, or -1 when unknown.
    int rotation_id(const MetaRotation& rotation) const;
};

/// Breadth-first closure under rotation elimination starting from the
/// student-optimal matching. Eliminations are checked stable, closed sets are
/// checked path-independent, and the one matching without exposed rotations
/// must be the lecturer-optimal one; violations raise InternalError since
/// each would be a bug, not an input problem.
EliminationLattice explore_lattice(const Instance& instance);

struct RotationPoset {
    std::vector<MetaRotation> rotations;
    std::vector<std::vector<char>> leq;        // leq[a][b]: a must be eliminated before (or is) b
    std::vector<std::pair<int, int>> hasse;    // cover edges of leq, sorted
};

/// leq is the reflexive-transitive closure of must-precede, where rho1
/// must-precede rho2 when rho1 lies in the closed set of every matching
/// exposing rho2; hasse is its transitive reduction.
RotationPoset build_poset(const EliminationLattice& lattice);

/// Ascending rotation ids.
using ClosedSubset = std::vector<int>;

bool is_closed(const RotationPoset& poset, const ClosedSubset& subset);

/// Every downward-closed subset of the poset, from the empty set to the full
/// registry, sorted lexicographically.
std::vector<ClosedSubset> closed_subsets(const RotationPoset& poset);

/// Replays the subset's rotations from the student-optimal matching,
/// eliminating whichever of them is exposed until the subset is exhausted.
/// The result is checked to be independent of the elimination order. Throws
/// std::invalid_argument when the subset is not closed.
Matching matching_from_closed_set(const Instance& instance, const EliminationLattice& lattice,
    const RotationPoset& poset, const ClosedSubset& subset);

/// The recorded closed set; inverse of matching_from_closed_set. Throws
/// std::invalid_argument when the matching is not in the lattice.
ClosedSubset closed_set_of_matching(const EliminationLattice& lattice, const Matching& matching);

/// Raised by find_target for an unstable target; carries the evidence.
class UnstableTargetError : public std::runtime_error {
public:
    explicit UnstableTargetError(std::vector<BlockingPair> pairs);
    const std::vector<BlockingPair>& pairs() const { return pairs_; }

private:
    std::vector<BlockingPair> pairs_;
};

/// A sequence of rotations whose successive elimination from the
/// student-optimal matching ends exactly at the target: at every step the
/// lowest exposed rotation containing a student assigned differently from
/// the target is taken. Empty when the target is the student-optimal
/// matching itself.
std::vector<MetaRotation> find_target(const Instance& instance, const Matching& target);

enum class PosetFormat { dot, json };

/// DOT digraph of the hasse edges labelled with the rotations, or a JSON
/// document {"rotations":[{"id":..,"pairs":[[s,p],..]},..],"hasse":[[a,b],..],
/// "leq":[[a,b],..]}. Both deterministic.
std::string export_poset(const RotationPoset& poset, PosetFormat format);

}
