#pragma once

#include "spas/core_model.hpp"

#include <optional>
#include <string>
#include <vector>

namespace spas {

// Blocking-pair detection and the preference relations between matchings.
//
// An acceptable pair (s, p) not in M, with p offered by l, blocks M when s is
// unassigned or prefers p to M(s), and one of:
//   (a) both p and l are undersubscribed;
//   (b) p is undersubscribed, l is full, and s is already assigned to one of
//       l's projects or l prefers s to the worst student assigned to l;
//   (c) p is full and l prefers s to the worst student assigned to p.
// A matching is stable when it admits no blocking pair.

enum class BlockingClause { a, b, c };

struct BlockingPair {
    int student = 0;
    int project = 0;
    BlockingClause clause = BlockingClause::a;

    bool operator==(const BlockingPair&) const = default;
};

/// All blocking pairs of a valid matching, ordered by student and then by
/// the project's position on that student's list. Empty iff the matching is
/// stable. Throws std::invalid_argument when the matching itself is invalid.
std::vector<BlockingPair> blocking_pairs(const Instance& instance, const Matching& matching);

bool is_stable(const Instance& instance, const Matching& matching);

/// "BLOCK s<i> p<j> clause=<a|b|c>" lines, one per pair.
std::string blocking_report(const std::vector<BlockingPair>& pairs);

enum class StudentVerdict { prefers_first, prefers_second, indifferent };

/// How student s ranks two matchings: indifferent exactly when unassigned in
/// both or assigned the same project in both; being assigned beats being
/// unassigned; otherwise list order decides.
StudentVerdict compare_for_student(const Instance& instance,
    const Matching& first, const Matching& second, int s);

/// True when every student weakly prefers `first` (prefers_first or
/// indifferent). Intended for stable matchings; this is the order whose top
/// is the student-optimal and whose bottom is the lecturer-optimal matching.
bool dominates(const Instance& instance, const Matching& first, const Matching& second);

enum class LecturerVerdict { prefers_first, prefers_second, incomparable, identical };

/// Pointwise comparison of the symmetric-difference sequences of l's assigned
/// students, each ordered by l's preference list. Requires both matchings to
/// assign l the same number of students (true for stable matchings); throws
/// std::invalid_argument otherwise.
LecturerVerdict lecturer_prefers(const Instance& instance,
    const Matching& first, const Matching& second, int l);

struct AuditCounterexample {
    int clause = 0;             // 1, 2 or 3, matching the properties below
    int first_matching = 0;     // indices into the audited collection
    int second_matching = 0;
    int entity = 0;             // student, lecturer or project id depending on clause
    std::string description;
};

/// Checks the facts that hold across all stable matchings of one instance:
///   (1) the same students are assigned,
///   (2) every lecturer is assigned the same number of students,
///   (3) a project offered by a lecturer undersubscribed in any of the
///       matchings is assigned the same number of students in all of them.
/// Returns the first counterexample found, or nullopt when all three hold.
/// The inputs are not checked for stability, so constructed violations are
/// reported rather than rejected.
std::optional<AuditCounterexample> unpopular_projects_audit(const Instance& instance,
    const std::vector<Matching>& matchings);

}
