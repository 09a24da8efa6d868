#pragma once

#include "spas/core_model.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace spas {

// Meta-rotations: the minimal moves between neighbouring stable matchings.
//
// For a stable matching M other than the lecturer-optimal M_L, every student
// assigned differently in M and M_L has a well-defined "next" project further
// down their list, and following student -> displaced student edges always
// reaches a cycle. Such a cycle, read as (student, current project) pairs, is
// an exposed meta-rotation; reassigning each of its students to their next
// project yields another stable matching dominated by M.

/// Cyclic list of (student, project) pairs, stored starting from the pair
/// with the smallest student id so equal rotations compare equal.
struct MetaRotation {
    std::vector<std::pair<int, int>> pairs;

    auto operator<=>(const MetaRotation&) const = default;
};

/// Rotates the cycle so the smallest student leads. The pair order must
/// already follow the cycle.
MetaRotation canonical_rotation(std::vector<std::pair<int, int>> cycle);

/// "rho = (s8,p6)(s9,p8)"
std::string rotation_text(const MetaRotation& rotation);

enum class NextMode { project_full, lecturer_full };

struct NextStep {
    int project = 0;     // the student's next project
    int displaced = 0;   // worst student of that project (project_full) or of its lecturer (lecturer_full)
    NextMode mode = NextMode::project_full;

    bool operator==(const NextStep&) const = default;
};

/// The member of M(p) ranked last by p's lecturer. Throws
/// std::invalid_argument when nobody is assigned to p.
int worst_assigned(const Instance& instance, const Matching& matching, int p);

/// The member of M(l) ranked last by l. Throws std::invalid_argument when l
/// has no assigned students.
int worst_assigned_lecturer(const Instance& instance, const Matching& matching, int l);

/// First project after M(s) on s's list that would take s: either full with a
/// worst student the lecturer likes less than s, or undersubscribed under a
/// full lecturer who prefers s to their worst student. Only defined for
/// students assigned differently in M and the lecturer-optimal matching;
/// returns nullopt for the others and when the scan exhausts the list.
/// Throws std::invalid_argument for an unassigned student.
std::optional<NextStep> next_project(const Instance& instance, const Matching& matching,
    const Matching& lecturer_opt, int s);

/// Convenience overload computing the lecturer-optimal matching itself.
std::optional<NextStep> next_project(const Instance& instance, const Matching& matching, int s);

/// Successor digraph H(M): one vertex per student assigned differently in M
/// and M_L, one edge from each vertex to the student its next step displaces.
struct RotationDigraph {
    std::vector<int> vertices;       // ascending student ids
    std::vector<int> successor;      // indexed by student id; 0 for non-vertices

    bool has_vertex(int s) const
    {
        return s >= 1 && s < static_cast<int>(successor.size()) && successor[s] != 0;
    }
};

/// Throws InternalError if any vertex lacks a next step or the displaced
/// student is not itself a vertex; for a stable M either would contradict
/// the structure the construction relies on.
RotationDigraph build_digraph(const Instance& instance, const Matching& matching,
    const Matching& lecturer_opt);

/// All meta-rotations exposed in M: the cycles of H(M), canonicalized and
/// sorted. Empty exactly when M equals the lecturer-optimal matching. Every
/// digraph vertex is either on one returned cycle or on a path into one.
std::vector<MetaRotation> exposed_rotations(const Instance& instance, const Matching& matching,
    const Matching& lecturer_opt);
std::vector<MetaRotation> exposed_rotations(const Instance& instance, const Matching& matching);

/// M/rho: each student of the rotation moves to their next project, everyone
/// else keeps theirs. All reassignments are computed first, then applied.
/// Throws std::invalid_argument when rho is not exposed in M.
Matching eliminate(const Instance& instance, const Matching& matching,
    const Matching& lecturer_opt, const MetaRotation& rotation);
Matching eliminate(const Instance& instance, const Matching& matching, const MetaRotation& rotation);

/// Drops every pair that cannot occur in any stable matching based on the two
/// optimal matchings: each student's list shrinks to the closed interval from
/// their student-optimal project to their lecturer-optimal project (empty for
/// students unassigned there), and lecturers drop students who no longer list
/// any of their projects. The stable-matching set is unchanged.
Instance reduce_instance(const Instance& instance);

}
