#pragma once

#include "spas/core_model.hpp"

#include <cstdint>
#include <vector>

namespace spas {

// Deferred-acceptance solvers for the two ends of the stable-matching order,
// plus an exhaustive enumeration oracle and a seeded instance generator for
// property tests.

/// The stable matching in which every student gets the best project they are
/// assigned in any stable matching. Students apply down their lists; full
/// projects and lecturers reject and prune. Deterministic: the proposal queue
/// is FIFO, seeded in ascending student order.
Matching student_optimal(const Instance& instance);

/// The stable matching at the opposite end: dominated by every stable
/// matching, best possible for the lecturers. Lecturers offer down their
/// lists while undersubscribed; a full lecturer may still shuffle its own
/// students between its projects when one of them prefers a project of that
/// lecturer with free capacity (such a pair would otherwise block).
/// Deterministic: the lowest-indexed lecturer with a feasible offer moves.
Matching lecturer_optimal(const Instance& instance);

/// Deduplicated stable matchings, sorted by their serialized form.
struct StableSet {
    std::vector<Matching> matchings;

    bool contains(const Matching& m) const;
};

/// Raised when the enumeration guard trips; never a silent truncation.
class BoundExceededError : public std::runtime_error {
public:
    explicit BoundExceededError(const std::string& message) : std::runtime_error(message) {}
};

inline constexpr std::uint64_t kDefaultOracleBound = 10'000'000;

/// Independent oracle: enumerates every capacity-respecting partial
/// assignment by backtracking over students and keeps the stable ones.
/// Exact and complete. The search-space guard is the product of
/// (list length + 1) over all students; above `bound` the call refuses
/// with BoundExceededError.
StableSet brute_force_all_stable(const Instance& instance, std::uint64_t bound = kDefaultOracleBound);

struct RandomBounds {
    int max_students = 6;
    int max_projects = 5;
    int max_lecturers = 3;
    int max_capacity = 2;
    int max_list = 4;
    int min_students = 1;    // raise to force larger markets
    int min_list = 0;        // raise to force denser preference lists
};

/// Deterministic in the seed. Student lists are random duplicate-free
/// project samples (possibly empty); each lecturer ranks exactly the
/// students who list at least one of its projects, in a random order, so the
/// result always validates.
Instance random_instance(std::uint32_t seed, const RandomBounds& bounds = {});

}
