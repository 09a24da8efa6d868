#include "spas/stability.hpp"

#include <algorithm>
#include <sstream>

namespace spas {

namespace {

// Worst assigned student per project and per lecturer (0 when empty), by the
// owning lecturer's preference order.
struct WorstTables {
    std::vector<int> of_project;
    std::vector<int> of_lecturer;
};

WorstTables compute_worsts(const Instance& instance, const Matching& matching)
{
    WorstTables worst;
    worst.of_project.assign(instance.num_projects() + 1, 0);
    worst.of_lecturer.assign(instance.num_lecturers() + 1, 0);
    for (int s = 1; s <= instance.num_students(); ++s) {
        int p = matching.project_of(s);
        if (p == 0)
            continue;
        int l = instance.owner(p);
        int& wp = worst.of_project[p];
        if (wp == 0 || instance.lecturer_prefers_student(l, wp, s))
            wp = s;
        int& wl = worst.of_lecturer[l];
        if (wl == 0 || instance.lecturer_prefers_student(l, wl, s))
            wl = s;
    }
    return worst;
}

}

std::vector<BlockingPair> blocking_pairs(const Instance& instance, const Matching& matching)
{
    auto violations = validate_matching(instance, matching);
    if (!violations.empty())
        throw std::invalid_argument("invalid matching: " + violations.front());

    Loads loads = compute_loads(instance, matching);
    WorstTables worst = compute_worsts(instance, matching);

    std::vector<BlockingPair> blocking;
    for (int s = 1; s <= instance.num_students(); ++s) {
        const auto& list = instance.ranked_projects(s);
        // only projects strictly better than the current assignment can block
        int limit = matching.assigned(s) ? instance.student_rank(s, matching.project_of(s))
                                         : static_cast<int>(list.size());
        for (int idx = 0; idx < limit; ++idx) {
            int p = list[idx];
            int l = instance.owner(p);
            bool p_full = loads.project[p] >= instance.project_capacity(p);
            bool l_full = loads.lecturer[l] >= instance.lecturer_capacity(l);
            if (p_full) {
                if (instance.lecturer_prefers_student(l, s, worst.of_project[p]))
                    blocking.push_back({s, p, BlockingClause::c});
            }
            else if (!l_full) {
                blocking.push_back({s, p, BlockingClause::a});
            }
            else {
                bool already_with_l = matching.assigned(s) && instance.owner(matching.project_of(s)) == l;
                if (already_with_l || instance.lecturer_prefers_student(l, s, worst.of_lecturer[l]))
                    blocking.push_back({s, p, BlockingClause::b});
            }
        }
    }
    return blocking;
}

bool is_stable(const Instance& instance, const Matching& matching)
{
    return blocking_pairs(instance, matching).empty();
}

std::string blocking_report(const std::vector<BlockingPair>& pairs)
{
    std::ostringstream out;
    for (const BlockingPair& bp : pairs) {
        char clause = bp.clause == BlockingClause::a ? 'a' : bp.clause == BlockingClause::b ? 'b' : 'c';
        out << "BLOCK s" << bp.student << " p" << bp.project << " clause=" << clause << "\n";
    }
    return out.str();
}

StudentVerdict compare_for_student(const Instance& instance,
    const Matching& first, const Matching& second, int s)
{
    int p1 = first.project_of(s);
    int p2 = second.project_of(s);
    if (p1 == p2)
        return StudentVerdict::indifferent;
    if (p1 == 0)
        return StudentVerdict::prefers_second;
    if (p2 == 0)
        return StudentVerdict::prefers_first;
    return instance.student_prefers(s, p1, p2) ? StudentVerdict::prefers_first
                                               : StudentVerdict::prefers_second;
}

bool dominates(const Instance& instance, const Matching& first, const Matching& second)
{
    for (int s = 1; s <= instance.num_students(); ++s)
        if (compare_for_student(instance, first, second, s) == StudentVerdict::prefers_second)
            return false;
    return true;
}

LecturerVerdict lecturer_prefers(const Instance& instance,
    const Matching& first, const Matching& second, int l)
{
    std::vector<int> in_first = lecturer_members(instance, first, l);
    std::vector<int> in_second = lecturer_members(instance, second, l);
    if (in_first.size() != in_second.size())
        throw std::invalid_argument("lecturer l" + std::to_string(l) +
            " is assigned different numbers of students; both matchings must be stable");

    auto by_rank = [&](int a, int b) { return instance.lecturer_prefers_student(l, a, b); };
    std::vector<int> only_first, only_second;
    std::set_difference(in_first.begin(), in_first.end(), in_second.begin(), in_second.end(),
        std::back_inserter(only_first));
    std::set_difference(in_second.begin(), in_second.end(), in_first.begin(), in_first.end(),
        std::back_inserter(only_second));
    if (only_first.empty())
        return LecturerVerdict::identical;

    std::sort(only_first.begin(), only_first.end(), by_rank);
    std::sort(only_second.begin(), only_second.end(), by_rank);

    bool first_everywhere = true, second_everywhere = true;
    for (std::size_t i = 0; i < only_first.size(); ++i) {
        if (by_rank(only_first[i], only_second[i]))
            second_everywhere = false;
        else
            first_everywhere = false;
    }
    if (first_everywhere)
        return LecturerVerdict::prefers_first;
    if (second_everywhere)
        return LecturerVerdict::prefers_second;
    return LecturerVerdict::incomparable;
}

std::optional<AuditCounterexample> unpopular_projects_audit(const Instance& instance,
    const std::vector<Matching>& matchings)
{
    if (matchings.size() < 2)
        return std::nullopt;
    std::vector<Loads> loads;
    loads.reserve(matchings.size());
    for (const Matching& m : matchings)
        loads.push_back(compute_loads(instance, m));

    const Matching& base = matchings.front();
    for (std::size_t m = 1; m < matchings.size(); ++m) {
        for (int s = 1; s <= instance.num_students(); ++s)
            if (base.assigned(s) != matchings[m].assigned(s))
                return AuditCounterexample{1, 0, static_cast<int>(m), s,
                    "student s" + std::to_string(s) + " is assigned in one matching but not the other"};
        for (int l = 1; l <= instance.num_lecturers(); ++l)
            if (loads.front().lecturer[l] != loads[m].lecturer[l])
                return AuditCounterexample{2, 0, static_cast<int>(m), l,
                    "lecturer l" + std::to_string(l) + " is assigned " +
                        std::to_string(loads.front().lecturer[l]) + " vs " +
                        std::to_string(loads[m].lecturer[l]) + " students"};
    }

    // clause 3: projects of a lecturer undersubscribed anywhere keep a fixed load
    for (int l = 1; l <= instance.num_lecturers(); ++l) {
        bool undersubscribed_somewhere = false;
        for (const Loads& ld : loads)
            if (ld.lecturer[l] < instance.lecturer_capacity(l))
                undersubscribed_somewhere = true;
        if (!undersubscribed_somewhere)
            continue;
        for (int p : instance.projects_of(l))
            for (std::size_t m = 1; m < matchings.size(); ++m)
                if (loads.front().project[p] != loads[m].project[p])
                    return AuditCounterexample{3, 0, static_cast<int>(m), p,
                        "project p" + std::to_string(p) + " of undersubscribed lecturer l" +
                            std::to_string(l) + " is assigned " + std::to_string(loads.front().project[p]) +
                            " vs " + std::to_string(loads[m].project[p]) + " students"};
    }
    return std::nullopt;
}

}
