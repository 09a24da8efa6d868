#include "spas/solvers.hpp"

#include "spas/stability.hpp"

#include <algorithm>
#include <deque>
#include <optional>
#include <random>

namespace spas {

namespace {

// Shared bookkeeping for both deferred-acceptance directions: per-student
// active flags over the preference lists (deleted pairs become inactive) and
// running occupancy.
struct Workspace {
    const Instance& instance;
    Matching matching;
    Loads loads;
    std::vector<std::vector<char>> active;   // parallel to each student's ranked_projects

    explicit Workspace(const Instance& inst) :
        instance(inst),
        matching(inst.num_students())
    {
        loads.project.assign(inst.num_projects() + 1, 0);
        loads.lecturer.assign(inst.num_lecturers() + 1, 0);
        active.resize(inst.num_students() + 1);
        for (int s = 1; s <= inst.num_students(); ++s)
            active[s].assign(inst.ranked_projects(s).size(), 1);
    }

    bool pair_active(int s, int p) const
    {
        int rank = instance.student_rank(s, p);
        return rank >= 0 && active[s][rank];
    }

    void deactivate(int s, int p)
    {
        int rank = instance.student_rank(s, p);
        if (rank >= 0)
            active[s][rank] = 0;
    }

    void assign(int s, int p)
    {
        matching.assign(s, p);
        ++loads.project[p];
        ++loads.lecturer[instance.owner(p)];
    }

    void unassign(int s)
    {
        int p = matching.project_of(s);
        internal_check(p != 0, "unassigning a free student");
        --loads.project[p];
        --loads.lecturer[instance.owner(p)];
        matching.unassign(s);
    }

    bool project_full(int p) const { return loads.project[p] >= instance.project_capacity(p); }
    bool lecturer_full(int l) const { return loads.lecturer[l] >= instance.lecturer_capacity(l); }

    // worst member by l's order; 0 when none
    int worst_of_project(int p) const
    {
        int l = instance.owner(p), worst = 0;
        for (int s = 1; s <= instance.num_students(); ++s)
            if (matching.project_of(s) == p && (worst == 0 || instance.lecturer_prefers_student(l, worst, s)))
                worst = s;
        return worst;
    }

    int worst_of_lecturer(int l) const
    {
        int worst = 0;
        for (int s = 1; s <= instance.num_students(); ++s) {
            int p = matching.project_of(s);
            if (p != 0 && instance.owner(p) == l && (worst == 0 || instance.lecturer_prefers_student(l, worst, s)))
                worst = s;
        }
        return worst;
    }
};

}

Matching student_optimal(const Instance& instance)
{
    Workspace ws(instance);
    std::deque<int> queue;
    for (int s = 1; s <= instance.num_students(); ++s)
        if (!instance.ranked_projects(s).empty())
            queue.push_back(s);
    std::vector<int> cursor(instance.num_students() + 1, 0);

    while (!queue.empty()) {
        int s = queue.front();
        queue.pop_front();
        if (ws.matching.assigned(s))
            continue;
        const auto& list = instance.ranked_projects(s);
        int& idx = cursor[s];
        while (idx < static_cast<int>(list.size()) && !ws.active[s][idx])
            ++idx;
        if (idx == static_cast<int>(list.size()))
            continue;                     // list exhausted, stays unassigned

        int p = list[idx];
        int l = instance.owner(p);
        ws.assign(s, p);

        if (ws.loads.project[p] > instance.project_capacity(p)) {
            int displaced = ws.worst_of_project(p);
            ws.unassign(displaced);
            queue.push_back(displaced);
        }
        else if (ws.loads.lecturer[l] > instance.lecturer_capacity(l)) {
            int displaced = ws.worst_of_lecturer(l);
            ws.unassign(displaced);
            queue.push_back(displaced);
        }

        if (ws.project_full(p)) {
            int worst = ws.worst_of_project(p);
            const auto& ranked = instance.ranked_students(l);
            for (int i = instance.lecturer_rank(l, worst) + 1; i < static_cast<int>(ranked.size()); ++i)
                ws.deactivate(ranked[i], p);
        }
        if (ws.lecturer_full(l)) {
            int worst = ws.worst_of_lecturer(l);
            const auto& ranked = instance.ranked_students(l);
            for (int i = instance.lecturer_rank(l, worst) + 1; i < static_cast<int>(ranked.size()); ++i)
                for (int q : instance.projects_of(l))
                    ws.deactivate(ranked[i], q);
        }
    }
    return ws.matching;
}

namespace {

struct Offer {
    int student = 0;
    int project = 0;
};

// Best offer lecturer l can make right now, or nullopt. While l is
// undersubscribed any student on its list may be offered any of l's
// undersubscribed projects that the student prefers to their current
// assignment; once l is full only its own students may be moved. Students
// are tried in l's preference order, projects in the student's order.
std::optional<Offer> find_offer(const Workspace& ws, int l)
{
    const Instance& inst = ws.instance;
    bool full = ws.lecturer_full(l);
    for (int s : inst.ranked_students(l)) {
        int current = ws.matching.project_of(s);
        if (full && (current == 0 || inst.owner(current) != l))
            continue;
        const auto& list = inst.ranked_projects(s);
        int limit = current == 0 ? static_cast<int>(list.size()) : inst.student_rank(s, current);
        for (int idx = 0; idx < limit; ++idx) {
            int p = list[idx];
            if (!ws.active[s][idx] || inst.owner(p) != l || ws.project_full(p))
                continue;
            return Offer{s, p};
        }
    }
    return std::nullopt;
}

}

Matching lecturer_optimal(const Instance& instance)
{
    Workspace ws(instance);
    for (;;) {
        std::optional<Offer> offer;
        for (int l = 1; l <= instance.num_lecturers() && !offer; ++l)
            offer = find_offer(ws, l);
        if (!offer)
            break;
        if (ws.matching.assigned(offer->student))
            ws.unassign(offer->student);
        ws.assign(offer->student, offer->project);
        // the student never needs anything below the accepted project again
        const auto& list = instance.ranked_projects(offer->student);
        for (int i = instance.student_rank(offer->student, offer->project) + 1;
             i < static_cast<int>(list.size()); ++i)
            ws.active[offer->student][i] = 0;
    }
    return ws.matching;
}

bool StableSet::contains(const Matching& m) const
{
    return std::find(matchings.begin(), matchings.end(), m) != matchings.end();
}

namespace {

struct OracleSearch {
    const Instance& instance;
    Matching matching;
    Loads loads;
    std::vector<Matching> found;

    explicit OracleSearch(const Instance& inst) :
        instance(inst),
        matching(inst.num_students())
    {
        loads.project.assign(inst.num_projects() + 1, 0);
        loads.lecturer.assign(inst.num_lecturers() + 1, 0);
    }

    // Stability check against precomputed loads; early exit on first block.
    bool stable() const
    {
        for (int s = 1; s <= instance.num_students(); ++s) {
            const auto& list = instance.ranked_projects(s);
            int limit = matching.assigned(s) ? instance.student_rank(s, matching.project_of(s))
                                             : static_cast<int>(list.size());
            for (int idx = 0; idx < limit; ++idx) {
                int p = list[idx];
                int l = instance.owner(p);
                bool p_full = loads.project[p] >= instance.project_capacity(p);
                bool l_full = loads.lecturer[l] >= instance.lecturer_capacity(l);
                if (p_full) {
                    if (prefers_to_worst_of_project(l, s, p))
                        return false;
                }
                else if (!l_full) {
                    return false;
                }
                else {
                    bool already_with_l = matching.assigned(s) && instance.owner(matching.project_of(s)) == l;
                    if (already_with_l || prefers_to_worst_of_lecturer(l, s))
                        return false;
                }
            }
        }
        return true;
    }

    bool prefers_to_worst_of_project(int l, int s, int p) const
    {
        for (int t = 1; t <= instance.num_students(); ++t)
            if (matching.project_of(t) == p && instance.lecturer_prefers_student(l, s, t))
                return true;
        return false;
    }

    bool prefers_to_worst_of_lecturer(int l, int s) const
    {
        for (int t = 1; t <= instance.num_students(); ++t) {
            int p = matching.project_of(t);
            if (p != 0 && instance.owner(p) == l && instance.lecturer_prefers_student(l, s, t))
                return true;
        }
        return false;
    }

    void recurse(int s)
    {
        if (s > instance.num_students()) {
            if (stable())
                found.push_back(matching);
            return;
        }
        recurse(s + 1);                     // s stays unassigned
        for (int p : instance.ranked_projects(s)) {
            int l = instance.owner(p);
            if (loads.project[p] >= instance.project_capacity(p) ||
                loads.lecturer[l] >= instance.lecturer_capacity(l))
                continue;
            matching.assign(s, p);
            ++loads.project[p];
            ++loads.lecturer[l];
            recurse(s + 1);
            --loads.project[p];
            --loads.lecturer[l];
            matching.unassign(s);
        }
    }
};

}

StableSet brute_force_all_stable(const Instance& instance, std::uint64_t bound)
{
    std::uint64_t states = 1;
    for (int s = 1; s <= instance.num_students(); ++s) {
        std::uint64_t branch = instance.ranked_projects(s).size() + 1;
        if (states > bound / branch)
            throw BoundExceededError("enumeration space exceeds the bound of " + std::to_string(bound) +
                " partial assignments; refusing rather than truncating");
        states *= branch;
    }

    OracleSearch search(instance);
    search.recurse(1);
    std::sort(search.found.begin(), search.found.end(),
        [](const Matching& a, const Matching& b) { return serialize_matching(a) < serialize_matching(b); });
    return StableSet{std::move(search.found)};
}

namespace {

// Hand-rolled draws so the generator is deterministic across standard
// libraries; distribution quality is irrelevant here.
int draw(std::mt19937& rng, int lo, int hi)
{
    return lo + static_cast<int>(rng() % static_cast<std::uint32_t>(hi - lo + 1));
}

template <typename T>
void shuffle_in_place(std::mt19937& rng, std::vector<T>& values)
{
    for (int i = static_cast<int>(values.size()) - 1; i > 0; --i)
        std::swap(values[i], values[draw(rng, 0, i)]);
}

}

Instance random_instance(std::uint32_t seed, const RandomBounds& bounds)
{
    std::mt19937 rng(seed);
    int n1 = draw(rng, std::min(bounds.min_students, bounds.max_students), bounds.max_students);
    int n2 = draw(rng, 1, bounds.max_projects);
    int n3 = draw(rng, 1, bounds.max_lecturers);

    std::vector<ProjectSpec> projects(n2);
    for (ProjectSpec& spec : projects) {
        spec.capacity = draw(rng, 1, bounds.max_capacity);
        spec.owner = draw(rng, 1, n3);
    }

    std::vector<StudentPref> students(n1);
    std::vector<int> all_projects(n2);
    for (int p = 1; p <= n2; ++p)
        all_projects[p - 1] = p;
    for (StudentPref& pref : students) {
        int cap = std::min(bounds.max_list, n2);
        int len = draw(rng, std::min(bounds.min_list, cap), cap);
        shuffle_in_place(rng, all_projects);
        pref.ranked_projects.assign(all_projects.begin(), all_projects.begin() + len);
    }

    std::vector<LecturerSpec> lecturers(n3);
    for (int l = 1; l <= n3; ++l) {
        LecturerSpec& spec = lecturers[l - 1];
        spec.capacity = draw(rng, 1, bounds.max_capacity);
        for (int s = 1; s <= n1; ++s) {
            bool lists_one = false;
            for (int p : students[s - 1].ranked_projects)
                if (projects[p - 1].owner == l)
                    lists_one = true;
            if (lists_one)
                spec.ranked_students.push_back(s);
        }
        shuffle_in_place(rng, spec.ranked_students);
    }

    return Instance(std::move(students), std::move(projects), std::move(lecturers));
}

}
