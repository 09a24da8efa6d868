#include "spas/rotations.hpp"

#include "spas/solvers.hpp"
#include "spas/stability.hpp"

#include <algorithm>
#include <sstream>

namespace spas {

MetaRotation canonical_rotation(std::vector<std::pair<int, int>> cycle)
{
    internal_check(cycle.size() >= 2, "a meta-rotation has at least two pairs");
    auto lead = std::min_element(cycle.begin(), cycle.end());
    std::rotate(cycle.begin(), lead, cycle.end());
    return MetaRotation{std::move(cycle)};
}

std::string rotation_text(const MetaRotation& rotation)
{
    std::ostringstream out;
    out << "rho = ";
    for (auto [s, p] : rotation.pairs)
        out << "(s" << s << ",p" << p << ")";
    return out.str();
}

int worst_assigned(const Instance& instance, const Matching& matching, int p)
{
    int l = instance.owner(p), worst = 0;
    for (int s = 1; s <= instance.num_students(); ++s)
        if (matching.project_of(s) == p && (worst == 0 || instance.lecturer_prefers_student(l, worst, s)))
            worst = s;
    if (worst == 0)
        throw std::invalid_argument("no student is assigned to project p" + std::to_string(p));
    return worst;
}

int worst_assigned_lecturer(const Instance& instance, const Matching& matching, int l)
{
    int worst = 0;
    for (int s = 1; s <= instance.num_students(); ++s) {
        int p = matching.project_of(s);
        if (p != 0 && instance.owner(p) == l && (worst == 0 || instance.lecturer_prefers_student(l, worst, s)))
            worst = s;
    }
    if (worst == 0)
        throw std::invalid_argument("no student is assigned to lecturer l" + std::to_string(l));
    return worst;
}

namespace {

// Loads plus worst-student tables, computed once per matching and shared by
// the per-student scans.
struct MatchingView {
    Loads loads;
    std::vector<int> worst_of_project;
    std::vector<int> worst_of_lecturer;

    MatchingView(const Instance& instance, const Matching& matching)
    {
        loads = compute_loads(instance, matching);
        worst_of_project.assign(instance.num_projects() + 1, 0);
        worst_of_lecturer.assign(instance.num_lecturers() + 1, 0);
        for (int s = 1; s <= instance.num_students(); ++s) {
            int p = matching.project_of(s);
            if (p == 0)
                continue;
            int l = instance.owner(p);
            int& wp = worst_of_project[p];
            if (wp == 0 || instance.lecturer_prefers_student(l, wp, s))
                wp = s;
            int& wl = worst_of_lecturer[l];
            if (wl == 0 || instance.lecturer_prefers_student(l, wl, s))
                wl = s;
        }
    }
};

std::optional<NextStep> next_step_in_view(const Instance& instance, const Matching& matching,
    const Matching& lecturer_opt, const MatchingView& view, int s)
{
    if (!matching.assigned(s))
        throw std::invalid_argument("student s" + std::to_string(s) + " is unassigned");
    if (matching.project_of(s) == lecturer_opt.project_of(s))
        return std::nullopt;           // next is only defined where M and M_L differ

    const auto& list = instance.ranked_projects(s);
    for (int idx = instance.student_rank(s, matching.project_of(s)) + 1;
         idx < static_cast<int>(list.size()); ++idx) {
        int p = list[idx];
        int l = instance.owner(p);
        if (view.loads.project[p] >= instance.project_capacity(p)) {
            if (instance.lecturer_prefers_student(l, s, view.worst_of_project[p]))
                return NextStep{p, view.worst_of_project[p], NextMode::project_full};
        }
        else if (view.loads.lecturer[l] >= instance.lecturer_capacity(l)) {
            if (instance.lecturer_prefers_student(l, s, view.worst_of_lecturer[l]))
                return NextStep{p, view.worst_of_lecturer[l], NextMode::lecturer_full};
        }
    }
    return std::nullopt;
}

}

std::optional<NextStep> next_project(const Instance& instance, const Matching& matching,
    const Matching& lecturer_opt, int s)
{
    MatchingView view(instance, matching);
    return next_step_in_view(instance, matching, lecturer_opt, view, s);
}

std::optional<NextStep> next_project(const Instance& instance, const Matching& matching, int s)
{
    return next_project(instance, matching, lecturer_optimal(instance), s);
}

RotationDigraph build_digraph(const Instance& instance, const Matching& matching,
    const Matching& lecturer_opt)
{
    RotationDigraph graph;
    graph.successor.assign(instance.num_students() + 1, 0);
    MatchingView view(instance, matching);
    for (int s = 1; s <= instance.num_students(); ++s) {
        if (matching.project_of(s) == lecturer_opt.project_of(s))
            continue;
        graph.vertices.push_back(s);
        auto step = next_step_in_view(instance, matching, lecturer_opt, view, s);
        internal_check(step.has_value(), "every student assigned differently from the lecturer-optimal "
                                         "matching has a next project");
        graph.successor[s] = step->displaced;
    }
    for (int s : graph.vertices)
        internal_check(graph.has_vertex(graph.successor[s]),
            "a next step displaces a student who is also assigned differently");
    return graph;
}

std::vector<MetaRotation> exposed_rotations(const Instance& instance, const Matching& matching,
    const Matching& lecturer_opt)
{
    RotationDigraph graph = build_digraph(instance, matching, lecturer_opt);

    // Each vertex has exactly one outgoing edge, so walking from any
    // unvisited vertex either reaches an earlier walk or closes a new cycle.
    enum : char { unseen = 0, current, done };
    std::vector<char> state(instance.num_students() + 1, unseen);
    std::vector<int> position(instance.num_students() + 1, 0);
    std::vector<MetaRotation> rotations;

    for (int start : graph.vertices) {
        if (state[start] != unseen)
            continue;
        std::vector<int> path;
        int v = start;
        while (state[v] == unseen) {
            state[v] = current;
            position[v] = static_cast<int>(path.size());
            path.push_back(v);
            v = graph.successor[v];
        }
        if (state[v] == current) {
            std::vector<std::pair<int, int>> cycle;
            for (std::size_t i = position[v]; i < path.size(); ++i)
                cycle.emplace_back(path[i], matching.project_of(path[i]));
            rotations.push_back(canonical_rotation(std::move(cycle)));
        }
        for (int u : path)
            state[u] = done;
    }
    std::sort(rotations.begin(), rotations.end());
    return rotations;
}

std::vector<MetaRotation> exposed_rotations(const Instance& instance, const Matching& matching)
{
    return exposed_rotations(instance, matching, lecturer_optimal(instance));
}

Matching eliminate(const Instance& instance, const Matching& matching,
    const Matching& lecturer_opt, const MetaRotation& rotation)
{
    auto exposed = exposed_rotations(instance, matching, lecturer_opt);
    if (std::find(exposed.begin(), exposed.end(), rotation) == exposed.end())
        throw std::invalid_argument("rotation " + rotation_text(rotation) + " is not exposed in this matching");

    MatchingView view(instance, matching);
    Matching result = matching;
    for (auto [s, p] : rotation.pairs) {
        internal_check(matching.project_of(s) == p, "rotation pairs are assigned pairs of the matching");
        auto step = next_step_in_view(instance, matching, lecturer_opt, view, s);
        internal_check(step.has_value(), "every rotation student has a next project");
        result.assign(s, step->project);
    }
    internal_check(validate_matching(instance, result).empty(), "eliminating an exposed rotation keeps the matching valid");
    return result;
}

Matching eliminate(const Instance& instance, const Matching& matching, const MetaRotation& rotation)
{
    return eliminate(instance, matching, lecturer_optimal(instance), rotation);
}

Instance reduce_instance(const Instance& instance)
{
    Matching student_opt = student_optimal(instance);
    Matching lecturer_opt = lecturer_optimal(instance);

    std::vector<StudentPref> students;
    students.reserve(instance.num_students());
    for (int s = 1; s <= instance.num_students(); ++s) {
        StudentPref pref;
        if (student_opt.assigned(s)) {
            const auto& list = instance.ranked_projects(s);
            int first = instance.student_rank(s, student_opt.project_of(s));
            int last = instance.student_rank(s, lecturer_opt.project_of(s));
            internal_check(first >= 0 && last >= first,
                "the lecturer-optimal project never precedes the student-optimal one");
            pref.ranked_projects.assign(list.begin() + first, list.begin() + last + 1);
        }
        students.push_back(std::move(pref));
    }

    std::vector<ProjectSpec> projects;
    projects.reserve(instance.num_projects());
    for (int p = 1; p <= instance.num_projects(); ++p)
        projects.push_back({instance.project_capacity(p), instance.owner(p)});

    std::vector<LecturerSpec> lecturers;
    lecturers.reserve(instance.num_lecturers());
    for (int l = 1; l <= instance.num_lecturers(); ++l) {
        LecturerSpec spec;
        spec.capacity = instance.lecturer_capacity(l);
        for (int s : instance.ranked_students(l)) {
            bool still_listed = false;
            for (int p : students[s - 1].ranked_projects)
                if (instance.owner(p) == l)
                    still_listed = true;
            if (still_listed)
                spec.ranked_students.push_back(s);
        }
        lecturers.push_back(std::move(spec));
    }

    return Instance(std::move(students), std::move(projects), std::move(lecturers));
}

}
