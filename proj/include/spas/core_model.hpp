#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace spas {

// Students, projects and lecturers are dense 1-based indices, written as
// s<i>, p<j>, l<k> in the text formats. Index 0 is never a valid id; a
// matching stores 0 for an unassigned student.

struct StudentPref {
    std::vector<int> ranked_projects;   // most preferred first, duplicate-free
};

struct ProjectSpec {
    int capacity = 1;
    int owner = 0;                      // the lecturer offering this project
};

struct LecturerSpec {
    int capacity = 1;
    std::vector<int> ranked_students;   // most preferred first, duplicate-free
};

/// Raised by the text parsers. line() is 1-based, 0 when no single line is
/// to blame.
class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& message);
    int line() const { return line_; }

private:
    int line_;
};

/// Raised when an operation detects a broken internal invariant. Seeing one
/// of these means a bug in this library, not bad user input.
class InternalError : public std::logic_error {
public:
    explicit InternalError(const std::string& message) : std::logic_error(message) {}
};

[[noreturn]] void internal_failure(const std::string& what);

inline void internal_check(bool ok, const char* what)
{
    if (!ok)
        internal_failure(what);
}

/// A validated problem instance. Construction enforces every structural
/// invariant: capacities are positive, preference lists are duplicate-free
/// with in-range ids, every project has exactly one owner, and a student
/// listing a project implies the student appears on the offering lecturer's
/// list (acceptability requires both directions). Instances are immutable
/// values after construction.
class Instance {
public:
    Instance() = default;

    /// students[i] describes s<i+1>, and so on. Throws std::invalid_argument
    /// on any invariant violation.
    Instance(std::vector<StudentPref> students,
             std::vector<ProjectSpec> projects,
             std::vector<LecturerSpec> lecturers);

    int num_students() const { return static_cast<int>(students_.size()); }
    int num_projects() const { return static_cast<int>(projects_.size()); }
    int num_lecturers() const { return static_cast<int>(lecturers_.size()); }

    const std::vector<int>& ranked_projects(int s) const { return students_.at(s - 1).ranked_projects; }
    const std::vector<int>& ranked_students(int l) const { return lecturers_.at(l - 1).ranked_students; }
    const std::vector<int>& projects_of(int l) const { return projects_of_.at(l); }

    int owner(int p) const { return projects_.at(p - 1).owner; }
    int project_capacity(int p) const { return projects_.at(p - 1).capacity; }
    int lecturer_capacity(int l) const { return lecturers_.at(l - 1).capacity; }

    /// Position of p on s's list (0 = most preferred), or -1 when absent.
    int student_rank(int s, int p) const { return student_rank_.at(s).at(p); }
    /// Position of s on l's list, or -1 when absent.
    int lecturer_rank(int l, int s) const { return lecturer_rank_.at(l).at(s); }

    /// True when p is on s's list (validation guarantees the lecturer side).
    bool acceptable(int s, int p) const { return student_rank(s, p) >= 0; }

    /// Strict preference; both projects must be on s's list.
    bool student_prefers(int s, int p1, int p2) const
    {
        return student_rank(s, p1) < student_rank(s, p2);
    }

    /// Strict preference; both students must be on l's list.
    bool lecturer_prefers_student(int l, int s1, int s2) const
    {
        return lecturer_rank(l, s1) < lecturer_rank(l, s2);
    }

    bool operator==(const Instance& other) const
    {
        return students_eq(other) && projects_eq(other) && lecturers_eq(other);
    }

private:
    std::vector<StudentPref> students_;
    std::vector<ProjectSpec> projects_;
    std::vector<LecturerSpec> lecturers_;

    // derived lookup tables, indexed directly by 1-based id
    std::vector<std::vector<int>> student_rank_;
    std::vector<std::vector<int>> lecturer_rank_;
    std::vector<std::vector<int>> projects_of_;

    bool students_eq(const Instance& o) const;
    bool projects_eq(const Instance& o) const;
    bool lecturers_eq(const Instance& o) const;
};

/// A partial assignment of students to projects. Plain value type: copy it,
/// compare it, use it as a map key. Capacity and acceptability are properties
/// checked against an Instance by validate_matching, not by this container.
class Matching {
public:
    Matching() = default;
    explicit Matching(int num_students) : assigned_(num_students + 1, 0) {}

    int num_students() const { return static_cast<int>(assigned_.size()) - 1; }
    bool assigned(int s) const { return assigned_.at(s) != 0; }
    int project_of(int s) const { return assigned_.at(s); }

    void assign(int s, int p) { assigned_.at(s) = p; }
    void unassign(int s) { assigned_.at(s) = 0; }

    auto operator<=>(const Matching&) const = default;

private:
    std::vector<int> assigned_{0};      // [0] unused
};

/// Per-project and per-lecturer occupancy, indexed by 1-based id.
struct Loads {
    std::vector<int> project;
    std::vector<int> lecturer;
};

Loads compute_loads(const Instance& instance, const Matching& matching);

/// Students assigned to p, ascending.
std::vector<int> project_members(const Instance& instance, const Matching& matching, int p);
/// Students assigned to any project of l, ascending.
std::vector<int> lecturer_members(const Instance& instance, const Matching& matching, int l);

/// Parses the line-oriented instance grammar:
///
///     # comment
///     students <n1>
///     projects <n2>
///     lecturers <n3>
///     s<i>: p<a> p<b> ...
///     p<j>: cap <c> lecturer l<k>
///     l<k>: cap <d> prefs s<x> s<y> ...
///
/// The three header lines come first, in that order; entity lines may then
/// appear in any order but each entity must appear exactly once. '#' starts
/// a comment, blank lines are ignored. Throws ParseError with the offending
/// line on any syntactic or semantic problem.
Instance parse_instance(std::string_view text);

/// Canonical form: headers, then students, projects and lecturers in
/// ascending id order. parse_instance(serialize_instance(i)) == i.
std::string serialize_instance(const Instance& instance);

/// Parses "s<i> p<j>" lines. Ids must be in range for the instance and no
/// student may appear twice; acceptability is validate_matching's concern.
Matching parse_matching(const Instance& instance, std::string_view text);

/// One "s<i> p<j>" line per assigned student, ascending student id.
std::string serialize_matching(const Matching& matching);

/// Empty result means the matching is valid: every assigned pair acceptable,
/// no project or lecturer over capacity. Otherwise one description per
/// violation.
std::vector<std::string> validate_matching(const Instance& instance, const Matching& matching);

}
