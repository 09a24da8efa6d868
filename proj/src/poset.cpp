#include "spas/poset.hpp"

#include "spas/solvers.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <sstream>

#include <json.hpp>

namespace spas {

int EliminationLattice::index_of(const Matching& matching) const
{
    auto it = std::find(matchings.begin(), matchings.end(), matching);
    return it == matchings.end() ? -1 : static_cast<int>(it - matchings.begin());
}

int EliminationLattice::rotation_id(const MetaRotation& rotation) const
{
    auto it = std::find(rotations.begin(), rotations.end(), rotation);
    return it == rotations.end() ? -1 : static_cast<int>(it - rotations.begin());
}

EliminationLattice explore_lattice(const Instance& instance)
{
    EliminationLattice lattice;
    Matching lecturer_opt = lecturer_optimal(instance);

    std::map<Matching, int> index;
    lattice.matchings.push_back(student_optimal(instance));
    lattice.closed_sets.push_back({});
    index.emplace(lattice.matchings.front(), 0);

    std::map<MetaRotation, int> rotation_index;
    std::deque<int> queue{0};

    while (!queue.empty()) {
        int mi = queue.front();
        queue.pop_front();
        const Matching current = lattice.matchings[mi];

        auto rotations = exposed_rotations(instance, current, lecturer_opt);
        if (rotations.empty()) {
            internal_check(current == lecturer_opt,
                "only the lecturer-optimal matching exposes no rotation");
            lattice.lecturer_optimal_index = mi;
            continue;
        }

        for (const MetaRotation& rotation : rotations) {
            int rid;
            if (auto it = rotation_index.find(rotation); it != rotation_index.end()) {
                rid = it->second;
            }
            else {
                rid = static_cast<int>(lattice.rotations.size());
                rotation_index.emplace(rotation, rid);
                lattice.rotations.push_back(rotation);
            }

            Matching next = eliminate(instance, current, lecturer_opt, rotation);
            internal_check(is_stable(instance, next),
                "eliminating an exposed rotation yields a stable matching");

            std::vector<int> closed = lattice.closed_sets[mi];
            internal_check(!std::binary_search(closed.begin(), closed.end(), rid),
                "an exposed rotation has not been eliminated on the way to this matching");
            closed.insert(std::upper_bound(closed.begin(), closed.end(), rid), rid);

            int ni;
            if (auto it = index.find(next); it != index.end()) {
                ni = it->second;
                internal_check(lattice.closed_sets[ni] == closed, "closed sets are path-independent");
            }
            else {
                ni = static_cast<int>(lattice.matchings.size());
                index.emplace(next, ni);
                lattice.matchings.push_back(std::move(next));
                lattice.closed_sets.push_back(std::move(closed));
                queue.push_back(ni);
            }
            lattice.edges.push_back({mi, rid, ni});
        }
    }

    internal_check(lattice.closed_sets[lattice.lecturer_optimal_index].size() == lattice.rotations.size(),
        "every rotation is eliminated on the way to the lecturer-optimal matching");
    return lattice;
}

RotationPoset build_poset(const EliminationLattice& lattice)
{
    const int n = static_cast<int>(lattice.rotations.size());
    RotationPoset poset;
    poset.rotations = lattice.rotations;
    poset.leq.assign(n, std::vector<char>(n, 0));

    std::vector<std::vector<int>> exposed_in(n);
    for (const LatticeEdge& edge : lattice.edges)
        exposed_in[edge.rotation].push_back(edge.from);

    for (int a = 0; a < n; ++a) {
        poset.leq[a][a] = 1;
        for (int b = 0; b < n; ++b) {
            if (a == b)
                continue;
            internal_check(!exposed_in[b].empty(), "every registered rotation is exposed somewhere");
            bool precedes = true;
            for (int mi : exposed_in[b]) {
                const auto& closed = lattice.closed_sets[mi];
                if (!std::binary_search(closed.begin(), closed.end(), a)) {
                    precedes = false;
                    break;
                }
            }
            if (precedes)
                poset.leq[a][b] = 1;
        }
    }

    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            if (poset.leq[i][k])
                for (int j = 0; j < n; ++j)
                    if (poset.leq[k][j])
                        poset.leq[i][j] = 1;

    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            internal_check(!(poset.leq[a][b] && poset.leq[b][a]),
                "the elimination-order relation is antisymmetric");

    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            if (a == b || !poset.leq[a][b])
                continue;
            bool covered = false;
            for (int c = 0; c < n && !covered; ++c)
                if (c != a && c != b && poset.leq[a][c] && poset.leq[c][b])
                    covered = true;
            if (!covered)
                poset.hasse.emplace_back(a, b);
        }
    std::sort(poset.hasse.begin(), poset.hasse.end());
    return poset;
}

bool is_closed(const RotationPoset& poset, const ClosedSubset& subset)
{
    const int n = static_cast<int>(poset.rotations.size());
    for (int a : subset) {
        if (a < 0 || a >= n)
            return false;
        for (int b = 0; b < n; ++b)
            if (poset.leq[b][a] && !std::binary_search(subset.begin(), subset.end(), b))
                return false;
    }
    return true;
}

std::vector<ClosedSubset> closed_subsets(const RotationPoset& poset)
{
    const int n = static_cast<int>(poset.rotations.size());

    // any linear extension works; predecessor counts give one cheaply
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::vector<int> pred_count(n, 0);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (a != b && poset.leq[b][a])
                ++pred_count[a];
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return std::pair(pred_count[a], a) < std::pair(pred_count[b], b);
    });

    std::vector<ClosedSubset> result;
    std::vector<char> chosen(n, 0);
    auto recurse = [&](auto&& self, int pos) -> void {
        if (pos == n) {
            ClosedSubset subset;
            for (int id = 0; id < n; ++id)
                if (chosen[id])
                    subset.push_back(id);
            result.push_back(std::move(subset));
            return;
        }
        int id = order[pos];
        self(self, pos + 1);                // without id
        bool predecessors_in = true;
        for (int b = 0; b < n && predecessors_in; ++b)
            if (b != id && poset.leq[b][id] && !chosen[b])
                predecessors_in = false;
        if (predecessors_in) {              // with id
            chosen[id] = 1;
            self(self, pos + 1);
            chosen[id] = 0;
        }
    };
    recurse(recurse, 0);
    std::sort(result.begin(), result.end());
    return result;
}

namespace {

Matching replay_closed_set(const Instance& instance, const EliminationLattice& lattice,
    const Matching& lecturer_opt, const ClosedSubset& subset, bool lowest_first)
{
    Matching current = lattice.matchings.front();
    std::vector<int> remaining = subset;
    while (!remaining.empty()) {
        auto rotations = exposed_rotations(instance, current, lecturer_opt);
        int best_id = -1;
        const MetaRotation* best = nullptr;
        for (const MetaRotation& rotation : rotations) {
            int rid = lattice.rotation_id(rotation);
            if (rid < 0 || !std::binary_search(remaining.begin(), remaining.end(), rid))
                continue;
            if (best_id < 0 || (lowest_first ? rid < best_id : rid > best_id)) {
                best_id = rid;
                best = &rotation;
            }
        }
        internal_check(best != nullptr, "a closed set always has an exposed rotation left to eliminate");
        current = eliminate(instance, current, lecturer_opt, *best);
        remaining.erase(std::find(remaining.begin(), remaining.end(), best_id));
    }
    return current;
}

}

Matching matching_from_closed_set(const Instance& instance, const EliminationLattice& lattice,
    const RotationPoset& poset, const ClosedSubset& subset)
{
    ClosedSubset sorted = subset;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw std::invalid_argument("closed subsets contain each rotation id at most once");
    if (!is_closed(poset, sorted))
        throw std::invalid_argument("the rotation set is not downward closed");

    const Matching& lecturer_opt = lattice.matchings[lattice.lecturer_optimal_index];
    Matching low = replay_closed_set(instance, lattice, lecturer_opt, sorted, true);
    Matching high = replay_closed_set(instance, lattice, lecturer_opt, sorted, false);
    internal_check(low == high, "the elimination order within a closed set does not matter");
    return low;
}

ClosedSubset closed_set_of_matching(const EliminationLattice& lattice, const Matching& matching)
{
    int index = lattice.index_of(matching);
    if (index < 0)
        throw std::invalid_argument("the matching is not a stable matching of this instance");
    return lattice.closed_sets[index];
}

UnstableTargetError::UnstableTargetError(std::vector<BlockingPair> pairs) :
    std::runtime_error("the target matching is not stable:\n" + blocking_report(pairs)),
    pairs_(std::move(pairs))
{
}

std::vector<MetaRotation> find_target(const Instance& instance, const Matching& target)
{
    auto violations = validate_matching(instance, target);
    if (!violations.empty())
        throw std::invalid_argument("invalid target matching: " + violations.front());
    if (auto blocking = blocking_pairs(instance, target); !blocking.empty())
        throw UnstableTargetError(std::move(blocking));

    Matching current = student_optimal(instance);
    Matching lecturer_opt = lecturer_optimal(instance);
    std::vector<MetaRotation> sequence;
    while (current != target) {
        auto rotations = exposed_rotations(instance, current, lecturer_opt);
        const MetaRotation* pick = nullptr;
        for (const MetaRotation& rotation : rotations) {
            bool moves_toward_target = false;
            for (auto [s, p] : rotation.pairs)
                if (target.project_of(s) != p)
                    moves_toward_target = true;
            if (moves_toward_target) {
                pick = &rotation;
                break;
            }
        }
        internal_check(pick != nullptr,
            "a matching above the target exposes a rotation moving some differing student");
        sequence.push_back(*pick);
        current = eliminate(instance, current, lecturer_opt, *pick);
    }
    return sequence;
}

std::string export_poset(const RotationPoset& poset, PosetFormat format)
{
    if (format == PosetFormat::dot) {
        std::ostringstream out;
        out << "digraph rotation_poset {\n";
        for (std::size_t id = 0; id < poset.rotations.size(); ++id) {
            out << "  r" << id << " [label=\"";
            for (auto [s, p] : poset.rotations[id].pairs)
                out << "(s" << s << ",p" << p << ")";
            out << "\"];\n";
        }
        for (auto [a, b] : poset.hasse)
            out << "  r" << a << " -> r" << b << ";\n";
        out << "}\n";
        return out.str();
    }

    nlohmann::json doc;
    doc["rotations"] = nlohmann::json::array();
    for (std::size_t id = 0; id < poset.rotations.size(); ++id) {
        nlohmann::json pairs = nlohmann::json::array();
        for (auto [s, p] : poset.rotations[id].pairs)
            pairs.push_back({s, p});
        doc["rotations"].push_back({{"id", id}, {"pairs", pairs}});
    }
    doc["hasse"] = nlohmann::json::array();
    for (auto [a, b] : poset.hasse)
        doc["hasse"].push_back({a, b});
    doc["leq"] = nlohmann::json::array();
    for (std::size_t a = 0; a < poset.leq.size(); ++a)
        for (std::size_t b = 0; b < poset.leq.size(); ++b)
            if (poset.leq[a][b])
                doc["leq"].push_back({a, b});
    return doc.dump(2) + "\n";
}

}
