#pragma once

// Points are integer coordinate tuples. Lattice points carry their coordinates,
// free-group elements their reduced generator word (signed indices), finite
// space vertices a single id, disjoint-union points a leading component tag.
// std::vector's lexicographic ordering doubles as the deterministic point order
// used for witness selection throughout.

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

namespace ck {

using Coord = std::int64_t;
using Point = std::vector<Coord>;

// Sorted, duplicate-free point list.
using PointSet = std::vector<Point>;

inline void normalize(PointSet& s) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
}

inline PointSet normalized(PointSet s) {
    normalize(s);
    return s;
}

inline bool contains(const PointSet& s, const Point& p) {
    return std::binary_search(s.begin(), s.end(), p);
}

inline PointSet set_union(const PointSet& a, const PointSet& b) {
    PointSet out;
    out.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline PointSet set_intersection(const PointSet& a, const PointSet& b) {
    PointSet out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline PointSet set_difference(const PointSet& a, const PointSet& b) {
    PointSet out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline std::string point_str(const Point& p) {
    std::string s = "(";
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(p[i]);
    }
    return s + ")";
}

}  // namespace ck
