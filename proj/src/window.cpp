#include "irelab/window.hpp"

#include <algorithm>

namespace irelab::groups {

CayleyWindow ball(const GroupSpec& spec, const Element& center, int radius,
                  std::uint64_t element_cap) {
    if (radius < 0) throw ConfigError("ball radius must be nonnegative");
    CayleyWindow w{spec, center, radius, {}, {}, {}, {}, {}};
    auto gens = generators(spec);

    std::vector<Element> layer{center};
    std::int64_t d = 0;
    while (true) {
        std::sort(layer.begin(), layer.end());
        for (Element& e : layer) {
            if (w.elements.size() >= element_cap)
                throw BudgetError("ball element cap exceeded at " +
                                      std::to_string(w.elements.size() + 1) + " elements (cap " +
                                      std::to_string(element_cap) + ")",
                                  w.elements.size() + 1);
            w.by_element.emplace(e, static_cast<std::int32_t>(w.elements.size()));
            w.dist.push_back(d);
            w.elements.push_back(std::move(e));
        }
        if (d == radius) break;
        ++d;
        std::vector<Element> next;
        std::size_t begin = w.elements.size() - layer.size();
        for (std::size_t i = begin; i < w.elements.size(); ++i) {
            for (const Element& s : gens) {
                Element n = multiply(w.elements[i], s);
                if (w.by_element.find(n) == w.by_element.end()) {
                    w.by_element.emplace(n, -2);  // claimed for this layer, indexed after sort
                    next.push_back(std::move(n));
                }
            }
        }
        for (const Element& e : next) w.by_element.erase(e);
        if (next.empty()) break;
        layer = std::move(next);
    }

    w.digests.reserve(w.elements.size());
    for (const Element& e : w.elements) w.digests.push_back(e.digest());

    w.adjacency.assign(w.elements.size(), {});
    for (std::size_t i = 0; i < w.elements.size(); ++i) {
        for (const Element& s : gens) {
            std::int32_t j = w.index_of(multiply(w.elements[i], s));
            if (j >= 0 && j != static_cast<std::int32_t>(i)) w.adjacency[i].push_back(j);
        }
        std::sort(w.adjacency[i].begin(), w.adjacency[i].end());
        w.adjacency[i].erase(std::unique(w.adjacency[i].begin(), w.adjacency[i].end()),
                             w.adjacency[i].end());
    }
    return w;
}

const std::shared_ptr<const CayleyWindow>& BallCache::at_radius(int radius) {
    if (radius < 0) throw ConfigError("ball radius must be nonnegative");
    if (static_cast<std::size_t>(radius) >= by_radius_.size())
        by_radius_.resize(radius + 1);
    if (!by_radius_[radius])
        by_radius_[radius] = std::make_shared<const CayleyWindow>(
            ball(spec_, Element::identity(spec_), radius, cap_));
    return by_radius_[radius];
}

}  // namespace irelab::groups
