#include "irelab/sampling.hpp"

#include <algorithm>

namespace irelab::sampling {

bool MarkedConfiguration::contains_index(std::int32_t idx) const {
    return std::binary_search(points.begin(), points.end(), idx);
}

MarkedConfiguration sample_marked(std::shared_ptr<const groups::CayleyWindow> window,
                                  const IntensitySpec& intensity, const SeedSpec& seed) {
    if (!window || window->size() == 0) throw ConfigError("sample_marked needs a non-empty window");
    MarkedConfiguration cfg{std::move(window), intensity.p, seed, {}, {}};
    const std::uint64_t ss = rng::seed_state(seed);
    const std::uint64_t thr = rng::bernoulli_threshold(intensity.p);
    for (std::size_t i = 0; i < cfg.window->size(); ++i) {
        std::uint64_t key = rng::element_key(ss, cfg.window->digests[i]);
        if (rng::draw(key, 0) < thr) {
            cfg.points.push_back(static_cast<std::int32_t>(i));
            cfg.marks.push_back(rng::draw(key, 1));
        }
    }
    return cfg;
}

MarkedConfiguration sample_marked_rekeyed(std::shared_ptr<const groups::CayleyWindow> window,
                                          const IntensitySpec& intensity, const SeedSpec& seed,
                                          const groups::Element& shift) {
    if (!window || window->size() == 0) throw ConfigError("sample_marked needs a non-empty window");
    MarkedConfiguration cfg{std::move(window), intensity.p, seed, {}, {}};
    const std::uint64_t ss = rng::seed_state(seed);
    const std::uint64_t thr = rng::bernoulli_threshold(intensity.p);
    for (std::size_t i = 0; i < cfg.window->size(); ++i) {
        std::uint64_t dg = groups::multiply(shift, cfg.window->elements[i]).digest();
        std::uint64_t key = rng::element_key(ss, dg);
        if (rng::draw(key, 0) < thr) {
            cfg.points.push_back(static_cast<std::int32_t>(i));
            cfg.marks.push_back(rng::draw(key, 1));
        }
    }
    return cfg;
}

MarkedConfiguration extend(const MarkedConfiguration& config, int new_radius,
                           const SeedSpec& seed) {
    if (new_radius <= config.window->radius)
        throw ConfigError("extend requires a radius larger than the current window");
    auto bigger = std::make_shared<const groups::CayleyWindow>(
        groups::ball(config.window->spec, config.window->center, new_radius));
    return sample_marked(std::move(bigger), IntensitySpec(config.p), seed);
}

}  // namespace irelab::sampling
