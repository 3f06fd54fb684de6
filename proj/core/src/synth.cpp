#include "persistnet/synth.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>

#include <Eigen/Cholesky>

#include "json.hpp"
#include "persistnet/errors.hpp"

namespace persistnet {

namespace {

constexpr const char* kModule = "synth";

bool block_active(const BlockSpec& b, std::size_t day) { return day >= b.active_begin && day < b.active_end; }

std::string format_date(std::chrono::sys_days d) {
    const std::chrono::year_month_day ymd{d};
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()), static_cast<unsigned>(ymd.month()),
                  static_cast<unsigned>(ymd.day()));
    return buf;
}

template <typename K>
void combinations(const std::vector<std::size_t>& items, std::size_t k, K&& emit) {
    std::vector<std::size_t> pick(k);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t depth) {
        if (depth == k) {
            emit(pick);
            return;
        }
        for (std::size_t i = start; i < items.size(); ++i) {
            pick[depth] = items[i];
            rec(i + 1, depth + 1);
        }
    };
    rec(0, 0);
}

}  // namespace

void validate(const ScenarioSpec& spec) {
    if (spec.n_assets == 0) throw SpecError(kModule, "n_assets must be positive");
    if (spec.n_days < 2) throw SpecError(kModule, "n_days must be at least 2");
    if (!(spec.base_volatility > 0.0) || !std::isfinite(spec.base_volatility)) {
        throw SpecError(kModule, "base_volatility must be positive");
    }
    if (!is_iso_date(spec.start_date)) throw SpecError(kModule, "start_date must be an ISO-8601 date");
    std::vector<int> owner(spec.n_assets, -1);
    for (std::size_t bi = 0; bi < spec.blocks.size(); ++bi) {
        const auto& b = spec.blocks[bi];
        if (b.members.size() < 2) throw SpecError(kModule, "block " + std::to_string(bi) + " has fewer than 2 members");
        if (!(b.correlation > -1.0 && b.correlation < 1.0)) {
            throw SpecError(kModule, "block " + std::to_string(bi) + " correlation must lie in (-1, 1)");
        }
        if (b.active_begin >= b.active_end) {
            throw SpecError(kModule, "block " + std::to_string(bi) + " has an empty active range");
        }
        auto sorted = b.members;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
            throw SpecError(kModule, "block " + std::to_string(bi) + " repeats a member");
        }
        for (std::size_t m : b.members) {
            if (m >= spec.n_assets) throw SpecError(kModule, "block " + std::to_string(bi) + " member out of range");
            if (owner[m] >= 0 && !spec.allow_overlap) {
                throw SpecError(kModule, "blocks " + std::to_string(owner[m]) + " and " + std::to_string(bi) +
                                             " overlap without allow_overlap");
            }
            owner[m] = static_cast<int>(bi);
        }
    }
}

std::vector<std::string> synthetic_asset_ids(std::size_t n_assets) {
    const int width = std::max(3, static_cast<int>(std::to_string(n_assets > 0 ? n_assets - 1 : 0).size()));
    std::vector<std::string> ids;
    ids.reserve(n_assets);
    for (std::size_t i = 0; i < n_assets; ++i) {
        std::string num = std::to_string(i);
        ids.push_back("A" + std::string(static_cast<std::size_t>(width) - num.size(), '0') + num);
    }
    return ids;
}

std::vector<std::string> business_days(const std::string& start, std::size_t count) {
    using namespace std::chrono;
    if (!is_iso_date(start)) throw SpecError(kModule, "invalid start date " + start);
    const year_month_day ymd{year{std::stoi(start.substr(0, 4))},
                             month{static_cast<unsigned>(std::stoi(start.substr(5, 2)))},
                             day{static_cast<unsigned>(std::stoi(start.substr(8, 2)))}};
    sys_days d{ymd};
    std::vector<std::string> out;
    out.reserve(count);
    while (out.size() < count) {
        const weekday wd{d};
        if (wd != Saturday && wd != Sunday) out.push_back(format_date(d));
        d += days{1};
    }
    return out;
}

ReturnPanel generate(const ScenarioSpec& spec) {
    validate(spec);
    const auto n = static_cast<Eigen::Index>(spec.n_assets);

    ReturnPanel out;
    out.assets = synthetic_asset_ids(spec.n_assets);
    // start_date is the calendar's first price day; returns begin one day later.
    auto days = business_days(spec.start_date, spec.n_days + 1);
    out.dates.assign(days.begin() + 1, days.end());
    out.values.resize(static_cast<Eigen::Index>(spec.n_days), n);

    // Cholesky factor per regime (set of active blocks).
    std::map<std::vector<bool>, Eigen::MatrixXd> factors;
    auto factor_for = [&](const std::vector<bool>& active) -> const Eigen::MatrixXd& {
        auto it = factors.find(active);
        if (it != factors.end()) return it->second;
        Eigen::MatrixXd c = Eigen::MatrixXd::Identity(n, n);
        for (std::size_t bi = 0; bi < spec.blocks.size(); ++bi) {
            if (!active[bi]) continue;
            const auto& b = spec.blocks[bi];
            for (std::size_t i : b.members) {
                for (std::size_t j : b.members) {
                    if (i != j) c(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = b.correlation;
                }
            }
        }
        Eigen::LLT<Eigen::MatrixXd> llt(c);
        if (llt.info() != Eigen::Success) {
            throw SpecError(kModule, "requested block correlation structure is not positive definite");
        }
        return factors.emplace(active, llt.matrixL()).first->second;
    };

    std::mt19937_64 rng(spec.seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::VectorXd z(n);
    std::vector<bool> active(spec.blocks.size());
    for (std::size_t day = 0; day < spec.n_days; ++day) {
        for (std::size_t bi = 0; bi < spec.blocks.size(); ++bi) active[bi] = block_active(spec.blocks[bi], day);
        const auto& l = factor_for(active);
        for (Eigen::Index i = 0; i < n; ++i) z(i) = normal(rng);
        out.values.row(static_cast<Eigen::Index>(day)) = (spec.base_volatility * (l * z)).transpose();
    }
    return out;
}

PricePanel generate_prices(const ScenarioSpec& spec) {
    return prices_from_returns(generate(spec), 100.0, spec.start_date);
}

std::vector<Motif> ground_truth_motifs(const ScenarioSpec& spec) {
    std::vector<Motif> out;
    for (const auto& b : spec.blocks) {
        const bool permanent = b.active_begin == 0 && b.active_end >= spec.n_days;
        if (!permanent || b.members.size() < 3) continue;
        auto members = b.members;
        std::sort(members.begin(), members.end());
        for (auto [kind, k] : {std::pair{MotifKind::Triangle, std::size_t{3}}, std::pair{MotifKind::Tetrahedron, std::size_t{4}}}) {
            if (members.size() < k) continue;
            combinations(members, k, [&](const std::vector<std::size_t>& pick) {
                std::vector<Vertex> v(pick.begin(), pick.end());
                out.push_back(make_motif(kind, std::move(v)));
            });
        }
    }
    return out;
}

ScenarioSpec parse_scenario(const std::string& json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw SpecError(kModule, std::string("scenario is not valid JSON: ") + e.what());
    }
    ScenarioSpec spec;
    try {
        spec.n_assets = doc.at("n_assets").get<std::size_t>();
        spec.n_days = doc.at("n_days").get<std::size_t>();
        spec.base_volatility = doc.value("base_volatility", spec.base_volatility);
        spec.seed = doc.at("seed").get<std::uint64_t>();
        spec.allow_overlap = doc.value("allow_overlap", false);
        spec.start_date = doc.value("start_date", spec.start_date);
        for (const auto& jb : doc.value("blocks", nlohmann::json::array())) {
            BlockSpec b;
            b.members = jb.at("members").get<std::vector<std::size_t>>();
            b.correlation = jb.at("correlation").get<double>();
            b.active_begin = jb.value("active_begin", std::size_t{0});
            b.active_end = jb.value("active_end", std::numeric_limits<std::size_t>::max());
            spec.blocks.push_back(std::move(b));
        }
    } catch (const nlohmann::json::exception& e) {
        throw SpecError(kModule, std::string("invalid scenario field: ") + e.what());
    }
    validate(spec);
    return spec;
}

ScenarioSpec load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError(kModule, "cannot open scenario file: " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

}  // namespace persistnet
