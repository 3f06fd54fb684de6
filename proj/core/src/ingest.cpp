#include "persistnet/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>
#include <string_view>

#include "persistnet/errors.hpp"

namespace persistnet {

namespace {

constexpr const char* kModule = "ingest";

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split_csv(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        auto comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.push_back(trim(line.substr(start)));
            break;
        }
        fields.push_back(trim(line.substr(start, comma - start)));
        start = comma + 1;
    }
    return fields;
}

bool parse_double(std::string_view text, double& out) {
    // from_chars for double is available in libstdc++ 11.
    auto* first = text.data();
    auto* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last;
}

}  // namespace

bool is_iso_date(const std::string& text) {
    if (text.size() != 10 || text[4] != '-' || text[7] != '-') return false;
    for (std::size_t i : {0, 1, 2, 3, 5, 6, 8, 9}) {
        if (text[i] < '0' || text[i] > '9') return false;
    }
    int y = std::stoi(text.substr(0, 4));
    unsigned m = static_cast<unsigned>(std::stoi(text.substr(5, 2)));
    unsigned d = static_cast<unsigned>(std::stoi(text.substr(8, 2)));
    return std::chrono::year_month_day{std::chrono::year{y}, std::chrono::month{m}, std::chrono::day{d}}.ok();
}

LoadResult load_prices(const std::filesystem::path& source) {
    std::ifstream in(source);
    if (!in) {
        throw IoError(kModule, "cannot open price file: " + source.string());
    }
    return parse_prices(in);
}

LoadResult parse_prices(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;

    if (!std::getline(in, line)) {
        throw InsufficientDataError(kModule, "price file is empty");
    }
    ++line_no;
    {
        auto header = split_csv(line);
        if (header.size() != 3 || header[0] != "date" || header[1] != "asset" || header[2] != "close") {
            throw ParseError(kModule, line_no, "expected header `date,asset,close`");
        }
    }

    // date -> asset -> close
    std::map<std::string, std::map<std::string, double>> rows;
    std::map<std::string, bool> asset_set;

    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        auto fields = split_csv(line);
        if (fields.size() != 3) {
            throw ParseError(kModule, line_no, "expected 3 fields, got " + std::to_string(fields.size()));
        }
        std::string date(fields[0]);
        std::string asset(fields[1]);
        if (!is_iso_date(date)) {
            throw ParseError(kModule, line_no, "invalid ISO-8601 date '" + date + "'");
        }
        if (asset.empty()) {
            throw ParseError(kModule, line_no, "empty asset identifier");
        }
        double close = 0.0;
        if (!parse_double(fields[2], close)) {
            throw ParseError(kModule, line_no, "invalid close price '" + std::string(fields[2]) + "'");
        }
        if (!std::isfinite(close) || close <= 0.0) {
            throw ValidationError(kModule, "non-positive price at (" + date + ", " + asset + ")");
        }
        auto [it, inserted] = rows[date].emplace(asset, close);
        if (!inserted) {
            throw ParseError(kModule, line_no, "duplicate observation for (" + date + ", " + asset + ")");
        }
        asset_set[asset] = true;
    }

    LoadResult result;
    for (const auto& [asset, _] : asset_set) result.panel.assets.push_back(asset);

    std::vector<std::string> kept;
    for (const auto& [date, quotes] : rows) {
        if (quotes.size() == result.panel.assets.size()) {
            kept.push_back(date);
            continue;
        }
        std::string missing;
        for (const auto& asset : result.panel.assets) {
            if (!quotes.contains(asset)) {
                if (!missing.empty()) missing += ';';
                missing += asset;
            }
        }
        result.dropped.push_back({date, "missing " + missing});
    }

    if (kept.size() < 2) {
        throw InsufficientDataError(kModule, "fewer than 2 dates common to all assets (" +
                                                 std::to_string(kept.size()) + " found)");
    }

    auto& panel = result.panel;
    panel.dates = kept;
    panel.values.resize(static_cast<Eigen::Index>(kept.size()), static_cast<Eigen::Index>(panel.assets.size()));
    for (std::size_t t = 0; t < kept.size(); ++t) {
        const auto& quotes = rows.at(kept[t]);
        for (std::size_t i = 0; i < panel.assets.size(); ++i) {
            panel.values(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(i)) = quotes.at(panel.assets[i]);
        }
    }
    return result;
}

void validate(const PricePanel& panel) {
    if (panel.values.rows() != static_cast<Eigen::Index>(panel.dates.size()) ||
        panel.values.cols() != static_cast<Eigen::Index>(panel.assets.size())) {
        throw ValidationError(kModule, "price matrix shape does not match dates x assets");
    }
    for (std::size_t t = 1; t < panel.dates.size(); ++t) {
        if (!(panel.dates[t - 1] < panel.dates[t])) {
            throw ValidationError(kModule, "dates not strictly increasing at " + panel.dates[t]);
        }
    }
    for (Eigen::Index t = 0; t < panel.values.rows(); ++t) {
        for (Eigen::Index i = 0; i < panel.values.cols(); ++i) {
            double v = panel.values(t, i);
            if (!std::isfinite(v) || v <= 0.0) {
                throw ValidationError(kModule, "non-positive price at (" + panel.dates[static_cast<std::size_t>(t)] +
                                                   ", " + panel.assets[static_cast<std::size_t>(i)] + ")");
            }
        }
    }
}

ReturnPanel log_returns(const PricePanel& prices) {
    validate(prices);
    if (prices.n_days() < 2) {
        throw InsufficientDataError(kModule, "need at least 2 price dates for returns");
    }
    ReturnPanel out;
    out.assets = prices.assets;
    out.dates.assign(prices.dates.begin() + 1, prices.dates.end());
    const auto rows = prices.values.rows() - 1;
    out.values.resize(rows, prices.values.cols());
    for (Eigen::Index i = 0; i < prices.values.cols(); ++i) {
        for (Eigen::Index t = 0; t < rows; ++t) {
            out.values(t, i) = std::log(prices.values(t + 1, i)) - std::log(prices.values(t, i));
        }
    }
    return out;
}

PricePanel prices_from_returns(const ReturnPanel& returns, double start_price, const std::string& first_date) {
    if (!(start_price > 0.0)) {
        throw ParameterError(kModule, "start price must be positive");
    }
    PricePanel out;
    out.assets = returns.assets;
    out.dates.reserve(returns.n_days() + 1);
    out.dates.push_back(first_date);
    out.dates.insert(out.dates.end(), returns.dates.begin(), returns.dates.end());
    out.values.resize(returns.values.rows() + 1, returns.values.cols());
    for (Eigen::Index i = 0; i < returns.values.cols(); ++i) {
        double log_price = std::log(start_price);
        out.values(0, i) = start_price;
        for (Eigen::Index t = 0; t < returns.values.rows(); ++t) {
            log_price += returns.values(t, i);
            out.values(t + 1, i) = std::exp(log_price);
        }
    }
    return out;
}

ReturnWindow slice_window(const ReturnPanel& returns, std::ptrdiff_t end_index, std::size_t length) {
    if (length == 0) {
        throw ParameterError(kModule, "window length must be positive");
    }
    const auto n_days = static_cast<std::ptrdiff_t>(returns.n_days());
    const auto first = end_index - static_cast<std::ptrdiff_t>(length) + 1;
    if (first < 0 || end_index >= n_days) {
        throw BoundsError(kModule, "window [" + std::to_string(first) + ", " + std::to_string(end_index) +
                                       "] outside return panel of " + std::to_string(n_days) + " days");
    }
    if (length < returns.n_assets()) {
        throw ParameterError(kModule, "window length " + std::to_string(length) + " shorter than asset count " +
                                          std::to_string(returns.n_assets()));
    }
    ReturnWindow w;
    w.end_index = static_cast<std::size_t>(end_index);
    w.length = length;
    w.assets = returns.assets;
    w.values = returns.values.middleRows(first, static_cast<Eigen::Index>(length));
    return w;
}

ReturnPanel select_assets(const ReturnPanel& returns, std::size_t count) {
    if (count > returns.n_assets()) {
        throw ParameterError(kModule, "requested " + std::to_string(count) + " assets but panel has " +
                                          std::to_string(returns.n_assets()));
    }
    ReturnPanel out;
    out.dates = returns.dates;
    out.assets.assign(returns.assets.begin(), returns.assets.begin() + static_cast<std::ptrdiff_t>(count));
    out.values = returns.values.leftCols(static_cast<Eigen::Index>(count));
    return out;
}

void write_prices_csv(std::ostream& out, const PricePanel& prices) {
    out << "date,asset,close\n";
    out << std::setprecision(17);
    for (std::size_t t = 0; t < prices.n_days(); ++t) {
        for (std::size_t i = 0; i < prices.n_assets(); ++i) {
            out << prices.dates[t] << ',' << prices.assets[i] << ','
                << prices.values(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(i)) << '\n';
        }
    }
}

void write_dropped_report(std::ostream& out, const std::vector<DroppedDate>& dropped) {
    out << "date,reason\n";
    for (const auto& d : dropped) out << d.date << ',' << d.reason << '\n';
}

}  // namespace persistnet
